#pragma once

/**
 * @file serialize.hpp
 * @brief Canonical text encoding of graded objects and the on-disk cache.
 *
 * Layout (one record per line, tokens separated by single spaces):
 *
 *   xcat-object v1
 *   key <16 hex digits> <request>
 *   rs <descriptor> / field <descriptor> / q <literal> / choice <tag>
 *   lambda <weight or -> / policy <text> / complete <0|1> / truncation <H or -> / total <0|1>
 *   weights <N>, then N lines "w <weight> <dim> <npivots> <pivots...>"
 *   ops <N>, then per key "op <weight> <alpha> <n> <rows> <cols>", "E <entries>", "F <entries>"
 *   gram <N or ->, then per weight "g <weight> <size>", "G <entries>"
 *   end
 *
 * Entries are row-major canonical element strings. Equal objects encode to equal bytes.
 */

#include "xcat/error.hpp"
#include "xcat/forms.hpp"
#include "xcat/gspace.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace xcat {

inline constexpr const char* kCacheHeader = "xcat-object v1";

/// Everything that determines a build: root system, field, q, coefficient choice, lambda, policy.
struct CacheRequest {
    std::string rs;
    std::string field;
    std::string q;
    std::string choice = "qbinom";
    std::string lambda;
    std::string policy;

    std::string canonical() const { return rs + "|" + field + "|" + q + "|" + choice + "|" + lambda + "|" + policy; }
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string cache_key(const CacheRequest& r) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(r.canonical())));
    return buf;
}

template <Field F>
CacheRequest request_of(const GradedObject<F>& M) {
    return {M.rs.descriptor(), M.ctx.descriptor(), M.ctx.q_literal, M.choice.tag,
            M.lambda ? M.lambda->to_string() : "-", M.policy};
}

namespace detail {

template <Field F>
void write_entries(std::ostream& out, const char* tag, const F& f, const Matrix<F>& m) {
    out << tag;
    for (const auto& x : m.data()) out << ' ' << f.to_string(x);
    out << '\n';
}

class Reader {
public:
    explicit Reader(const std::string& text) : in_(text) {}

    std::vector<std::string> line(const std::string& expected_tag) {
        std::string raw;
        if (!std::getline(in_, raw)) fail("unexpected end of file, expected '" + expected_tag + "'");
        ++line_no_;
        std::vector<std::string> tokens;
        std::istringstream ss(raw);
        for (std::string t; ss >> t;) tokens.push_back(t);
        if (tokens.empty() || tokens[0] != expected_tag) fail("expected '" + expected_tag + "'");
        return tokens;
    }

    std::string value(const std::string& tag) {
        auto t = line(tag);
        if (t.size() != 2) fail("malformed '" + tag + "' line");
        return t[1];
    }

    long number(const std::string& s) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception&) {
            fail("bad integer '" + s + "'");
        }
        if (used != s.size()) fail("bad integer '" + s + "'");
        return v;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw CacheError("cache: line " + std::to_string(line_no_) + ": " + what);
    }

    std::istringstream& stream() { return in_; }
    void skip_line() { ++line_no_; }

private:
    std::istringstream in_;
    int line_no_ = 0;
};

template <Field F>
Matrix<F> read_entries(Reader& rd, const char* tag, const F& f, std::size_t rows, std::size_t cols) {
    const auto t = rd.line(tag);
    if (t.size() != rows * cols + 1) rd.fail(std::string("wrong number of entries in '") + tag + "'");
    Matrix<F> m(f, rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        try {
            m(i / cols, i % cols) = f.parse(t[i + 1]);
        } catch (const std::exception& e) {
            rd.fail(std::string("bad element '") + t[i + 1] + "': " + e.what());
        }
    }
    return m;
}

}  // namespace detail

template <Field F>
std::string serialize(const GradedObject<F>& M, const ContravariantForm<F>* form = nullptr) {
    const F& f = M.field();
    const CacheRequest req = request_of(M);
    std::ostringstream out;
    out << kCacheHeader << '\n';
    out << "key " << cache_key(req) << ' ' << req.canonical() << '\n';
    out << "rs " << M.rs.descriptor() << '\n';
    out << "field " << M.ctx.descriptor() << '\n';
    out << "q " << M.ctx.q_literal << '\n';
    out << "choice " << M.choice.tag << '\n';
    out << "lambda " << (M.lambda ? M.lambda->to_string() : "-") << '\n';
    out << "policy " << M.policy << '\n';
    out << "complete " << (M.complete ? 1 : 0) << '\n';
    out << "truncation " << (M.truncation_height ? std::to_string(*M.truncation_height) : "-") << '\n';
    out << "total " << (M.operators_total ? 1 : 0) << '\n';
    out << "weights " << M.dims.size() << '\n';
    for (const auto& [mu, d] : M.dims) {
        out << "w " << mu.to_string() << ' ' << d;
        auto it = M.pivots.find(mu);
        if (it == M.pivots.end()) {
            out << " -";
        } else {
            out << ' ' << it->second.size();
            for (std::size_t p : it->second) out << ' ' << p;
        }
        out << '\n';
    }
    std::set<OpKey> keys;
    for (const auto& e : M.e_ops) keys.insert(e.first);
    for (const auto& e : M.f_ops) keys.insert(e.first);
    out << "ops " << keys.size() << '\n';
    for (const OpKey& k : keys) {
        const Weight upper = k.mu + k.n * M.rs.simple_root(k.alpha);
        const std::size_t lo = M.dim(k.mu), hi = M.dim(upper);
        out << "op " << k.mu.to_string() << ' ' << k.alpha << ' ' << k.n << ' ' << hi << ' ' << lo << '\n';
        auto e = M.e_ops.find(k);
        auto fm = M.f_ops.find(k);
        detail::write_entries(out, "E", f, e != M.e_ops.end() ? e->second : Matrix<F>(f, hi, lo));
        detail::write_entries(out, "F", f, fm != M.f_ops.end() ? fm->second : Matrix<F>(f, lo, hi));
    }
    if (form) {
        out << "gram " << form->gram.size() << '\n';
        for (const auto& [mu, g] : form->gram) {
            out << "g " << mu.to_string() << ' ' << g.rows() << '\n';
            detail::write_entries(out, "G", f, g);
        }
    } else {
        out << "gram -\n";
    }
    out << "end\n";
    return out.str();
}

template <Field F>
struct LoadedObject {
    GradedObject<F> object;
    std::optional<ContravariantForm<F>> form;
};

/// Parses a cache file over the given field; q and the coefficient choice are read from the file.
template <Field F>
LoadedObject<F> deserialize(const std::string& text, const F& field) {
    detail::Reader rd(text);
    {
        std::string header;
        std::getline(rd.stream(), header);
        if (header != kCacheHeader)
            throw CacheError("cache: unknown format '" + header.substr(0, 40) + "' (expected '" + kCacheHeader + "')");
        rd.skip_line();
    }
    const auto key_line = rd.line("key");
    if (key_line.size() != 3) rd.fail("malformed key line");

    CacheRequest req;
    req.rs = rd.value("rs");
    req.field = rd.value("field");
    req.q = rd.value("q");
    req.choice = rd.value("choice");
    req.lambda = rd.value("lambda");
    req.policy = rd.value("policy");
    if (req.canonical() != key_line[2] || cache_key(req) != key_line[1])
        throw CacheError("cache: key does not match the stored request");
    if (req.field != field.descriptor()) throw CacheError("cache: field " + req.field + " is not " + field.descriptor());
    if (req.choice != "qbinom") throw CacheError("cache: unknown coefficient choice '" + req.choice + "'");

    try {
        const FieldContext<F> ctx = make_context(field, req.q);
        GradedObject<F> M(ctx, RootSystem::parse(req.rs), quantum_binomial_choice(ctx));
        if (req.lambda != "-") M.lambda = Weight::parse(req.lambda);
        M.policy = req.policy;
        M.complete = rd.value("complete") == "1";
        const std::string trunc = rd.value("truncation");
        if (trunc != "-") M.truncation_height = static_cast<int>(rd.number(trunc));
        M.operators_total = rd.value("total") == "1";

        const long nw = rd.number(rd.value("weights"));
        for (long i = 0; i < nw; ++i) {
            const auto t = rd.line("w");
            if (t.size() < 4) rd.fail("malformed weight line");
            const Weight mu = Weight::parse(t[1]);
            M.rs.check_weight(mu);
            M.dims[mu] = static_cast<std::size_t>(rd.number(t[2]));
            if (t[3] == "-") {
                if (t.size() != 4) rd.fail("malformed weight line");
                continue;
            }
            const long np = rd.number(t[3]);
            if (static_cast<long>(t.size()) != 4 + np) rd.fail("pivot count mismatch");
            std::vector<std::size_t> piv;
            for (long j = 0; j < np; ++j) piv.push_back(static_cast<std::size_t>(rd.number(t[4 + static_cast<std::size_t>(j)])));
            M.pivots[mu] = std::move(piv);
        }

        const long nops = rd.number(rd.value("ops"));
        for (long i = 0; i < nops; ++i) {
            const auto t = rd.line("op");
            if (t.size() != 6) rd.fail("malformed op line");
            const OpKey key{Weight::parse(t[1]), static_cast<int>(rd.number(t[2])), static_cast<int>(rd.number(t[3]))};
            const auto hi = static_cast<std::size_t>(rd.number(t[4])), lo = static_cast<std::size_t>(rd.number(t[5]));
            M.e_ops.emplace(key, detail::read_entries(rd, "E", field, hi, lo));
            M.f_ops.emplace(key, detail::read_entries(rd, "F", field, lo, hi));
        }

        LoadedObject<F> out{std::move(M), std::nullopt};
        const auto g = rd.line("gram");
        if (g.size() != 2) rd.fail("malformed gram line");
        if (g[1] != "-") {
            ContravariantForm<F> form;
            const long ng = rd.number(g[1]);
            for (long i = 0; i < ng; ++i) {
                const auto t = rd.line("g");
                if (t.size() != 3) rd.fail("malformed gram entry");
                const auto n = static_cast<std::size_t>(rd.number(t[2]));
                form.gram.emplace(Weight::parse(t[1]), detail::read_entries(rd, "G", field, n, n));
            }
            out.form = std::move(form);
        }
        rd.line("end");
        return out;
    } catch (const CacheError&) {
        throw;
    } catch (const std::exception& e) {
        throw CacheError(std::string("cache: ") + e.what());
    }
}

// --- on-disk cache ------------------------------------------------------------

class ObjectCache {
public:
    explicit ObjectCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& directory() const { return dir_; }
    std::filesystem::path path_for(const CacheRequest& r) const { return dir_ / (cache_key(r) + ".xcat"); }

    /// Returns the file contents, or nothing if the entry does not exist.
    std::optional<std::string> read(const CacheRequest& r) const {
        const auto p = path_for(r);
        std::error_code ec;
        if (!std::filesystem::exists(p, ec)) return std::nullopt;
        std::ifstream in(p, std::ios::binary);
        if (!in) throw CacheError("cache: cannot open " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    /// Writes to a temporary file in the same directory, then renames over the target.
    void write(const CacheRequest& r, const std::string& contents) const {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw CacheError("cache: cannot create " + dir_.string() + ": " + ec.message());
        static std::atomic<unsigned> counter{0};
        const auto target = path_for(r);
        const auto tmp = dir_ / (target.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
                                 std::to_string(counter++));
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << contents;
            if (!out.flush()) throw CacheError("cache: cannot write " + tmp.string());
        }
        std::filesystem::rename(tmp, target, ec);
        if (ec) {
            std::filesystem::remove(tmp, ec);
            throw CacheError("cache: cannot rename into " + target.string());
        }
    }

    std::vector<std::filesystem::path> entries() const {
        std::vector<std::filesystem::path> out;
        std::error_code ec;
        if (!std::filesystem::is_directory(dir_, ec)) return out;
        for (const auto& e : std::filesystem::directory_iterator(dir_))
            if (e.path().extension() == ".xcat") out.push_back(e.path());
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t clear() const {
        std::size_t n = 0;
        for (const auto& p : entries()) n += std::filesystem::remove(p) ? 1 : 0;
        return n;
    }

private:
    std::filesystem::path dir_;
};

}  // namespace xcat
