#pragma once

/**
 * @file cli.hpp
 * @brief The `xcat` command line: character tables, verifier batteries, theorem cross-checks and cache upkeep.
 *
 * Exit codes: 0 success, 1 a check failed, 2 usage or hypothesis error, 3 cache error.
 */

#include "CLI11.hpp"
#include "json.hpp"

#include "xcat/construct.hpp"
#include "xcat/error.hpp"
#include "xcat/forms.hpp"
#include "xcat/identities.hpp"
#include "xcat/serialize.hpp"
#include "xcat/theorems.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace xcat::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kCache = 3 };

struct CommandRequest {
    std::string subcommand;
    std::string rs;
    std::string field;
    std::string q = "1";
    std::vector<std::string> lambdas;
    std::string lambda0;
    std::string lambda1;
    std::optional<int> depth;
    std::string format = "text";
    std::string cache_dir;
    int bound = 6;
    bool skip_forms = false;
    int range = 4;
    std::string corrupt;
    std::string cache_action = "list";
    unsigned threads = 0;

    const std::string& lambda() const {
        if (lambdas.empty()) throw UnsupportedError("--lambda is required");
        return lambdas.front();
    }
};

// --- character tables ------------------------------------------------------------

struct CharacterRow {
    Weight weight;
    long multiplicity = 0;
};

struct CharacterTable {
    nlohmann::ordered_json meta;
    std::vector<CharacterRow> rows;
    long total = 0;
};

/// Rows by descending height, ties broken lexicographically.
inline CharacterTable make_table(const RootSystem& rs, const Character& ch, nlohmann::ordered_json meta) {
    CharacterTable t;
    t.meta = std::move(meta);
    for (const auto& [mu, k] : ch)
        if (k > 0) t.rows.push_back({mu, k});
    std::sort(t.rows.begin(), t.rows.end(), [&](const CharacterRow& a, const CharacterRow& b) {
        const long ha = rs.scaled_height(a.weight), hb = rs.scaled_height(b.weight);
        return ha != hb ? ha > hb : a.weight < b.weight;
    });
    for (const auto& r : t.rows) t.total += r.multiplicity;
    return t;
}

template <Field F>
nlohmann::ordered_json object_meta(const GradedObject<F>& M) {
    nlohmann::ordered_json m;
    m["rs"] = M.rs.descriptor();
    m["field"] = M.ctx.descriptor();
    m["q"] = M.ctx.q_literal;
    m["ell"] = M.ctx.ell;
    m["lambda"] = M.lambda ? nlohmann::ordered_json(M.lambda->to_string()) : nlohmann::ordered_json();
    m["policy"] = M.policy;
    m["complete"] = M.complete;
    m["truncation_height"] =
        M.truncation_height ? nlohmann::ordered_json(*M.truncation_height) : nlohmann::ordered_json();
    return m;
}

inline std::string render_json(const CharacterTable& t) {
    nlohmann::ordered_json j;
    j["meta"] = t.meta;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        row["weight"] = r.weight.coords;
        row["multiplicity"] = r.multiplicity;
        rows.push_back(row);
    }
    j["rows"] = rows;
    j["total"] = t.total;
    return j.dump(2) + "\n";
}

inline std::string render_csv(const CharacterTable& t) {
    std::string s;
    const std::size_t r = t.rows.empty() ? 0 : t.rows.front().weight.size();
    for (std::size_t i = 0; i < r; ++i) s += "c" + std::to_string(i + 1) + ",";
    s += "multiplicity\n";
    for (const auto& row : t.rows) s += row.weight.to_string() + "," + std::to_string(row.multiplicity) + "\n";
    return s;
}

inline std::string render_tex(const CharacterTable& t) {
    std::string s = "\\chi = ";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i) s += " + ";
        if (t.rows[i].multiplicity != 1) s += std::to_string(t.rows[i].multiplicity) + "\\,";
        s += "e^{(" + t.rows[i].weight.to_string() + ")}";
    }
    if (t.rows.empty()) s += "0";
    return s + "\n";
}

inline std::string render_text(const CharacterTable& t) {
    std::string s;
    for (const auto& [k, v] : t.meta.items()) s += "# " + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    for (const auto& row : t.rows) s += row.weight.to_string() + "\t" + std::to_string(row.multiplicity) + "\n";
    s += "total\t" + std::to_string(t.total) + "\n";
    return s;
}

inline std::string render(const CharacterTable& t, const std::string& format) {
    if (format == "json") return render_json(t);
    if (format == "csv") return render_csv(t);
    if (format == "tex") return render_tex(t);
    return render_text(t);
}

inline std::string render(const TheoremReport& r, const std::string& format) {
    return format == "json" ? r.to_json_lines() : r.to_text();
}

// --- command implementations --------------------------------------------------------

struct Session {
    const CommandRequest& req;
    std::ostream& out;
    std::optional<ObjectCache> cache;

    explicit Session(const CommandRequest& r, std::ostream& o) : req(r), out(o) {
        if (!r.cache_dir.empty()) cache.emplace(r.cache_dir);
    }
};

inline BuildPolicy policy_of(const CommandRequest& req) {
    return req.depth ? BuildPolicy::fixed_depth(*req.depth) : BuildPolicy::dominant_auto();
}

/// Builds S(lambda), or loads it from the cache when an entry exists.
template <Field F>
GradedObject<F> obtain(Session& s, const RootSystem& rs, const FieldContext<F>& ctx, const Weight& lambda,
                       const BuildPolicy& policy) {
    const CacheRequest key{rs.descriptor(), ctx.descriptor(), ctx.q_literal, "qbinom", lambda.to_string(),
                           policy.to_string()};
    if (s.cache) {
        if (auto text = s.cache->read(key)) {
            auto loaded = deserialize(*text, ctx.field);
            if (request_of(loaded.object).canonical() != key.canonical())
                throw CacheError("cache: entry " + s.cache->path_for(key).string() + " belongs to another request");
            return std::move(loaded.object);
        }
    }
    BuildRequest<F> breq{rs, ctx, lambda, policy, {}, s.req.threads};
    GradedObject<F> M = build_simple(breq);
    if (s.cache) s.cache->write(key, serialize(M));
    return M;
}

template <Field F>
int cmd_char(Session& s, const RootSystem& rs, const FieldContext<F>& ctx) {
    const auto M = obtain(s, rs, ctx, Weight::parse(s.req.lambda()), policy_of(s.req));
    s.out << render(make_table(rs, character(M), object_meta(M)), s.req.format);
    return kOk;
}

template <Field F>
int emit_reports(Session& s, const std::vector<TheoremReport>& reports, const std::string& name) {
    bool ok = true;
    for (const auto& r : reports) {
        s.out << render(r, s.req.format);
        ok = ok && r.pass();
    }
    if (s.req.format != "json") s.out << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kCheckFailed;
}

template <Field F>
int cmd_verify(Session& s, const RootSystem& rs, const FieldContext<F>& ctx) {
    const auto M = obtain(s, rs, ctx, Weight::parse(s.req.lambda()), policy_of(s.req));
    std::vector<TheoremReport> reports{verify_axioms(M, s.req.bound)};
    if (!s.req.skip_forms) {
        const auto b = build_form(M);
        reports.push_back(verify_adjointness(M, b, s.req.bound));
        reports.push_back(verify_nondegenerate(M.field(), b));
        reports.push_back(verify_g_self_adjoint(M, b));
    }
    RelationBounds bounds;
    bounds.divided_powers = s.req.bound;
    for (auto& r : verify_relations(M, bounds)) reports.push_back(std::move(r));
    if (M.lambda && is_restricted(*M.lambda, ctx.ell) && M.complete) reports.push_back(verify_f_cyclicity(M));
    return emit_reports<F>(s, reports, "verify");
}

inline TheoremReport comparison(const std::string& tag, const std::string& inputs, const Character& got,
                                const Character& expected) {
    TheoremReport rep(tag, inputs);
    for (const auto& [mu, k] : got) {
        auto it = expected.find(mu);
        const long e = it == expected.end() ? 0 : it->second;
        rep.record("character", "(" + mu.to_string() + ")", k == e,
                   "multiplicity " + std::to_string(k) + ", expected " + std::to_string(e));
    }
    for (const auto& [mu, k] : expected)
        if (!got.count(mu)) rep.record("character", "(" + mu.to_string() + ")", false, "missing, expected " + std::to_string(k));
    return rep;
}

template <Field F>
void show_character(Session& s, const std::string& title, const GradedObject<F>& M) {
    if (s.req.format == "json") return;
    s.out << "## " << title << "\n" << render(make_table(M.rs, character(M), object_meta(M)), s.req.format);
}

template <Field F>
int cmd_frobenius(Session& s, const RootSystem& rs, const FieldContext<F>& ctx) {
    if (!ctx.positive_odd()) throw HypothesisError("frobenius needs a context with ell > 0 (q = " + ctx.q_literal + ")");
    const int ell = ctx.ell;
    const Weight lambda = Weight::parse(s.req.lambda());
    const BuildPolicy source_policy = policy_of(s.req);
    const BuildPolicy target_policy = s.req.depth ? BuildPolicy::fixed_depth(ell * *s.req.depth) : source_policy;

    const auto S1 = obtain(s, rs, classical_context(ctx), lambda, source_policy);
    const auto P = frobenius_pullback(S1, ctx);
    const auto R = obtain(s, rs, ctx, ell * lambda, target_policy);
    show_character(s, "pull-back of S(" + lambda.to_string() + ")", P);
    show_character(s, "S(" + (ell * lambda).to_string() + ")", R);

    const std::string inputs = rs.descriptor() + " " + ctx.descriptor() + " q=" + ctx.q_literal + " lambda=" + lambda.to_string();
    std::vector<TheoremReport> reports{comparison("frobenius", inputs, character(P), character(R)),
                                       verify_axioms(P, s.req.bound)};
    for (auto& r : verify_relations(P)) reports.push_back(std::move(r));
    return emit_reports<F>(s, reports, "frobenius");
}

template <Field F>
GradedObject<F> steinberg_object(Session& s, const RootSystem& rs, const FieldContext<F>& ctx, const Weight& l0,
                                 const Weight& l1) {
    if (!ctx.positive_odd()) throw HypothesisError("steinberg needs a context with ell > 0 (q = " + ctx.q_literal + ")");
    if (!is_restricted(l0, ctx.ell))
        throw HypothesisError("lambda0 = " + l0.to_string() + " not restricted for ell = " + std::to_string(ctx.ell));
    const auto S0 = obtain(s, rs, ctx, l0, BuildPolicy::dominant_auto());
    const auto S1 = frobenius_pullback(obtain(s, rs, classical_context(ctx), l1, BuildPolicy::dominant_auto()), ctx);
    return steinberg_tensor(S0, S1);
}

template <Field F>
int cmd_steinberg(Session& s, const RootSystem& rs, const FieldContext<F>& ctx) {
    if (s.req.lambda0.empty() || s.req.lambda1.empty()) throw UnsupportedError("steinberg needs --lambda0 and --lambda1");
    const Weight l0 = Weight::parse(s.req.lambda0), l1 = Weight::parse(s.req.lambda1);
    const auto T = steinberg_object(s, rs, ctx, l0, l1);
    const Weight target = l0 + ctx.ell * l1;
    const auto R = obtain(s, rs, ctx, target, BuildPolicy::dominant_auto());
    show_character(s, "S(" + l0.to_string() + ") (x) pull-back of S(" + l1.to_string() + ")", T);
    show_character(s, "S(" + target.to_string() + ")", R);

    const std::string inputs = rs.descriptor() + " " + ctx.descriptor() + " q=" + ctx.q_literal +
                               " lambda0=" + l0.to_string() + " lambda1=" + l1.to_string();
    TheoremReport prim("steinberg-primitive", inputs);
    const auto d = decompose(T);
    std::string listed;
    for (const Weight& w : d) listed += "(" + w.to_string() + ")";
    prim.record("primitive", "(" + target.to_string() + ")", d == std::multiset<Weight>{target}, "primitive weights " + listed);
    std::vector<TheoremReport> reports{comparison("steinberg", inputs, character(T), character(R)), prim,
                                       verify_axioms(T, s.req.bound)};
    for (auto& r : verify_relations(T)) reports.push_back(std::move(r));
    return emit_reports<F>(s, reports, "steinberg");
}

template <Field F>
int cmd_decompose(Session& s, const RootSystem& rs, const FieldContext<F>& ctx) {
    std::optional<GradedObject<F>> M;
    if (!s.req.lambda0.empty() || !s.req.lambda1.empty()) {
        if (s.req.lambda0.empty() || s.req.lambda1.empty()) throw UnsupportedError("decompose needs both --lambda0 and --lambda1");
        M.emplace(steinberg_object(s, rs, ctx, Weight::parse(s.req.lambda0), Weight::parse(s.req.lambda1)));
    } else {
        if (s.req.lambdas.empty()) throw UnsupportedError("decompose needs --lambda (repeatable) or --lambda0/--lambda1");
        for (const auto& text : s.req.lambdas) {
            auto S = obtain(s, rs, ctx, Weight::parse(text), policy_of(s.req));
            M = M ? direct_sum(*M, S) : std::move(S);
        }
    }
    Character prim;
    for (const auto& [mu, k] : primitive_dims(*M)) prim[mu] = static_cast<long>(k);
    nlohmann::ordered_json meta = object_meta(*M);
    meta["table"] = "primitive weights";
    s.out << render(make_table(rs, prim, meta), s.req.format);
    return kOk;
}

inline int cmd_identities(Session& s) {
    QuantumBinomials table;
    if (!s.req.corrupt.empty()) {
        const Weight ab = Weight::parse(s.req.corrupt);
        if (ab.size() != 2) throw UnsupportedError("--corrupt expects a,b");
        table.corrupt(ab[0], ab[1], table(ab[0], ab[1]) + LaurentPoly(1));
    }
    const TheoremReport rep = verify_identities(s.req.range, table);
    if (s.req.format == "json") {
        s.out << rep.to_json_lines();
    } else {
        // Failure lists can be huge; show the first few.
        TheoremReport head = rep;
        if (head.failures.size() > 20) head.failures.resize(20);
        s.out << head.to_text();
        if (rep.failures.size() > 20) s.out << "  ... " << rep.failures.size() - 20 << " more failures\n";
        s.out << "identities: " << (rep.pass() ? "PASS" : "FAIL") << "\n";
    }
    return rep.pass() ? kOk : kCheckFailed;
}

inline int cmd_cache(Session& s) {
    if (!s.cache) throw UnsupportedError("no cache directory (use --cache-dir or XCAT_CACHE_DIR)");
    const auto& action = s.req.cache_action;
    if (action == "path") {
        s.out << s.cache->directory().string() << "\n";
    } else if (action == "list") {
        for (const auto& p : s.cache->entries()) {
            std::ifstream in(p);
            std::string header, key;
            std::getline(in, header);
            std::getline(in, key);
            s.out << p.filename().string() << "\t" << (header == kCacheHeader ? key.substr(key.rfind(' ') + 1) : "?") << "\n";
        }
    } else if (action == "clear") {
        s.out << "removed " << s.cache->clear() << " entries\n";
    } else {
        throw UnsupportedError("unknown cache action '" + action + "' (list, clear, path)");
    }
    return kOk;
}

template <Field F>
int dispatch_typed(Session& s, const F& field) {
    const RootSystem rs = RootSystem::parse(s.req.rs);
    const FieldContext<F> ctx = make_context(field, s.req.q);
    const std::string& c = s.req.subcommand;
    if (c == "char") return cmd_char(s, rs, ctx);
    if (c == "verify") return cmd_verify(s, rs, ctx);
    if (c == "frobenius") return cmd_frobenius(s, rs, ctx);
    if (c == "steinberg") return cmd_steinberg(s, rs, ctx);
    if (c == "decompose") return cmd_decompose(s, rs, ctx);
    throw UnsupportedError("unknown subcommand '" + c + "'");
}

inline int execute(const CommandRequest& req, std::ostream& out) {
    Session s(req, out);
    if (req.subcommand == "identities") return cmd_identities(s);
    if (req.subcommand == "cache") return cmd_cache(s);
    return std::visit([&](const auto& field) { return dispatch_typed(s, field); }, parse_field_descriptor(req.field));
}

// --- argument parsing ----------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"xcat: simple objects of the category of graded spaces with divided-power operators"};
    app.require_subcommand(1);
    CommandRequest req;

    const std::vector<std::string> formats{"json", "csv", "tex", "text"};
    auto common = [&](CLI::App* sub, bool object) {
        if (object) {
            sub->add_option("rs", req.rs, "root system: A<n>, D<n>, E6, E7, E8")->required();
            sub->add_option("field", req.field, "field: rational, fp:<p>, cyclo:<d>")->required();
            sub->add_option("--q", req.q, "q literal: 1, -1, integer, zeta^<k>");
            sub->add_option("--threads", req.threads, "worker threads for construction (0 = all cores)");
        }
        sub->add_option("--format", req.format, "output format")->check(CLI::IsMember(formats));
        sub->add_option("--cache-dir", req.cache_dir, "cache directory")->envname("XCAT_CACHE_DIR");
    };

    auto* ch = app.add_subcommand("char", "character table of S(lambda)");
    common(ch, true);
    ch->add_option("--lambda", req.lambdas, "highest weight, e.g. 1,0")->required()->expected(1);
    ch->add_option("--depth", req.depth, "build to this many levels below lambda (any lambda)");

    auto* ve = app.add_subcommand("verify", "build S(lambda) and run the verifier battery");
    common(ve, true);
    ve->add_option("--lambda", req.lambdas, "highest weight")->required()->expected(1);
    ve->add_option("--depth", req.depth, "truncation depth");
    ve->add_option("--bound", req.bound, "operator index bound for axioms, forms and divided powers")
        ->check(CLI::Range(1, 64));
    ve->add_flag("--skip-forms", req.skip_forms, "skip the contravariant form checks");

    auto* st = app.add_subcommand("steinberg", "S(lambda0) (x) Frobenius pull-back of S(lambda1) against S(lambda0 + ell lambda1)");
    common(st, true);
    st->add_option("--lambda0", req.lambda0, "restricted weight")->required();
    st->add_option("--lambda1", req.lambda1, "dominant weight")->required();
    st->add_option("--bound", req.bound, "operator index bound for the axioms")->check(CLI::Range(1, 64));

    auto* fr = app.add_subcommand("frobenius", "pull-back of S(lambda) from q = 1 against S(ell lambda)");
    common(fr, true);
    fr->add_option("--lambda", req.lambdas, "dominant weight")->required()->expected(1);
    fr->add_option("--depth", req.depth, "truncation depth of the q = 1 object");
    fr->add_option("--bound", req.bound, "operator index bound for the axioms")->check(CLI::Range(1, 64));

    auto* id = app.add_subcommand("identities", "exhaustive quantum binomial identity suite");
    common(id, false);
    id->add_option("--range", req.range, "box size N")->check(CLI::Range(1, 40));
    id->add_option("--corrupt", req.corrupt, "add 1 to the table entry a,b before checking")->group("");

    auto* de = app.add_subcommand("decompose", "primitive weights of a direct sum or a Steinberg tensor object");
    common(de, true);
    de->add_option("--lambda", req.lambdas, "summand highest weight (repeatable)");
    de->add_option("--depth", req.depth, "truncation depth");
    de->add_option("--lambda0", req.lambda0, "restricted weight");
    de->add_option("--lambda1", req.lambda1, "weight to pull back");

    auto* ca = app.add_subcommand("cache", "list, clear or locate cache entries");
    common(ca, false);
    ca->add_option("action", req.cache_action, "list | clear | path");

    std::vector<const char*> argv{"xcat"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << e.what() << "\n";
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    for (auto* sub : app.get_subcommands()) req.subcommand = sub->get_name();

    try {
        return execute(req, out);
    } catch (const CacheError& e) {
        err << "cache error: " << e.what() << "\n";
        return kCache;
    } catch (const ConsistencyError& e) {
        err << "check failed: " << e.what() << "\n";
        return kCheckFailed;
    } catch (const HypothesisError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace xcat::cli
