#pragma once

/**
 * @file gspace.hpp
 * @brief Weight-graded spaces with divided-power operators E_{alpha,n}, F_{alpha,n}.
 *
 * Operator storage is keyed by the lower weight: for key (mu, alpha, n) the E matrix maps
 * M_mu -> M_{mu+n alpha} (dim(mu+n alpha) x dim(mu)) and the F matrix maps back
 * (dim(mu) x dim(mu+n alpha)). Accessors take the argument weight instead; index 0 is the
 * identity and negative indices are zero.
 *
 * Coefficient choices use the argument-weight convention: c(nu, alpha, m, n, r) is the
 * coefficient of F_{alpha,n-r} E_{alpha,m-r} in E_{alpha,m} F_{alpha,n} acting on M_nu.
 */

#include "xcat/error.hpp"
#include "xcat/field_context.hpp"
#include "xcat/matrix.hpp"
#include "xcat/quantum.hpp"
#include "xcat/report.hpp"
#include "xcat/roots.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace xcat {

// --- coefficient choices ----------------------------------------------------

template <Field F>
struct CoefficientChoice {
    using element = typename F::element;
    using function = std::function<element(const Weight& nu, int alpha, int m, int n, int r)>;

    std::string tag;
    F field;
    function fn;

    element operator()(const Weight& nu, int alpha, int m, int n, int r) const {
        if (r < 0) return field.zero();
        if (r == 0) return field.one();
        return fn(nu, alpha, m, n, r);
    }
};

/// The default choice: c(nu, alpha, m, n, r) = [<nu, alpha^vee> + m - n, r] evaluated at q.
template <Field F>
CoefficientChoice<F> quantum_binomial_choice(const FieldContext<F>& ctx) {
    using element = typename F::element;
    struct Memo {
        std::shared_mutex mutex;
        std::map<std::pair<int, int>, element> values;
    };
    auto memo = std::make_shared<Memo>();
    auto fn = [ctx, memo](const Weight& nu, int alpha, int m, int n, int r) -> element {
        const std::pair<int, int> key{nu[static_cast<std::size_t>(alpha)] + m - n, r};
        {
            std::shared_lock lock(memo->mutex);
            auto it = memo->values.find(key);
            if (it != memo->values.end()) return it->second;
        }
        element value = ctx.evaluate(quantum_binomial(key.first, key.second));
        std::unique_lock lock(memo->mutex);
        return memo->values.emplace(key, std::move(value)).first->second;
    };
    return {"qbinom", ctx.field, fn};
}

/**
 * Symmetry in m and n, restated in the argument-weight convention:
 * c(nu + n alpha, alpha, m, n, r) == c(nu + m alpha, alpha, n, m, r) for every base nu.
 * Checked on the given base weights, all alpha and 1 <= m, n <= bound.
 */
template <Field F>
bool is_symmetric(const CoefficientChoice<F>& c, const RootSystem& rs, const std::vector<Weight>& bases, int bound) {
    for (const Weight& nu : bases)
        for (int a = 0; a < rs.rank(); ++a) {
            const Weight root = rs.simple_root(a);
            for (int m = 1; m <= bound; ++m)
                for (int n = 1; n <= bound; ++n)
                    for (int r = 1; r <= std::min(m, n); ++r)
                        if (!c.field.equal(c(nu + n * root, a, m, n, r), c(nu + m * root, a, n, m, r))) return false;
        }
    return true;
}

// --- graded objects ---------------------------------------------------------

struct OpKey {
    Weight mu;
    int alpha = 0;
    int n = 0;
    auto operator<=>(const OpKey&) const = default;
    bool operator==(const OpKey&) const = default;
};

using Character = std::map<Weight, long>;

template <Field F>
struct GradedObject {
    using element = typename F::element;

    GradedObject(FieldContext<F> c, RootSystem r, CoefficientChoice<F> ch)
        : ctx(std::move(c)), rs(std::move(r)), choice(std::move(ch)) {}

    FieldContext<F> ctx;
    RootSystem rs;
    CoefficientChoice<F> choice;

    std::map<Weight, std::size_t> dims;
    std::map<OpKey, Matrix<F>> e_ops;
    std::map<OpKey, Matrix<F>> f_ops;

    std::optional<Weight> lambda;
    std::string policy;
    bool complete = true;
    std::optional<int> truncation_height;
    /// Every operator between two nonzero spaces is stored explicitly (possibly as a zero matrix).
    bool operators_total = false;
    /// Pivot columns of G at each constructed weight, in delta-space coordinates.
    std::map<Weight, std::vector<std::size_t>> pivots;

    const F& field() const { return ctx.field; }

    std::size_t dim(const Weight& mu) const {
        auto it = dims.find(mu);
        return it == dims.end() ? 0 : it->second;
    }

    /// E_{alpha,n} restricted to M_source.
    Matrix<F> e_from(const Weight& source, int alpha, int n) const {
        const std::size_t ds = dim(source);
        if (n == 0) return Matrix<F>::identity(field(), ds);
        if (n < 0) return Matrix<F>(field(), dim(source - (-n) * rs.simple_root(alpha)), ds);
        const Weight target = source + n * rs.simple_root(alpha);
        return lookup(e_ops, {source, alpha, n}, dim(target), ds);
    }

    /// F_{alpha,n} restricted to M_source.
    Matrix<F> f_from(const Weight& source, int alpha, int n) const {
        const std::size_t ds = dim(source);
        if (n == 0) return Matrix<F>::identity(field(), ds);
        if (n < 0) return Matrix<F>(field(), dim(source + (-n) * rs.simple_root(alpha)), ds);
        const Weight target = source - n * rs.simple_root(alpha);
        return lookup(f_ops, {target, alpha, n}, dim(target), ds);
    }

    long max_scaled_height() const {
        long best = 0;
        bool first = true;
        for (const auto& [mu, d] : dims) {
            const long h = rs.scaled_height(mu);
            if (first || h > best) best = h;
            first = false;
        }
        return best;
    }

private:
    Matrix<F> lookup(const std::map<OpKey, Matrix<F>>& ops, const OpKey& key, std::size_t rows, std::size_t cols) const {
        auto it = ops.find(key);
        if (it != ops.end()) return it->second;
        if (operators_total && rows > 0 && cols > 0)
            throw ConsistencyError("operator (" + key.mu.to_string() + ", " + std::to_string(key.alpha) + ", " +
                                   std::to_string(key.n) + ") is missing between nonzero spaces");
        return Matrix<F>(field(), rows, cols);
    }
};

template <Field F>
bool same_context(const FieldContext<F>& a, const FieldContext<F>& b) {
    return a.descriptor() == b.descriptor() && a.field.equal(a.q, b.q);
}

// --- delta spaces -----------------------------------------------------------

struct DeltaBlock {
    int alpha = 0;
    int n = 0;
    std::size_t dim = 0;
    Weight source;
    std::size_t offset = 0;
};

struct DeltaSpace {
    Weight base;
    std::vector<DeltaBlock> blocks;
    std::size_t total_dim = 0;
};

/// Blocks M_{mu + n alpha} != 0, alpha ascending then n ascending.
template <Field F>
DeltaSpace assemble_delta(const GradedObject<F>& M, const Weight& mu, std::optional<long> top_scaled_height = {}) {
    DeltaSpace out{mu, {}, 0};
    if (M.dims.empty()) return out;
    const long top = top_scaled_height ? *top_scaled_height : M.max_scaled_height();
    const long det = M.rs.det_cartan();
    const long base = M.rs.scaled_height(mu);
    for (int a = 0; a < M.rs.rank(); ++a) {
        const Weight root = M.rs.simple_root(a);
        Weight w = mu;
        for (int n = 1; base + n * det <= top; ++n) {
            w = w + root;
            const std::size_t d = M.dim(w);
            if (d == 0) continue;
            out.blocks.push_back({a, n, d, w, out.total_dim});
            out.total_dim += d;
        }
    }
    return out;
}

/// Block (target (alpha,m), source (beta,n)) of G_{delta mu}.
template <Field F>
Matrix<F> g_block(const GradedObject<F>& M, const CoefficientChoice<F>& c, const DeltaBlock& target,
                  const DeltaBlock& source) {
    const F& f = M.field();
    const RootSystem& rs = M.rs;
    const int alpha = target.alpha, m = target.n, beta = source.alpha, n = source.n;
    if (alpha != beta) {
        const Weight mid = source.source + m * rs.simple_root(alpha);
        if (M.dim(mid) == 0) return Matrix<F>(f, target.dim, source.dim);
        return multiply(f, M.f_from(mid, beta, n), M.e_from(source.source, alpha, m));
    }
    const Weight root = rs.simple_root(alpha);
    Matrix<F> out(f, target.dim, source.dim);
    for (int r = 0; r <= std::min(m, n); ++r) {
        const auto coeff = c(source.source, alpha, m, n, r);
        if (f.is_zero(coeff)) continue;
        const Weight mid = source.source + (m - r) * root;
        if (M.dim(mid) == 0) continue;
        const Matrix<F> term = multiply(f, M.f_from(mid, alpha, n - r), M.e_from(source.source, alpha, m - r));
        out = add(f, out, scale(f, coeff, term));
    }
    return out;
}

template <Field F>
Matrix<F> g_delta(const GradedObject<F>& M, const DeltaSpace& delta, const CoefficientChoice<F>& c) {
    const F& f = M.field();
    Matrix<F> g(f, delta.total_dim, delta.total_dim);
    for (const DeltaBlock& t : delta.blocks)
        for (const DeltaBlock& s : delta.blocks) place(g, g_block(M, c, t, s), t.offset, s.offset);
    return g;
}

template <Field F>
Matrix<F> g_delta(const GradedObject<F>& M, const Weight& mu) {
    return g_delta(M, assemble_delta(M, mu), M.choice);
}

/// E_mu : M_mu -> M_{delta mu}, the blocks E_{alpha,n} stacked in delta order.
template <Field F>
Matrix<F> stacked_e(const GradedObject<F>& M, const DeltaSpace& delta) {
    Matrix<F> out(M.field(), delta.total_dim, M.dim(delta.base));
    for (const DeltaBlock& b : delta.blocks) place(out, M.e_from(delta.base, b.alpha, b.n), b.offset, 0);
    return out;
}

/// F_mu : M_{delta mu} -> M_mu.
template <Field F>
Matrix<F> stacked_f(const GradedObject<F>& M, const DeltaSpace& delta) {
    Matrix<F> out(M.field(), M.dim(delta.base), delta.total_dim);
    for (const DeltaBlock& b : delta.blocks) place(out, M.f_from(b.source, b.alpha, b.n), 0, b.offset);
    return out;
}

// --- verification -----------------------------------------------------------

/// A truncated object only satisfies the axioms down to its truncation level.
template <Field F>
bool below_truncation(const GradedObject<F>& M, const Weight& w) {
    if (M.complete || !M.truncation_height || !M.lambda) return false;
    return M.rs.scaled_height(*M.lambda) - M.rs.scaled_height(w) > *M.truncation_height * M.rs.det_cartan();
}

namespace detail {
inline std::string at(const Weight& mu, std::initializer_list<std::pair<const char*, int>> indices) {
    std::string s = "(" + mu.to_string() + ")";
    for (const auto& [name, v] : indices) s += std::string(" ") + name + "=" + std::to_string(v);
    return s;
}
}  // namespace detail

/// Right-hand side of (X2)': E_{alpha,m} F_{beta,n} on M_nu rewritten with F's on the left.
template <Field F>
Matrix<F> commuted_form(const GradedObject<F>& M, const Weight& nu, int alpha, int beta, int m, int n) {
    const F& f = M.field();
    const RootSystem& rs = M.rs;
    if (alpha != beta) return multiply(f, M.f_from(nu + m * rs.simple_root(alpha), beta, n), M.e_from(nu, alpha, m));
    const Weight target = nu + (m - n) * rs.simple_root(alpha);
    Matrix<F> out(f, M.dim(target), M.dim(nu));
    for (int r = 0; r <= std::min(m, n); ++r) {
        const auto coeff = M.choice(nu, alpha, m, n, r);
        if (f.is_zero(coeff)) continue;
        const Weight mid = nu + (m - r) * rs.simple_root(alpha);
        if (M.dim(mid) == 0) continue;
        out = add(f, out, scale(f, coeff, multiply(f, M.f_from(mid, alpha, n - r), M.e_from(nu, alpha, m - r))));
    }
    return out;
}

template <Field F>
TheoremReport verify_axioms(const GradedObject<F>& M, int bound) {
    const F& f = M.field();
    const RootSystem& rs = M.rs;
    TheoremReport rep("axioms", M.rs.descriptor() + " " + M.ctx.descriptor() + " q=" + M.ctx.q_literal +
                                    " bound=" + std::to_string(bound));

    // (X1): stored spaces are nonzero, stored operators have consistent shapes and nonzero endpoints.
    for (const auto& [mu, d] : M.dims) rep.record("X1", "(" + mu.to_string() + ")", d > 0, "zero space stored");
    auto check_ops = [&](const std::map<OpKey, Matrix<F>>& ops, bool is_e) {
        for (const auto& [key, mat] : ops) {
            const Weight upper = key.mu + key.n * rs.simple_root(key.alpha);
            const std::size_t lo = M.dim(key.mu), hi = M.dim(upper);
            const bool endpoints = lo > 0 && hi > 0;
            const bool shape = is_e ? (mat.rows() == hi && mat.cols() == lo) : (mat.rows() == lo && mat.cols() == hi);
            rep.record("X1", detail::at(key.mu, {{"alpha", key.alpha}, {"n", key.n}}), endpoints && shape,
                       std::string(is_e ? "E" : "F") + (endpoints ? " has inconsistent shape" : " touches a zero space"));
        }
    };
    check_ops(M.e_ops, true);
    check_ops(M.f_ops, false);
    if (!rep.pass()) return rep;

    // (X2)'
    for (const auto& [nu, d] : M.dims)
        for (int alpha = 0; alpha < rs.rank(); ++alpha)
            for (int beta = 0; beta < rs.rank(); ++beta)
                for (int m = 1; m <= bound; ++m)
                    for (int n = 1; n <= bound; ++n) {
                        const Weight target = nu + m * rs.simple_root(alpha) - n * rs.simple_root(beta);
                        if (M.dim(target) == 0 || below_truncation(M, nu - n * rs.simple_root(beta))) continue;
                        const Matrix<F> lhs =
                            multiply(f, M.e_from(nu - n * rs.simple_root(beta), alpha, m), M.f_from(nu, beta, n));
                        rep.record("X2'", detail::at(nu, {{"alpha", alpha}, {"beta", beta}, {"m", m}, {"n", n}}),
                                   lhs == commuted_form(M, nu, alpha, beta, m, n));
                    }

    // (X3): M_mu = ker E_mu (+) im F_mu.
    for (const auto& [mu, d] : M.dims) {
        const DeltaSpace delta = assemble_delta(M, mu);
        const Matrix<F> e = stacked_e(M, delta);
        const Matrix<F> fm = stacked_f(M, delta);
        const std::size_t rank_e = rank(f, e), rank_f = rank(f, fm);
        const std::size_t rank_ef = delta.total_dim == 0 ? 0 : rank(f, multiply(f, e, fm));
        const bool ok = rank_f + (d - rank_e) == d && rank_ef == rank_f;
        rep.record("X3", "(" + mu.to_string() + ")", ok,
                   "rank F=" + std::to_string(rank_f) + " nullity E=" + std::to_string(d - rank_e) +
                       " rank EF=" + std::to_string(rank_ef) + " dim=" + std::to_string(d));
    }
    return rep;
}

// --- characters and decomposition -------------------------------------------

template <Field F>
Character character(const GradedObject<F>& M) {
    Character ch;
    for (const auto& [mu, d] : M.dims)
        if (d > 0) ch[mu] = static_cast<long>(d);
    return ch;
}

inline long total_dimension(const Character& ch) {
    long s = 0;
    for (const auto& [mu, k] : ch) s += k;
    return s;
}

inline Character dilate(const Character& ch, int factor) {
    Character out;
    for (const auto& [mu, k] : ch) out[factor * mu] = k;
    return out;
}

inline Character convolve(const Character& a, const Character& b) {
    Character out;
    for (const auto& [mu, k] : a)
        for (const auto& [nu, l] : b) out[mu + nu] += k * l;
    return out;
}

template <Field F>
GradedObject<F> direct_sum(const GradedObject<F>& M, const GradedObject<F>& N) {
    if (!same_context(M.ctx, N.ctx)) throw HypothesisError("direct_sum: field contexts differ");
    if (M.rs.descriptor() != N.rs.descriptor()) throw HypothesisError("direct_sum: root systems differ");
    if (M.choice.tag != N.choice.tag) throw HypothesisError("direct_sum: coefficient choices differ");
    const F& f = M.field();
    GradedObject<F> S(M.ctx, M.rs, M.choice);
    S.complete = M.complete && N.complete;
    S.operators_total = M.operators_total && N.operators_total;
    S.policy = "sum";
    for (const auto& [mu, d] : M.dims) S.dims[mu] += d;
    for (const auto& [mu, d] : N.dims) S.dims[mu] += d;

    std::set<OpKey> keys;
    for (const auto* ops : {&M.e_ops, &M.f_ops, &N.e_ops, &N.f_ops})
        for (const auto& entry : *ops) keys.insert(entry.first);
    for (const OpKey& key : keys) {
        const Weight upper = key.mu + key.n * M.rs.simple_root(key.alpha);
        Matrix<F> e(f, S.dim(upper), S.dim(key.mu));
        place(e, M.e_from(key.mu, key.alpha, key.n), 0, 0);
        place(e, N.e_from(key.mu, key.alpha, key.n), M.dim(upper), M.dim(key.mu));
        Matrix<F> fm(f, S.dim(key.mu), S.dim(upper));
        place(fm, M.f_from(upper, key.alpha, key.n), 0, 0);
        place(fm, N.f_from(upper, key.alpha, key.n), M.dim(key.mu), M.dim(upper));
        S.e_ops.emplace(key, std::move(e));
        S.f_ops.emplace(key, std::move(fm));
    }
    return S;
}

/// dim ker E_mu for each weight; only nonzero entries are returned.
template <Field F>
std::map<Weight, std::size_t> primitive_dims(const GradedObject<F>& M) {
    std::map<Weight, std::size_t> out;
    const long top = M.max_scaled_height();
    for (const auto& [mu, d] : M.dims) {
        const DeltaSpace delta = assemble_delta(M, mu, top);
        const std::size_t k = d - rank(M.field(), stacked_e(M, delta));
        if (k > 0) out[mu] = k;
    }
    return out;
}

template <Field F>
std::multiset<Weight> decompose(const GradedObject<F>& M) {
    std::multiset<Weight> out;
    for (const auto& [mu, k] : primitive_dims(M))
        for (std::size_t i = 0; i < k; ++i) out.insert(mu);
    return out;
}

}  // namespace xcat
