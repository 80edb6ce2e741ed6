#pragma once

/**
 * @file theorems.hpp
 * @brief Frobenius pull-back, the Steinberg tensor object, and checks of the operator relations.
 *
 * Isomorphism with S(mu) is established the way the category allows: axioms hold, there is a
 * single primitive weight of multiplicity one, and the character matches an independent build.
 */

#include "xcat/error.hpp"
#include "xcat/forms.hpp"
#include "xcat/gspace.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace xcat {

/// 0 <= <lambda, alpha^vee> < ell for every simple root.
inline bool is_restricted(const Weight& lambda, int ell) {
    if (ell <= 0) return false;
    for (std::size_t i = 0; i < lambda.size(); ++i)
        if (lambda[i] < 0 || lambda[i] >= ell) return false;
    return true;
}

// --- Frobenius pull-back ------------------------------------------------------

/// Stretches an object over (K, 1) by ell = the quantum characteristic of target_ctx.
template <Field F>
GradedObject<F> frobenius_pullback(const GradedObject<F>& S1, const FieldContext<F>& target_ctx) {
    if (!S1.ctx.q_is_one()) throw HypothesisError("frobenius: source object must be over q = 1");
    if (S1.ctx.descriptor() != target_ctx.descriptor())
        throw HypothesisError("frobenius: fields differ (" + S1.ctx.descriptor() + " vs " + target_ctx.descriptor() + ")");
    if (!target_ctx.positive_odd())
        throw HypothesisError("frobenius: target context needs ell > 0 and q = +-1 or of odd order");
    const int ell = target_ctx.ell;

    GradedObject<F> out(target_ctx, S1.rs, quantum_binomial_choice(target_ctx));
    if (S1.lambda) out.lambda = ell * *S1.lambda;
    out.policy = "frobenius:" + std::to_string(ell) + "(" + S1.policy + ")";
    out.complete = S1.complete;
    if (S1.truncation_height) out.truncation_height = ell * *S1.truncation_height;
    out.operators_total = S1.operators_total;
    for (const auto& [mu, d] : S1.dims) out.dims[ell * mu] = d;
    for (const auto& [key, m] : S1.e_ops) out.e_ops.emplace(OpKey{ell * key.mu, key.alpha, ell * key.n}, m);
    for (const auto& [key, m] : S1.f_ops) out.f_ops.emplace(OpKey{ell * key.mu, key.alpha, ell * key.n}, m);
    return out;
}

/// gram'(ell mu) = gram(mu).
template <Field F>
ContravariantForm<F> pullback_form(const ContravariantForm<F>& b, int ell) {
    ContravariantForm<F> out;
    for (const auto& [mu, g] : b.gram) out.gram.emplace(ell * mu, g);
    return out;
}

// --- Steinberg tensor object ----------------------------------------------------

/// Summand (S0)_nu (x) (S1)_rho of S'_mu, with its offset in S'_mu.
struct TensorSummand {
    Weight nu;
    Weight rho;
    std::size_t offset = 0;
};

namespace detail {

template <Field F>
std::map<Weight, std::vector<TensorSummand>> tensor_layout(const GradedObject<F>& S0, const GradedObject<F>& S1) {
    std::map<Weight, std::vector<TensorSummand>> layout;
    std::map<Weight, std::size_t> used;
    for (const auto& [nu, d0] : S0.dims)
        for (const auto& [rho, d1] : S1.dims) {
            const Weight mu = nu + rho;
            layout[mu].push_back({nu, rho, used[mu]});
            used[mu] += d0 * d1;
        }
    return layout;
}

}  // namespace detail

/**
 * S'_mu = sum over mu = nu + rho of (S0)_nu (x) (S1)_rho, with
 * E'_{alpha,m}(v0 (x) v1) = sum_s E_{alpha,s} v0 (x) E_{alpha,m-s} v1 and F' likewise.
 * All decompositions of mu are used, not only ell-adic ones.
 */
template <Field F>
GradedObject<F> steinberg_tensor(const GradedObject<F>& S0, const GradedObject<F>& S1) {
    if (!same_context(S0.ctx, S1.ctx)) throw HypothesisError("steinberg: field contexts differ");
    if (S0.rs.descriptor() != S1.rs.descriptor()) throw HypothesisError("steinberg: root systems differ");
    if (!S0.ctx.positive_odd())
        throw HypothesisError("steinberg: context needs ell > 0 and q = +-1 or of odd order");
    if (!S0.lambda || !S0.complete) throw HypothesisError("steinberg: first factor must be a complete S(lambda0)");
    const int ell = S0.ctx.ell;
    if (!is_restricted(*S0.lambda, ell))
        throw HypothesisError("lambda0 = " + S0.lambda->to_string() + " not restricted for ell = " + std::to_string(ell));

    const F& f = S0.field();
    const RootSystem& rs = S0.rs;
    GradedObject<F> out(S0.ctx, rs, S0.choice);
    if (S1.lambda) out.lambda = *S0.lambda + *S1.lambda;
    out.policy = "steinberg";
    out.complete = S1.complete;
    out.truncation_height = S1.truncation_height;
    out.operators_total = true;

    const auto layout = detail::tensor_layout(S0, S1);
    for (const auto& [mu, parts] : layout)
        for (const auto& p : parts) out.dims[mu] += S0.dim(p.nu) * S1.dim(p.rho);

    const long top = out.max_scaled_height();
    const long det = rs.det_cartan();
    for (const auto& [mu, parts] : layout)
        for (int a = 0; a < rs.rank(); ++a) {
            const Weight root = rs.simple_root(a);
            for (int m = 1; rs.scaled_height(mu) + m * det <= top; ++m) {
                const Weight upper = mu + m * root;
                auto up = layout.find(upper);
                if (up == layout.end()) continue;
                Matrix<F> e(f, out.dim(upper), out.dim(mu));
                Matrix<F> fm(f, out.dim(mu), out.dim(upper));
                for (const TensorSummand& lo : parts)
                    for (const TensorSummand& hi : up->second) {
                        // The block is nonzero only if hi = lo + (s alpha, (m-s) alpha).
                        const Weight diff = hi.nu - lo.nu;
                        int s = -1;
                        for (int t = 0; t <= m; ++t)
                            if (diff == t * root) s = t;
                        if (s < 0) continue;
                        place(e, kronecker(f, S0.e_from(lo.nu, a, s), S1.e_from(lo.rho, a, m - s)), hi.offset, lo.offset);
                        place(fm, kronecker(f, S0.f_from(hi.nu, a, s), S1.f_from(hi.rho, a, m - s)), lo.offset, hi.offset);
                    }
                out.e_ops.emplace(OpKey{mu, a, m}, std::move(e));
                out.f_ops.emplace(OpKey{mu, a, m}, std::move(fm));
            }
        }
    return out;
}

/// b'(v0 (x) v1, w0 (x) w1) = b0(v0, w0) b1(v1, w1), laid out as in steinberg_tensor.
template <Field F>
ContravariantForm<F> tensor_form(const GradedObject<F>& S0, const ContravariantForm<F>& b0, const GradedObject<F>& S1,
                                 const ContravariantForm<F>& b1) {
    const F& f = S0.field();
    ContravariantForm<F> out;
    for (const auto& [mu, parts] : detail::tensor_layout(S0, S1)) {
        std::size_t d = 0;
        for (const auto& p : parts) d += S0.dim(p.nu) * S1.dim(p.rho);
        Matrix<F> g(f, d, d);
        for (const auto& p : parts) place(g, kronecker(f, b0.gram.at(p.nu), b1.gram.at(p.rho)), p.offset, p.offset);
        out.gram.emplace(mu, std::move(g));
    }
    return out;
}

// --- relation verifiers ----------------------------------------------------------

/// E_{alpha,m} E_{alpha,n} = [m+n over m] E_{alpha,m+n}, and the F version, for m + n <= bound.
template <Field F>
TheoremReport verify_divided_powers(const GradedObject<F>& S, int bound) {
    const F& f = S.field();
    const RootSystem& rs = S.rs;
    TheoremReport rep("divided-powers", rs.descriptor() + " " + S.ctx.descriptor() + " bound=" + std::to_string(bound));
    for (const auto& [nu, d] : S.dims)
        for (int a = 0; a < rs.rank(); ++a) {
            const Weight root = rs.simple_root(a);
            for (int m = 0; m <= bound; ++m)
                for (int n = 0; m + n <= bound; ++n) {
                    const auto c = S.ctx.evaluate(quantum_binomial(m + n, m));
                    const std::string where = detail::at(nu, {{"alpha", a}, {"m", m}, {"n", n}});
                    if (S.dim(nu + (m + n) * root) > 0) {
                        const Matrix<F> lhs = multiply(f, S.e_from(nu + n * root, a, m), S.e_from(nu, a, n));
                        rep.record("E", where, lhs == scale(f, c, S.e_from(nu, a, m + n)));
                    }
                    if (S.dim(nu - (m + n) * root) > 0) {
                        const Matrix<F> lhs = multiply(f, S.f_from(nu - n * root, a, m), S.f_from(nu, a, n));
                        rep.record("F", where, lhs == scale(f, c, S.f_from(nu, a, m + n)));
                    }
                }
        }
    return rep;
}

/**
 * For adjacent alpha, beta and 2 <= m <= m_max:
 *   sum_r (-1)^r q^{r(2-m)} F_{alpha,r} F_{beta,1} F_{alpha,m-r} = 0, and the E version.
 * For orthogonal pairs the divided powers commute, for 1 <= m, n <= m_max.
 */
template <Field F>
TheoremReport verify_serre_lusztig(const GradedObject<F>& S, int m_max) {
    const F& f = S.field();
    const RootSystem& rs = S.rs;
    TheoremReport rep("serre-lusztig", rs.descriptor() + " " + S.ctx.descriptor() + " m<=" + std::to_string(m_max));
    const int r_count = rs.rank();
    for (const auto& [nu, d] : S.dims)
        for (int a = 0; a < r_count; ++a)
            for (int b = 0; b < r_count; ++b) {
                if (a == b) continue;
                const Weight ra = rs.simple_root(a), rb = rs.simple_root(b);
                if (rs.adjacent(a, b)) {
                    for (int m = 2; m <= m_max; ++m) {
                        const std::string where = detail::at(nu, {{"alpha", a}, {"beta", b}, {"m", m}});
                        const Weight low = nu - m * ra - rb, high = nu + m * ra + rb;
                        Matrix<F> fsum(f, S.dim(low), d), esum(f, S.dim(high), d);
                        for (int r = 0; r <= m; ++r) {
                            auto coeff = S.ctx.q_power(static_cast<long>(r) * (2 - m));
                            if (r % 2) coeff = f.neg(coeff);
                            if (S.dim(low) > 0) {
                                const Weight w1 = nu - (m - r) * ra, w2 = w1 - rb;
                                const Matrix<F> t = multiply(f, S.f_from(w2, a, r),
                                                             multiply(f, S.f_from(w1, b, 1), S.f_from(nu, a, m - r)));
                                fsum = add(f, fsum, scale(f, coeff, t));
                            }
                            if (S.dim(high) > 0) {
                                const Weight w1 = nu + (m - r) * ra, w2 = w1 + rb;
                                const Matrix<F> t = multiply(f, S.e_from(w2, a, r),
                                                             multiply(f, S.e_from(w1, b, 1), S.e_from(nu, a, m - r)));
                                esum = add(f, esum, scale(f, coeff, t));
                            }
                        }
                        if (S.dim(low) > 0) rep.record("F-adjacent", where, is_zero(f, fsum));
                        if (S.dim(high) > 0) rep.record("E-adjacent", where, is_zero(f, esum));
                    }
                } else if (a < b) {
                    for (int m = 1; m <= m_max; ++m)
                        for (int n = 1; n <= m_max; ++n) {
                            const std::string where = detail::at(nu, {{"alpha", a}, {"beta", b}, {"m", m}, {"n", n}});
                            if (S.dim(nu - m * ra - n * rb) > 0) {
                                const Matrix<F> ab = multiply(f, S.f_from(nu - n * rb, a, m), S.f_from(nu, b, n));
                                const Matrix<F> ba = multiply(f, S.f_from(nu - m * ra, b, n), S.f_from(nu, a, m));
                                rep.record("F-orthogonal", where, ab == ba);
                            }
                            if (S.dim(nu + m * ra + n * rb) > 0) {
                                const Matrix<F> ab = multiply(f, S.e_from(nu + n * rb, a, m), S.e_from(nu, b, n));
                                const Matrix<F> ba = multiply(f, S.e_from(nu + m * ra, b, n), S.e_from(nu, a, m));
                                rep.record("E-orthogonal", where, ab == ba);
                            }
                        }
                }
            }
    return rep;
}

/**
 * With E^{[0]} = 1 and E^{[k]} = [k]^{-1} E_{alpha,1} E^{[k-1]} for 0 < k < ell, and n = n0 + ell n1:
 * E_{alpha,n} = E^{[n0]} E_{alpha,ell n1} = E_{alpha,ell n1} E^{[n0]}, and the F version.
 */
template <Field F>
TheoremReport verify_decomposition(const GradedObject<F>& S, int bound) {
    const F& f = S.field();
    const RootSystem& rs = S.rs;
    const int ell = S.ctx.ell;
    if (ell <= 0) throw HypothesisError("decomposition: needs a context with ell > 0");
    TheoremReport rep("decomposition", rs.descriptor() + " " + S.ctx.descriptor() + " bound=" + std::to_string(bound));

    // sign = +1 for E, -1 for F.
    auto step = [&](const Weight& w, int a, int sign) {
        return sign > 0 ? S.e_from(w, a, 1) : S.f_from(w, a, 1);
    };
    auto big = [&](const Weight& w, int a, int n, int sign) { return sign > 0 ? S.e_from(w, a, n) : S.f_from(w, a, n); };
    auto small = [&](const Weight& w, int a, int k, int sign) {
        const Weight root = rs.simple_root(a);
        Matrix<F> acc = Matrix<F>::identity(f, S.dim(w));
        for (int j = 1; j <= k; ++j) {
            const auto qint = S.ctx.evaluate(quantum_integer(j));
            acc = scale(f, f.inv(qint), multiply(f, step(w + (sign * (j - 1)) * root, a, sign), acc));
        }
        return acc;
    };

    for (const auto& [nu, d] : S.dims)
        for (int a = 0; a < rs.rank(); ++a) {
            const Weight root = rs.simple_root(a);
            for (int n = 1; n <= bound; ++n) {
                const int n0 = n % ell, n1 = n / ell;
                for (int sign : {1, -1}) {
                    if (S.dim(nu + (sign * n) * root) == 0) continue;
                    const Matrix<F> whole = big(nu, a, n, sign);
                    const Matrix<F> small_first =
                        multiply(f, big(nu + (sign * n0) * root, a, ell * n1, sign), small(nu, a, n0, sign));
                    const Matrix<F> big_first =
                        multiply(f, small(nu + (sign * ell * n1) * root, a, n0, sign), big(nu, a, ell * n1, sign));
                    const std::string where = detail::at(nu, {{"alpha", a}, {"n", n}});
                    const std::string tag = sign > 0 ? "E" : "F";
                    rep.record(tag + "-small-first", where, whole == small_first);
                    rep.record(tag + "-large-first", where, whole == big_first);
                }
            }
        }
    return rep;
}

/// F_{alpha,n} kills the top weight space for n > <lambda, alpha^vee>.
template <Field F>
TheoremReport verify_dominant_vanishing(const GradedObject<F>& S) {
    if (!S.lambda || !S.lambda->is_dominant()) throw HypothesisError("dominant vanishing: needs dominant lambda");
    const Weight& lambda = *S.lambda;
    const RootSystem& rs = S.rs;
    TheoremReport rep("dominant-vanishing", rs.descriptor() + " " + S.ctx.descriptor() + " lambda=" + lambda.to_string());
    for (int a = 0; a < rs.rank(); ++a) {
        int max_n = lambda[static_cast<std::size_t>(a)] + 1;
        for (const auto& [key, m] : S.f_ops)
            if (key.alpha == a && key.mu + key.n * rs.simple_root(a) == lambda) max_n = std::max(max_n, key.n);
        for (int n = lambda[static_cast<std::size_t>(a)] + 1; n <= max_n; ++n)
            rep.record("F-top", detail::at(lambda, {{"alpha", a}, {"n", n}}), is_zero(S.field(), S.f_from(lambda, a, n)));
    }
    return rep;
}

/// The span of F_{alpha,1}-words applied to the top vector fills every weight space.
template <Field F>
TheoremReport verify_f_cyclicity(const GradedObject<F>& S) {
    if (!S.lambda) throw HypothesisError("f-cyclicity: needs a highest weight");
    const F& f = S.field();
    const RootSystem& rs = S.rs;
    TheoremReport rep("f-cyclicity", rs.descriptor() + " " + S.ctx.descriptor() + " lambda=" + S.lambda->to_string());
    std::map<Weight, Matrix<F>> span;
    for (const Weight& mu : detail::by_descending_height(S)) {
        const std::size_t d = S.dim(mu);
        if (mu == *S.lambda) {
            span.emplace(mu, Matrix<F>::identity(f, d));
            continue;
        }
        Matrix<F> gens(f, d, 0);
        for (int a = 0; a < rs.rank(); ++a) {
            auto it = span.find(mu + rs.simple_root(a));
            if (it == span.end()) continue;
            gens = hstack(f, gens, multiply(f, S.f_from(it->first, a, 1), it->second));
        }
        Matrix<F> basis = gens.cols() == 0 ? gens : factor_image(f, gens).inclusion;
        rep.record("span", "(" + mu.to_string() + ")", basis.cols() == d,
                   "spanned " + std::to_string(basis.cols()) + " of " + std::to_string(d));
        span.emplace(mu, std::move(basis));
    }
    return rep;
}

/// Default bounds used by the CLI and the acceptance run.
struct RelationBounds {
    int divided_powers = 6;
    int serre_m = 4;
    int decomposition = 0;  ///< 0 means 2 ell
};

/// Divided powers, Serre-Lusztig, and (when ell > 0) decomposition; dominant vanishing when lambda is dominant.
template <Field F>
std::vector<TheoremReport> verify_relations(const GradedObject<F>& S, const RelationBounds& bounds = {}) {
    std::vector<TheoremReport> out;
    out.push_back(verify_divided_powers(S, bounds.divided_powers));
    out.push_back(verify_serre_lusztig(S, bounds.serre_m));
    if (S.ctx.ell > 0)
        out.push_back(verify_decomposition(S, bounds.decomposition > 0 ? bounds.decomposition : 2 * S.ctx.ell));
    if (S.lambda && S.lambda->is_dominant()) out.push_back(verify_dominant_vanishing(S));
    return out;
}

}  // namespace xcat
