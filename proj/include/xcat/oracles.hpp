#pragma once

// Independent character formulas used to cross-check the construction.

#include "xcat/construct.hpp"
#include "xcat/field_context.hpp"
#include "xcat/gspace.hpp"
#include "xcat/quantum.hpp"
#include "xcat/roots.hpp"

#include <vector>

namespace xcat {

/**
 * Characteristic-zero character of the simple module of highest weight lambda, by the
 * Freudenthal recursion
 *   m(mu) ((lambda+rho, lambda+rho) - (mu+rho, mu+rho)) = 2 sum_{alpha>0} sum_{k>=1} (mu+k alpha, alpha) m(mu+k alpha).
 * Inner products are scaled by det(C), which cancels in the quotient.
 */
inline Character freudenthal_character(const RootSystem& rs, const Weight& lambda) {
    rs.check_weight(lambda);
    if (!lambda.is_dominant()) throw UnsupportedError("freudenthal_character needs dominant lambda");
    std::vector<Weight> roots;
    for (const auto& r : rs.positive_roots()) roots.push_back(rs.root_as_weight(r));
    const Weight rho = rs.rho();
    const long top_norm = rs.scaled_inner(lambda + rho, lambda + rho);
    const long top_height = rs.scaled_height(lambda);

    Character mult{{lambda, 1}};
    for (const auto& [h, weights] : rs.enumerate_levels(lambda, polytope_depth(rs, lambda))) {
        if (h == 0) continue;
        for (const Weight& mu : weights) {
            if (!rs.weyl_polytope_member(mu, lambda)) continue;
            long num = 0;
            for (const Weight& alpha : roots) {
                Weight w = mu + alpha;
                for (; rs.scaled_height(w) <= top_height; w = w + alpha) {
                    auto it = mult.find(w);
                    if (it != mult.end()) num += 2 * rs.scaled_inner(w, alpha) * it->second;
                }
            }
            const long den = top_norm - rs.scaled_inner(mu + rho, mu + rho);
            if (den <= 0 || num % den != 0)
                throw ConsistencyError("Freudenthal recursion is not integral at " + mu.to_string());
            if (num / den > 0) mult[mu] = num / den;
        }
    }
    return mult;
}

/// A1: weight n - 2k occurs (once) iff [n over k] is nonzero in (K, q).
template <Field F>
Character rank1_gram_character(const FieldContext<F>& ctx, int n) {
    if (n < 0) throw UnsupportedError("rank1_gram_character needs n >= 0");
    Character out;
    for (int k = 0; k <= n; ++k)
        if (!ctx.field.is_zero(ctx.evaluate(quantum_binomial(n, k)))) out[Weight{n - 2 * k}] = 1;
    return out;
}

/**
 * A1 weights n - 2(j0 + ell*J): n = n0 + ell*n1 with 0 <= n0 < ell and 0 <= j0 <= n0; J runs
 * over 0..n1 when inner = 0, and otherwise over the digitwise-dominated numbers of n1 in base inner.
 */
inline Character rank1_digit_character(int ell, int inner, int n) {
    if (n < 0 || ell <= 0 || inner < 0 || inner == 1) throw UnsupportedError("rank1_digit_character: invalid parameters");
    const int n0 = n % ell, n1 = n / ell;
    std::vector<int> upper{0};
    if (inner == 0) {
        upper.clear();
        for (int j = 0; j <= n1; ++j) upper.push_back(j);
    } else {
        for (int rest = n1, place = 1; rest > 0; rest /= inner, place *= inner) {
            std::vector<int> next;
            for (int base : upper)
                for (int d = 0; d <= rest % inner; ++d) next.push_back(base + d * place);
            upper = std::move(next);
        }
    }
    Character out;
    for (int j0 = 0; j0 <= n0; ++j0)
        for (int J : upper) out[Weight{n - 2 * (j0 + ell * J)}] = 1;
    return out;
}

}  // namespace xcat
