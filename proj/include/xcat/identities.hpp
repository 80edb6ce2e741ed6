#pragma once

/**
 * @file identities.hpp
 * @brief Exhaustive checks of the quantum binomial identities.
 *
 * Symbolic items are compared exactly in Z[v, v^-1] over the box |a|, |b|, n <= N
 * (|x|, |y| <= min(N, 8) and 2 <= m <= max(2, min(N, 8)) where those appear).
 * The positive-characteristic statements are checked for 0 <= a, b, n <= 4N in
 * (F_p, 1) for p = 2, 3, 5, 7 and (Q(zeta_l), zeta_l) for l = 3, 5, 7.
 */

#include "xcat/field_context.hpp"
#include "xcat/quantum.hpp"
#include "xcat/report.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace xcat {

namespace detail {

inline std::string pt(std::initializer_list<std::pair<const char*, int>> xs) {
    std::string s;
    for (const auto& [k, v] : xs) s += (s.empty() ? "" : ",") + std::string(k) + "=" + std::to_string(v);
    return s;
}

/// Gaussian binomial in w by the product formula, divided exactly; independent of the Pascal table.
inline LaurentPoly w_binomial_by_division(int a, int b) {
    if (b < 0) return {};
    LaurentPoly num(1), den(1);
    for (int i = 0; i < b; ++i) {
        num *= w_quantum_integer(a - i);
        den *= w_quantum_integer(i + 1);
    }
    return num.divide_exact(den);
}

inline mpz_class ordinary_binomial(long a, long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return out;
}

}  // namespace detail

/**
 * [a over b] in K for 0 <= a <= max_top, 0 <= b <= max_bottom, filled by the Pascal identity
 * [a b] = q^b [a-1 b] + q^{b-a} [a-1 b-1] directly in K. This is the image of the symbolic
 * recurrence under v -> q and avoids expanding polynomials of degree ~ a*b.
 */
template <Field F>
class EvaluatedBinomials {
public:
    using element = typename F::element;

    EvaluatedBinomials(const FieldContext<F>& ctx, int max_top, int max_bottom) : ctx_(ctx), bottom_(max_bottom) {
        const F& f = ctx.field;
        rows_.assign(static_cast<std::size_t>(max_top + 1),
                     std::vector<element>(static_cast<std::size_t>(max_bottom + 1), f.zero()));
        rows_[0][0] = f.one();
        for (int a = 1; a <= max_top; ++a)
            for (int b = 0; b <= std::min(a, max_bottom); ++b) {
                element x = f.mul(ctx.q_power(b), at(a - 1, b));
                if (b > 0) x = f.add(x, f.mul(ctx.q_power(b - a), at(a - 1, b - 1)));
                rows_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = x;
            }
    }

    element operator()(int a, int b) const {
        if (b < 0 || b > a) return ctx_.field.zero();
        return at(a, b);
    }

private:
    const element& at(int a, int b) const {
        if (b > bottom_) throw std::out_of_range("EvaluatedBinomials: bottom out of range");
        return rows_.at(static_cast<std::size_t>(a))[static_cast<std::size_t>(b)];
    }

    FieldContext<F> ctx_;
    int bottom_;
    std::vector<std::vector<element>> rows_;
};

/// q-Lucas and its two corollaries in one positive-characteristic context.
template <Field F>
void check_positive_characteristic(const FieldContext<F>& ctx, QuantumBinomials& table, int range_bound,
                                   TheoremReport& rep) {
    const F& f = ctx.field;
    const int ell = ctx.ell;
    const int box = 4 * range_bound;
    const std::string tag = ctx.descriptor() + ",q=" + ctx.q_literal;
    const EvaluatedBinomials<F> B(ctx, box + ell * box, box);
    auto C = [&](long a, long b) { return f.from_mpz(detail::ordinary_binomial(a, b)); };

    // The K-table must agree with the symbolic table wherever both are cheap.
    for (int a = 0; a <= std::min(box, 3 * range_bound); ++a)
        for (int b = 0; b <= a; ++b)
            rep.record("evaluation[" + tag + "]", detail::pt({{"a", a}, {"b", b}}),
                       f.equal(B(a, b), ctx.evaluate(table(a, b))));

    for (int a = 0; a <= box; ++a)
        for (int b = 0; b <= box; ++b) {
            const typename F::element rhs = f.mul(B(a % ell, b % ell), C(a / ell, b / ell));
            rep.record("q-lucas[" + tag + "]", detail::pt({{"a", a}, {"b", b}}), f.equal(B(a, b), rhs));
        }

    for (int a = 0; a <= box; ++a)
        for (int b = 0; b <= box; ++b) {
            const auto expected = b % ell != 0 ? f.zero() : C(a, b / ell);
            rep.record("lemma-1[" + tag + "]", detail::pt({{"a", a}, {"b", b}}), f.equal(B(ell * a, b), expected));
        }

    for (int a = 0; a <= box; ++a)
        for (int b = 0; b <= box; ++b)
            for (int n = 0; n <= box; ++n) {
                auto sum = f.zero();
                for (int s = 0; ell * s <= n; ++s) sum = f.add(sum, f.mul(B(a, n - ell * s), C(b, s)));
                rep.record("lemma-2[" + tag + "]", detail::pt({{"a", a}, {"b", b}, {"n", n}}),
                           f.equal(B(a + ell * b, n), sum));
            }
}

inline TheoremReport verify_identities(int range_bound, QuantumBinomials& table) {
    if (range_bound < 1) throw UnsupportedError("identities: range must be positive");
    TheoremReport rep("identities", "range=" + std::to_string(range_bound));
    const int N = range_bound;
    const int xy = std::min(N, 8);
    const int m_max = std::max(2, std::min(N, 8));
    auto v = [](int e) { return LaurentPoly::monomial(e); };
    auto Bin = [&](int a, int b) { return table(a, b); };

    // (1) transformation formula under w = v^2
    for (int a = -N; a <= N; ++a) {
        rep.record("1:integer", detail::pt({{"a", a}}),
                   w_quantum_integer(a).substitute_power(2) == v(a - 1) * quantum_integer(a));
        for (int b = -N; b <= N; ++b)
            rep.record("1:binomial", detail::pt({{"a", a}, {"b", b}}),
                       detail::w_binomial_by_division(a, b).substitute_power(2) == v(b * (a - b)) * Bin(a, b));
    }

    // (2) symmetry, (3) inversion, (4) Pascal
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b) {
            const auto at = detail::pt({{"a", a}, {"b", b}});
            if (a >= 0 && b > 0) rep.record("2:symmetry", at, Bin(a, b) == Bin(a, a - b));
            const LaurentPoly inv = b % 2 == 0 ? Bin(b - a - 1, b) : -Bin(b - a - 1, b);
            rep.record("3:inversion", at, Bin(a, b) == inv);
            rep.record("4:pascal", at, Bin(a, b) == v(b) * Bin(a - 1, b) + v(b - a) * Bin(a - 1, b - 1));
        }

    // (5) Chu-Vandermonde
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int n = 0; n <= N; ++n) {
                LaurentPoly sum;
                for (int r = 0; r <= n; ++r) {
                    const int s = n - r;
                    sum += v(a * s - b * r) * (Bin(a, r) * Bin(b, s));
                }
                rep.record("5:chu-vandermonde", detail::pt({{"a", a}, {"b", b}, {"n", n}}), Bin(a + b, n) == sum);
            }

    // (6) Pfaff-Saalschutz; terms vanish unless 0 <= k <= min(a, b)
    for (int x = -xy; x <= xy; ++x)
        for (int y = -xy; y <= xy; ++y)
            for (int a = -N; a <= N; ++a)
                for (int b = -N; b <= N; ++b) {
                    LaurentPoly sum;
                    for (int k = 0; k <= std::min(a, b); ++k)
                        sum += Bin(x + y + k, k) * (Bin(x + a - b, a - k) * Bin(y + b - a, b - k));
                    rep.record("6:pfaff-saalschutz", detail::pt({{"x", x}, {"y", y}, {"a", a}, {"b", b}}),
                               Bin(x + a, a) * Bin(y + b, b) == sum);
                }

    // (7)
    for (int m = 2; m <= m_max; ++m)
        for (int x = -N; x <= N; ++x) {
            LaurentPoly sum;
            for (int r = 0; r <= m; ++r) {
                LaurentPoly term = v(r * (2 - m)) * (Bin(x - r, 1) * Bin(m, r));
                if (r % 2) term = -term;
                sum += term;
            }
            rep.record("7:serre-sum", detail::pt({{"m", m}, {"x", x}}), sum.is_zero());
        }

    for (std::uint64_t p : {2u, 3u, 5u, 7u})
        check_positive_characteristic(make_context(PrimeField(p), "1"), table, N, rep);
    for (int d : {3, 5, 7}) check_positive_characteristic(make_context(CyclotomicField(d), "zeta^1"), table, N, rep);
    return rep;
}

inline TheoremReport verify_identities(int range_bound) { return verify_identities(range_bound, binomial_table()); }

}  // namespace xcat
