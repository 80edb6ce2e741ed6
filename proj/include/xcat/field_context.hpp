#pragma once

/**
 * @file field_context.hpp
 * @brief A coefficient field together with the distinguished invertible q and its
 *        quantum characteristic.
 *
 * Descriptor grammar: `rational`, `fp:<p>`, `cyclo:<d>`.
 * q grammar: `1`, `-1`, an integer literal (rationals, prime fields), `zeta^<k>` (cyclotomic).
 */

#include "xcat/error.hpp"
#include "xcat/fields.hpp"
#include "xcat/laurent_poly.hpp"

#include <numeric>
#include <string>
#include <variant>

namespace xcat {

struct CharacteristicInfo {
    int ell = 0;
    /// q = +-1, or q has odd multiplicative order.
    bool q_order_odd_or_pm1 = true;
};

template <Field F>
struct FieldContext {
    using field_type = F;
    using element = typename F::element;

    F field;
    element q;
    std::string q_literal;
    int ell = 0;
    bool q_order_odd_or_pm1 = true;

    /// Image of p under the ring homomorphism Z[v, v^-1] -> K, v -> q (Horner scheme).
    element evaluate(const LaurentPoly& p) const {
        if (p.is_zero()) return field.zero();
        element acc = field.zero();
        const auto& c = p.dense();
        for (std::size_t i = c.size(); i-- > 0;) {
            acc = field.mul(acc, q);
            if (c[i] != 0) acc = field.add(acc, field.from_mpz(c[i]));
        }
        return field.mul(acc, power(field, q, p.low_degree()));
    }

    element q_power(long e) const { return power(field, q, e); }

    std::string descriptor() const { return field.descriptor(); }
    bool q_is_one() const { return field.equal(q, field.one()); }
    bool q_is_pm_one() const { return q_is_one() || field.equal(q, field.neg(field.one())); }
    /// The hypothesis of the positive-characteristic theorems: ell > 0 and odd order unless q = +-1.
    bool positive_odd() const { return ell > 0 && q_order_odd_or_pm1; }
};

// --- quantum characteristic -------------------------------------------------

inline CharacteristicInfo quantum_characteristic(const RationalField&, const mpq_class& q) {
    if (q == 0) throw UnsupportedError("q must be invertible");
    // Over Q only +-1 are roots of unity, and [n] = +-n never vanishes.
    return {0, q == 1 || q == -1};
}

inline CharacteristicInfo quantum_characteristic(const PrimeField& f, std::uint64_t q) {
    if (q == 0) throw UnsupportedError("q must be invertible");
    const std::uint64_t p = f.modulus();
    if (q == 1 || q == p - 1) return {static_cast<int>(p), true};
    std::uint64_t order = 0;
    for (std::uint64_t d = 1; d <= p - 1; ++d)
        if ((p - 1) % d == 0 && power(f, q, static_cast<long>(d)) == 1) {
            order = d;
            break;
        }
    if (order % 2 == 0)
        throw UnsupportedError("q = " + std::to_string(q) + " has even order " + std::to_string(order) +
                               " in " + f.descriptor() + "; only q = +-1 or odd-order q are supported");
    return {static_cast<int>(order), true};
}

/// Exponent k with q = zeta^k, or -1 when q is not a power of zeta.
inline int zeta_exponent(const CyclotomicField& f, const CyclotomicField::element& q) {
    for (int k = 0; k < f.order(); ++k)
        if (f.equal(q, f.zeta_power(k))) return k;
    return -1;
}

inline CharacteristicInfo quantum_characteristic(const CyclotomicField& f, const CyclotomicField::element& q) {
    if (f.is_zero(q)) throw UnsupportedError("q must be invertible");
    const int d = f.order();
    // -1 is a power of zeta only for even d; handle it independently.
    if (f.equal(q, f.one()) || f.equal(q, f.neg(f.one()))) return {0, true};
    const int k = zeta_exponent(f, q);
    if (k < 0) throw UnsupportedError("q = " + f.to_string(q) + " is not a power of zeta in " + f.descriptor());
    const int order = d / std::gcd(d, k);
    if (order % 2 == 0)
        throw UnsupportedError("q = zeta^" + std::to_string(k) + " has even order " + std::to_string(order) +
                               "; only q = +-1 or odd-order q are supported");
    return {order, true};
}

// --- parsing ----------------------------------------------------------------

using AnyField = std::variant<RationalField, PrimeField, CyclotomicField>;

inline AnyField parse_field_descriptor(const std::string& text) {
    auto number_after = [&](std::size_t prefix) {
        const std::string digits = text.substr(prefix);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
            throw UnsupportedError("bad field descriptor '" + text + "'");
        return std::stol(digits);
    };
    try {
        if (text == "rational") return RationalField{};
        if (text.rfind("fp:", 0) == 0) return PrimeField(static_cast<std::uint64_t>(number_after(3)));
        if (text.rfind("cyclo:", 0) == 0) return CyclotomicField(static_cast<int>(number_after(6)));
    } catch (const UnsupportedError&) {
        throw;
    } catch (const std::exception& e) {
        throw UnsupportedError("bad field descriptor '" + text + "': " + e.what());
    }
    throw UnsupportedError("unknown field descriptor '" + text + "' (expected rational, fp:<p>, cyclo:<d>)");
}

namespace detail {
inline long parse_integer_literal(const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw UnsupportedError("bad q literal '" + s + "'");
    }
    if (used != s.size()) throw UnsupportedError("bad q literal '" + s + "'");
    return v;
}
}  // namespace detail

inline mpq_class parse_q(const RationalField&, const std::string& s) {
    return detail::parse_integer_literal(s);
}

inline std::uint64_t parse_q(const PrimeField& f, const std::string& s) {
    return f.from_int(detail::parse_integer_literal(s));
}

inline CyclotomicField::element parse_q(const CyclotomicField& f, const std::string& s) {
    if (s.rfind("zeta^", 0) == 0) return f.zeta_power(detail::parse_integer_literal(s.substr(5)));
    if (s == "zeta") return f.zeta_power(1);
    return f.from_int(detail::parse_integer_literal(s));
}

template <Field F>
FieldContext<F> make_context(const F& field, const std::string& q_literal) {
    FieldContext<F> ctx{field, parse_q(field, q_literal), q_literal, 0, true};
    const CharacteristicInfo info = quantum_characteristic(field, ctx.q);
    ctx.ell = info.ell;
    ctx.q_order_odd_or_pm1 = info.q_order_odd_or_pm1;
    return ctx;
}

template <Field F>
FieldContext<F> make_context(const F& field, const typename F::element& q, std::string q_literal) {
    FieldContext<F> ctx{field, q, std::move(q_literal), 0, true};
    const CharacteristicInfo info = quantum_characteristic(field, q);
    ctx.ell = info.ell;
    ctx.q_order_odd_or_pm1 = info.q_order_odd_or_pm1;
    return ctx;
}

/// The same field with q = 1, the source context of the Frobenius pull-back.
template <Field F>
FieldContext<F> classical_context(const FieldContext<F>& ctx) {
    return make_context(ctx.field, ctx.field.one(), "1");
}

}  // namespace xcat
