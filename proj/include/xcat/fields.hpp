#pragma once

/**
 * @file fields.hpp
 * @brief Exact coefficient fields: the rationals, prime fields F_p and cyclotomic fields Q(zeta_d).
 *
 * A field is a small value object that owns its parameters (p or d) and performs
 * arithmetic on plain element values. Algorithms are templated on the field type
 * and receive the field object alongside the elements, so elements stay cheap.
 */

#include "xcat/laurent_poly.hpp"

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace xcat {

// clang-format off
template <typename F>
concept Field = requires(const F& f, const typename F::element& a, const typename F::element& b,
                         long n, const mpz_class& z, const std::string& s) {
    { f.zero() } -> std::same_as<typename F::element>;
    { f.one() } -> std::same_as<typename F::element>;
    { f.from_int(n) } -> std::same_as<typename F::element>;
    { f.from_mpz(z) } -> std::same_as<typename F::element>;
    { f.add(a, b) } -> std::same_as<typename F::element>;
    { f.sub(a, b) } -> std::same_as<typename F::element>;
    { f.mul(a, b) } -> std::same_as<typename F::element>;
    { f.neg(a) } -> std::same_as<typename F::element>;
    { f.inv(a) } -> std::same_as<typename F::element>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.equal(a, b) } -> std::convertible_to<bool>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f.parse(s) } -> std::same_as<typename F::element>;
    { f.descriptor() } -> std::same_as<std::string>;
    { f.characteristic() } -> std::convertible_to<long>;
};
// clang-format on

/// a^e for any integer e (e < 0 requires a invertible).
template <Field F>
typename F::element power(const F& f, typename F::element a, long e) {
    if (e < 0) {
        a = f.inv(a);
        e = -e;
    }
    auto r = f.one();
    while (e > 0) {
        if (e & 1) r = f.mul(r, a);
        e >>= 1;
        if (e) a = f.mul(a, a);
    }
    return r;
}

// ---------------------------------------------------------------------------

class RationalField {
public:
    using element = mpq_class;

    element zero() const { return 0; }
    element one() const { return 1; }
    element from_int(long n) const { return n; }
    element from_mpz(const mpz_class& z) const { return mpq_class(z); }
    element add(const element& a, const element& b) const { return a + b; }
    element sub(const element& a, const element& b) const { return a - b; }
    element mul(const element& a, const element& b) const { return a * b; }
    element neg(const element& a) const { return -a; }
    element inv(const element& a) const {
        if (a == 0) throw std::domain_error("rational: inverse of zero");
        return 1 / a;
    }
    bool is_zero(const element& a) const { return a == 0; }
    bool equal(const element& a, const element& b) const { return a == b; }
    std::string to_string(const element& a) const { return a.get_str(); }
    element parse(const std::string& s) const {
        mpq_class r;
        if (s.empty() || r.set_str(s, 10) != 0) throw std::invalid_argument("rational: bad literal '" + s + "'");
        r.canonicalize();
        if (r.get_str() != s) throw std::invalid_argument("rational: non-canonical literal '" + s + "'");
        return r;
    }
    std::string descriptor() const { return "rational"; }
    long characteristic() const { return 0; }
    friend bool operator==(const RationalField&, const RationalField&) = default;
};

// ---------------------------------------------------------------------------

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class PrimeField {
public:
    using element = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
            throw std::invalid_argument("prime field: p must be a prime below 2^31");
    }

    std::uint64_t modulus() const { return p_; }

    element zero() const { return 0; }
    element one() const { return 1; }
    element from_int(long n) const {
        const long m = static_cast<long>(p_);
        long r = n % m;
        return static_cast<element>(r < 0 ? r + m : r);
    }
    element from_mpz(const mpz_class& z) const {
        mpz_class r = z % static_cast<unsigned long>(p_);
        if (r < 0) r += static_cast<unsigned long>(p_);
        return r.get_ui();
    }
    element add(element a, element b) const { return (a + b) % p_; }
    element sub(element a, element b) const { return (a + p_ - b) % p_; }
    element mul(element a, element b) const { return (a * b) % p_; }
    element neg(element a) const { return a == 0 ? 0 : p_ - a; }
    element inv(element a) const {
        if (a == 0) throw std::domain_error("prime field: inverse of zero");
        std::uint64_t r = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return r;
    }
    bool is_zero(element a) const { return a == 0; }
    bool equal(element a, element b) const { return a == b; }
    std::string to_string(element a) const { return std::to_string(a); }
    element parse(const std::string& s) const {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("prime field: bad literal '" + s + "'");
        }
        if (used != s.size() || v >= p_ || (s.size() > 1 && s[0] == '0'))
            throw std::invalid_argument("prime field: non-canonical literal '" + s + "'");
        return v;
    }
    std::string descriptor() const { return "fp:" + std::to_string(p_); }
    long characteristic() const { return static_cast<long>(p_); }
    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint64_t p_;
};

// ---------------------------------------------------------------------------

/// Integer coefficients of the d-th cyclotomic polynomial, lowest degree first.
inline std::vector<mpz_class> cyclotomic_polynomial(int d) {
    if (d < 1) throw std::invalid_argument("cyclotomic polynomial: d must be positive");
    std::vector<mpz_class> xd(static_cast<std::size_t>(d + 1), mpz_class(0));
    xd[0] = -1;
    xd[static_cast<std::size_t>(d)] = 1;
    LaurentPoly p = LaurentPoly::from_dense(0, xd);
    for (int e = 1; e < d; ++e)
        if (d % e == 0) {
            const auto c = cyclotomic_polynomial(e);
            p = p.divide_exact(LaurentPoly::from_dense(0, c));
        }
    return p.dense();
}

/**
 * Q(zeta_d), elements stored as rational coefficient vectors in the power basis
 * 1, z, ..., z^(phi(d)-1), fully reduced modulo the d-th cyclotomic polynomial.
 */
class CyclotomicField {
public:
    using element = std::vector<mpq_class>;

    explicit CyclotomicField(int d) : d_(d) {
        if (d < 1 || d > 512) throw std::invalid_argument("cyclotomic field: d must lie in 1..512");
        phi_poly_ = cyclotomic_polynomial(d);
        phi_ = static_cast<int>(phi_poly_.size()) - 1;
        for (int k = 2; k < d; ++k)
            if (std::gcd(k, d) == 1) units_.push_back(k);
    }

    int order() const { return d_; }
    int degree() const { return phi_; }

    element zero() const { return element(static_cast<std::size_t>(phi_), mpq_class(0)); }
    element one() const { return from_int(1); }
    element from_int(long n) const {
        element e = zero();
        e[0] = n;
        return e;
    }
    element from_mpz(const mpz_class& z) const {
        element e = zero();
        e[0] = z;
        return e;
    }
    element from_rational(const mpq_class& r) const {
        element e = zero();
        e[0] = r;
        return e;
    }
    /// zeta^k for any integer k.
    element zeta_power(long k) const {
        std::vector<mpq_class> wide(static_cast<std::size_t>(d_), mpq_class(0));
        wide[static_cast<std::size_t>(((k % d_) + d_) % d_)] = 1;
        return reduce(std::move(wide));
    }

    element add(const element& a, const element& b) const {
        element r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
        return r;
    }
    element sub(const element& a, const element& b) const {
        element r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
        return r;
    }
    element neg(const element& a) const {
        element r = a;
        for (auto& c : r) c = -c;
        return r;
    }
    element mul(const element& a, const element& b) const {
        if (is_zero(a) || is_zero(b)) return zero();
        std::vector<mpq_class> wide(static_cast<std::size_t>(std::max(1, 2 * phi_ - 1)), mpq_class(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                if (b[j] != 0) wide[i + j] += a[i] * b[j];
        }
        return reduce(std::move(wide));
    }
    /// Inverse through the norm: a^-1 = (prod of the other Galois conjugates) / N(a).
    element inv(const element& a) const {
        if (is_zero(a)) throw std::domain_error("cyclotomic field: inverse of zero");
        element others = one();
        for (int k : units_) others = mul(others, conjugate(a, k));
        const element norm = mul(a, others);
        for (std::size_t i = 1; i < norm.size(); ++i)
            if (norm[i] != 0) throw std::logic_error("cyclotomic field: norm is not rational");
        const mpq_class scale = 1 / norm[0];
        for (auto& c : others) c *= scale;
        return others;
    }
    /// The Galois conjugate sigma_k(a) = a(zeta^k), gcd(k, d) = 1.
    element conjugate(const element& a, int k) const {
        std::vector<mpq_class> wide(static_cast<std::size_t>(d_), mpq_class(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            wide[(i * static_cast<std::size_t>(k)) % static_cast<std::size_t>(d_)] += a[i];
        return reduce(std::move(wide));
    }

    bool is_zero(const element& a) const {
        for (const auto& c : a)
            if (c != 0) return false;
        return true;
    }
    bool equal(const element& a, const element& b) const { return a == b; }

    /// Canonical polynomial string in z, ascending degree, e.g. "-1/2+3*z^2".
    std::string to_string(const element& a) const {
        std::string s;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const mpq_class& c = a[i];
            if (c == 0) continue;
            std::string term;
            if (i == 0) {
                term = c.get_str();
            } else {
                if (c == 1) term = "";
                else if (c == -1) term = "-";
                else term = c.get_str() + "*";
                term += i == 1 ? "z" : "z^" + std::to_string(i);
            }
            if (!s.empty() && term[0] != '-') s += "+";
            s += term;
        }
        return s.empty() ? "0" : s;
    }

    element parse(const std::string& s) const {
        if (s.empty()) throw std::invalid_argument("cyclotomic: empty literal");
        element out = zero();
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = pos + 1;
            while (next < s.size() && s[next] != '+' && s[next] != '-') ++next;
            std::string term = s.substr(pos, next - pos);
            if (!term.empty() && term[0] == '+') term.erase(0, 1);
            mpq_class coeff = 1;
            std::size_t deg = 0;
            const auto zpos = term.find('z');
            std::string cpart = zpos == std::string::npos ? term : term.substr(0, zpos);
            if (zpos != std::string::npos) {
                const std::string dpart = term.substr(zpos + 1);
                if (dpart.empty()) deg = 1;
                else if (dpart[0] == '^') deg = std::stoul(dpart.substr(1));
                else throw std::invalid_argument("cyclotomic: bad term '" + term + "'");
                if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
                if (cpart == "-") cpart = "-1";
                if (cpart.empty()) cpart = "1";
            }
            if (coeff.set_str(cpart, 10) != 0) throw std::invalid_argument("cyclotomic: bad coefficient '" + cpart + "'");
            coeff.canonicalize();
            if (deg >= out.size()) throw std::invalid_argument("cyclotomic: degree out of range");
            out[deg] += coeff;
            pos = next;
        }
        if (to_string(out) != s) throw std::invalid_argument("cyclotomic: non-canonical literal '" + s + "'");
        return out;
    }

    std::string descriptor() const { return "cyclo:" + std::to_string(d_); }
    long characteristic() const { return 0; }
    friend bool operator==(const CyclotomicField& a, const CyclotomicField& b) { return a.d_ == b.d_; }

private:
    int d_;
    int phi_ = 1;
    std::vector<mpz_class> phi_poly_;
    std::vector<int> units_;

    // Reduces a coefficient vector of any length modulo the (monic) cyclotomic polynomial.
    element reduce(std::vector<mpq_class> wide) const {
        const std::size_t n = static_cast<std::size_t>(phi_);
        for (std::size_t i = wide.size(); i-- > n;) {
            if (wide[i] == 0) continue;
            const mpq_class c = wide[i];
            for (std::size_t j = 0; j <= n; ++j)
                if (phi_poly_[j] != 0) wide[i - n + j] -= c * phi_poly_[j];
        }
        wide.resize(n, mpq_class(0));
        return wide;
    }
};

}  // namespace xcat
