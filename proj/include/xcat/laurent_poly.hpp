#pragma once

/**
 * @file laurent_poly.hpp
 * @brief Exact Laurent polynomials in v with arbitrary-precision integer coefficients.
 *
 * This is the ring Z[v, v^-1] in which quantum integers and quantum binomials live.
 * Storage is dense between the lowest and highest nonzero exponent; both ends are
 * always trimmed, so two polynomials are equal iff their stored data are equal.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xcat {

class LaurentPoly {
public:
    LaurentPoly() = default;

    /// The constant polynomial c.
    explicit LaurentPoly(long c) {
        if (c != 0) coeffs_.emplace_back(c);
    }

    /// c * v^e.
    static LaurentPoly monomial(int e, const mpz_class& c = 1) {
        LaurentPoly p;
        if (c != 0) {
            p.low_ = e;
            p.coeffs_.push_back(c);
        }
        return p;
    }

    /// Builds from a dense coefficient run starting at exponent `low`.
    static LaurentPoly from_dense(int low, std::vector<mpz_class> coeffs) {
        LaurentPoly p;
        p.low_ = low;
        p.coeffs_ = std::move(coeffs);
        p.trim();
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    int low_degree() const { return low_; }
    int high_degree() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
    std::size_t span() const { return coeffs_.size(); }

    mpz_class coeff(int e) const {
        if (e < low_ || e > high_degree() || is_zero()) return 0;
        return coeffs_[static_cast<std::size_t>(e - low_)];
    }

    const std::vector<mpz_class>& dense() const { return coeffs_; }

    /// Nonzero (exponent, coefficient) pairs in ascending exponent order.
    std::vector<std::pair<int, mpz_class>> terms() const {
        std::vector<std::pair<int, mpz_class>> out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) out.emplace_back(low_ + static_cast<int>(i), coeffs_[i]);
        return out;
    }

    /// Image under the bar involution v -> v^-1.
    LaurentPoly bar() const {
        if (is_zero()) return {};
        LaurentPoly p;
        p.low_ = -high_degree();
        p.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
        return p;
    }

    bool is_bar_invariant() const { return *this == bar(); }

    /// Multiplication by v^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly p = *this;
        if (!p.is_zero()) p.low_ += k;
        return p;
    }

    /// Substitutes v -> v^k for k != 0 (used for the w = v^2 identification).
    LaurentPoly substitute_power(int k) const {
        if (k == 0) throw std::invalid_argument("substitute_power: k must be nonzero");
        LaurentPoly out;
        for (auto& [e, c] : terms()) out += monomial(e * k, c);
        return out;
    }

    /// Sum of the coefficients, i.e. the image under v -> 1.
    mpz_class at_one() const {
        mpz_class s = 0;
        for (const auto& c : coeffs_) s += c;
        return s;
    }

    LaurentPoly operator-() const {
        LaurentPoly p = *this;
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return accumulate(o, false); }
    LaurentPoly& operator-=(const LaurentPoly& o) { return accumulate(o, true); }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        LaurentPoly out;
        out.low_ = a.low_ + b.low_;
        if (!multiply_small(a.coeffs_, b.coeffs_, out.coeffs_))
            multiply_big(a.coeffs_, b.coeffs_, out.coeffs_);
        out.trim();
        return out;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend LaurentPoly operator*(const LaurentPoly& a, long c) { return a * LaurentPoly(c); }
    friend LaurentPoly operator*(long c, const LaurentPoly& a) { return a * LaurentPoly(c); }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /**
     * Exact division by a divisor whose lowest and highest coefficients are +-1.
     * Throws std::domain_error if the division leaves a remainder.
     */
    LaurentPoly divide_exact(const LaurentPoly& d) const {
        if (d.is_zero()) throw std::domain_error("LaurentPoly: division by zero");
        if (is_zero()) return {};
        const mpz_class lead = d.coeffs_.back();
        if (lead != 1 && lead != -1)
            throw std::domain_error("LaurentPoly: divisor must have unit leading coefficient");
        std::vector<mpz_class> rem = coeffs_;
        const std::size_t dn = d.coeffs_.size();
        if (rem.size() < dn) throw std::domain_error("LaurentPoly: inexact division");
        std::vector<mpz_class> quot(rem.size() - dn + 1);
        for (std::size_t i = quot.size(); i-- > 0;) {
            mpz_class c = rem[i + dn - 1] * lead;  // lead = +-1 is its own inverse
            quot[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= c * d.coeffs_[j];
        }
        for (const auto& r : rem)
            if (r != 0) throw std::domain_error("LaurentPoly: inexact division");
        return from_dense(low_ - d.low_, std::move(quot));
    }

    /// Canonical serialization: "[(e,c),(e,c),...]" with ascending exponents.
    std::string serialize() const {
        std::string s = "[";
        bool first = true;
        for (auto& [e, c] : terms()) {
            if (!first) s += ",";
            first = false;
            s += "(" + std::to_string(e) + "," + c.get_str() + ")";
        }
        return s + "]";
    }

    /// Inverse of serialize(); throws std::invalid_argument on malformed input.
    static LaurentPoly deserialize(const std::string& text) {
        if (text.size() < 2 || text.front() != '[' || text.back() != ']')
            throw std::invalid_argument("LaurentPoly: malformed serialization");
        LaurentPoly out;
        std::size_t pos = 1;
        while (pos < text.size() - 1) {
            if (text[pos] == ',') ++pos;
            if (text[pos] != '(') throw std::invalid_argument("LaurentPoly: expected '('");
            const auto comma = text.find(',', pos);
            const auto close = text.find(')', pos);
            if (comma == std::string::npos || close == std::string::npos || comma > close)
                throw std::invalid_argument("LaurentPoly: malformed term");
            const int e = std::stoi(text.substr(pos + 1, comma - pos - 1));
            mpz_class c;
            if (c.set_str(text.substr(comma + 1, close - comma - 1), 10) != 0 || c == 0)
                throw std::invalid_argument("LaurentPoly: bad coefficient");
            out += monomial(e, c);
            pos = close + 1;
        }
        if (out.serialize() != text) throw std::invalid_argument("LaurentPoly: non-canonical input");
        return out;
    }

    /// Human-readable form, e.g. "v^2 + 1 + v^-2".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            const mpz_class& c = coeffs_[i];
            if (c == 0) continue;
            const int e = low_ + static_cast<int>(i);
            mpz_class mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (e == 0) {
                os << mag;
                continue;
            }
            if (mag != 1) os << mag;
            os << "v";
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

private:
    int low_ = 0;
    std::vector<mpz_class> coeffs_;

    void trim() {
        std::size_t first = 0;
        while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
        if (first == coeffs_.size()) {
            coeffs_.clear();
            low_ = 0;
            return;
        }
        std::size_t last = coeffs_.size();
        while (coeffs_[last - 1] == 0) --last;
        coeffs_.erase(coeffs_.begin() + static_cast<std::ptrdiff_t>(last), coeffs_.end());
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
        low_ += static_cast<int>(first);
    }

    LaurentPoly& accumulate(const LaurentPoly& o, bool negate) {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = negate ? -o : o;
            return *this;
        }
        const int lo = std::min(low_, o.low_);
        const int hi = std::max(high_degree(), o.high_degree());
        if (lo < low_) coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), mpz_class(0));
        low_ = lo;
        coeffs_.resize(static_cast<std::size_t>(hi - lo + 1), mpz_class(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            auto& dst = coeffs_[static_cast<std::size_t>(o.low_ - lo) + i];
            if (negate) dst -= o.coeffs_[i];
            else dst += o.coeffs_[i];
        }
        trim();
        return *this;
    }

    // Schoolbook product with 128-bit accumulators when every partial sum provably fits.
    static bool multiply_small(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                               std::vector<mpz_class>& out) {
        constexpr int kBits = 62;
        auto fits = [](const std::vector<mpz_class>& v, std::size_t& maxbits) {
            maxbits = 0;
            for (const auto& c : v) {
                if (!c.fits_slong_p()) return false;
                maxbits = std::max(maxbits, mpz_sizeinbase(c.get_mpz_t(), 2));
            }
            return true;
        };
        std::size_t ba = 0, bb = 0;
        if (!fits(a, ba) || !fits(b, bb)) return false;
        std::size_t lenbits = 1;
        while ((std::size_t{1} << lenbits) < std::min(a.size(), b.size())) ++lenbits;
        if (ba > kBits || bb > kBits || ba + bb + lenbits > 125) return false;

        std::vector<long> sa(a.size()), sb(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) sa[i] = a[i].get_si();
        for (std::size_t i = 0; i < b.size(); ++i) sb[i] = b[i].get_si();
        std::vector<__int128> acc(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < sa.size(); ++i) {
            if (sa[i] == 0) continue;
            const __int128 x = sa[i];
            for (std::size_t j = 0; j < sb.size(); ++j) acc[i + j] += x * sb[j];
        }
        out.resize(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) out[i] = from_int128(acc[i]);
        return true;
    }

    static void multiply_big(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                             std::vector<mpz_class>& out) {
        out.assign(a.size() + b.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }

    static mpz_class from_int128(__int128 x) {
        if (x >= std::numeric_limits<long>::min() && x <= std::numeric_limits<long>::max())
            return mpz_class(static_cast<long>(x));
        const bool neg = x < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
        mpz_class hi(static_cast<unsigned long>(u >> 64));
        mpz_class lo(static_cast<unsigned long>(u & ~std::uint64_t{0}));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    }
};

}  // namespace xcat
