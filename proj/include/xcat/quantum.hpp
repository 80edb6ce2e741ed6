#pragma once

// Quantum integers and quantum binomials over Z[v, v^-1].

#include "xcat/laurent_poly.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

namespace xcat {

/// [n] = (v^n - v^-n) / (v - v^-1), via its closed monomial sum.
inline LaurentPoly quantum_integer(int n) {
    if (n == 0) return {};
    const int k = n > 0 ? n : -n;
    std::vector<mpz_class> c(static_cast<std::size_t>(2 * k - 1), mpz_class(0));
    for (std::size_t i = 0; i < c.size(); i += 2) c[i] = n > 0 ? 1 : -1;
    return LaurentPoly::from_dense(-(k - 1), std::move(c));
}

/// [n]' = (w^n - 1) / (w - 1) in Z[w, w^-1].
inline LaurentPoly w_quantum_integer(int n) {
    if (n == 0) return {};
    if (n > 0) return LaurentPoly::from_dense(0, std::vector<mpz_class>(static_cast<std::size_t>(n), mpz_class(1)));
    return LaurentPoly::from_dense(n, std::vector<mpz_class>(static_cast<std::size_t>(-n), mpz_class(-1)));
}

/**
 * Memoized quantum binomials [a over b] in Z[v, v^-1].
 *
 * For a >= 0 the Gaussian binomial in w is built by the Pascal recurrence
 * [a b]' = [a-1 b-1]' + w^b [a-1 b]' (non-negative coefficients, no division)
 * and then transported by [a b] = v^{-b(a-b)} [a b]'|_{w=v^2}. Negative tops go
 * through the inversion formula [a b] = (-1)^b [b-a-1 b] first.
 *
 * Lookups and inserts are guarded by a shared mutex, so one table may serve
 * several worker threads; results do not depend on insertion order.
 */
class QuantumBinomials {
public:
    LaurentPoly operator()(int a, int b) {
        if (b < 0) return {};
        if (b == 0) return LaurentPoly(1);
        if (a >= 0 && b > a) return {};
        const auto key = std::make_pair(a, b);
        {
            std::shared_lock lock(mutex_);
            if (auto it = v_table_.find(key); it != v_table_.end()) return it->second;
        }
        LaurentPoly value;
        if (a < 0) {
            value = (*this)(b - a - 1, b);
            if (b % 2 != 0) value = -value;
        } else {
            value = w_binomial(a, b).substitute_power(2).shifted(-b * (a - b));
        }
        std::unique_lock lock(mutex_);
        return v_table_.try_emplace(key, std::move(value)).first->second;
    }

    /// Gaussian binomial in w for 0 <= b <= a (zero outside that range when a >= 0).
    LaurentPoly w_binomial(int a, int b) {
        if (a < 0) throw std::invalid_argument("w_binomial: requires a >= 0");
        if (b < 0 || b > a) return {};
        if (b == 0 || b == a) return LaurentPoly(1);
        const auto key = std::make_pair(a, b);
        {
            std::shared_lock lock(mutex_);
            if (auto it = w_table_.find(key); it != w_table_.end()) return it->second;
        }
        LaurentPoly value = w_binomial(a - 1, b - 1) + w_binomial(a - 1, b).shifted(b);
        std::unique_lock lock(mutex_);
        return w_table_.try_emplace(key, std::move(value)).first->second;
    }

    /// Overwrites a table entry. Only meant for fault-injection tests.
    void corrupt(int a, int b, LaurentPoly value) {
        std::unique_lock lock(mutex_);
        v_table_[{a, b}] = std::move(value);
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return v_table_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<int, int>, LaurentPoly> v_table_;
    std::map<std::pair<int, int>, LaurentPoly> w_table_;
};

/// Process-wide table shared by the default coefficient choice and the identity suite.
inline QuantumBinomials& binomial_table() {
    static QuantumBinomials table;
    return table;
}

inline LaurentPoly quantum_binomial(int a, int b) { return binomial_table()(a, b); }

}  // namespace xcat
