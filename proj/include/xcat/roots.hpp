#pragma once

/**
 * @file roots.hpp
 * @brief Simply-laced root systems (A_n, D_n, E6-E8), weights in the fundamental-weight
 *        basis, dominance order, Weyl-orbit representatives and level enumeration.
 *
 * Node numbering (0-based, stable; cache keys depend on it):
 *  - A_n: the chain 0 - 1 - ... - (n-1).
 *  - D_n: node 0 is the branch node, nodes 1 and 2 are the two short leaves, and
 *         nodes 3, 4, ..., n-1 form the long tail with 3 adjacent to 0.
 *         (For D4: 0 is the centre, 1, 2, 3 are the leaves.)
 *  - E_n: Bourbaki order shifted by one: the chain 0 - 2 - 3 - 4 - 5 (- 6 - 7)
 *         with node 1 attached to node 3.
 */

#include "xcat/error.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace xcat {

/// Integer coordinates in the fundamental-weight basis.
struct Weight {
    std::vector<int> coords;

    Weight() = default;
    explicit Weight(std::vector<int> c) : coords(std::move(c)) {}
    Weight(std::initializer_list<int> c) : coords(c) {}
    static Weight zero(std::size_t rank) { return Weight(std::vector<int>(rank, 0)); }

    std::size_t size() const { return coords.size(); }
    int operator[](std::size_t i) const { return coords[i]; }
    int& operator[](std::size_t i) { return coords[i]; }

    Weight& operator+=(const Weight& o) {
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(int k, Weight a) {
        for (auto& c : a.coords) c *= k;
        return a;
    }
    Weight operator-() const { return -1 * *this; }

    friend bool operator==(const Weight&, const Weight&) = default;
    friend auto operator<=>(const Weight&, const Weight&) = default;

    bool is_dominant() const {
        return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
    }

    /// "1,0,-2"
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords[i]);
        }
        return s;
    }

    static Weight parse(const std::string& text) {
        Weight w;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(item, &used);
            } catch (const std::exception&) {
                throw UnsupportedError("bad weight literal '" + text + "'");
            }
            if (used != item.size()) throw UnsupportedError("bad weight literal '" + text + "'");
            w.coords.push_back(v);
        }
        if (w.coords.empty()) throw UnsupportedError("empty weight literal");
        return w;
    }
};

class RootSystem {
public:
    enum class Family { A, D, E };

    RootSystem(Family family, int rank) : family_(family), rank_(rank) {
        validate();
        build_cartan();
        for (int a = 0; a < rank_; ++a) {
            Weight w = Weight::zero(static_cast<std::size_t>(rank_));
            for (int j = 0; j < rank_; ++j) w[static_cast<std::size_t>(j)] = cartan_[j][a];
            simple_roots_.push_back(std::move(w));
        }
        build_adjugate();
        build_positive_roots();
    }

    /// Parses `A<n>`, `D<n>`, `E6`, `E7`, `E8`.
    static RootSystem parse(const std::string& text) {
        if (text.size() < 2) throw UnsupportedError("bad root system descriptor '" + text + "'");
        const std::string digits = text.substr(1);
        if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3)
            throw UnsupportedError("bad root system descriptor '" + text + "'");
        const int n = std::stoi(digits);
        switch (text[0]) {
            case 'A': return RootSystem(Family::A, n);
            case 'D': return RootSystem(Family::D, n);
            case 'E': return RootSystem(Family::E, n);
            default: throw UnsupportedError("unsupported root system family in '" + text + "'");
        }
    }

    Family family() const { return family_; }
    int rank() const { return rank_; }
    const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    long det_cartan() const { return det_; }

    std::string descriptor() const {
        const char f = family_ == Family::A ? 'A' : family_ == Family::D ? 'D' : 'E';
        return std::string(1, f) + std::to_string(rank_);
    }

    friend bool operator==(const RootSystem& a, const RootSystem& b) {
        return a.family_ == b.family_ && a.rank_ == b.rank_;
    }

    void check_weight(const Weight& w) const {
        if (static_cast<int>(w.size()) != rank_)
            throw UnsupportedError("weight " + w.to_string() + " has length " + std::to_string(w.size()) +
                                   ", expected rank " + std::to_string(rank_) + " for " + descriptor());
    }

    /// <mu, alpha_i^vee>, the i-th fundamental coordinate.
    int pairing(const Weight& mu, int alpha) const {
        check_index(alpha);
        return mu[static_cast<std::size_t>(alpha)];
    }

    /// The simple root alpha_i expressed in fundamental weights (column i of the Cartan matrix).
    const Weight& simple_root(int alpha) const {
        check_index(alpha);
        return simple_roots_[static_cast<std::size_t>(alpha)];
    }

    bool adjacent(int a, int b) const { return a != b && cartan_[a][b] == -1; }

    /// Coefficients c with lambda - mu = sum c_i alpha_i when mu <= lambda, otherwise nullopt.
    std::optional<std::vector<int>> leq(const Weight& mu, const Weight& lambda) const {
        const Weight diff = lambda - mu;
        std::vector<int> c(static_cast<std::size_t>(rank_));
        for (int i = 0; i < rank_; ++i) {
            long s = 0;
            for (int j = 0; j < rank_; ++j) s += adj_[i][j] * diff[static_cast<std::size_t>(j)];
            if (s % det_ != 0 || s < 0) return std::nullopt;
            c[static_cast<std::size_t>(i)] = static_cast<int>(s / det_);
        }
        return c;
    }

    /// Simple reflection s_i(mu) = mu - <mu, alpha_i^vee> alpha_i.
    Weight reflect(const Weight& mu, int alpha) const {
        return mu - pairing(mu, alpha) * simple_root(alpha);
    }

    Weight dominant_conjugate(Weight mu) const {
        for (;;) {
            int i = 0;
            while (i < rank_ && mu[static_cast<std::size_t>(i)] >= 0) ++i;
            if (i == rank_) return mu;
            mu = reflect(mu, i);
        }
    }

    /// dominant_conjugate(mu) <= lambda; lambda must be dominant.
    bool weyl_polytope_member(const Weight& mu, const Weight& lambda) const {
        if (!lambda.is_dominant()) throw UnsupportedError("polytope test needs dominant lambda, got " + lambda.to_string());
        return leq(dominant_conjugate(mu), lambda).has_value();
    }

    /// Level h holds lambda - sum c_i alpha_i over c >= 0 with sum c = h, sorted lexicographically.
    std::vector<std::pair<int, std::vector<Weight>>> enumerate_levels(const Weight& lambda, int max_height) const {
        std::vector<std::pair<int, std::vector<Weight>>> out;
        for (int h = 0; h <= max_height; ++h) {
            std::set<Weight> level;
            std::vector<int> c(static_cast<std::size_t>(rank_), 0);
            enumerate_compositions(h, 0, c, [&](const std::vector<int>& comp) {
                Weight w = lambda;
                for (int i = 0; i < rank_; ++i) w -= comp[static_cast<std::size_t>(i)] * simple_root(i);
                level.insert(std::move(w));
            });
            out.emplace_back(h, std::vector<Weight>(level.begin(), level.end()));
        }
        return out;
    }

    /// Positive roots in simple-root coordinates.
    const std::vector<std::vector<int>>& positive_roots() const { return positive_roots_; }

    Weight root_as_weight(const std::vector<int>& root_coords) const {
        Weight w = Weight::zero(static_cast<std::size_t>(rank_));
        for (int i = 0; i < rank_; ++i) w += root_coords[static_cast<std::size_t>(i)] * simple_root(i);
        return w;
    }

    /// det(C) * (mu, nu) for the invariant form normalized by (alpha, alpha) = 2.
    long scaled_inner(const Weight& mu, const Weight& nu) const {
        long s = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j)
                s += static_cast<long>(mu[static_cast<std::size_t>(i)]) * adj_[i][j] * nu[static_cast<std::size_t>(j)];
        return s;
    }

    /// det(C) * (height of mu), where the height is the sum of its simple-root coordinates.
    long scaled_height(const Weight& mu) const {
        long s = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) s += adj_[i][j] * mu[static_cast<std::size_t>(j)];
        return s;
    }

    /// Half the sum of positive roots, i.e. the all-ones weight.
    Weight rho() const { return Weight(std::vector<int>(static_cast<std::size_t>(rank_), 1)); }

private:
    Family family_;
    int rank_;
    std::vector<std::vector<int>> cartan_;
    std::vector<Weight> simple_roots_;
    std::vector<std::vector<long>> adj_;
    long det_ = 1;
    std::vector<std::vector<int>> positive_roots_;

    void validate() const {
        const bool ok = (family_ == Family::A && rank_ >= 1 && rank_ <= 64) ||
                        (family_ == Family::D && rank_ >= 4 && rank_ <= 64) ||
                        (family_ == Family::E && rank_ >= 6 && rank_ <= 8);
        if (!ok) throw UnsupportedError("unsupported root system rank " + std::to_string(rank_));
    }

    void check_index(int alpha) const {
        if (alpha < 0 || alpha >= rank_)
            throw std::out_of_range("simple root index " + std::to_string(alpha) + " out of range for " + descriptor());
    }

    void link(int a, int b) {
        cartan_[a][b] = -1;
        cartan_[b][a] = -1;
    }

    void build_cartan() {
        cartan_.assign(static_cast<std::size_t>(rank_), std::vector<int>(static_cast<std::size_t>(rank_), 0));
        for (int i = 0; i < rank_; ++i) cartan_[i][i] = 2;
        switch (family_) {
            case Family::A:
                for (int i = 0; i + 1 < rank_; ++i) link(i, i + 1);
                break;
            case Family::D:
                link(0, 1);
                link(0, 2);
                link(0, 3);
                for (int i = 3; i + 1 < rank_; ++i) link(i, i + 1);
                break;
            case Family::E:
                link(0, 2);
                link(1, 3);
                for (int i = 2; i + 1 < rank_; ++i) link(i, i + 1);
                break;
        }
    }

    // Gauss-Jordan on [C | I] over Q; det(C) * C^-1 is integral.
    void build_adjugate() {
        const auto n = static_cast<std::size_t>(rank_);
        std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m[i][j] = cartan_[i][j];
            m[i][n + i] = 1;
        }
        mpq_class det = 1;
        for (std::size_t k = 0; k < n; ++k) {
            // The Cartan matrix is positive definite, so the diagonal pivot never vanishes.
            const mpq_class pivot = m[k][k];
            det *= pivot;
            for (auto& x : m[k]) x /= pivot;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == k || m[i][k] == 0) continue;
                const mpq_class f = m[i][k];
                for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
            }
        }
        if (det.get_den() != 1) throw ConsistencyError("Cartan determinant is not integral");
        det_ = det.get_num().get_si();
        adj_.assign(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const mpq_class v = m[i][n + j] * det;
                if (v.get_den() != 1) throw ConsistencyError("adjugate of the Cartan matrix is not integral");
                adj_[i][j] = v.get_num().get_si();
            }
    }

    void build_positive_roots() {
        std::set<std::vector<int>> seen;
        std::vector<std::vector<int>> frontier;
        for (int i = 0; i < rank_; ++i) {
            std::vector<int> e(static_cast<std::size_t>(rank_), 0);
            e[static_cast<std::size_t>(i)] = 1;
            seen.insert(e);
            frontier.push_back(e);
        }
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& beta : frontier)
                for (int i = 0; i < rank_; ++i) {
                    // In a simply-laced system beta + alpha_i is a root iff (beta, alpha_i) = -1.
                    int ip = 0;
                    for (int j = 0; j < rank_; ++j) ip += beta[static_cast<std::size_t>(j)] * cartan_[j][i];
                    if (ip != -1) continue;
                    auto gamma = beta;
                    ++gamma[static_cast<std::size_t>(i)];
                    if (seen.insert(gamma).second) next.push_back(gamma);
                }
            frontier = std::move(next);
        }
        positive_roots_.assign(seen.begin(), seen.end());
    }

    template <typename Fn>
    void enumerate_compositions(int remaining, int index, std::vector<int>& c, Fn&& fn) const {
        if (index == rank_ - 1) {
            c[static_cast<std::size_t>(index)] = remaining;
            fn(c);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            c[static_cast<std::size_t>(index)] = k;
            enumerate_compositions(remaining - k, index + 1, c, fn);
        }
    }
};

}  // namespace xcat
