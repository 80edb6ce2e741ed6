#pragma once

/**
 * @file construct.hpp
 * @brief Level-by-level construction of the simple objects S(lambda).
 *
 * Starting from the one-dimensional space at lambda, each new weight mu receives
 * M_mu := im G_{delta mu}. The pivot columns of G give E_mu (the inclusion) and the
 * reduced rows give F_mu (coordinates in that basis), so E_mu * F_mu = G.
 *
 * Weights of one level only read higher levels, so a level is computed in parallel and
 * merged in a fixed order before the next level starts.
 */

#include "xcat/error.hpp"
#include "xcat/gspace.hpp"

#include <algorithm>
#include <cassert>
#include <exception>
#include <optional>
#include <set>
#include <thread>
#include <vector>

namespace xcat {

struct BuildPolicy {
    enum class Kind { DominantAuto, FixedDepth };
    Kind kind = Kind::DominantAuto;
    int depth = 0;

    static BuildPolicy dominant_auto() { return {}; }
    static BuildPolicy fixed_depth(int h) { return {Kind::FixedDepth, h}; }

    std::string to_string() const { return kind == Kind::DominantAuto ? "auto" : "depth:" + std::to_string(depth); }
};

template <Field F>
struct BuildRequest {
    RootSystem rs;
    FieldContext<F> ctx;
    Weight lambda;
    BuildPolicy policy = BuildPolicy::dominant_auto();
    std::optional<CoefficientChoice<F>> choice;  ///< defaults to the quantum binomial choice
    unsigned threads = 0;                        ///< 0 = hardware concurrency
};

/// Level of the lowest weight w0(lambda) below a dominant lambda.
inline int polytope_depth(const RootSystem& rs, const Weight& lambda) {
    const Weight lowest = -rs.dominant_conjugate(-lambda);
    return static_cast<int>((rs.scaled_height(lambda) - rs.scaled_height(lowest)) / rs.det_cartan());
}

namespace detail {

template <Field F>
struct WeightResult {
    Weight mu;
    std::size_t rank = 0;
    DeltaSpace delta;
    ImageFactorization<F> image;
};

template <Field F>
WeightResult<F> compute_weight(const GradedObject<F>& M, const Weight& mu, long top) {
    WeightResult<F> out;
    out.mu = mu;
    out.delta = assemble_delta(M, mu, top);
    if (out.delta.total_dim == 0) return out;
    const Matrix<F> g = g_delta(M, out.delta, M.choice);
    out.image = factor_image(M.field(), g);
    out.rank = out.image.pivots.size();
#ifndef NDEBUG
    assert(multiply(M.field(), out.image.inclusion, out.image.corestriction) == g);
#endif
    return out;
}

template <Field F>
void store_weight(GradedObject<F>& M, WeightResult<F>&& r) {
    const F& f = M.field();
    const std::size_t k = r.rank;
    M.dims[r.mu] = k;
    M.pivots[r.mu] = r.image.pivots;
    for (const DeltaBlock& b : r.delta.blocks) {
        const OpKey key{r.mu, b.alpha, b.n};
        M.e_ops.emplace(key, submatrix(f, r.image.inclusion, b.offset, b.dim, 0, k));
        M.f_ops.emplace(key, submatrix(f, r.image.corestriction, 0, k, b.offset, b.dim));
    }
}

/// Runs compute_weight over `weights` with up to `threads` workers; output order matches input order.
template <Field F>
std::vector<WeightResult<F>> compute_level(const GradedObject<F>& M, const std::vector<Weight>& weights, long top,
                                           unsigned threads) {
    std::vector<WeightResult<F>> results(weights.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(weights.size())));
    if (workers <= 1) {
        for (std::size_t i = 0; i < weights.size(); ++i) results[i] = compute_weight(M, weights[i], top);
        return results;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < weights.size(); i += workers) results[i] = compute_weight(M, weights[i], top);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace detail

template <Field F>
GradedObject<F> build_simple(const BuildRequest<F>& req) {
    const RootSystem& rs = req.rs;
    rs.check_weight(req.lambda);
    const bool automatic = req.policy.kind == BuildPolicy::Kind::DominantAuto;
    if (automatic && !req.lambda.is_dominant())
        throw UnsupportedError("lambda = " + req.lambda.to_string() +
                               " is not dominant; pass an explicit depth for non-dominant weights");
    if (!automatic && req.policy.depth < 0) throw UnsupportedError("depth must be non-negative");

    GradedObject<F> M(req.ctx, rs, req.choice ? *req.choice : quantum_binomial_choice(req.ctx));
    M.lambda = req.lambda;
    M.policy = req.policy.to_string();
    M.operators_total = true;
    M.dims[req.lambda] = 1;
    M.pivots[req.lambda] = {};
    if (!automatic) {
        M.complete = false;
        M.truncation_height = req.policy.depth;
    }

    const unsigned threads = req.threads ? req.threads : std::max(1u, std::thread::hardware_concurrency());
    const long top = rs.scaled_height(req.lambda);
    const long det = rs.det_cartan();
    const int last = automatic ? polytope_depth(rs, req.lambda) + 1 : req.policy.depth;
    std::vector<std::vector<Weight>> support{{req.lambda}};

    for (int h = 1; h <= last; ++h) {
        std::set<Weight> candidates;
        for (int n = 1; n <= h; ++n)
            for (const Weight& nu : support[static_cast<std::size_t>(h - n)])
                for (int a = 0; a < rs.rank(); ++a) candidates.insert(nu - n * rs.simple_root(a));

        std::vector<Weight> inside, shell;
        for (const Weight& mu : candidates) {
            assert((top - rs.scaled_height(mu)) == h * det);
            if (!automatic || rs.weyl_polytope_member(mu, req.lambda))
                inside.push_back(mu);
            else
                shell.push_back(mu);
        }

        auto results = detail::compute_level(M, inside, top, threads);
        for (const auto& r : detail::compute_level(M, shell, top, threads))
            if (r.rank != 0)
                throw ConsistencyError("weight " + r.mu.to_string() + " outside the Weyl polytope of " +
                                       req.lambda.to_string() + " has dimension " + std::to_string(r.rank));

        std::vector<Weight> level;
        for (auto& r : results)
            if (r.rank > 0) {
                level.push_back(r.mu);
                detail::store_weight(M, std::move(r));
            }
        support.push_back(std::move(level));
    }
    (void)det;
    return M;
}

}  // namespace xcat
