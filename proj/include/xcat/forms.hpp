#pragma once

/**
 * @file forms.hpp
 * @brief Contravariant forms on constructed simple objects.
 *
 * The form is pushed down from the top weight: with B the block-diagonal Gram matrix on
 * M_{delta mu}, b_mu(F_mu v, y) = b_{delta mu}(v, E_mu y). The pivot column p_i of G satisfies
 * F_mu e_{p_i} = (i-th basis vector of M_mu), so row i of gram(mu) is row p_i of B * E_mu.
 */

#include "xcat/error.hpp"
#include "xcat/gspace.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace xcat {

template <Field F>
struct ContravariantForm {
    std::map<Weight, Matrix<F>> gram;
};

namespace detail {

template <Field F>
Matrix<F> block_gram(const GradedObject<F>& S, const ContravariantForm<F>& b, const DeltaSpace& delta) {
    Matrix<F> out(S.field(), delta.total_dim, delta.total_dim);
    for (const DeltaBlock& blk : delta.blocks) {
        auto it = b.gram.find(blk.source);
        if (it == b.gram.end()) throw ConsistencyError("form: missing Gram matrix at " + blk.source.to_string());
        place(out, it->second, blk.offset, blk.offset);
    }
    return out;
}

template <Field F>
std::vector<Weight> by_descending_height(const GradedObject<F>& S) {
    std::vector<Weight> ws;
    for (const auto& [mu, d] : S.dims) ws.push_back(mu);
    std::stable_sort(ws.begin(), ws.end(), [&](const Weight& a, const Weight& b) {
        return S.rs.scaled_height(a) > S.rs.scaled_height(b);
    });
    return ws;
}

}  // namespace detail

template <Field F>
ContravariantForm<F> build_form(const GradedObject<F>& S, const typename F::element& top_value) {
    const F& f = S.field();
    if (!S.lambda || S.pivots.size() != S.dims.size())
        throw UnsupportedError("build_form needs an object produced by build_simple (pivot bookkeeping missing)");
    if (f.is_zero(top_value)) throw UnsupportedError("build_form: top value must be nonzero");

    int bound = 1;
    std::vector<Weight> bases;
    for (const auto& [key, mat] : S.e_ops) bound = std::max(bound, key.n);
    for (const auto& [mu, d] : S.dims) bases.push_back(mu);
    if (!is_symmetric(S.choice, S.rs, bases, bound))
        throw HypothesisError("build_form: coefficient choice '" + S.choice.tag + "' is not symmetric in m, n");

    ContravariantForm<F> b;
    const long top = S.rs.scaled_height(*S.lambda);
    for (const Weight& mu : detail::by_descending_height(S)) {
        if (mu == *S.lambda) {
            Matrix<F> g(f, 1, 1);
            g(0, 0) = top_value;
            b.gram.emplace(mu, std::move(g));
            continue;
        }
        const DeltaSpace delta = assemble_delta(S, mu, top);
        const Matrix<F> be = multiply(f, detail::block_gram(S, b, delta), stacked_e(S, delta));
        const auto& piv = S.pivots.at(mu);
        Matrix<F> g(f, piv.size(), S.dim(mu));
        for (std::size_t i = 0; i < piv.size(); ++i)
            for (std::size_t k = 0; k < g.cols(); ++k) g(i, k) = be(piv[i], k);
        b.gram.emplace(mu, std::move(g));
    }
    return b;
}

template <Field F>
ContravariantForm<F> build_form(const GradedObject<F>& S) {
    return build_form(S, S.field().one());
}

/// E^T gram(mu + n alpha) == gram(mu) F for each stored (mu, alpha, n) with n <= bound.
template <Field F>
TheoremReport verify_adjointness(const GradedObject<F>& S, const ContravariantForm<F>& b, int bound) {
    const F& f = S.field();
    TheoremReport rep("adjointness", S.rs.descriptor() + " " + S.ctx.descriptor() + " bound=" + std::to_string(bound));
    for (const auto& [key, e] : S.e_ops) {
        if (key.n > bound) continue;
        const Weight upper = key.mu + key.n * S.rs.simple_root(key.alpha);
        const auto lo = b.gram.find(key.mu), hi = b.gram.find(upper);
        const std::string where = detail::at(key.mu, {{"alpha", key.alpha}, {"n", key.n}});
        if (lo == b.gram.end() || hi == b.gram.end()) {
            rep.record("adjointness", where, false, "Gram matrix missing");
            continue;
        }
        const Matrix<F> lhs = multiply(f, transpose(f, e), hi->second);
        const Matrix<F> rhs = multiply(f, lo->second, S.f_from(upper, key.alpha, key.n));
        rep.record("adjointness", where, lhs == rhs);
    }
    for (const auto& [mu, g] : b.gram)
        rep.record("symmetry", "(" + mu.to_string() + ")", g == transpose(f, g));
    return rep;
}

template <Field F>
TheoremReport verify_nondegenerate(const F& f, const ContravariantForm<F>& b) {
    TheoremReport rep("nondegenerate", std::to_string(b.gram.size()) + " weights");
    for (const auto& [mu, g] : b.gram) {
        const std::size_t r = rank(f, g);
        rep.record("full-rank", "(" + mu.to_string() + ")", g.rows() == g.cols() && r == g.rows(),
                   "rank " + std::to_string(r) + " of " + std::to_string(g.rows()));
    }
    return rep;
}

/**
 * At every weight below the top: G^T B == B G (G is self-adjoint for the form on M_{delta mu}),
 * and the twisted form B G has rank dim M_mu.
 */
template <Field F>
TheoremReport verify_g_self_adjoint(const GradedObject<F>& S, const ContravariantForm<F>& b) {
    const F& f = S.field();
    TheoremReport rep("g-self-adjoint", S.rs.descriptor() + " " + S.ctx.descriptor());
    const long top = S.max_scaled_height();
    for (const auto& [mu, d] : S.dims) {
        const DeltaSpace delta = assemble_delta(S, mu, top);
        if (delta.total_dim == 0) continue;
        const Matrix<F> g = g_delta(S, delta, S.choice);
        const Matrix<F> B = detail::block_gram(S, b, delta);
        const Matrix<F> bg = multiply(f, B, g);
        rep.record("self-adjoint", "(" + mu.to_string() + ")", multiply(f, transpose(f, g), B) == bg);
        rep.record("twisted-rank", "(" + mu.to_string() + ")", rank(f, bg) == d);
    }
    return rep;
}

}  // namespace xcat
