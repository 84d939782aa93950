#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <map>

#include "alcplan/errors.hpp"
#include "alcplan/road_graph.hpp"

namespace alcplan {

using SquareMatrix = Eigen::MatrixXd;

/// Pivot floor below which a factorization is treated as singular.
inline constexpr double kPivotFloor = 1e-12;

/// Weighted graph Laplacian, rows/columns in node_index order.
///
/// Equals the sum over edges of w_k * b_k * b_k^T where b_k is the signed
/// incidence vector of edge k, i.e. L = B diag(w) B^T.
inline SquareMatrix weighted_laplacian(const RoadGraph& g,
                                       const std::map<EdgeId, double>& weights) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    SquareMatrix L = SquareMatrix::Zero(n, n);
    for (const auto& e : g.edges()) {
        auto it = weights.find(e.id);
        if (it == weights.end())
            throw Error("missing weight for edge " + std::to_string(e.id));
        const double w = it->second;
        if (!(w > 0.0) || !std::isfinite(w))
            throw Error("edge weight must be positive and finite (edge " + std::to_string(e.id) +
                        ")");
        const auto i = static_cast<Eigen::Index>(g.node_index(e.a));
        const auto j = static_cast<Eigen::Index>(g.node_index(e.b));
        L(i, i) += w;
        L(j, j) += w;
        L(i, j) -= w;
        L(j, i) -= w;
    }
    return L;
}

/// Removes the anchor row and column; the result is positive definite for
/// a connected graph with positive weights.
inline SquareMatrix reduced_laplacian(const SquareMatrix& L, Eigen::Index anchor) {
    if (L.rows() != L.cols()) throw Error("laplacian must be square");
    if (L.rows() < 2) throw Error("cannot reduce a laplacian smaller than 2x2");
    if (anchor < 0 || anchor >= L.rows()) throw Error("anchor index out of range");
    const Eigen::Index n = L.rows();
    SquareMatrix R(n - 1, n - 1);
    for (Eigen::Index i = 0, ri = 0; i < n; ++i) {
        if (i == anchor) continue;
        for (Eigen::Index j = 0, rj = 0; j < n; ++j) {
            if (j == anchor) continue;
            R(ri, rj) = L(i, j);
            ++rj;
        }
        ++ri;
    }
    return R;
}

/// log(det(M)) for a symmetric positive definite M, via pivoted LDL^T.
inline double log_det_spd(const SquareMatrix& M) {
    if (M.rows() != M.cols() || M.rows() == 0)
        throw Error("log_det_spd requires a non-empty square matrix");
    const double scale = M.cwiseAbs().maxCoeff();
    if (!((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, scale)))
        throw Error("log_det_spd requires a symmetric matrix");
    Eigen::LDLT<SquareMatrix> ldlt(M);
    if (ldlt.info() != Eigen::Success)
        throw NotPositiveDefiniteError("LDL^T factorization failed");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        const double d = ldlt.vectorD()(i);
        if (!(d > kPivotFloor))
            throw NotPositiveDefiniteError("matrix is singular or indefinite (pivot " +
                                           std::to_string(d) + ")");
        acc += std::log(d);
    }
    return acc;
}

/// D-optimality: det(M)^(1/l) for an l x l positive definite M, computed
/// as exp(mean log pivot) so large graphs neither overflow nor underflow.
/// Scale-equivariant: d_opt(c*M) = c * d_opt(M).
inline double d_opt(const SquareMatrix& M) {
    return std::exp(log_det_spd(M) / static_cast<double>(M.rows()));
}

}  // namespace alcplan
