#pragma once

#include "rkball/ball.hpp"
#include "rkball/linalg.hpp"

namespace rkball {

/// Gram matrix [1/(1 - <x_i, x_j>)] of the ball kernel restricted to a point
/// set. Strictly positive definite for distinct points; construction checks
/// lambda_min > 1e-12 * lambda_max and throws SingularPencil otherwise.
class GramMatrix {
public:
    explicit GramMatrix(const PointSet& base);

    const PointSet& base() const { return base_; }
    const HermitianMatrix& entries() const { return entries_; }
    double lambda_min() const { return lambda_min_; }

private:
    PointSet base_;
    HermitianMatrix entries_;
    double lambda_min_;
};

/// Matrix of pairwise inner products [<x_i, x_j>]; Hermitian PSD with all
/// entries strictly inside the unit disc.
class InnerProductMatrix {
public:
    explicit InnerProductMatrix(const PointSet& base);

    const PointSet& base() const { return base_; }
    const HermitianMatrix& entries() const { return entries_; }

private:
    PointSet base_;
    HermitianMatrix entries_;
};

GramMatrix gram(const PointSet& x);

/// Entrywise sum_{k=0}^{N} G_{ij}^k; converges entrywise to the kernel Gram
/// matrix as N grows.
HermitianMatrix schur_power_sum(const InnerProductMatrix& g, int n_order);

/// Smallest truncation order N such that
///   eps * sum_{k<=N} A^{ok}  >=  (n r^{2(N+1)} / (1 - r^2)) I,
/// where A is the inner-product matrix of V and A^{ok} its k-fold Schur
/// power. This is the computable sufficient condition guaranteeing
///   eps * [sum_{k<=N} <v_i,v_j>^k]  >=  [sum_{k>N} <u_i,u_j>^k]
/// for every tuple u_1..u_n in the ball of radius r: the right side is
/// dominated by the geometric tail bound uniformly over such tuples. The
/// scan starts at the stabilization index of the Schur-sum image spaces (the
/// first partial sum that is numerically nonsingular).
/// Throws NoConvergence if no N <= 10000 works.
int truncation_order_tail(const PointSet& v, double r, double eps);

/// Smallest N such that [sum_{k<=N} <v_i,v_j>^k] >= gram(V) / (1 + eps),
/// verified directly as a PSD test at tolerance 1e-12. The search runs the
/// sufficient-condition scan with r = max_i |v_i| and then decrements while
/// the directly verified inequality still holds.
int truncation_order_self(const PointSet& v, double eps);

/// The matrix inequality K_X >= K_{mapped/C}: true iff
/// [1/(1 - <x_i,x_j>) - 1/(1 - C^{-2} <m_i,m_j>)] is PSD at tolerance 1e-10.
/// Throws ScaleError if some |m_i| >= C.
bool kernel_domination(const PointSet& x, const PointSet& mapped, double c);

} // namespace rkball
