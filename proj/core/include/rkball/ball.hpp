#pragma once

#include <vector>

#include "rkball/linalg.hpp"

namespace rkball {

/// Hermitian inner product on C^d, linear in the first argument:
/// <z, w> = sum_i z_i * conj(w_i). This is the convention under which the
/// kernel 1/(1 - <z, w>) has Hermitian Gram matrices.
inline Complex herm_inner(const VectorXcd& z, const VectorXcd& w) {
    return w.dot(z); // Eigen's dot conjugates its *this argument
}

/// A point of the open unit ball of C^d. Construction rejects vectors with
/// norm >= 1 - 1e-12; every kernel formula in the library blows up at the
/// boundary.
class BallPoint {
public:
    explicit BallPoint(VectorXcd coords);

    Eigen::Index dim() const { return coords_.size(); }
    const VectorXcd& coords() const { return coords_; }
    double norm() const { return coords_.norm(); }

    static BallPoint origin(Eigen::Index d);

private:
    VectorXcd coords_;
};

/// Ordered list of n >= 1 pairwise distinct ball points (Euclidean
/// separation > 1e-12) in a common dimension.
class PointSet {
public:
    PointSet(Eigen::Index dim, std::vector<BallPoint> points);

    Eigen::Index dim() const { return dim_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(points_.size()); }
    const BallPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<BallPoint>& points() const { return points_; }

    /// d x n matrix whose columns are the point coordinates, in order.
    MatrixXcd coordinates() const;

private:
    Eigen::Index dim_;
    std::vector<BallPoint> points_;
};

/// Biholomorphic automorphism of the ball in the form z -> U * Psi_w(z),
/// where Psi_w is the elementary involution exchanging 0 and w and U is
/// unitary. Every automorphism of the ball can be written this way.
class BallAutomorphism {
public:
    BallAutomorphism(BallPoint w, MatrixXcd unitary_part);

    Eigen::Index dim() const { return w_.dim(); }
    const BallPoint& w() const { return w_; }
    const MatrixXcd& unitary_part() const { return u_; }

    /// The identity map; with this parameterization it is (w = 0, U = -I)
    /// because Psi_0 = -id.
    static BallAutomorphism identity(Eigen::Index d);

    /// The rotation z -> W z, i.e. (w = 0, U = -W).
    static BallAutomorphism rotation(const MatrixXcd& unitary);

private:
    BallPoint w_;
    MatrixXcd u_;
};

/// Psi_w(z) = (w - P_w z - sqrt(1 - |w|^2) (I - P_w) z) / (1 - <z, w>),
/// where P_w projects onto span(w). Valid for |z| <= 1; the denominator
/// stays away from zero as long as |w| < 1.
VectorXcd elementary_map(const VectorXcd& w, const VectorXcd& z);

/// Pseudohyperbolic metric rho(z, w) = |Psi_w(z)|, automorphism invariant.
double pseudohyperbolic(const BallPoint& z, const BallPoint& w);

double euclidean(const BallPoint& z, const BallPoint& w);

/// The involution Psi_w as an automorphism, i.e. (w, I).
BallAutomorphism elementary_automorphism(const BallPoint& w);

BallPoint apply(const BallAutomorphism& phi, const BallPoint& z);

PointSet apply_set(const BallAutomorphism& phi, const PointSet& x);

/// Composition phi1 after phi2, renormalized into (w, U) form. The new w is
/// the preimage of the origin; the unitary part is recovered by evaluating
/// the composition on the canonical basis of the sphere and projecting onto
/// the unitary group. Correctness contract: apply(compose(phi1, phi2), z) ==
/// apply(phi1, apply(phi2, z)) within 1e-10.
BallAutomorphism compose(const BallAutomorphism& phi1, const BallAutomorphism& phi2);

/// Inverse in (w, U) form; round-trip contract
/// apply(invert(phi), apply(phi, z)) == z within 1e-10.
BallAutomorphism invert(const BallAutomorphism& phi);

} // namespace rkball
