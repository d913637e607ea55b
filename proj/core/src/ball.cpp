#include "rkball/ball.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace rkball {

BallPoint::BallPoint(VectorXcd coords) : coords_(std::move(coords)) {
    if (coords_.size() == 0)
        throw ValidationError("BallPoint: empty coordinate vector");
    for (Eigen::Index i = 0; i < coords_.size(); ++i)
        if (!std::isfinite(coords_(i).real()) || !std::isfinite(coords_(i).imag()))
            throw ValidationError("BallPoint: non-finite coordinate");
    if (coords_.norm() >= 1.0 - 1e-12)
        throw ValidationError("BallPoint: norm " + std::to_string(coords_.norm()) +
                              " is not strictly inside the unit ball");
}

BallPoint BallPoint::origin(Eigen::Index d) {
    return BallPoint(VectorXcd::Zero(d));
}

PointSet::PointSet(Eigen::Index dim, std::vector<BallPoint> points)
    : dim_(dim), points_(std::move(points)) {
    if (points_.empty())
        throw ValidationError("PointSet: at least one point required");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].dim() != dim_)
            throw DimensionMismatch("PointSet: point " + std::to_string(i) +
                                    " has wrong dimension");
        for (std::size_t j = 0; j < i; ++j)
            if ((points_[i].coords() - points_[j].coords()).norm() <= 1e-12)
                throw ValidationError("PointSet: points " + std::to_string(j) +
                                      " and " + std::to_string(i) + " coincide");
    }
}

MatrixXcd PointSet::coordinates() const {
    MatrixXcd m(dim_, size());
    for (Eigen::Index j = 0; j < size(); ++j) m.col(j) = points_[j].coords();
    return m;
}

BallAutomorphism::BallAutomorphism(BallPoint w, MatrixXcd unitary_part)
    : w_(std::move(w)), u_(std::move(unitary_part)) {
    if (u_.rows() != w_.dim() || u_.cols() != w_.dim())
        throw DimensionMismatch("BallAutomorphism: unitary part has wrong shape");
    const Eigen::Index d = u_.rows();
    const double dev = (u_.adjoint() * u_ - MatrixXcd::Identity(d, d)).norm();
    if (dev > 1e-10)
        throw ValidationError("BallAutomorphism: matrix is not unitary, deviation " +
                              std::to_string(dev));
}

BallAutomorphism BallAutomorphism::identity(Eigen::Index d) {
    return BallAutomorphism(BallPoint::origin(d), -MatrixXcd::Identity(d, d));
}

BallAutomorphism BallAutomorphism::rotation(const MatrixXcd& unitary) {
    return BallAutomorphism(BallPoint::origin(unitary.rows()), -unitary);
}

VectorXcd elementary_map(const VectorXcd& w, const VectorXcd& z) {
    const double wn2 = w.squaredNorm();
    if (wn2 == 0.0) return -z;
    const Complex s = herm_inner(z, w);
    const VectorXcd proj = (s / wn2) * w;
    const VectorXcd orth = z - proj;
    return (w - proj - std::sqrt(1.0 - wn2) * orth) / (1.0 - s);
}

double pseudohyperbolic(const BallPoint& z, const BallPoint& w) {
    if (z.dim() != w.dim())
        throw DimensionMismatch("pseudohyperbolic: dimension mismatch");
    return elementary_map(w.coords(), z.coords()).norm();
}

double euclidean(const BallPoint& z, const BallPoint& w) {
    if (z.dim() != w.dim())
        throw DimensionMismatch("euclidean: dimension mismatch");
    return (z.coords() - w.coords()).norm();
}

BallAutomorphism elementary_automorphism(const BallPoint& w) {
    return BallAutomorphism(w, MatrixXcd::Identity(w.dim(), w.dim()));
}

namespace {

VectorXcd apply_raw(const BallAutomorphism& phi, const VectorXcd& z) {
    return phi.unitary_part() * elementary_map(phi.w().coords(), z);
}

// Recover the (w', U') form of an arbitrary automorphism given as a callable
// on the closed ball. U' is pinned down by evaluating phi . Psi_{w'} on the
// canonical basis vectors (the formula extends to the sphere) and projecting
// the resulting matrix back onto the unitary group.
template <typename F>
BallAutomorphism to_canonical_form(Eigen::Index d, F&& raw, const VectorXcd& w_new) {
    MatrixXcd u(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        VectorXcd e = VectorXcd::Zero(d);
        e(k) = 1.0;
        u.col(k) = raw(elementary_map(w_new, e));
    }
    Eigen::JacobiSVD<MatrixXcd> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
    MatrixXcd unitary = svd.matrixU() * svd.matrixV().adjoint();
    return BallAutomorphism(BallPoint(w_new), std::move(unitary));
}

} // namespace

BallPoint apply(const BallAutomorphism& phi, const BallPoint& z) {
    if (phi.dim() != z.dim())
        throw DimensionMismatch("apply: dimension mismatch");
    return BallPoint(apply_raw(phi, z.coords()));
}

PointSet apply_set(const BallAutomorphism& phi, const PointSet& x) {
    if (phi.dim() != x.dim())
        throw DimensionMismatch("apply_set: dimension mismatch");
    std::vector<BallPoint> imgs;
    imgs.reserve(x.size());
    for (const auto& p : x.points()) imgs.push_back(apply(phi, p));
    return PointSet(x.dim(), std::move(imgs));
}

BallAutomorphism compose(const BallAutomorphism& phi1, const BallAutomorphism& phi2) {
    if (phi1.dim() != phi2.dim())
        throw DimensionMismatch("compose: dimension mismatch");
    const Eigen::Index d = phi1.dim();
    // The composition sends w' to 0 where Psi_{w2}(w') = U2^* w1.
    const VectorXcd w_new =
        elementary_map(phi2.w().coords(),
                       (phi2.unitary_part().adjoint() * phi1.w().coords()).eval());
    auto raw = [&](const VectorXcd& z) { return apply_raw(phi1, apply_raw(phi2, z)); };
    return to_canonical_form(d, raw, w_new);
}

BallAutomorphism invert(const BallAutomorphism& phi) {
    const Eigen::Index d = phi.dim();
    // phi^{-1} = Psi_w . U^*, which sends U w to 0.
    const VectorXcd w_new = phi.unitary_part() * phi.w().coords();
    auto raw = [&](const VectorXcd& z) {
        return elementary_map(phi.w().coords(),
                              (phi.unitary_part().adjoint() * z).eval());
    };
    return to_canonical_form(d, raw, w_new);
}

} // namespace rkball
