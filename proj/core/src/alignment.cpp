#include "rkball/alignment.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace rkball {

ConfigurationMatrix::ConfigurationMatrix(MatrixXcd columns) : columns_(std::move(columns)) {
    if (columns_.rows() == 0 || columns_.cols() == 0)
        throw ValidationError("ConfigurationMatrix: empty matrix");
    for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
        if (!columns_.col(j).allFinite())
            throw ValidationError("ConfigurationMatrix: non-finite column");
        if (columns_.col(j).norm() >= 1.0)
            throw ValidationError("ConfigurationMatrix: column norm >= 1");
    }
}

ProcrustesResult procrustes(const ConfigurationMatrix& a, const ConfigurationMatrix& b) {
    if (a.dim() != b.dim() || a.size() != b.size())
        throw DimensionMismatch("procrustes: configurations must have equal shape");
    const MatrixXcd cross = b.columns() * a.columns().adjoint();
    Eigen::JacobiSVD<MatrixXcd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
    MatrixXcd w = svd.matrixV() * svd.matrixU().adjoint();
    const double residual = (a.columns() - w * b.columns()).norm();
    return {std::move(w), residual};
}

bool procrustes_bound_check(const ConfigurationMatrix& a, const ConfigurationMatrix& b,
                            double eps) {
    if (!(eps > 0.0))
        throw RangeError("procrustes_bound_check: eps must be > 0");
    const double gram_gap =
        (a.columns().adjoint() * a.columns() - b.columns().adjoint() * b.columns()).norm();
    if (!(gram_gap < eps))
        throw PreconditionError("procrustes_bound_check: |A*A - B*B|_F = " +
                                std::to_string(gram_gap) + " is not < eps");
    const auto result = procrustes(a, b);
    const double d = static_cast<double>(a.dim());
    const double bound = d * (2.0 * a.columns().norm() * std::sqrt(eps) + eps);
    return result.residual * result.residual <= bound;
}

BallAutomorphism align_configurations(const PointSet& x, const PointSet& y,
                                      Eigen::Index x_anchor, Eigen::Index y_anchor) {
    if (x.size() != y.size())
        throw CardinalityMismatch("align_configurations: point counts differ");
    if (x.dim() != y.dim())
        throw DimensionMismatch("align_configurations: dimensions differ");
    if (x_anchor < 0 || x_anchor >= x.size() || y_anchor < 0 || y_anchor >= y.size())
        throw RangeError("align_configurations: anchor index out of range");

    const auto norm_x = elementary_automorphism(x[static_cast<std::size_t>(x_anchor)]);
    const auto norm_y = elementary_automorphism(y[static_cast<std::size_t>(y_anchor)]);
    const ConfigurationMatrix a(apply_set(norm_x, x));
    const ConfigurationMatrix b(apply_set(norm_y, y));
    const auto aligned = procrustes(a, b);

    // Psi_{x_anchor} is an involution, so it doubles as its own inverse.
    return compose(norm_x, compose(BallAutomorphism::rotation(aligned.rotation), norm_y));
}

} // namespace rkball
