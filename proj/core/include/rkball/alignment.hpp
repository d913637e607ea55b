#pragma once

#include "rkball/ball.hpp"

namespace rkball {

/// d x n matrix whose columns are point coordinates; every column must have
/// norm < 1.
class ConfigurationMatrix {
public:
    explicit ConfigurationMatrix(MatrixXcd columns);
    explicit ConfigurationMatrix(const PointSet& x) : ConfigurationMatrix(x.coordinates()) {}

    Eigen::Index dim() const { return columns_.rows(); }
    Eigen::Index size() const { return columns_.cols(); }
    const MatrixXcd& columns() const { return columns_; }

private:
    MatrixXcd columns_;
};

struct ProcrustesResult {
    MatrixXcd rotation; // unitary W minimizing |A - W B|_F
    double residual = 0.0;
};

/// Unitary Procrustes alignment: W = V U^* from the singular value
/// decomposition B A^* = U S V^*. The optimal residual satisfies
/// residual^2 = sum_i s_i^2(A) + s_i^2(B) - 2 s_i(A B^*).
ProcrustesResult procrustes(const ConfigurationMatrix& a, const ConfigurationMatrix& b);

/// Checks the Procrustes perturbation bound: under the hypothesis
/// |A^*A - B^*B|_F < eps, the optimal residual satisfies
/// residual^2 <= d (2 |A|_F eps^{1/2} + eps). Returning false signals a
/// numerical or implementation fault, not a property of the inputs.
/// Throws PreconditionError if the hypothesis fails.
bool procrustes_bound_check(const ConfigurationMatrix& a, const ConfigurationMatrix& b,
                            double eps);

/// Composite automorphism Psi_{x_anchor}^{-1} . W . Psi_{y_anchor} where W is
/// the Procrustes unitary of the origin-normalized configurations (identity
/// column correspondence). Sends y_anchor to x_anchor; for congruent sets
/// listed in matching order it recovers the congruence. Intended as a
/// high-quality initial candidate for the invariant-distance optimizer.
BallAutomorphism align_configurations(const PointSet& x, const PointSet& y,
                                      Eigen::Index x_anchor = 0, Eigen::Index y_anchor = 0);

} // namespace rkball
