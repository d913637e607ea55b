#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rkball/errors.hpp"

namespace rkball {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using MatrixXd = Eigen::MatrixXd;
using VectorXd = Eigen::VectorXd;

/// Dense Hermitian matrix. Construction checks Hermitian symmetry within
/// 1e-12 (absolute, entrywise) and then symmetrizes, so downstream solvers
/// always see an exactly Hermitian matrix.
class HermitianMatrix {
public:
    explicit HermitianMatrix(MatrixXcd entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const MatrixXcd& entries() const { return entries_; }

private:
    MatrixXcd entries_;
};

/// Square matrix of finite, nonnegative costs for assignment problems.
class CostMatrix {
public:
    explicit CostMatrix(MatrixXd entries);

    Eigen::Index dim() const { return entries_.rows(); }
    const MatrixXd& entries() const { return entries_; }

private:
    MatrixXd entries_;
};

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m);

/// Extreme generalized eigenvalues of the Hermitian-definite pencil (P, Q):
/// the min and max of the Rayleigh quotient a*Pa / a*Qa over a != 0.
/// Q must be strictly positive definite (lambda_min > 1e-12 * lambda_max),
/// otherwise SingularPencil is thrown. Computed by Cholesky congruence of Q
/// to a standard Hermitian eigenproblem.
std::pair<double, double> pencil_extremes(const HermitianMatrix& p,
                                          const HermitianMatrix& q);

/// Singular values of an arbitrary complex matrix, descending.
std::vector<double> singular_values(const MatrixXcd& m);

/// Relative PSD test: lambda_min(M) >= -tol * max(1, lambda_max(M)).
/// The relative form avoids false negatives on badly conditioned Gram
/// matrices of nearly congruent configurations.
bool is_psd(const HermitianMatrix& m, double tol);

struct BottleneckResult {
    double value = 0.0;
    std::vector<int> assignment; // row i is matched to column assignment[i]
};

/// Exact bottleneck assignment: min over permutations s of max_i C(i, s(i)).
/// Binary search over the sorted distinct cost values with perfect-matching
/// feasibility tests; among optimal permutations the lexicographically
/// smallest is returned.
BottleneckResult bottleneck_assignment(const CostMatrix& c);

} // namespace rkball
