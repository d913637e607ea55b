#include "rkball/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rkball {

namespace {

bool all_finite(const MatrixXcd& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

} // namespace

HermitianMatrix::HermitianMatrix(MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw InvalidMatrix("HermitianMatrix: matrix must be square and nonempty");
    if (!all_finite(entries_))
        throw InvalidMatrix("HermitianMatrix: non-finite entries");
    const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > 2e-12)
        throw InvalidMatrix("HermitianMatrix: Hermitian symmetry violated by " +
                            std::to_string(dev));
    entries_ = ((entries_ + entries_.adjoint()) / 2.0).eval();
}

CostMatrix::CostMatrix(MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw InvalidMatrix("CostMatrix: matrix must be square and nonempty");
    for (Eigen::Index j = 0; j < entries_.cols(); ++j)
        for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
            const double v = entries_(i, j);
            if (!std::isfinite(v) || v < 0.0)
                throw InvalidMatrix("CostMatrix: entries must be finite and >= 0");
        }
}

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& m) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m.entries(),
                                                    Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("hermitian_eigenvalues: eigensolver failed");
    const VectorXd& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::pair<double, double> pencil_extremes(const HermitianMatrix& p,
                                          const HermitianMatrix& q) {
    if (p.dim() != q.dim())
        throw DimensionMismatch("pencil_extremes: dimension mismatch");
    const auto q_eigs = hermitian_eigenvalues(q);
    const double q_min = q_eigs.front();
    const double q_max = q_eigs.back();
    if (!(q_min > 1e-12 * q_max))
        throw SingularPencil("pencil_extremes: right-hand matrix not positive definite");

    Eigen::LLT<MatrixXcd> llt(q.entries());
    if (llt.info() != Eigen::Success)
        throw SingularPencil("pencil_extremes: Cholesky factorization failed");

    // Congruence L^{-1} P L^{-*} reduces the pencil to a standard problem.
    const Eigen::Index n = p.dim();
    MatrixXcd reduced = llt.matrixL().solve(p.entries());
    reduced = llt.matrixL().solve(reduced.adjoint()).adjoint();
    reduced = ((reduced + reduced.adjoint()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(reduced, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("pencil_extremes: eigensolver failed");
    return {solver.eigenvalues()(0), solver.eigenvalues()(n - 1)};
}

std::vector<double> singular_values(const MatrixXcd& m) {
    if (!all_finite(m))
        throw InvalidMatrix("singular_values: non-finite entries");
    Eigen::JacobiSVD<MatrixXcd> svd(m);
    const VectorXd& sv = svd.singularValues(); // Eigen returns them descending
    return std::vector<double>(sv.data(), sv.data() + sv.size());
}

bool is_psd(const HermitianMatrix& m, double tol) {
    if (tol < 0.0)
        throw RangeError("is_psd: tolerance must be >= 0");
    const auto eigs = hermitian_eigenvalues(m);
    return eigs.front() >= -tol * std::max(1.0, eigs.back());
}

namespace {

// Perfect matching on the bipartite graph of entries with cost <= threshold,
// via augmenting paths. `rows` restricts the left side; `col_banned` marks
// columns already committed by the lexicographic reconstruction.
class ThresholdMatcher {
public:
    ThresholdMatcher(const MatrixXd& c, double threshold)
        : c_(c), n_(static_cast<int>(c.rows())), threshold_(threshold) {}

    bool full_matching_exists(int first_row, const std::vector<bool>& col_banned) {
        col_of_.assign(n_, -1);
        for (int i = first_row; i < n_; ++i) {
            visited_.assign(n_, false);
            if (!augment(i, col_banned)) return false;
        }
        return true;
    }

private:
    bool augment(int row, const std::vector<bool>& col_banned) {
        for (int j = 0; j < n_; ++j) {
            if (col_banned[j] || visited_[j] || c_(row, j) > threshold_) continue;
            visited_[j] = true;
            if (col_of_[j] == -1 || augment(col_of_[j], col_banned)) {
                col_of_[j] = row;
                return true;
            }
        }
        return false;
    }

    const MatrixXd& c_;
    int n_;
    double threshold_;
    std::vector<int> col_of_;
    std::vector<bool> visited_;
};

} // namespace

BottleneckResult bottleneck_assignment(const CostMatrix& c) {
    const int n = static_cast<int>(c.dim());
    const MatrixXd& m = c.entries();

    std::vector<double> levels(m.data(), m.data() + n * n);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const std::vector<bool> no_bans(n, false);
    auto feasible = [&](double t) {
        ThresholdMatcher matcher(m, t);
        return matcher.full_matching_exists(0, no_bans);
    };

    // Smallest threshold admitting a perfect matching. The largest level is
    // always feasible (complete bipartite graph).
    std::size_t lo = 0, hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(levels[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    const double value = levels[lo];

    // Lexicographically smallest permutation achieving the optimum: commit
    // the smallest feasible column row by row.
    std::vector<int> assignment(n, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (used[j] || m(i, j) > value) continue;
            used[j] = true;
            ThresholdMatcher matcher(m, value);
            if (matcher.full_matching_exists(i + 1, used)) {
                assignment[i] = j;
                break;
            }
            used[j] = false;
        }
    }
    return {value, std::move(assignment)};
}

} // namespace rkball
