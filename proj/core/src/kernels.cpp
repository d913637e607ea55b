#include "rkball/kernels.hpp"

#include <cmath>

namespace rkball {

namespace {

MatrixXcd gram_entries(const PointSet& x) {
    const Eigen::Index n = x.size();
    MatrixXcd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            k(i, j) = 1.0 / (1.0 - herm_inner(x[i].coords(), x[j].coords()));
    return k;
}

MatrixXcd inner_entries(const PointSet& x) {
    const Eigen::Index n = x.size();
    MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = herm_inner(x[i].coords(), x[j].coords());
    return a;
}

} // namespace

GramMatrix::GramMatrix(const PointSet& base)
    : base_(base), entries_(gram_entries(base)), lambda_min_(0.0) {
    const auto eigs = hermitian_eigenvalues(entries_);
    lambda_min_ = eigs.front();
    if (!(lambda_min_ > 1e-12 * eigs.back()))
        throw SingularPencil("GramMatrix: numerically singular (nearly duplicate points)");
}

InnerProductMatrix::InnerProductMatrix(const PointSet& base)
    : base_(base), entries_(inner_entries(base)) {
    for (Eigen::Index i = 0; i < entries_.dim(); ++i)
        for (Eigen::Index j = 0; j < entries_.dim(); ++j)
            if (std::abs(entries_.entries()(i, j)) >= 1.0)
                throw ValidationError("InnerProductMatrix: entry on or outside the unit disc");
}

GramMatrix gram(const PointSet& x) { return GramMatrix(x); }

HermitianMatrix schur_power_sum(const InnerProductMatrix& g, int n_order) {
    if (n_order < 0)
        throw RangeError("schur_power_sum: order must be >= 0");
    const Eigen::Index n = g.entries().dim();
    const MatrixXcd& a = g.entries().entries();
    MatrixXcd sum = MatrixXcd::Ones(n, n); // k = 0 term
    MatrixXcd power = MatrixXcd::Ones(n, n);
    for (int k = 1; k <= n_order; ++k) {
        power = power.cwiseProduct(a).eval();
        sum += power;
    }
    return HermitianMatrix(sum);
}

namespace {

constexpr int kMaxTruncationOrder = 10000;

// Scans truncation orders incrementally, keeping the running Schur power sum.
// Returns the first N >= stabilization index satisfying
// eps * lambda_min(S_N) >= n r^{2(N+1)} / (1 - r^2).
int sufficient_condition_scan(const InnerProductMatrix& ip, double r, double eps) {
    const Eigen::Index n = ip.entries().dim();
    const MatrixXcd& a = ip.entries().entries();
    const double geom = 1.0 - r * r;

    MatrixXcd sum = MatrixXcd::Ones(n, n);
    MatrixXcd power = MatrixXcd::Ones(n, n);
    bool stabilized = false;
    for (int m = 0; m <= kMaxTruncationOrder; ++m) {
        if (m > 0) {
            power = power.cwiseProduct(a).eval();
            sum += power;
        }
        const auto eigs = hermitian_eigenvalues(HermitianMatrix(sum));
        if (!stabilized && eigs.front() > 1e-10 * eigs.back()) stabilized = true;
        if (stabilized) {
            const double tail_bound =
                static_cast<double>(n) * std::pow(r, 2.0 * (m + 1)) / geom;
            if (eps * eigs.front() >= tail_bound) return m;
        }
    }
    throw NoConvergence("truncation order exceeds " + std::to_string(kMaxTruncationOrder) +
                        " (r too close to 1 or eps too small)");
}

} // namespace

int truncation_order_tail(const PointSet& v, double r, double eps) {
    if (!(r > 0.0 && r < 1.0))
        throw RangeError("truncation_order_tail: r must lie in (0, 1)");
    if (!(eps > 0.0))
        throw RangeError("truncation_order_tail: eps must be > 0");
    return sufficient_condition_scan(InnerProductMatrix(v), r, eps);
}

int truncation_order_self(const PointSet& v, double eps) {
    if (!(eps > 0.0))
        throw RangeError("truncation_order_self: eps must be > 0");
    double r = 0.0;
    for (const auto& p : v.points()) r = std::max(r, p.norm());

    const InnerProductMatrix ip(v);
    const MatrixXcd target = gram(v).entries().entries() / (1.0 + eps);
    auto direct_holds = [&](int order) {
        const MatrixXcd diff = schur_power_sum(ip, order).entries() - target;
        return is_psd(HermitianMatrix(diff), 1e-12);
    };

    int n_order = r == 0.0 ? 0 : sufficient_condition_scan(ip, r, eps);
    if (!direct_holds(n_order)) {
        // The sufficient condition implies the direct inequality; scan on if
        // rounding put us marginally below.
        while (!direct_holds(n_order)) {
            if (++n_order > kMaxTruncationOrder)
                throw NoConvergence("truncation_order_self: directly verified order diverged");
        }
    }
    while (n_order > 0 && direct_holds(n_order - 1)) --n_order;
    return n_order;
}

bool kernel_domination(const PointSet& x, const PointSet& mapped, double c) {
    if (x.size() != mapped.size())
        throw CardinalityMismatch("kernel_domination: point counts differ");
    if (!(c >= 1.0))
        throw RangeError("kernel_domination: C must be >= 1");
    for (const auto& m : mapped.points())
        if (m.norm() >= c)
            throw ScaleError("kernel_domination: mapped point with norm >= C");

    const Eigen::Index n = x.size();
    MatrixXcd diff(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex kx = 1.0 / (1.0 - herm_inner(x[i].coords(), x[j].coords()));
            const Complex km =
                1.0 / (1.0 - herm_inner(mapped[i].coords(), mapped[j].coords()) / (c * c));
            diff(i, j) = kx - km;
        }
    return is_psd(HermitianMatrix(diff), 1e-10);
}

} // namespace rkball
