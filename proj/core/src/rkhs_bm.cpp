#include "rkball/rkhs_bm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "rkball/optim.hpp"

namespace rkball {

void RescalingCandidate::validate(Eigen::Index n) const {
    if (static_cast<Eigen::Index>(sigma.size()) != n || lambda.size() != n)
        throw ValidationError("RescalingCandidate: wrong size");
    std::vector<bool> seen(sigma.size(), false);
    for (int s : sigma) {
        if (s < 0 || s >= static_cast<int>(sigma.size()) || seen[s])
            throw ValidationError("RescalingCandidate: sigma is not a permutation");
        seen[s] = true;
    }
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        if (std::abs(lambda(i)) <= 1e-12)
            throw ValidationError("RescalingCandidate: vanishing rescaling entry");
    if (lambda(0).real() < 0.0 || std::abs(lambda(0).imag()) > 1e-12 * std::abs(lambda(0)))
        throw ValidationError("RescalingCandidate: lambda_1 must be real and >= 0");
}

namespace {

MatrixXcd permuted_gram(const PointSet& y, const std::vector<int>& sigma) {
    const Eigen::Index n = y.size();
    MatrixXcd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = 1.0 / (1.0 - herm_inner(y[sigma[i]].coords(), y[sigma[j]].coords()));
    return b;
}

// Pencil condition number evaluated through a pre-factored left Gram matrix:
// cond of (D* B D, A) with A = L L*. Returns +inf when rounding drives the
// smallest reduced eigenvalue nonpositive.
class DistortionEvaluator {
public:
    explicit DistortionEvaluator(const MatrixXcd& gram_x) {
        Eigen::LLT<MatrixXcd> llt(gram_x);
        if (llt.info() != Eigen::Success)
            throw SingularPencil("distortion: Gram matrix not numerically positive definite");
        const Eigen::Index n = gram_x.rows();
        inv_l_ = llt.matrixL().solve(MatrixXcd::Identity(n, n));
    }

    double operator()(const MatrixXcd& gram_y_permuted, const VectorXcd& lambda) const {
        const Eigen::Index n = inv_l_.rows();
        MatrixXcd e = inv_l_;
        for (Eigen::Index j = 0; j < n; ++j) e.col(j) *= std::conj(lambda(j));
        MatrixXcd m = e * gram_y_permuted * e.adjoint();
        m = ((m + m.adjoint()) / 2.0).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            return std::numeric_limits<double>::infinity();
        const double lo = solver.eigenvalues()(0);
        const double hi = solver.eigenvalues()(n - 1);
        if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
        return std::sqrt(hi / lo);
    }

private:
    MatrixXcd inv_l_;
};

VectorXcd decode_lambda(Eigen::Index n, const Eigen::VectorXd& p) {
    VectorXcd lambda(n);
    lambda(0) = 1.0;
    for (Eigen::Index i = 1; i < n; ++i)
        lambda(i) = std::polar(std::exp(p(2 * (i - 1))), p(2 * (i - 1) + 1));
    return lambda;
}

Eigen::VectorXd encode_lambda(const VectorXcd& lambda) {
    const Eigen::Index n = lambda.size();
    Eigen::VectorXd p(2 * (n - 1));
    for (Eigen::Index i = 1; i < n; ++i) {
        const Complex rel = lambda(i) / lambda(0);
        p(2 * (i - 1)) = std::log(std::max(std::abs(rel), 1e-12));
        p(2 * (i - 1) + 1) = std::arg(rel);
    }
    return p;
}

// Best rank-one Hermitian fit to the entrywise ratio A ./ B: if the two
// Gram matrices differ by an exact rescaling, conj(lambda_i) lambda_j equals
// that ratio and the leading eigenvector recovers lambda.
VectorXcd rank_one_lambda(const MatrixXcd& a, const MatrixXcd& b) {
    const Eigen::Index n = a.rows();
    MatrixXcd ratio = a.cwiseQuotient(b);
    ratio = ((ratio + ratio.adjoint()) / 2.0).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(ratio);
    if (solver.info() != Eigen::Success) return VectorXcd::Ones(n);
    const double top = solver.eigenvalues()(n - 1);
    if (!(top > 0.0)) return VectorXcd::Ones(n);
    VectorXcd lambda = solver.eigenvectors().col(n - 1).conjugate() * std::sqrt(top);
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(lambda(i)) < 1e-10) lambda(i) = 1e-10;
    return lambda;
}

struct SigmaSearchResult {
    double delta = std::numeric_limits<double>::infinity();
    VectorXcd lambda;
};

SigmaSearchResult optimize_lambda(const DistortionEvaluator& eval, const MatrixXcd& gram_x,
                                  const MatrixXcd& gram_y_perm, const OptimizerConfig& cfg,
                                  std::mt19937_64& rng) {
    const Eigen::Index n = gram_x.rows();
    if (n == 1) return {eval(gram_y_perm, VectorXcd::Ones(1)), VectorXcd::Ones(1)};

    std::vector<Eigen::VectorXd> starts;
    starts.push_back(Eigen::VectorXd::Zero(2 * (n - 1)));
    starts.push_back(encode_lambda(rank_one_lambda(gram_x, gram_y_perm)));
    std::normal_distribution<double> gauss(0.0, 0.5);
    for (int s = 2; s < 8; ++s) {
        Eigen::VectorXd p(2 * (n - 1));
        for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = gauss(rng);
        starts.push_back(p);
    }

    auto score = [&](const Eigen::VectorXd& p) { return eval(gram_y_perm, decode_lambda(n, p)); };

    SigmaSearchResult best;
    for (const auto& start : starts) {
        const auto run = nelder_mead(score, start, 0.15, cfg.local_search_iters, cfg.tolerance);
        if (run.value < best.delta) {
            best.delta = run.value;
            best.lambda = decode_lambda(n, run.x);
        }
        if (best.delta <= 1.0 + cfg.tolerance) break; // cannot be beaten
    }
    return best;
}

// Restores the reporting gauge: lambda_1 real >= 0, sup norm 1.
VectorXcd gauge_fix(VectorXcd lambda) {
    const Complex first = lambda(0);
    if (std::abs(first) > 0.0) lambda *= std::conj(first) / std::abs(first);
    double peak = 0.0;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) peak = std::max(peak, std::abs(lambda(i)));
    if (peak > 0.0) lambda /= peak;
    return lambda;
}

} // namespace

double distortion(const PointSet& x, const PointSet& y, const RescalingCandidate& cand) {
    if (x.size() != y.size())
        throw CardinalityMismatch("distortion: point counts differ");
    cand.validate(x.size());
    const GramMatrix a = gram(x);
    const DistortionEvaluator eval(a.entries().entries());
    const double value = eval(permuted_gram(y, cand.sigma), cand.lambda);
    if (!std::isfinite(value))
        throw SingularPencil("distortion: pencil numerically degenerate");
    return value;
}

RkBmReport rk_bm_distance(const PointSet& x, const PointSet& y, const OptimizerConfig& cfg) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("rk_bm_distance: dimensions differ");
    if (x.size() != y.size())
        throw CardinalityMismatch("rk_bm_distance: point counts differ");
    const Eigen::Index n = x.size();

    // Elementary automorphisms induce isometric isomorphisms of the kernel
    // spaces, so moving the first points to the origin changes nothing while
    // conditioning the Gram matrices.
    const auto norm_x = elementary_automorphism(x[0]);
    const auto norm_y = elementary_automorphism(y[0]);
    const PointSet xn = apply_set(norm_x, x);
    const PointSet yn = apply_set(norm_y, y);

    const MatrixXcd a = gram(xn).entries().entries();
    const DistortionEvaluator eval(a);
    gram(yn); // validates conditioning of the right-hand Gram as well
    std::mt19937_64 rng(cfg.seed);

    double best_delta = std::numeric_limits<double>::infinity();
    std::vector<int> best_sigma;
    VectorXcd best_lambda;
    auto consider = [&](const std::vector<int>& sigma) {
        const auto run = optimize_lambda(eval, a, permuted_gram(yn, sigma), cfg, rng);
        if (run.delta < best_delta) {
            best_delta = run.delta;
            best_sigma = sigma;
            best_lambda = run.lambda;
        }
    };

    if (n <= 8) {
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            consider(sigma);
            if (best_delta <= 1.0 + cfg.tolerance) break;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    } else {
        std::vector<int> sigma = symmetric(xn, yn, BaseMetric::Pseudohyperbolic).assignment;
        consider(sigma);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
        std::uniform_int_distribution<int> swaps(1, 3);
        for (int t = 0; t < cfg.random_restarts && best_delta > 1.0 + cfg.tolerance; ++t) {
            std::vector<int> proposal = best_sigma;
            for (int s = swaps(rng); s > 0; --s)
                std::swap(proposal[pick(rng)], proposal[pick(rng)]);
            consider(proposal);
        }
    }

    if (!std::isfinite(best_delta))
        throw SingularPencil("rk_bm_distance: all candidate pencils degenerate");

    RkBmReport report;
    report.delta = std::max(best_delta, 1.0);
    report.rho_rk = std::log(report.delta);
    report.witness = {std::move(best_sigma), gauge_fix(std::move(best_lambda))};
    report.normalizer_x = norm_x;
    report.normalizer_y = norm_y;
    return report;
}

double rk_bound_from_sets(const PointSet& x, const PointSet& y) {
    if (x.size() != y.size())
        throw CardinalityMismatch("rk_bound_from_sets: point counts differ");
    const double n = static_cast<double>(x.size());
    double r = 0.0;
    for (const auto& p : x.points()) r = std::max(r, p.norm());
    for (const auto& p : y.points()) r = std::max(r, p.norm());

    const double rho_s = symmetric(x, y, BaseMetric::Euclidean).value;
    const double floor = std::min(gram(x).lambda_min(), gram(y).lambda_min());
    const double one_m_r2 = 1.0 - r * r;
    const double base = 1.0 + 4.0 * n * r / (one_m_r2 * one_m_r2) * rho_s / floor;
    return base * base;
}

double set_bound_from_rk(const PointSet& x, double alpha, int d, int n) {
    if (!(alpha > 1.0 && alpha < 2.0))
        throw RangeError("set_bound_from_rk: alpha must lie in (1, 2)");
    double r = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.size()); ++i)
        for (std::size_t j = i + 1; j < static_cast<std::size_t>(x.size()); ++j)
            r = std::max(r, pseudohyperbolic(x[i], x[j]));
    const double one_m_r2 = 1.0 - r * r;
    const double c = 30.0 * alpha * n / (one_m_r2 * one_m_r2);
    const double c_tilde = 2.0 * std::sqrt(c * d * std::sqrt(static_cast<double>(n)));
    return c_tilde * std::pow(alpha - 1.0, 0.25);
}

int n0_from_mult_bound(const PointSet& x1, double big_r, double eps) {
    if (!(big_r > 0.0 && big_r < 1.0))
        throw RangeError("n0_from_mult_bound: R must lie in (0, 1)");
    if (!(eps > 0.0))
        throw RangeError("n0_from_mult_bound: eps must be > 0");
    bool has_origin = false;
    for (const auto& p : x1.points())
        if (p.norm() <= 1e-9) has_origin = true;
    if (!has_origin)
        throw PreconditionError("n0_from_mult_bound: X1 must contain the origin");

    const int n_self = truncation_order_self(x1, eps);
    const double floor = eps * gram(x1).lambda_min();
    const double n = static_cast<double>(x1.size());
    const double geom = 1.0 - big_r * big_r;
    int m = 0;
    while (n * std::pow(big_r, 2.0 * (m + 1)) / geom > floor) {
        if (++m > 10000)
            throw NoConvergence("n0_from_mult_bound: tail order diverged");
    }
    return std::max(n_self, m);
}

} // namespace rkball
