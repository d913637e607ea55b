#include "rkball/set_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "rkball/alignment.hpp"
#include "rkball/optim.hpp"

namespace rkball {

double base_distance(BaseMetric m, const BallPoint& z, const BallPoint& w) {
    return m == BaseMetric::Euclidean ? euclidean(z, w) : pseudohyperbolic(z, w);
}

std::string certificate_name(Certificate c) {
    switch (c) {
        case Certificate::Exact: return "EXACT";
        case Certificate::UpperBound: return "UPPER_BOUND";
        case Certificate::LowerBound: return "LOWER_BOUND";
        case Certificate::Bracket: return "BRACKET";
    }
    return "UNKNOWN";
}

std::string OptimizerConfig::to_json() const {
    nlohmann::json j{{"seed", seed},
                     {"random_restarts", random_restarts},
                     {"local_search_iters", local_search_iters},
                     {"tolerance", tolerance}};
    return j.dump();
}

OptimizerConfig OptimizerConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("OptimizerConfig: ") + e.what());
    }
    OptimizerConfig cfg;
    cfg.seed = j.value("seed", cfg.seed);
    cfg.random_restarts = j.value("random_restarts", cfg.random_restarts);
    cfg.local_search_iters = j.value("local_search_iters", cfg.local_search_iters);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    if (cfg.random_restarts < 0 || cfg.local_search_iters < 0 || !(cfg.tolerance > 0.0))
        throw ValidationError("OptimizerConfig: nonnegative counts and positive tolerance required");
    return cfg;
}

namespace {

MatrixXd pairwise_cost(const PointSet& x, const PointSet& y, BaseMetric m) {
    MatrixXd c(x.size(), y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        for (Eigen::Index j = 0; j < y.size(); ++j)
            c(i, j) = base_distance(m, x[static_cast<std::size_t>(i)],
                                    y[static_cast<std::size_t>(j)]);
    return c;
}

} // namespace

double hausdorff(const PointSet& x, const PointSet& y, BaseMetric m) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("hausdorff: dimensions differ");
    const MatrixXd c = pairwise_cost(x, y, m);
    const double forward = c.rowwise().minCoeff().maxCoeff();
    const double backward = c.colwise().minCoeff().maxCoeff();
    return std::max(forward, backward);
}

SymmetricResult symmetric(const PointSet& x, const PointSet& y, BaseMetric m) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("symmetric: dimensions differ");
    if (x.size() != y.size())
        throw CardinalityMismatch("symmetric: point counts differ");
    auto matched = bottleneck_assignment(CostMatrix(pairwise_cost(x, y, m)));
    return {matched.value, std::move(matched.assignment)};
}

namespace {

// ---- candidate pool -------------------------------------------------------

MatrixXcd haar_unitary(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixXcd g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<MatrixXcd> qr(g);
    MatrixXcd q = qr.householderQ();
    const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        q.col(j) *= std::abs(rjj) > 0.0 ? rjj / std::abs(rjj) : Complex(1.0, 0.0);
    }
    return q;
}

VectorXcd random_ball_vector(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    const double n = v.norm();
    if (n == 0.0) return VectorXcd::Zero(d);
    return v * (0.9 * unif(rng) / n);
}

BallAutomorphism anchored(const BallPoint& xi, const MatrixXcd& u, const BallPoint& yj) {
    return compose(elementary_automorphism(xi),
                   compose(BallAutomorphism::rotation(u), elementary_automorphism(yj)));
}

// Procrustes alignment of the anchor-normalized configurations with the
// column correspondence re-estimated from the current rotation. The initial
// correspondence matches distance-to-anchor profiles, which a rotation
// cannot change.
BallAutomorphism iterative_alignment(const PointSet& x, const PointSet& y,
                                     std::size_t i, std::size_t j) {
    const auto norm_x = elementary_automorphism(x[i]);
    const auto norm_y = elementary_automorphism(y[j]);
    const MatrixXcd a = apply_set(norm_x, x).coordinates();
    const MatrixXcd b = apply_set(norm_y, y).coordinates();
    const Eigen::Index n = a.cols();

    MatrixXd profile_cost(n, n);
    for (Eigen::Index l = 0; l < n; ++l)
        for (Eigen::Index k = 0; k < n; ++k)
            profile_cost(l, k) = std::abs(a.col(k).norm() - b.col(l).norm());
    std::vector<int> corr = bottleneck_assignment(CostMatrix(profile_cost)).assignment;

    MatrixXcd w = MatrixXcd::Identity(a.rows(), a.rows());
    for (int round = 0; round < 3; ++round) {
        MatrixXcd a_matched(a.rows(), n);
        for (Eigen::Index l = 0; l < n; ++l) a_matched.col(l) = a.col(corr[l]);
        w = procrustes(ConfigurationMatrix(a_matched), ConfigurationMatrix(b)).rotation;

        MatrixXd refit(n, n);
        const MatrixXcd wb = w * b;
        for (Eigen::Index l = 0; l < n; ++l)
            for (Eigen::Index k = 0; k < n; ++k)
                refit(l, k) = (a.col(k) - wb.col(l)).norm();
        corr = bottleneck_assignment(CostMatrix(refit)).assignment;
    }
    return anchored(x[i], w, y[j]);
}

// ---- local refinement over (w, U) -----------------------------------------

constexpr double kMaxCenterNorm = 1.0 - 1e-6;

Eigen::VectorXd encode_automorphism(const BallAutomorphism& phi) {
    const Eigen::Index d = phi.dim();
    Eigen::VectorXd p(2 * d + 2 * d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        p(2 * i) = phi.w().coords()(i).real();
        p(2 * i + 1) = phi.w().coords()(i).imag();
    }
    Eigen::Index at = 2 * d;
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            p(at++) = phi.unitary_part()(i, j).real();
            p(at++) = phi.unitary_part()(i, j).imag();
        }
    return p;
}

BallAutomorphism decode_automorphism(Eigen::Index d, const Eigen::VectorXd& p) {
    VectorXcd w(d);
    for (Eigen::Index i = 0; i < d; ++i) w(i) = Complex(p(2 * i), p(2 * i + 1));
    const double wn = w.norm();
    if (wn > kMaxCenterNorm) w *= kMaxCenterNorm / wn;

    MatrixXcd m(d, d);
    Eigen::Index at = 2 * d;
    for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index i = 0; i < d; ++i) {
            m(i, j) = Complex(p(at), p(at + 1));
            at += 2;
        }
    Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    MatrixXcd u = svd.matrixU() * svd.matrixV().adjoint();
    return BallAutomorphism(BallPoint(w), std::move(u));
}

enum class Objective { Hausdorff, Symmetric };

double objective_value(Objective kind, const PointSet& x, const PointSet& y,
                       const BallAutomorphism& phi) {
    try {
        const PointSet moved = apply_set(phi, y);
        return kind == Objective::Hausdorff
                   ? hausdorff(x, moved, BaseMetric::Pseudohyperbolic)
                   : symmetric(x, moved, BaseMetric::Pseudohyperbolic).value;
    } catch (const Error&) {
        // Candidates can push points onto the boundary or collapse them;
        // such automorphisms are simply not usable witnesses.
        return std::numeric_limits<double>::infinity();
    }
}

InvariantDistanceReport optimize_invariant(Objective kind, const PointSet& x,
                                           const PointSet& y, const OptimizerConfig& cfg) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("invariant distance: dimensions differ");
    if (kind == Objective::Symmetric && x.size() != y.size())
        throw CardinalityMismatch("invariant_symmetric: point counts differ");

    const Eigen::Index d = x.dim();
    const auto pool = automorphism_candidate_pool(x, y, cfg);

    double best_value = std::numeric_limits<double>::infinity();
    BallAutomorphism best = BallAutomorphism::identity(d);
    for (const auto& candidate : pool) {
        auto score = [&](const Eigen::VectorXd& p) {
            return objective_value(kind, x, y, decode_automorphism(d, p));
        };
        const auto refined = nelder_mead(score, encode_automorphism(candidate), 0.08,
                                         cfg.local_search_iters, cfg.tolerance);
        const double direct = objective_value(kind, x, y, candidate);
        const bool refined_wins = refined.value < direct;
        const double value = refined_wins ? refined.value : direct;
        if (value < best_value) {
            best_value = value;
            best = refined_wins ? decode_automorphism(d, refined.x) : candidate;
        }
    }

    if (!std::isfinite(best_value))
        throw NumericalError("invariant distance: no usable candidate automorphism");

    InvariantDistanceReport report{best_value, Certificate::UpperBound, best, std::nullopt};
    if (kind == Objective::Symmetric)
        report.witness_permutation =
            symmetric(x, apply_set(best, y), BaseMetric::Pseudohyperbolic).assignment;
    return report;
}

} // namespace

std::vector<BallAutomorphism> automorphism_candidate_pool(const PointSet& x,
                                                          const PointSet& y,
                                                          const OptimizerConfig& cfg) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("automorphism_candidate_pool: dimensions differ");
    const Eigen::Index d = x.dim();
    std::mt19937_64 rng(cfg.seed);

    std::vector<MatrixXcd> grid;
    if (d == 1) {
        for (int k = 0; k < 16; ++k) {
            MatrixXcd u(1, 1);
            u(0, 0) = std::polar(1.0, 2.0 * M_PI * k / 16.0);
            grid.push_back(u);
        }
    } else {
        // Haar samples together with their adjoints, so the grid is closed
        // under inversion and the search is symmetric in (X, Y).
        for (int k = 0; k < 16; ++k) {
            MatrixXcd u = haar_unitary(d, rng);
            grid.push_back(u);
            grid.push_back(u.adjoint());
        }
    }

    std::vector<BallAutomorphism> pool;
    pool.push_back(BallAutomorphism::identity(d));

    const bool equal_size = x.size() == y.size();
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.size()); ++i)
        for (std::size_t j = 0; j < static_cast<std::size_t>(y.size()); ++j) {
            if (equal_size) pool.push_back(iterative_alignment(x, y, i, j));
            for (const auto& u : grid) pool.push_back(anchored(x[i], u, y[j]));
        }

    for (int k = 0; k < cfg.random_restarts; ++k) {
        const VectorXcd w = random_ball_vector(d, rng);
        const MatrixXcd u = haar_unitary(d, rng);
        pool.emplace_back(BallPoint(w), u);
    }
    return pool;
}

InvariantDistanceReport invariant_hausdorff(const PointSet& x, const PointSet& y,
                                            const OptimizerConfig& cfg) {
    return optimize_invariant(Objective::Hausdorff, x, y, cfg);
}

InvariantDistanceReport invariant_symmetric(const PointSet& x, const PointSet& y,
                                            const OptimizerConfig& cfg) {
    return optimize_invariant(Objective::Symmetric, x, y, cfg);
}

double two_point_lower_bound(const PointSet& x, const PointSet& y) {
    if (x.size() != 2 || y.size() != 2)
        throw CardinalityMismatch("two_point_lower_bound: both sets must have two points");
    const double rx = pseudohyperbolic(x[0], x[1]);
    const double ry = pseudohyperbolic(y[0], y[1]);
    return std::abs(rx - ry) / 2.0;
}

} // namespace rkball
