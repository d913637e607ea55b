#include "rkball/mult_bm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rkball {

PickInstance::PickInstance(PointSet nodes, std::vector<VectorXcd> targets)
    : nodes_(std::move(nodes)), targets_(std::move(targets)) {
    if (targets_.size() != static_cast<std::size_t>(nodes_.size()))
        throw CardinalityMismatch("PickInstance: one target per node required");
    const Eigen::Index m = targets_.front().size();
    if (m < 1) throw ValidationError("PickInstance: empty target vectors");
    for (const auto& t : targets_) {
        if (t.size() != m)
            throw ValidationError("PickInstance: target vectors of mixed length");
        if (!t.allFinite())
            throw ValidationError("PickInstance: non-finite target");
    }
}

double min_multiplier_norm(const PickInstance& inst) {
    const Eigen::Index n = inst.nodes().size();
    const MatrixXcd& k = gram(inst.nodes()).entries().entries();
    MatrixXcd q(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            q(i, j) = herm_inner(inst.targets()[i], inst.targets()[j]) * k(i, j);
    const auto extremes = pencil_extremes(HermitianMatrix(q), HermitianMatrix(k));
    return std::sqrt(std::max(extremes.second, 0.0));
}

namespace {

std::vector<VectorXcd> coords_of(const PointSet& s, const std::vector<int>& order) {
    std::vector<VectorXcd> out;
    out.reserve(order.size());
    for (int i : order) out.push_back(s[i].coords());
    return out;
}

std::vector<int> identity_order(Eigen::Index n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    return order;
}

// max of the two interpolation norms for the bijection x_i <-> y_{sigma(i)}.
double bijection_cost(const PointSet& x, const PointSet& y, const std::vector<int>& sigma,
                      double* forward = nullptr, double* backward = nullptr) {
    std::vector<BallPoint> y_perm;
    y_perm.reserve(sigma.size());
    for (int s : sigma) y_perm.push_back(y[s]);
    const PointSet ys(y.dim(), std::move(y_perm));

    const double c_fwd =
        min_multiplier_norm(PickInstance(x, coords_of(ys, identity_order(ys.size()))));
    const double c_bwd =
        min_multiplier_norm(PickInstance(ys, coords_of(x, identity_order(x.size()))));
    if (forward) *forward = c_fwd;
    if (backward) *backward = c_bwd;
    return std::max(c_fwd, c_bwd);
}

} // namespace

MultDiscrepancyResult mult_discrepancy(const PointSet& x, const PointSet& y) {
    if (x.dim() != y.dim())
        throw DimensionMismatch("mult_discrepancy: dimensions differ");
    if (x.size() != y.size())
        throw CardinalityMismatch("mult_discrepancy: point counts differ");
    const Eigen::Index n = x.size();

    MultDiscrepancyResult result;
    result.value = std::numeric_limits<double>::infinity();

    if (n <= 8) {
        std::vector<int> sigma = identity_order(n);
        do {
            const double v = bijection_cost(x, y, sigma);
            if (v < result.value) {
                result.value = v;
                result.bijection = sigma;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        result.exhaustive = true;
    } else {
        // Seeded by the geometric bottleneck matching, improved by greedy
        // pairwise swaps until a local minimum.
        std::vector<int> sigma = symmetric(x, y, BaseMetric::Pseudohyperbolic).assignment;
        result.value = bijection_cost(x, y, sigma);
        result.bijection = sigma;
        bool improved = true;
        while (improved) {
            improved = false;
            for (Eigen::Index i = 0; i < n && !improved; ++i)
                for (Eigen::Index j = i + 1; j < n && !improved; ++j) {
                    std::vector<int> trial = result.bijection;
                    std::swap(trial[i], trial[j]);
                    const double v = bijection_cost(x, y, trial);
                    if (v < result.value) {
                        result.value = v;
                        result.bijection = trial;
                        improved = true;
                    }
                }
        }
        result.exhaustive = false;
    }
    return result;
}

MultBmBracket mult_bm_bracket(const PointSet& x, const PointSet& y,
                              const OptimizerConfig& cfg) {
    if (x.size() != y.size())
        throw CardinalityMismatch("mult_bm_bracket: point counts differ");

    MultBmBracket bracket;
    bracket.lower_witness = mult_discrepancy(x, y);
    bracket.lower = bracket.lower_witness.value;
    bijection_cost(x, y, bracket.lower_witness.bijection, &bracket.lower_norm_forward,
                   &bracket.lower_norm_backward);

    bracket.upper_source = rk_bm_distance(x, y, cfg);
    const double log_delta = std::log(bracket.upper_source.delta);
    bracket.upper = std::exp(log_delta * log_delta);
    return bracket;
}

double two_point_mult_lower(const PointSet& x, const PointSet& y) {
    if (x.size() != 2 || y.size() != 2)
        throw CardinalityMismatch("two_point_mult_lower: both sets must have two points");
    const double rx = pseudohyperbolic(x[0], x[1]);
    const double ry = pseudohyperbolic(y[0], y[1]);
    return std::max({1.0, ry / (2.0 * rx), rx / (2.0 * ry)});
}

} // namespace rkball
