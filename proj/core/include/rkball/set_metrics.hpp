#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rkball/ball.hpp"

namespace rkball {

enum class BaseMetric { Euclidean, Pseudohyperbolic };

double base_distance(BaseMetric m, const BallPoint& z, const BallPoint& w);

/// Certificate attached to every reported distance value.
enum class Certificate { Exact, UpperBound, LowerBound, Bracket };

std::string certificate_name(Certificate c);

/// Settings for the derivative-free searches over automorphisms and
/// rescalings. Serializable as JSON.
struct OptimizerConfig {
    std::uint64_t seed = 0;
    int random_restarts = 64;
    int local_search_iters = 200;
    double tolerance = 1e-8;

    std::string to_json() const;
    static OptimizerConfig from_json(const std::string& text);
};

/// Hausdorff distance under the chosen base metric. Cardinalities may
/// differ; this is exact (no optimization involved).
double hausdorff(const PointSet& x, const PointSet& y, BaseMetric m);

struct SymmetricResult {
    double value = 0.0;
    std::vector<int> assignment; // x_i is matched to y_{assignment[i]}
};

/// Symmetric distance: min over bijections of the max pairwise displacement,
/// computed exactly as a bottleneck assignment. Requires |X| = |Y|.
SymmetricResult symmetric(const PointSet& x, const PointSet& y, BaseMetric m);

struct InvariantDistanceReport {
    double value = 0.0;
    Certificate certificate = Certificate::UpperBound;
    BallAutomorphism witness;
    std::optional<std::vector<int>> witness_permutation;
};

/// Candidate automorphisms searched by the invariant distances: the
/// identity, Procrustes-aligned maps for every anchor pair, anchored
/// elementary maps composed with a unitary grid for every anchor pair, and
/// cfg.random_restarts random seeds. Deterministic given cfg.seed; both
/// invariant distances evaluate the same pool for the same inputs.
std::vector<BallAutomorphism> automorphism_candidate_pool(const PointSet& x,
                                                          const PointSet& y,
                                                          const OptimizerConfig& cfg);

/// Upper bound on the automorphism invariant Hausdorff distance (base metric
/// pseudohyperbolic): minimum of rho_H(X, Phi(Y)) over the candidate pool,
/// each candidate refined by local search over (w, U) with the unitary part
/// kept on the group by polar projection. The infimum over the noncompact
/// automorphism group is not certifiably attained, so the certificate is
/// always UpperBound.
InvariantDistanceReport invariant_hausdorff(const PointSet& x, const PointSet& y,
                                            const OptimizerConfig& cfg);

/// Same search with the symmetric distance as the inner objective; the
/// witness includes the achieving bijection.
InvariantDistanceReport invariant_symmetric(const PointSet& x, const PointSet& y,
                                            const OptimizerConfig& cfg);

/// Certified lower bound for the invariant symmetric distance of two-point
/// sets: |rho(x_1,x_2) - rho(y_1,y_2)| / 2. Follows from automorphism
/// invariance of the pseudohyperbolic metric and the triangle inequality.
double two_point_lower_bound(const PointSet& x, const PointSet& y);

} // namespace rkball
