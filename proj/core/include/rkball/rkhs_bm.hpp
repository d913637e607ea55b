#pragma once

#include "rkball/kernels.hpp"
#include "rkball/set_metrics.hpp"

namespace rkball {

/// Candidate basis-mapping isomorphism T: k_{x_i} -> lambda_i k_{y_sigma(i)},
/// encoded by the permutation and the nonzero rescaling vector. Gauge:
/// lambda_1 is real and >= 0 (a global unit-modulus factor never changes the
/// distortion).
struct RescalingCandidate {
    std::vector<int> sigma;
    VectorXcd lambda;

    void validate(Eigen::Index n) const;
};

struct RkBmReport {
    double delta = 1.0;   // upper bound on the Banach-Mazur distance, >= 1
    double rho_rk = 0.0;  // log(delta)
    Certificate certificate = Certificate::UpperBound;
    RescalingCandidate witness; // refers to the normalized sets below
    BallAutomorphism normalizer_x;
    BallAutomorphism normalizer_y;
};

/// Distortion |T| |T^{-1}| of the candidate map, computed as
/// sqrt(max/min) of the Hermitian-definite pencil (D* B_sigma D, A) with
/// A = gram(X), (B_sigma)_{ij} = K(y_sigma(i), y_sigma(j)), D = diag(lambda).
/// Always >= 1.
double distortion(const PointSet& x, const PointSet& y, const RescalingCandidate& cand);

/// Upper bound on the reproducing kernel Banach-Mazur distance between the
/// kernel space quotients on X and Y. Both sets are first normalized by
/// elementary automorphisms sending their first points to the origin (an
/// isometric change of basis), then the distortion is minimized over
/// permutations (exhaustive for n <= 8, seeded heuristic beyond) and over
/// rescalings via multi-start simplex search in log-magnitude/phase
/// coordinates. Deterministic given cfg.seed.
RkBmReport rk_bm_distance(const PointSet& x, const PointSet& y, const OptimizerConfig& cfg);

/// A-priori upper bound for the kernel-space distance in terms of set
/// geometry:
///   (1 + 4 n r (1-r^2)^{-2} rho_s(X,Y) / min(lambda_min(A), lambda_min(B)))^2
/// with rho_s the Euclidean symmetric distance and r the largest Euclidean
/// norm over X and Y.
double rk_bound_from_sets(const PointSet& x, const PointSet& y);

/// A-priori upper bound for the invariant symmetric distance whenever the
/// kernel-space distance is below alpha < 2:
///   2 sqrt(C d sqrt(n)) (alpha - 1)^{1/4},  C = 30 alpha n / (1 - r^2)^2,
/// with r the largest pairwise pseudohyperbolic distance within X.
double set_bound_from_rk(const PointSet& x, double alpha, int d, int n);

/// Truncation order N0 for the multiplier-to-kernel-space comparison: the
/// maximum of the self truncation order of X1 at eps and the smallest M with
/// n R^{2(M+1)} / (1 - R^2) <= eps * lambda_min(gram(X1)). X1 must contain
/// the origin (normalize by an elementary automorphism first).
int n0_from_mult_bound(const PointSet& x1, double big_r, double eps);

} // namespace rkball
