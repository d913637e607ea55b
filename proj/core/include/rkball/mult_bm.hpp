#pragma once

#include "rkball/rkhs_bm.hpp"

namespace rkball {

/// Interpolation data: node x_i maps to the target vector t_i in C^m. All
/// target vectors must share a common length m >= 1.
class PickInstance {
public:
    PickInstance(PointSet nodes, std::vector<VectorXcd> targets);

    const PointSet& nodes() const { return nodes_; }
    const std::vector<VectorXcd>& targets() const { return targets_; }
    Eigen::Index target_dim() const { return targets_.front().size(); }

private:
    PointSet nodes_;
    std::vector<VectorXcd> targets_;
};

/// Minimal norm of a row multiplier interpolating x_i -> t_i: the smallest
/// C >= 0 with [(C^2 - <t_i, t_j>) K(x_i, x_j)] PSD. By the complete Pick
/// property of the ball kernel this positivity criterion is exact, and the
/// threshold is the largest generalized eigenvalue of the pencil
/// ([<t_i,t_j> K_ij], K).
double min_multiplier_norm(const PickInstance& inst);

struct MultDiscrepancyResult {
    double value = 0.0;
    std::vector<int> bijection; // x_i paired with y_{bijection[i]}
    bool exhaustive = true;     // false once the permutation search is heuristic
};

/// Multiplier discrepancy: min over bijections of the larger of the two
/// minimal interpolation norms (X -> Y and back). Exhaustive for n <= 8;
/// beyond that a seeded transposition search is used and the result is only
/// an upper bound.
MultDiscrepancyResult mult_discrepancy(const PointSet& x, const PointSet& y);

struct MultBmBracket {
    double lower = 1.0;
    double upper = 1.0;
    MultDiscrepancyResult lower_witness;
    double lower_norm_forward = 0.0;  // interpolation norm X -> Y at the witness
    double lower_norm_backward = 0.0; // and Y -> X
    RkBmReport upper_source;
};

/// Certified bracket for the multiplier Banach-Mazur distance. The lower end
/// is the multiplier discrepancy (a true lower bound for the distance); the
/// upper end is exp(log(delta_RK)^2), the kernel-space bound pushed through
/// the squaring inequality between the two log-distances.
MultBmBracket mult_bm_bracket(const PointSet& x, const PointSet& y,
                              const OptimizerConfig& cfg);

/// Composition-operator lower bound for two-point sets:
/// max(1, rho(y_1,y_2) / (2 rho(x_1,x_2)), rho(x_1,x_2) / (2 rho(y_1,y_2))).
double two_point_mult_lower(const PointSet& x, const PointSet& y);

} // namespace rkball
