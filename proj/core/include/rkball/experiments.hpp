#pragma once

#include <map>
#include <string>
#include <vector>

#include "rkball/mult_bm.hpp"

namespace rkball {

/// One output row of an experiment: named parameters, named metric values,
/// and one certificate tag per metric. Parameter and metric order is fixed
/// by the producing experiment, so serialized output is reproducible.
struct ResultRow {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::pair<std::string, std::string>> certificates;

    void add_param(const std::string& key, double value);
    void add_param(const std::string& key, int value);
    void add_metric(const std::string& key, double value, Certificate cert);
};

/// Reproducible double formatting used in every report (%.17g).
std::string format_double(double v);

/// CSV with the fixed column layout: experiment, param:*, metric:*, cert:*.
/// Columns are the union over rows; rows are sorted by (experiment, params).
std::string rows_to_csv(const std::vector<ResultRow>& rows);

/// JSON mirror of the CSV content (an array of row objects, same ordering).
std::string rows_to_json(const std::vector<ResultRow>& rows);

/// Spearman rank correlation with average ranks on ties.
double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

/// The three-point configuration separating the Hausdorff and symmetric
/// distances: X = {0, delta, t + delta/2}, Y = {delta/2, t, t + delta} on
/// the real line. Reports both distances in both base metrics; in check
/// mode asserts rho_s = t - delta and rho_H = delta/2 to 1e-12.
ResultRow experiment_counterexample_s_vs_h(double delta, double t, bool check = false);

/// Finite sections of the interleaved exponential sequences
/// x_k = 1 - 2^{-k}, y_k = 1 - (1 - eps^k) 2^{-k}: the pointwise
/// pseudohyperbolic gap stays below eps while the Hayman-Newman separation
/// ratios of the interleaved sequence tend to 1.
ResultRow experiment_blaschke(double eps, int k_max, bool check = false);

/// Two-point sets X = {0, x}, Y = {0, y} for shrinking y: the kernel-space
/// distance blows up although the sets stay within a fixed invariant
/// symmetric distance.
std::vector<ResultRow> experiment_nonuniform(double x, const std::vector<double>& y_list,
                                             const OptimizerConfig& cfg, bool check = false);

/// X = {0, r} against Y_k = {1 - 2^{-k}, 1 - 2^{-(k+1)}}: the multiplier
/// discrepancy tends to 1 while the two-point lower bounds for the invariant
/// symmetric distance and the multiplier Banach-Mazur distance stay bounded
/// away from their congruence values. Requires r in (0, 1/6).
std::vector<ResultRow> experiment_hartz(double r, const std::vector<int>& k_list,
                                        bool check = false);

/// Perturbation sweep: Y(s) = X + s * (seeded Gaussian direction), radially
/// clamped inside the ball. Reports the invariant symmetric distance,
/// log of the kernel-space distance, and the log multiplier bracket; in
/// check mode asserts a Spearman rank correlation >= 0.9 between the scale
/// and every distance column, and that the s = 0 row vanishes to 1e-6.
std::vector<ResultRow> experiment_main_theorem(const PointSet& x,
                                               const std::vector<double>& scales,
                                               const OptimizerConfig& cfg,
                                               bool check = false);

/// Names of the registered experiments, in registry order.
std::vector<std::string> experiment_names();

/// Runs a registered experiment by name with the given parameter map
/// (missing keys fall back to the canonical defaults).
std::vector<ResultRow> run_experiment(const std::string& name,
                                      const std::map<std::string, std::string>& params,
                                      const OptimizerConfig& cfg, bool check = false);

struct CheckReport {
    std::vector<ResultRow> rows;
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

/// Runs every registered experiment with its canonical parameters and all
/// check assertions enabled. Deterministic given cfg.seed.
CheckReport run_check_suite(const OptimizerConfig& cfg);

} // namespace rkball
