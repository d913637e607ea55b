#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace rkball {

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
};

/// Deterministic Nelder-Mead simplex minimization. Stops when the simplex
/// value spread falls below `tol` (relative to the best value) or after
/// `max_iters` iterations.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double step, int max_iters,
                             double tol);

} // namespace rkball
