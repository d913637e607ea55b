#include "rkball/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rkball {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double step, int max_iters,
                             double tol) {
    const int n = static_cast<int>(x0.size());
    int evals = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evals;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<Eigen::VectorXd> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (int i = 1; i <= n; ++i) pts[i](i - 1) += step;
    for (int i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<int> order(n + 1);
    for (int iter = 0; iter < max_iters; ++iter) {
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[a] < vals[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        if (vals[worst] - vals[best] <= tol * (1.0 + std::abs(vals[best]))) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
        const double fr = eval(reflected);
        if (fr < vals[best]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
            const double fe = eval(expanded);
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
        } else if (fr < vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            const Eigen::VectorXd contracted =
                outside ? (centroid + 0.5 * (reflected - centroid)).eval()
                        : (centroid + 0.5 * (pts[worst] - centroid)).eval();
            const double fc = eval(contracted);
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = contracted;
                vals[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    vals[i] = eval(pts[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (vals[i] < vals[best]) best = i;
    return {pts[best], vals[best], evals};
}

} // namespace rkball
