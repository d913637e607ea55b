#include "rkball/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rkball/pointset_io.hpp"
#include "rkball/set_metrics.hpp"

namespace rkball {

void ResultRow::add_param(const std::string& key, double value) {
    params.emplace_back(key, format_double(value));
}

void ResultRow::add_param(const std::string& key, int value) {
    params.emplace_back(key, std::to_string(value));
}

void ResultRow::add_metric(const std::string& key, double value, Certificate cert) {
    if (!std::isfinite(value))
        throw NumericalError("ResultRow: non-finite metric " + key);
    metrics.emplace_back(key, value);
    certificates.emplace_back(key, certificate_name(cert));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<const ResultRow*> sorted_views(const std::vector<ResultRow>& rows) {
    std::vector<const ResultRow*> views;
    views.reserve(rows.size());
    for (const auto& r : rows) views.push_back(&r);
    std::stable_sort(views.begin(), views.end(), [](const ResultRow* a, const ResultRow* b) {
        if (a->experiment != b->experiment) return a->experiment < b->experiment;
        return a->params < b->params;
    });
    return views;
}

void check_that(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure(message);
}

} // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
    std::set<std::string> param_keys, metric_keys;
    for (const auto& r : rows) {
        for (const auto& [k, v] : r.params) param_keys.insert(k);
        for (const auto& [k, v] : r.metrics) metric_keys.insert(k);
    }

    std::ostringstream out;
    out << "experiment";
    for (const auto& k : param_keys) out << ",param:" << k;
    for (const auto& k : metric_keys) out << ",metric:" << k;
    for (const auto& k : metric_keys) out << ",cert:" << k;
    out << "\n";

    for (const ResultRow* r : sorted_views(rows)) {
        out << r->experiment;
        for (const auto& key : param_keys) {
            out << ",";
            for (const auto& [k, v] : r->params)
                if (k == key) out << v;
        }
        for (const auto& key : metric_keys) {
            out << ",";
            for (const auto& [k, v] : r->metrics)
                if (k == key) out << format_double(v);
        }
        for (const auto& key : metric_keys) {
            out << ",";
            for (const auto& [k, v] : r->certificates)
                if (k == key) out << v;
        }
        out << "\n";
    }
    return out.str();
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ResultRow* r : sorted_views(rows)) {
        nlohmann::ordered_json obj;
        obj["experiment"] = r->experiment;
        nlohmann::ordered_json params, metrics, certs;
        for (const auto& [k, v] : r->params) params[k] = v;
        for (const auto& [k, v] : r->metrics) metrics[k] = format_double(v);
        for (const auto& [k, v] : r->certificates) certs[k] = v;
        obj["params"] = params;
        obj["metrics"] = metrics;
        obj["certificates"] = certs;
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

double spearman_rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw RangeError("spearman: need two equally sized samples");
    auto ranks = [](const std::vector<double>& v) {
        const std::size_t n = v.size();
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
        std::vector<double> rank(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
            i = j + 1;
        }
        return rank;
    };
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (va == 0.0 || vb == 0.0)
        throw NumericalError("spearman: constant sample has no rank correlation");
    return cov / std::sqrt(va * vb);
}

namespace {

PointSet real_line_set(const std::vector<double>& xs) {
    std::vector<BallPoint> pts;
    pts.reserve(xs.size());
    for (double v : xs) {
        VectorXcd c(1);
        c(0) = v;
        pts.emplace_back(c);
    }
    return PointSet(1, std::move(pts));
}

double rho_ph_scalar(double x, double y) { return std::abs(x - y) / std::abs(1.0 - x * y); }

} // namespace

ResultRow experiment_counterexample_s_vs_h(double delta, double t, bool check) {
    if (!(delta > 0.0 && delta < t / 10.0 && t < 1.0))
        throw RangeError("counterexample_s_vs_h: need 0 < delta < t/10 < 1/10");
    const PointSet x = real_line_set({0.0, delta, t + delta / 2.0});
    const PointSet y = real_line_set({delta / 2.0, t, t + delta});

    const double rs_e = symmetric(x, y, BaseMetric::Euclidean).value;
    const double rh_e = hausdorff(x, y, BaseMetric::Euclidean);
    const double rs_p = symmetric(x, y, BaseMetric::Pseudohyperbolic).value;
    const double rh_p = hausdorff(x, y, BaseMetric::Pseudohyperbolic);

    ResultRow row;
    row.experiment = "counterexample_s_vs_h";
    row.add_param("delta", delta);
    row.add_param("t", t);
    row.add_metric("rho_s_euclid", rs_e, Certificate::Exact);
    row.add_metric("rho_h_euclid", rh_e, Certificate::Exact);
    row.add_metric("rho_s_ph", rs_p, Certificate::Exact);
    row.add_metric("rho_h_ph", rh_p, Certificate::Exact);

    if (check) {
        check_that(std::abs(rs_e - (t - delta)) <= 1e-12,
                   "counterexample: rho_s != t - delta");
        check_that(std::abs(rh_e - delta / 2.0) <= 1e-12,
                   "counterexample: rho_H != delta/2");
        if (t <= 0.01)
            check_that(std::abs(rh_p - delta / 2.0) <= 0.05 * (delta / 2.0),
                       "counterexample: pseudohyperbolic rho_H deviates from delta/2 by more than 5%");
    }
    return row;
}

ResultRow experiment_blaschke(double eps, int k_max, bool check) {
    if (!(eps > 0.0 && eps < 1.0))
        throw RangeError("blaschke: eps must lie in (0, 1)");
    if (k_max < 1 || k_max > 40)
        throw RangeError("blaschke: K must lie in [1, 40] (denominators underflow beyond)");

    // Everything here is scalar arithmetic on the real line; the sequences
    // approach the boundary faster than BallPoint admits, so no point sets
    // are constructed.
    double sup_rho = 0.0;
    std::vector<double> xs(k_max + 1), ys(k_max + 1), pair_ratios(k_max + 1);
    for (int k = 1; k <= k_max; ++k) {
        const double tail = std::pow(2.0, -k);
        xs[k] = 1.0 - tail;
        ys[k] = 1.0 - (1.0 - std::pow(eps, k)) * tail;
        sup_rho = std::max(sup_rho, rho_ph_scalar(xs[k], ys[k]));
        pair_ratios[k] = (1.0 - ys[k]) / (1.0 - xs[k]);
    }
    double v_ratio_min = 1.0, v_ratio_max = 0.0, w_ratio_max = 0.0;
    for (int k = 1; k < k_max; ++k) {
        const double vr = (1.0 - xs[k + 1]) / (1.0 - xs[k]);
        v_ratio_min = std::min(v_ratio_min, vr);
        v_ratio_max = std::max(v_ratio_max, vr);
    }
    std::vector<double> interleaved;
    for (int k = 1; k <= k_max; ++k) {
        interleaved.push_back(xs[k]);
        interleaved.push_back(ys[k]);
    }
    std::sort(interleaved.begin(), interleaved.end());
    for (std::size_t i = 0; i + 1 < interleaved.size(); ++i)
        w_ratio_max =
            std::max(w_ratio_max, (1.0 - interleaved[i + 1]) / (1.0 - interleaved[i]));

    ResultRow row;
    row.experiment = "blaschke";
    row.add_param("eps", eps);
    row.add_param("k_max", k_max);
    row.add_metric("sup_rho_ph", sup_rho, Certificate::Exact);
    row.add_metric("v_ratio_min", v_ratio_min, Certificate::Exact);
    row.add_metric("v_ratio_max", v_ratio_max, Certificate::Exact);
    row.add_metric("w_pair_ratio_first", pair_ratios[1], Certificate::Exact);
    row.add_metric("w_pair_ratio_last", pair_ratios[k_max], Certificate::Exact);
    row.add_metric("w_consecutive_ratio_max", w_ratio_max, Certificate::Exact);

    if (check) {
        check_that(sup_rho <= eps, "blaschke: sup rho_ph exceeds eps");
        check_that(v_ratio_min == 0.5 && v_ratio_max == 0.5,
                   "blaschke: separation ratios of the base sequence are not exactly 1/2");
        for (int k = 1; k <= k_max; ++k)
            check_that(std::abs(pair_ratios[k] - (1.0 - std::pow(eps, k))) <= 1e-12,
                       "blaschke: interleaved pair ratio deviates from 1 - eps^k");
        for (int k = 1; k < k_max; ++k)
            check_that(pair_ratios[k] < pair_ratios[k + 1],
                       "blaschke: interleaved pair ratios fail to increase toward 1");
    }
    return row;
}

std::vector<ResultRow> experiment_nonuniform(double x, const std::vector<double>& y_list,
                                             const OptimizerConfig& cfg, bool check) {
    if (!(x > 0.0 && x < 0.5))
        throw RangeError("nonuniform: x must lie in (0, 1/2)");
    for (double y : y_list)
        if (!(y > 0.0 && y < x))
            throw RangeError("nonuniform: every y must satisfy 0 < y < x");

    const PointSet xs = real_line_set({0.0, x});
    std::vector<ResultRow> rows;
    std::vector<double> deltas;
    for (double y : y_list) {
        const PointSet ys = real_line_set({0.0, y});
        const auto report = rk_bm_distance(xs, ys, cfg);
        deltas.push_back(report.delta);

        ResultRow row;
        row.experiment = "nonuniform";
        row.add_param("x", x);
        row.add_param("y", y);
        row.add_metric("delta_rk", report.delta, Certificate::UpperBound);
        row.add_metric("rho_s_tilde_bound", 2.0 * std::max(x, y), Certificate::UpperBound);
        row.add_metric("alpha_exceeded", report.delta >= 1.01 ? 1.0 : 0.0,
                       Certificate::Exact);
        rows.push_back(std::move(row));
    }

    if (check) {
        for (std::size_t i = 0; i + 1 < deltas.size(); ++i)
            check_that(deltas[i] < deltas[i + 1],
                       "nonuniform: kernel-space distance fails to grow as y shrinks");
        for (const auto& row : rows)
            check_that(row.metrics[1].second <= 2.0 * x,
                       "nonuniform: invariant-distance bound exceeds 2x");
    }
    return rows;
}

std::vector<ResultRow> experiment_hartz(double r, const std::vector<int>& k_list, bool check) {
    if (!(r > 0.0 && r < 1.0 / 6.0))
        throw RangeError("hartz: r must lie in (0, 1/6)");
    for (int k : k_list)
        if (k < 1 || k > 40)
            throw RangeError("hartz: every k must lie in [1, 40]");

    const PointSet x = real_line_set({0.0, r});
    std::vector<ResultRow> rows;
    std::vector<double> discrepancies;
    for (int k : k_list) {
        const double yk = 1.0 - std::pow(2.0, -k);
        const double yk1 = 1.0 - std::pow(2.0, -(k + 1));
        const PointSet y = real_line_set({yk, yk1});

        const double rho_pair = pseudohyperbolic(y[0], y[1]);
        const auto disc = mult_discrepancy(x, y);
        discrepancies.push_back(disc.value);

        ResultRow row;
        row.experiment = "hartz";
        row.add_param("r", r);
        row.add_param("k", k);
        row.add_metric("rho_ph_pair", rho_pair, Certificate::Exact);
        row.add_metric("mult_discrepancy", disc.value,
                       disc.exhaustive ? Certificate::Exact : Certificate::UpperBound);
        row.add_metric("set_lower", two_point_lower_bound(x, y), Certificate::LowerBound);
        row.add_metric("mult_lower", two_point_mult_lower(x, y), Certificate::LowerBound);
        rows.push_back(std::move(row));

        if (check)
            check_that(std::abs(rho_pair - 1.0 / (3.0 - std::pow(2.0, -k))) <= 1e-12,
                       "hartz: rho_ph(y_k, y_{k+1}) deviates from 1/(3 - 2^{-k})");
    }

    if (check) {
        for (std::size_t i = 0; i + 1 < discrepancies.size(); ++i)
            check_that(discrepancies[i] > discrepancies[i + 1],
                       "hartz: multiplier discrepancy fails to decrease");
        for (std::size_t i = 0; i < k_list.size(); ++i)
            if (k_list[i] >= 20)
                check_that(std::abs(rows[i].metrics[3].second - 1.0 / (6.0 * r)) <= 0.01,
                           "hartz: multiplier lower bound misses 1/(6r)");
        for (std::size_t i = 0; i + 1 < rows.size(); ++i)
            check_that(rows[i].metrics[2].second < rows[i + 1].metrics[2].second,
                       "hartz: set lower bound fails to increase");
    }
    return rows;
}

std::vector<ResultRow> experiment_main_theorem(const PointSet& x,
                                               const std::vector<double>& scales,
                                               const OptimizerConfig& cfg, bool check) {
    if (x.size() > 6)
        throw RangeError("main_theorem: n must be <= 6");
    for (double s : scales)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw RangeError("main_theorem: scales must be finite and >= 0");

    const Eigen::Index n = x.size();
    const Eigen::Index d = x.dim();
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // One Gaussian direction shared by the whole sweep, so the perturbed
    // family is a straight path through X and the distance columns respond
    // monotonically to the scale.
    std::vector<PointSet> perturbed;
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
        MatrixXcd dir(d, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < d; ++i) dir(i, j) = Complex(gauss(rng), gauss(rng));
        perturbed.clear();
        ok = true;
        for (double s : scales) {
            MatrixXcd coords = x.coordinates() + s * dir;
            std::vector<BallPoint> pts;
            bool valid = true;
            for (Eigen::Index j = 0; j < n && valid; ++j) {
                VectorXcd c = coords.col(j);
                if (c.norm() > 0.98) c *= 0.98 / c.norm();
                for (const auto& prev : pts)
                    if ((prev.coords() - c).norm() <= 1e-12) valid = false;
                if (valid) pts.emplace_back(c);
            }
            if (!valid) {
                ok = false;
                break;
            }
            perturbed.emplace_back(d, std::move(pts));
        }
    }
    if (!ok)
        throw DegenerateSample("main_theorem: perturbation kept colliding points");

    std::vector<ResultRow> rows;
    std::vector<double> col_scale, col_set, col_rk, col_mult_lo, col_mult_hi;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const PointSet& y = scales[i] == 0.0 ? x : perturbed[i];
        const auto inv = invariant_symmetric(x, y, cfg);
        const auto bracket = mult_bm_bracket(x, y, cfg);

        ResultRow row;
        row.experiment = "main_theorem";
        row.add_param("scale", scales[i]);
        row.add_metric("rho_s_tilde", inv.value, Certificate::UpperBound);
        row.add_metric("log_delta_rk", bracket.upper_source.rho_rk, Certificate::UpperBound);
        row.add_metric("log_mult_lower", std::log(std::max(bracket.lower, 1.0)),
                       Certificate::LowerBound);
        row.add_metric("log_mult_upper", std::log(bracket.upper), Certificate::UpperBound);
        rows.push_back(std::move(row));

        col_scale.push_back(scales[i]);
        col_set.push_back(inv.value);
        col_rk.push_back(bracket.upper_source.rho_rk);
        col_mult_lo.push_back(std::log(std::max(bracket.lower, 1.0)));
        col_mult_hi.push_back(std::log(bracket.upper));

        if (check) {
            check_that(bracket.lower <= bracket.upper + 1e-9,
                       "main_theorem: multiplier bracket inverted");
            if (scales[i] == 0.0) {
                check_that(inv.value <= 1e-6, "main_theorem: s=0 invariant distance not ~0");
                check_that(bracket.upper_source.rho_rk <= 1e-6,
                           "main_theorem: s=0 kernel-space distance not ~0");
                check_that(std::log(bracket.upper) <= 1e-6,
                           "main_theorem: s=0 multiplier bracket not ~[0,0]");
            }
        }
    }

    if (check && scales.size() >= 3) {
        check_that(spearman_rank_correlation(col_scale, col_set) >= 0.9,
                   "main_theorem: invariant distance column not rank-correlated with scale");
        check_that(spearman_rank_correlation(col_scale, col_rk) >= 0.9,
                   "main_theorem: kernel-space column not rank-correlated with scale");
        check_that(spearman_rank_correlation(col_scale, col_mult_lo) >= 0.9,
                   "main_theorem: multiplier lower column not rank-correlated with scale");
        check_that(spearman_rank_correlation(col_scale, col_mult_hi) >= 0.9,
                   "main_theorem: multiplier upper column not rank-correlated with scale");
    }
    return rows;
}

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("invalid number in list: " + item);
        }
    }
    if (out.empty()) throw ParseError("empty list parameter");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

double get_double(const std::map<std::string, std::string>& params, const std::string& key,
                  double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ParseError("parameter " + key + ": invalid number " + it->second);
    }
}

PointSet default_main_theorem_set() {
    std::vector<BallPoint> pts;
    VectorXcd a(1), b(1), c(1);
    a(0) = 0.0;
    b(0) = 0.3;
    c(0) = Complex(0.0, 0.5);
    pts.emplace_back(a);
    pts.emplace_back(b);
    pts.emplace_back(c);
    return PointSet(1, std::move(pts));
}

} // namespace

std::vector<std::string> experiment_names() {
    return {"counterexample_s_vs_h", "blaschke", "nonuniform", "hartz", "main_theorem"};
}

std::vector<ResultRow> run_experiment(const std::string& name,
                                      const std::map<std::string, std::string>& params,
                                      const OptimizerConfig& cfg, bool check) {
    if (name == "counterexample_s_vs_h") {
        return {experiment_counterexample_s_vs_h(get_double(params, "delta", 0.005),
                                                 get_double(params, "t", 0.1), check)};
    }
    if (name == "blaschke") {
        return {experiment_blaschke(get_double(params, "eps", 0.1),
                                    static_cast<int>(get_double(params, "k_max", 20)), check)};
    }
    if (name == "nonuniform") {
        const auto ys = params.count("y_list") ? parse_double_list(params.at("y_list"))
                                               : std::vector<double>{0.05, 0.01, 0.002};
        return experiment_nonuniform(get_double(params, "x", 0.1), ys, cfg, check);
    }
    if (name == "hartz") {
        const auto ks = params.count("k_list") ? parse_int_list(params.at("k_list"))
                                               : std::vector<int>{4, 8, 10, 12, 20};
        return experiment_hartz(get_double(params, "r", 0.1), ks, check);
    }
    if (name == "main_theorem") {
        const PointSet x = params.count("x_json") ? pointset_from_json(params.at("x_json"))
                                                  : default_main_theorem_set();
        const auto scales = params.count("scales")
                                ? parse_double_list(params.at("scales"))
                                : std::vector<double>{0.1, 0.05, 0.01, 0.001, 0.0};
        return experiment_main_theorem(x, scales, cfg, check);
    }
    throw ValidationError("unknown experiment: " + name);
}

CheckReport run_check_suite(const OptimizerConfig& cfg) {
    CheckReport report;
    auto run = [&](const std::string& name, const std::map<std::string, std::string>& params) {
        try {
            auto rows = run_experiment(name, params, cfg, true);
            report.rows.insert(report.rows.end(), rows.begin(), rows.end());
        } catch (const Error& e) {
            report.failures.push_back(name + ": " + e.what());
        }
    };
    run("counterexample_s_vs_h", {});
    run("counterexample_s_vs_h", {{"delta", "0.001"}, {"t", "0.05"}});
    run("counterexample_s_vs_h", {{"delta", "0.0005"}, {"t", "0.01"}});
    run("blaschke", {});
    run("nonuniform", {});
    run("hartz", {});
    run("main_theorem", {});
    return report;
}

} // namespace rkball
