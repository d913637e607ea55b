// Command-line front end: point-set distances, kernel-space and multiplier
// brackets, Pick interpolation norms, Procrustes alignment, truncation
// orders, and the seeded experiment suite with machine-readable reports.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rkball/experiments.hpp"
#include "rkball/pointset_io.hpp"

namespace {

using namespace rkball;

struct GlobalOptions {
    std::uint64_t seed = 0;
    int restarts = 64;
    int iters = 200;
    double tol = 1e-8;
    std::string format = "csv";
    std::string output_path;
    std::string config_path;

    OptimizerConfig optimizer() const {
        OptimizerConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ParseError("cannot open config file: " + config_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            cfg = OptimizerConfig::from_json(buf.str());
        }
        cfg.seed = seed;
        cfg.random_restarts = restarts;
        cfg.local_search_iters = iters;
        cfg.tolerance = tol;
        return cfg;
    }
};

void emit(const GlobalOptions& opts, const std::vector<ResultRow>& rows) {
    const std::string text = opts.format == "json" ? rows_to_json(rows) : rows_to_csv(rows);
    if (opts.output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output_path, std::ios::binary);
        if (!out) throw ParseError("cannot open output file: " + opts.output_path);
        out << text;
    }
}

std::string permutation_string(const std::vector<int>& sigma) {
    std::string s;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(sigma[i]);
    }
    return s;
}

std::string lambda_string(const VectorXcd& lambda) {
    std::string s;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (i) s += " ";
        s += format_double(lambda(i).real()) + "+" + format_double(lambda(i).imag()) + "i";
    }
    return s;
}

int run(int argc, char** argv) {
    CLI::App app{"distances between finite subsets of the complex unit ball, "
                 "their kernel-space quotients, and their multiplier algebras"};
    app.require_subcommand(0, 1);

    GlobalOptions opts;
    bool check_mode = false;
    app.add_option("--seed", opts.seed, "RNG seed for all stochastic searches");
    app.add_option("--restarts", opts.restarts, "random restarts for the optimizers");
    app.add_option("--iters", opts.iters, "local search iteration cap");
    app.add_option("--tol", opts.tol, "optimizer tolerance");
    app.add_option("--format", opts.format, "output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", opts.output_path, "write the report to a file");
    app.add_option("--config", opts.config_path, "optimizer config JSON file");
    app.add_flag("--check", check_mode,
                 "run assertion checks (full suite when no subcommand is given)");

    // dist
    auto* dist = app.add_subcommand("dist", "Hausdorff / symmetric distances");
    std::string dist_kind = "hausdorff", dist_metric = "pseudohyperbolic";
    std::string dist_x, dist_y;
    dist->add_option("--kind", dist_kind, "distance kind")
        ->check(CLI::IsMember(
            {"hausdorff", "symmetric", "invariant-hausdorff", "invariant-symmetric"}));
    dist->add_option("--metric", dist_metric, "base metric (non-invariant kinds)")
        ->check(CLI::IsMember({"euclidean", "pseudohyperbolic"}));
    dist->add_option("-x", dist_x, "first point-set JSON file")->required();
    dist->add_option("-y", dist_y, "second point-set JSON file")->required();

    // rkbm
    auto* rkbm = app.add_subcommand("rkbm", "reproducing kernel Banach-Mazur distance");
    std::string rkbm_x, rkbm_y;
    rkbm->add_option("-x", rkbm_x)->required();
    rkbm->add_option("-y", rkbm_y)->required();

    // multbm
    auto* multbm = app.add_subcommand("multbm", "multiplier Banach-Mazur bracket");
    std::string multbm_x, multbm_y;
    multbm->add_option("-x", multbm_x)->required();
    multbm->add_option("-y", multbm_y)->required();

    // pick
    auto* pick = app.add_subcommand("pick", "minimal row-multiplier interpolation norm");
    std::string pick_instance;
    pick->add_option("-i,--instance", pick_instance, "Pick instance JSON file")->required();

    // procrustes
    auto* procr = app.add_subcommand("procrustes", "unitary configuration alignment");
    std::string procr_a, procr_b;
    procr->add_option("-a", procr_a, "first configuration (point-set JSON)")->required();
    procr->add_option("-b", procr_b, "second configuration (point-set JSON)")->required();

    // truncation-order
    auto* trunc = app.add_subcommand("truncation-order", "Schur truncation orders");
    std::string trunc_v, trunc_variant = "self";
    double trunc_eps = 0.1, trunc_r = 0.5;
    trunc->add_option("-v", trunc_v, "point-set JSON file")->required();
    trunc->add_option("--eps", trunc_eps, "eps > 0")->required();
    trunc->add_option("--r", trunc_r, "radius for the tail variant");
    trunc->add_option("--variant", trunc_variant)->check(CLI::IsMember({"self", "tail"}));

    // experiment
    auto* exper = app.add_subcommand("experiment", "run a registered experiment");
    std::string exper_name;
    std::vector<std::string> exper_params;
    exper->add_option("name", exper_name, "experiment name")->required();
    exper->add_option("--param", exper_params, "key=value experiment parameter");

    CLI11_PARSE(app, argc, argv);
    const OptimizerConfig cfg = opts.optimizer();

    std::vector<ResultRow> rows;

    if (dist->parsed()) {
        const PointSet x = load_pointset(dist_x);
        const PointSet y = load_pointset(dist_y);
        const BaseMetric metric = dist_metric == "euclidean" ? BaseMetric::Euclidean
                                                             : BaseMetric::Pseudohyperbolic;
        ResultRow row;
        row.experiment = "dist";
        row.params.emplace_back("kind", dist_kind);
        row.params.emplace_back("metric",
                                dist_kind.rfind("invariant", 0) == 0 ? "pseudohyperbolic"
                                                                     : dist_metric);
        if (dist_kind == "hausdorff") {
            row.add_metric("value", hausdorff(x, y, metric), Certificate::Exact);
        } else if (dist_kind == "symmetric") {
            const auto res = symmetric(x, y, metric);
            row.params.emplace_back("witness_sigma", permutation_string(res.assignment));
            row.add_metric("value", res.value, Certificate::Exact);
        } else {
            const auto res = dist_kind == "invariant-hausdorff"
                                 ? invariant_hausdorff(x, y, cfg)
                                 : invariant_symmetric(x, y, cfg);
            if (res.witness_permutation)
                row.params.emplace_back("witness_sigma",
                                        permutation_string(*res.witness_permutation));
            row.add_metric("value", res.value, res.certificate);
        }
        rows.push_back(std::move(row));
    } else if (rkbm->parsed()) {
        const auto report = rk_bm_distance(load_pointset(rkbm_x), load_pointset(rkbm_y), cfg);
        ResultRow row;
        row.experiment = "rkbm";
        row.params.emplace_back("witness_sigma", permutation_string(report.witness.sigma));
        row.params.emplace_back("witness_lambda", lambda_string(report.witness.lambda));
        row.add_metric("delta", report.delta, report.certificate);
        row.add_metric("rho_rk", report.rho_rk, report.certificate);
        rows.push_back(std::move(row));
    } else if (multbm->parsed()) {
        const auto bracket =
            mult_bm_bracket(load_pointset(multbm_x), load_pointset(multbm_y), cfg);
        ResultRow row;
        row.experiment = "multbm";
        row.params.emplace_back("witness_bijection",
                                permutation_string(bracket.lower_witness.bijection));
        row.add_metric("lower", bracket.lower, Certificate::LowerBound);
        row.add_metric("upper", bracket.upper, Certificate::UpperBound);
        row.add_metric("delta_rk", bracket.upper_source.delta, Certificate::UpperBound);
        rows.push_back(std::move(row));
    } else if (pick->parsed()) {
        const auto inst = load_pick_instance(pick_instance);
        ResultRow row;
        row.experiment = "pick";
        row.add_metric("min_multiplier_norm", min_multiplier_norm(inst), Certificate::Exact);
        rows.push_back(std::move(row));
    } else if (procr->parsed()) {
        const ConfigurationMatrix a(load_pointset(procr_a));
        const ConfigurationMatrix b(load_pointset(procr_b));
        const auto res = procrustes(a, b);
        ResultRow row;
        row.experiment = "procrustes";
        row.add_metric("residual", res.residual, Certificate::Exact);
        rows.push_back(std::move(row));
    } else if (trunc->parsed()) {
        const PointSet v = load_pointset(trunc_v);
        const int order = trunc_variant == "self"
                              ? truncation_order_self(v, trunc_eps)
                              : truncation_order_tail(v, trunc_r, trunc_eps);
        ResultRow row;
        row.experiment = "truncation-order";
        row.params.emplace_back("variant", trunc_variant);
        row.add_param("eps", trunc_eps);
        if (trunc_variant == "tail") row.add_param("r", trunc_r);
        row.add_metric("order", static_cast<double>(order), Certificate::Exact);
        rows.push_back(std::move(row));
    } else if (exper->parsed()) {
        std::map<std::string, std::string> params;
        for (const auto& p : exper_params) {
            const auto eq = p.find('=');
            if (eq == std::string::npos)
                throw ParseError("--param expects key=value, got: " + p);
            params[p.substr(0, eq)] = p.substr(eq + 1);
        }
        rows = run_experiment(exper_name, params, cfg, check_mode);
    } else if (check_mode) {
        const CheckReport report = run_check_suite(cfg);
        emit(opts, report.rows);
        for (const auto& msg : report.failures) std::cerr << "[check-fail] " << msg << "\n";
        return report.passed() ? 0 : 4;
    } else {
        std::cerr << app.help();
        return 0;
    }

    emit(opts, rows);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const rkball::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
