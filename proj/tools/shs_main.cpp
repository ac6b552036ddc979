// Command-line front end: matrix analysis, A-spectra, joint spectra of
// commuting tuples, built-in truncation families and the randomized
// identity-verification suite. One JSON document per invocation on stdout
// (CSV only for trend tables on request); diagnostics go to stderr.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shs/io.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 ok, 1 verification failure, 2 bad input/arguments,
// 3 operator not certified, 4 metric validation failure, 5 tuple does
// not commute.
int exit_code_for(const shs::Error& e) {
    switch (e.code()) {
        case shs::errc::not_a_member: return 3;
        case shs::errc::not_hermitian:
        case shs::errc::not_psd:
        case shs::errc::zero_metric: return 4;
        case shs::errc::not_commuting: return 5;
        default: return 2;
    }
}

void emit_error(const shs::Error& e) {
    json out = {{"error", shs::errc_name(e.code())},
                {"message", e.what()},
                {"residual", e.residual()}};
    std::cerr << out.dump() << "\n";
}

double default_tolerance() {
    if (const char* env = std::getenv("SHS_TOL_DEFAULT")) {
        try {
            return std::stod(env);
        } catch (...) {
            throw shs::Error(shs::errc::bad_input, "SHS_TOL_DEFAULT is not a number");
        }
    }
    return shs::kDefaultInvertTol;
}

shs::AOperator load_certified(const std::string& metric_path, const std::string& op_path,
                              shs::MetricPtr& metric_out) {
    shs::NamedMatrix a = shs::load_matrix_file(metric_path);
    metric_out = shs::new_metric(a.matrix);
    shs::NamedMatrix t = shs::load_matrix_file(op_path);
    return shs::AOperator::lift(metric_out, t.matrix);
}

int run_analyze(const std::string& metric_path, const std::string& op_path, double tol) {
    shs::MetricPtr metric;
    shs::AOperator op = load_certified(metric_path, op_path, metric);

    shs::IsometryCheck iso = is_a_isometry(op, tol);
    shs::UnitaryCheck uni = is_a_unitary(op, tol);
    double norm = a_norm(op);
    double w = a_numerical_radius(op);
    double gamma = reduced_min_modulus(op);
    shs::AOperator diamond_op = op.lift_sibling(op.diamond());

    const shs::ComplexMatrix& sq = metric->sqrt();
    double diamond_residual =
        shs::spectral_norm(op.matrix().adjoint() * sq - sq * op.diamond()) /
        std::max(1e-300, shs::spectral_norm(op.matrix()) * shs::spectral_norm(sq));
    double sharp_residual =
        shs::spectral_norm(op.matrix().adjoint() * metric->matrix() -
                           metric->matrix() * op.sharp()) /
        std::max(1e-300, shs::spectral_norm(op.matrix()) * metric->norm());

    shs::ReportBuilder report("analyze");
    report.input(metric_path).input(op_path);
    report.tolerance("tol", tol);
    report.residual("membership", op.membership_residual());
    report.residual("diamond_defining", diamond_residual);
    report.residual("sharp_defining", sharp_residual);
    if (shs::spectral_norm(op.diamond()) == 0.0)
        report.warning("the A^{1/2}-adjoint vanishes; the reduced minimum modulus is 0 by convention");

    report.results({{"member", true},
                    {"metric_rank", metric->rank()},
                    {"a_norm", norm},
                    {"numerical_radius", w},
                    {"min_modulus", gamma},
                    {"r_a", shs::r_a_exact(op)},
                    {"r_a_diamond", shs::r_a_exact(diamond_op)},
                    {"diamond", shs::matrix_to_json(op.diamond())},
                    {"sharp", shs::matrix_to_json(op.sharp())},
                    {"isometry", {{"holds", iso.holds}, {"residual", iso.residual}}},
                    {"unitary",
                     {{"holds", uni.holds},
                      {"residual", uni.residual},
                      {"sharp_residual", uni.sharp_residual}}}});
    std::cout << report.body().dump() << "\n";
    return 0;
}

int run_spectrum(const std::string& metric_path, const std::string& op_path, int gelfand_n,
                 double tol) {
    shs::MetricPtr metric;
    shs::AOperator op = load_certified(metric_path, op_path, metric);
    shs::SpectrumReport rep = shs::spectrum_report(op, gelfand_n, tol);

    shs::ReportBuilder report("spectrum");
    report.input(metric_path).input(op_path);
    report.tolerance("tol", tol);
    for (const auto& [name, value] : rep.certificates) report.residual(name, value);
    if (rep.sigma_empty) report.warning("sigma_A came out empty; sup reported as 0");
    report.results(shs::to_json(rep));
    std::cout << report.body().dump() << "\n";
    return 0;
}

int run_harte(const std::string& metric_path, const std::vector<std::string>& op_paths,
              int n_max, double tol) {
    shs::NamedMatrix a = shs::load_matrix_file(metric_path);
    shs::MetricPtr metric = shs::new_metric(a.matrix);
    std::vector<shs::AOperator> ops;
    for (const std::string& path : op_paths)
        ops.push_back(shs::AOperator::lift(metric, shs::load_matrix_file(path).matrix));
    shs::OperatorTuple tuple = shs::make_operator_tuple(std::move(ops), tol);
    shs::HarteReport rep = shs::harte_report(tuple, n_max, tol);

    shs::ReportBuilder report("harte");
    report.input(metric_path);
    for (const std::string& path : op_paths) report.input(path);
    report.tolerance("tol", tol);
    report.residual("commutation", rep.commutation_residual);
    report.residual("recurrence_check", rep.recurrence_check);
    report.results(shs::to_json(rep));
    std::cout << report.body().dump() << "\n";
    return 0;
}

int run_example(const std::string& name, int truncate, int n_max, bool csv, double tol) {
    shs::ExampleName ex = shs::parse_example_name(name);
    shs::TrendReport trend = shs::trend_report(ex, {truncate}, n_max);

    if (csv) {
        std::cout << shs::trend_csv(trend);
        return 0;
    }

    shs::ExampleInstance inst = shs::make_example(ex, truncate);
    shs::SpectrumReport sr = shs::spectrum_report(inst.op, n_max, tol);

    shs::ReportBuilder report("example");
    report.tolerance("tol", tol);
    for (const std::string& note : trend.annotations) report.warning(note);
    json results = shs::to_json(trend);
    results["name"] = name;
    results["truncation"] = truncate;
    results["dim"] = inst.op.dim();
    results["index_map"] = inst.index_map;
    results["metric_rank"] = inst.metric->rank();
    results["a_norm"] = a_norm(inst.op);
    results["sup_sigma"] = sr.sup_sigma;
    results["r_a"] = sr.r_a;
    results["r_a_diamond"] = sr.r_a_diamond;
    results["radius_formula"] = sr.formula_value;
    report.results(std::move(results));
    std::cout << report.body().dump() << "\n";
    return 0;
}

int run_verify(std::uint64_t seed, int trials, int dim, int rank, double tol,
               bool tol_set) {
    shs::SuiteConfig config;
    config.seed = seed;
    config.trials = trials;
    config.dim = dim;
    config.rank = rank;
    if (tol_set)
        for (auto& [name, value] : shs::default_suite_tolerances())
            config.tolerances[name] = tol;

    shs::SuiteReport rep = shs::verify_suite(config);

    shs::ReportBuilder report("verify");
    report.seed(seed);
    for (const auto& [name, value] :
         tol_set ? config.tolerances : shs::default_suite_tolerances())
        report.tolerance(name, value);
    report.results(shs::to_json(rep));
    std::cout << report.body().dump() << "\n";
    return rep.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-Hilbertian operator calculus"};
    app.require_subcommand(1);

    std::string metric_path, op_path, example_name;
    std::vector<std::string> op_paths;
    int gelfand_n = 16, n_max = 8, truncate = 16;
    bool csv = false;
    double tol = 0.0;
    bool tol_set = false;

    auto add_tol = [&](CLI::App* cmd) {
        cmd->add_option("--tol", tol, "global tolerance override")->each([&](std::string) {
            tol_set = true;
        });
    };

    CLI::App* analyze = app.add_subcommand("analyze", "certify an operator and report its A-quantities");
    analyze->add_option("--metric", metric_path, "metric matrix file")->required();
    analyze->add_option("--op", op_path, "operator matrix file")->required();
    add_tol(analyze);

    CLI::App* spectrum = app.add_subcommand("spectrum", "A-spectrum, radii and the max formula");
    spectrum->add_option("--metric", metric_path, "metric matrix file")->required();
    spectrum->add_option("--op", op_path, "operator matrix file")->required();
    spectrum->add_option("--gelfand", gelfand_n, "number of root-norm estimates");
    add_tol(spectrum);

    CLI::App* harte = app.add_subcommand("harte", "joint spectrum of a commuting tuple");
    harte->add_option("--metric", metric_path, "metric matrix file")->required();
    harte->add_option("--ops", op_paths, "operator matrix files")->required();
    harte->add_option("--nmax", n_max, "accumulant depth");
    add_tol(harte);

    CLI::App* example = app.add_subcommand("example", "built-in truncation families");
    example->add_option("--name", example_name, "ex1 | ex2 | ex3")->required();
    example->add_option("--truncate", truncate, "truncation size")->required();
    example->add_option("--nmax", gelfand_n, "number of root-norm estimates");
    example->add_flag("--csv", csv, "emit the trend table as CSV");
    add_tol(example);

    CLI::App* verify = app.add_subcommand("verify", "randomized identity suite");
    std::uint64_t seed = 42;
    int trials = 200, dim = 6, rank = 3;
    verify->add_option("--seed", seed, "base seed");
    verify->add_option("--trials", trials, "number of trials");
    verify->add_option("--dim", dim, "instance dimension");
    verify->add_option("--rank", rank, "metric rank");
    add_tol(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        double eff_tol = tol_set ? tol : default_tolerance();
        if (analyze->parsed()) return run_analyze(metric_path, op_path, eff_tol);
        if (spectrum->parsed()) return run_spectrum(metric_path, op_path, gelfand_n, eff_tol);
        if (harte->parsed()) return run_harte(metric_path, op_paths, n_max, eff_tol);
        if (example->parsed())
            return run_example(example_name, truncate, gelfand_n, csv, eff_tol);
        if (verify->parsed()) return run_verify(seed, trials, dim, rank, tol, tol_set);
    } catch (const shs::Error& e) {
        emit_error(e);
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json({{"error", "Internal"}, {"message", e.what()}}).dump()
                  << "\n";
        return 2;
    }
    return 2;
}
