#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "covbridge/cli.hpp"
#include "covbridge/errors.hpp"
#include "covbridge/version.hpp"

namespace cli = covbridge::cli;

namespace {

// Raw option storage; numeric values stay strings until parse_number so
// fractional literals like 2/3 work everywhere.
struct Raw {
    std::string model;
    std::string nu, alpha, sigma2, delta, lambda, gamma, gamma_from_alpha;
    std::string lambdas, alphas, cs, deltas;
    std::string grid, spacing = "linear", tol;
    std::string output = "-";
    int d = 1;
};

void add_model_options(CLI::App* sub, Raw& r) {
    sub->add_option("--model", r.model, "Model family: matern or cauchy")->required();
    sub->add_option("--nu", r.nu, "Matern smoothness (> 0)");
    sub->add_option("--alpha", r.alpha, "Matern scale (> 0)");
    sub->add_option("--delta", r.delta, "Cauchy shape, in (0, 2]");
    sub->add_option("--lambda", r.lambda, "Cauchy tail exponent (> 0)");
    sub->add_option("--gamma", r.gamma, "Cauchy scale (> 0)");
    sub->add_option("--gamma-from-alpha", r.gamma_from_alpha,
                    "Set the Cauchy scale to alpha*lambda for this alpha");
    sub->add_option("--sigma2", r.sigma2, "Variance (default 1)");
}

void add_output_option(CLI::App* sub, Raw& r) {
    sub->add_option("-o,--output", r.output, "Output path ('-' = stdout)");
}

void add_grid_options(CLI::App* sub, Raw& r, const char* what, bool required = true) {
    auto* opt = sub->add_option("--grid", r.grid, what);
    if (required)
        opt->required();
    sub->add_option("--spacing", r.spacing, "Grid spacing: linear or log")
        ->check(CLI::IsMember({"linear", "log"}));
}

cli::RunConfig to_config(cli::Command cmd, const Raw& r) {
    cli::RunConfig c;
    c.command = cmd;
    c.model = r.model;
    if (!r.nu.empty())
        c.nu = cli::parse_number(r.nu);
    if (!r.alpha.empty())
        c.alpha = cli::parse_number(r.alpha);
    if (!r.sigma2.empty())
        c.sigma2 = cli::parse_number(r.sigma2);
    if (!r.delta.empty())
        c.delta = cli::parse_number(r.delta);
    if (!r.lambda.empty())
        c.lambda = cli::parse_number(r.lambda);
    if (!r.gamma.empty())
        c.gamma = cli::parse_number(r.gamma);
    if (!r.gamma_from_alpha.empty())
        c.gamma_from_alpha = cli::parse_number(r.gamma_from_alpha);
    if (!r.lambdas.empty())
        c.lambdas = cli::parse_number_list(r.lambdas);
    if (!r.alphas.empty())
        c.alphas = cli::parse_number_list(r.alphas);
    if (!r.cs.empty())
        c.cs = cli::parse_number_list(r.cs);
    if (!r.deltas.empty())
        c.deltas = cli::parse_number_list(r.deltas);
    if (!r.grid.empty())
        c.grid = cli::parse_grid(r.grid);
    c.grid.spacing = (r.spacing == "log") ? cli::Spacing::log : cli::Spacing::linear;
    if (!r.tol.empty())
        c.tolerance = cli::parse_number(r.tol);
    c.d = r.d;
    c.output = r.output;
    return c;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matern and Generalized Cauchy covariance models, their isotropic "
                 "spectral densities, and convergence diagnostics"};
    app.set_version_flag("--version", std::string("covbridge ") + COVBRIDGE_VERSION);
    app.require_subcommand(1);

    int status = 0;

    Raw r_eval;
    auto* s_eval = app.add_subcommand("eval", "Evaluate a covariance model on a grid");
    add_model_options(s_eval, r_eval);
    add_grid_options(s_eval, r_eval, "r grid min:max:count");
    add_output_option(s_eval, r_eval);
    s_eval->callback([&] { status = cli::run(to_config(cli::Command::eval, r_eval)); });

    Raw r_sdf;
    auto* s_sdf =
        app.add_subcommand("sdf", "Evaluate an isotropic spectral density on a grid");
    add_model_options(s_sdf, r_sdf);
    s_sdf->add_option("--d", r_sdf.d, "Spatial dimension (1, 2 or 3)");
    s_sdf->add_option("--tol", r_sdf.tol, "Absolute tolerance (default 1e-9)");
    add_grid_options(s_sdf, r_sdf, "z grid min:max:count");
    add_output_option(s_sdf, r_sdf);
    s_sdf->callback([&] { status = cli::run(to_config(cli::Command::sdf, r_sdf)); });

    Raw r_curve;
    auto* s_curve = app.add_subcommand(
        "error-curve",
        "Pointwise |Cauchy(delta=1, gamma=alpha*lambda) - Matern(1/2, alpha)|");
    s_curve->add_option("--lambda", r_curve.lambda, "Tail exponent")->required();
    s_curve->add_option("--alpha", r_curve.alpha, "Scale")->required();
    add_grid_options(s_curve, r_curve, "r grid min:max:count (non-positive dropped)");
    add_output_option(s_curve, r_curve);
    s_curve->callback(
        [&] { status = cli::run(to_config(cli::Command::error_curve, r_curve)); });

    Raw r_mae;
    r_mae.grid = "0:1:10000";
    auto* s_mae = app.add_subcommand(
        "mae-table", "Maximum absolute error over a lambda x alpha grid");
    s_mae->add_option("--lambdas", r_mae.lambdas, "Comma-separated lambda ladder")
        ->required();
    s_mae->add_option("--alphas", r_mae.alphas, "Comma-separated alpha values")
        ->required();
    add_grid_options(s_mae, r_mae, "r grid min:max:count (default 0:1:10000)",
                     /*required=*/false);
    add_output_option(s_mae, r_mae);
    s_mae->callback(
        [&] { status = cli::run(to_config(cli::Command::mae_table, r_mae)); });

    Raw r_scan;
    auto* s_scan = app.add_subcommand(
        "limit-scan", "Spectral-density error against the Matern nu=1/2 target, "
                      "scanning lambda (fixed delta) or delta (fixed lambda)");
    s_scan->add_option("--alpha", r_scan.alpha, "Scale")->required();
    s_scan->add_option("--d", r_scan.d, "Spatial dimension (1 or 2)");
    s_scan->add_option("--delta", r_scan.delta, "Fixed delta for --lambdas mode");
    s_scan->add_option("--lambdas", r_scan.lambdas, "Increasing lambda ladder");
    s_scan->add_option("--lambda", r_scan.lambda, "Fixed lambda for --deltas mode");
    s_scan->add_option("--deltas", r_scan.deltas, "Delta ladder in (d/2, 2]");
    s_scan->add_option("--tol", r_scan.tol, "Absolute tolerance (default 1e-9)");
    add_grid_options(s_scan, r_scan, "z grid min:max:count (non-positive dropped)");
    add_output_option(s_scan, r_scan);
    s_scan->callback(
        [&] { status = cli::run(to_config(cli::Command::limit_scan, r_scan)); });

    Raw r_ratio;
    auto* s_ratio = app.add_subcommand(
        "gamma-ratio", "Gamma(lambda-c) lambda^c / Gamma(lambda) probe");
    s_ratio->add_option("--lambdas", r_ratio.lambdas, "Lambda values")->required();
    s_ratio->add_option("--cs", r_ratio.cs, "c values")->required();
    add_output_option(s_ratio, r_ratio);
    s_ratio->callback(
        [&] { status = cli::run(to_config(cli::Command::gamma_ratio, r_ratio)); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const covbridge::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return status;
}
