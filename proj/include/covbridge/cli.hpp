#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace covbridge::cli {

enum class Command { eval, sdf, mae_table, error_curve, limit_scan, gamma_ratio };

enum class Spacing { linear, log };

/// "min:max:count" with count the number of intervals; both endpoints
/// are emitted. Commands that need strictly positive abscissae drop
/// non-positive points, so 0:1:10000 is the left-open uniform grid on
/// (0, 1].
struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 100;
    Spacing spacing = Spacing::linear;
};

/// A fully parsed invocation. Unset numeric fields stay NaN; list
/// fields stay empty. Everything is deterministic (no seeds anywhere).
struct RunConfig {
    Command command = Command::eval;
    std::string model; // "matern" or "cauchy"

    double nu = NAN;
    double alpha = NAN;
    double delta = NAN;
    double lambda = NAN;
    double gamma = NAN;
    double gamma_from_alpha = NAN; // alpha such that gamma = alpha * lambda
    double sigma2 = 1.0;
    int d = 1;

    std::vector<double> lambdas;
    std::vector<double> alphas;
    std::vector<double> cs;
    std::vector<double> deltas;

    GridSpec grid;
    double tolerance = 1e-9;
    std::string output = "-"; // "-" = stdout
};

/// Numeric literal, plain ("0.25", "1e-3") or fractional ("2/3");
/// fractions are evaluated in binary floating point before use.
double parse_number(const std::string& text);

/// Comma-separated list of parse_number literals.
std::vector<double> parse_number_list(const std::string& text);

GridSpec parse_grid(const std::string& text);

/// Execute the command and write its CSV artifact (header comment block
/// with every parameter, the route tags used, and the library version;
/// values printed with 17 significant digits). Returns the exit status:
/// 0 success, 2 validation error, 3 numerical-convergence failure,
/// 4 I/O error.
int run(const RunConfig& config);

} // namespace covbridge::cli
