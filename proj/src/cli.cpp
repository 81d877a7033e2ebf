#include "covbridge/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "covbridge/convergence.hpp"
#include "covbridge/covmodels.hpp"
#include "covbridge/errors.hpp"
#include "covbridge/spectral.hpp"
#include "covbridge/version.hpp"

namespace covbridge::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double_strict(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw validation_error("cannot parse number '" + s + "'");
    }
    if (pos != s.size())
        throw validation_error("cannot parse number '" + s + "'");
    return v;
}

const char* command_name(Command c) {
    switch (c) {
    case Command::eval:
        return "eval";
    case Command::sdf:
        return "sdf";
    case Command::mae_table:
        return "mae-table";
    case Command::error_curve:
        return "error-curve";
    case Command::limit_scan:
        return "limit-scan";
    case Command::gamma_ratio:
        return "gamma-ratio";
    }
    return "unknown";
}

struct Csv {
    std::vector<std::string> comments;
    std::string header;
    std::vector<std::string> rows;
};

void write_csv(std::ostream& os, const Csv& csv) {
    for (const auto& c : csv.comments)
        os << "# " << c << "\n";
    os << csv.header << "\n";
    for (const auto& r : csv.rows)
        os << r << "\n";
    os.flush();
}

double require_set(double v, const char* flag) {
    if (std::isnan(v))
        throw validation_error(std::string("missing required option ") + flag);
    return v;
}

void check_grid(const GridSpec& g) {
    if (!(g.min < g.max) || g.count < 2)
        throw validation_error("grid: need min < max and count >= 2");
    if (g.spacing == Spacing::log && !(g.min > 0.0))
        throw validation_error("grid: log spacing needs min > 0");
}

// Full point list, endpoints included (r = 0 is legal for eval and the
// Matern spectral density).
std::vector<double> grid_points(const GridSpec& g) {
    check_grid(g);
    std::vector<double> pts;
    pts.reserve(g.count + 1);
    if (g.spacing == Spacing::linear) {
        const double h = (g.max - g.min) / g.count;
        for (int i = 0; i <= g.count; ++i)
            pts.push_back(i == g.count ? g.max : g.min + i * h);
    } else {
        const double lmin = std::log(g.min), lmax = std::log(g.max);
        for (int i = 0; i <= g.count; ++i)
            pts.push_back(i == g.count ? g.max
                                       : std::exp(lmin + (lmax - lmin) * i / g.count));
    }
    return pts;
}

EvalGrid eval_grid(const GridSpec& g) {
    check_grid(g);
    if (g.spacing == Spacing::linear)
        return EvalGrid::uniform(g.min, g.max, g.count);
    return EvalGrid::logspace(g.min, g.max, g.count);
}

std::string grid_comment(const GridSpec& g) {
    std::ostringstream os;
    os << "grid: min=" << fmt(g.min) << " max=" << fmt(g.max) << " count=" << g.count
       << " spacing=" << (g.spacing == Spacing::linear ? "linear" : "log");
    return os.str();
}

std::string list_comment(const char* name, const std::vector<double>& v) {
    std::ostringstream os;
    os << name << ":";
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : " ") << fmt(v[i]);
    return os.str();
}

CauchyParams cauchy_from_config(const RunConfig& c) {
    const double delta = require_set(c.delta, "--delta");
    const double lambda = require_set(c.lambda, "--lambda");
    if (!std::isnan(c.gamma) && !std::isnan(c.gamma_from_alpha))
        throw validation_error("--gamma and --gamma-from-alpha are mutually exclusive");
    double gamma = c.gamma;
    if (std::isnan(gamma)) {
        const double a = require_set(c.gamma_from_alpha, "--gamma or --gamma-from-alpha");
        return reparam_cauchy(delta, lambda, a, c.sigma2);
    }
    return CauchyParams(delta, lambda, gamma, c.sigma2);
}

void describe_cauchy(Csv& csv, const CauchyParams& p) {
    csv.comments.push_back("model: cauchy");
    csv.comments.push_back("delta: " + fmt(p.delta));
    csv.comments.push_back("lambda: " + fmt(p.lambda));
    csv.comments.push_back("gamma: " + fmt(p.gamma));
    csv.comments.push_back("sigma2: " + fmt(p.sigma2));
}

void describe_matern(Csv& csv, const MaternParams& p) {
    csv.comments.push_back("model: matern");
    csv.comments.push_back("nu: " + fmt(p.nu));
    csv.comments.push_back("alpha: " + fmt(p.alpha));
    csv.comments.push_back("sigma2: " + fmt(p.sigma2));
}

[[noreturn]] void rethrow_with_point(const std::exception& e, double z,
                                     const std::string& where) {
    std::ostringstream os;
    os << e.what() << " [failing point: " << where << ", z=" << fmt(z) << "]";
    throw convergence_error(os.str());
}

void build_eval(const RunConfig& cfg, Csv& csv) {
    const auto pts = grid_points(cfg.grid);
    csv.header = "r,value";
    if (cfg.model == "matern") {
        const MaternParams p(require_set(cfg.nu, "--nu"),
                             require_set(cfg.alpha, "--alpha"), cfg.sigma2);
        describe_matern(csv, p);
        for (double r : pts)
            csv.rows.push_back(fmt(r) + "," + fmt(matern_eval(p, r)));
    } else if (cfg.model == "cauchy") {
        const CauchyParams p = cauchy_from_config(cfg);
        describe_cauchy(csv, p);
        for (double r : pts)
            csv.rows.push_back(fmt(r) + "," + fmt(cauchy_eval(p, r)));
    } else {
        throw validation_error("eval: --model must be 'matern' or 'cauchy'");
    }
    csv.comments.push_back(grid_comment(cfg.grid));
    csv.comments.push_back("routes: none (pointwise model evaluation)");
}

void build_sdf(const RunConfig& cfg, Csv& csv) {
    const auto pts = grid_points(cfg.grid);
    csv.header = "z,value,route,abs_err_estimate";
    std::set<std::string> routes;
    if (cfg.model == "matern") {
        const MaternParams p(require_set(cfg.nu, "--nu"),
                             require_set(cfg.alpha, "--alpha"), cfg.sigma2);
        describe_matern(csv, p);
        csv.comments.push_back("d: " + std::to_string(cfg.d));
        for (double z : pts) {
            const auto r = matern_sdf(p, cfg.d, z);
            routes.insert(route_name(r.route));
            csv.rows.push_back(fmt(z) + "," + fmt(r.value) + "," + route_name(r.route) +
                               "," + fmt(r.abs_err_estimate));
        }
    } else if (cfg.model == "cauchy") {
        const CauchyParams p = cauchy_from_config(cfg);
        describe_cauchy(csv, p);
        csv.comments.push_back("d: " + std::to_string(cfg.d));
        for (double z : pts) {
            try {
                const auto r = cauchy_sdf(p, cfg.d, z, cfg.tolerance);
                routes.insert(route_name(r.route));
                csv.rows.push_back(fmt(z) + "," + fmt(r.value) + "," +
                                   route_name(r.route) + "," + fmt(r.abs_err_estimate));
            } catch (const validation_error&) {
                throw;
            } catch (const std::exception& e) {
                rethrow_with_point(e, z, "cauchy sdf");
            }
        }
    } else {
        throw validation_error("sdf: --model must be 'matern' or 'cauchy'");
    }
    csv.comments.push_back(grid_comment(cfg.grid));
    csv.comments.push_back("tolerance: " + fmt(cfg.tolerance));
    std::string rs = "routes:";
    bool first = true;
    for (const auto& r : routes) {
        rs += (first ? " " : ",") + r;
        first = false;
    }
    csv.comments.push_back(rs);
}

void build_error_curve(const RunConfig& cfg, Csv& csv) {
    const double lambda = require_set(cfg.lambda, "--lambda");
    const double alpha = require_set(cfg.alpha, "--alpha");
    const EvalGrid grid = eval_grid(cfg.grid);
    const CauchyParams c = reparam_cauchy(1.0, lambda, alpha);
    const MaternParams m(0.5, alpha);
    csv.comments.push_back("lambda: " + fmt(lambda));
    csv.comments.push_back("alpha: " + fmt(alpha));
    csv.comments.push_back("cauchy: delta=1 gamma=alpha*lambda=" + fmt(c.gamma));
    csv.comments.push_back("matern: nu=0.5 alpha=" + fmt(alpha));
    csv.comments.push_back(grid_comment(cfg.grid));
    csv.comments.push_back("grid_points: " + std::to_string(grid.points.size()) +
                           " (non-positive dropped)");
    csv.comments.push_back("routes: none (pointwise model evaluation)");
    csv.header = "r,cauchy,matern,abs_error";
    for (double r : grid.points) {
        const double cv = cauchy_eval(c, r);
        const double mv = matern_eval(m, r);
        csv.rows.push_back(fmt(r) + "," + fmt(cv) + "," + fmt(mv) + "," +
                           fmt(std::fabs(cv - mv)));
    }
}

void build_mae_table(const RunConfig& cfg, Csv& csv) {
    if (cfg.alphas.empty())
        throw validation_error("mae-table: missing --alphas");
    if (cfg.lambdas.empty())
        throw validation_error("mae-table: missing --lambdas");
    const EvalGrid grid = eval_grid(cfg.grid);
    const MAETable table = mae_table(cfg.lambdas, cfg.alphas, grid);
    csv.comments.push_back(list_comment("alphas", cfg.alphas));
    csv.comments.push_back(list_comment("lambdas", cfg.lambdas));
    csv.comments.push_back(grid_comment(cfg.grid));
    csv.comments.push_back("grid_points: " + std::to_string(grid.points.size()) +
                           " (non-positive dropped; " + grid.description + ")");
    csv.comments.push_back("routes: none (pointwise model evaluation)");
    std::string h = "alpha";
    for (double l : cfg.lambdas)
        h += "," + fmt(l);
    csv.header = h;
    for (std::size_t i = 0; i < cfg.alphas.size(); ++i) {
        std::string row = fmt(cfg.alphas[i]);
        for (double v : table.cells[i])
            row += "," + fmt(v);
        csv.rows.push_back(row);
    }
}

void build_limit_scan(const RunConfig& cfg, Csv& csv) {
    const double alpha = require_set(cfg.alpha, "--alpha");
    if (cfg.d != 1 && cfg.d != 2)
        throw validation_error("limit-scan: --d must be 1 or 2");
    const bool vary_lambda = !cfg.lambdas.empty();
    const bool vary_delta = !cfg.deltas.empty();
    if (vary_lambda == vary_delta)
        throw validation_error(
            "limit-scan: give exactly one of --lambdas (with --delta) or --deltas "
            "(with --lambda)");

    const EvalGrid zgrid = eval_grid(cfg.grid);
    const MaternParams m(0.5, alpha);
    std::set<std::string> routes;

    auto scan_error = [&](double delta, double lambda, double z) {
        if (!(delta > 0.5 * cfg.d) || !(delta <= 2.0))
            throw validation_error("limit-scan: delta must be in (d/2, 2]");
        const CauchyParams c = reparam_cauchy(delta, lambda, alpha);
        try {
            const auto s = cauchy_sdf(c, cfg.d, z, cfg.tolerance);
            routes.insert(route_name(s.route));
            return std::fabs(s.value - matern_sdf(m, cfg.d, z).value);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "delta=" << fmt(delta) << " lambda=" << fmt(lambda);
            rethrow_with_point(e, z, os.str());
        }
    };

    csv.comments.push_back("alpha: " + fmt(alpha));
    csv.comments.push_back("d: " + std::to_string(cfg.d));
    if (vary_lambda) {
        const double delta = require_set(cfg.delta, "--delta");
        for (std::size_t i = 1; i < cfg.lambdas.size(); ++i)
            if (!(cfg.lambdas[i] > cfg.lambdas[i - 1]))
                throw validation_error("limit-scan: --lambdas must be increasing");
        csv.comments.push_back("delta: " + fmt(delta));
        csv.comments.push_back(list_comment("lambdas", cfg.lambdas));
        csv.header = "lambda,z,error";
        for (double l : cfg.lambdas)
            for (double z : zgrid.points)
                csv.rows.push_back(fmt(l) + "," + fmt(z) + "," +
                                   fmt(scan_error(delta, l, z)));
    } else {
        const double lambda = require_set(cfg.lambda, "--lambda");
        csv.comments.push_back("lambda: " + fmt(lambda));
        csv.comments.push_back(list_comment("deltas", cfg.deltas));
        csv.header = "delta,z,error";
        for (double dl : cfg.deltas)
            for (double z : zgrid.points)
                csv.rows.push_back(fmt(dl) + "," + fmt(z) + "," +
                                   fmt(scan_error(dl, lambda, z)));
    }
    csv.comments.push_back("matern: nu=0.5 alpha=" + fmt(alpha));
    csv.comments.push_back(grid_comment(cfg.grid));
    csv.comments.push_back("tolerance: " + fmt(cfg.tolerance));
    std::string rs = "routes:";
    bool first = true;
    for (const auto& r : routes) {
        rs += (first ? " " : ",") + r;
        first = false;
    }
    csv.comments.push_back(rs);
}

void build_gamma_ratio(const RunConfig& cfg, Csv& csv) {
    if (cfg.lambdas.empty())
        throw validation_error("gamma-ratio: missing --lambdas");
    if (cfg.cs.empty())
        throw validation_error("gamma-ratio: missing --cs");
    csv.comments.push_back(list_comment("lambdas", cfg.lambdas));
    csv.comments.push_back(list_comment("cs", cfg.cs));
    csv.comments.push_back("routes: none (log-gamma closed form)");
    csv.header = "lambda,c,ratio";
    for (double l : cfg.lambdas)
        for (double c : cfg.cs)
            csv.rows.push_back(fmt(l) + "," + fmt(c) + "," +
                               fmt(gamma_ratio_probe(l, c)));
}

} // namespace

double parse_number(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        return to_double_strict(text);
    const double num = to_double_strict(text.substr(0, slash));
    const double den = to_double_strict(text.substr(slash + 1));
    if (den == 0.0)
        throw validation_error("division by zero in '" + text + "'");
    return num / den;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ','))
        out.push_back(parse_number(item));
    if (out.empty())
        throw validation_error("empty number list");
    return out;
}

GridSpec parse_grid(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw validation_error("grid spec must be min:max:count, got '" + text + "'");
    GridSpec g;
    g.min = parse_number(text.substr(0, c1));
    g.max = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
    const std::string cnt = text.substr(c2 + 1);
    const double c = to_double_strict(cnt);
    if (c < 2 || c != std::floor(c) || c > 100000000.0)
        throw validation_error("grid count must be an integer >= 2");
    g.count = static_cast<int>(c);
    check_grid(g);
    return g;
}

int run(const RunConfig& config) {
    try {
        if (!(config.tolerance > 0.0))
            throw validation_error("tolerance must be > 0");
        Csv csv;
        csv.comments.push_back(std::string("covbridge ") + COVBRIDGE_VERSION);
        csv.comments.push_back(std::string("command: ") + command_name(config.command));
        switch (config.command) {
        case Command::eval:
            build_eval(config, csv);
            break;
        case Command::sdf:
            build_sdf(config, csv);
            break;
        case Command::mae_table:
            build_mae_table(config, csv);
            break;
        case Command::error_curve:
            build_error_curve(config, csv);
            break;
        case Command::limit_scan:
            build_limit_scan(config, csv);
            break;
        case Command::gamma_ratio:
            build_gamma_ratio(config, csv);
            break;
        }
        if (config.output == "-") {
            write_csv(std::cout, csv);
        } else {
            std::ofstream f(config.output);
            if (!f) {
                std::cerr << "error: cannot open output file '" << config.output
                          << "'\n";
                return 4;
            }
            write_csv(f, csv);
            if (!f) {
                std::cerr << "error: write failed for '" << config.output << "'\n";
                return 4;
            }
        }
        return 0;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace covbridge::cli
