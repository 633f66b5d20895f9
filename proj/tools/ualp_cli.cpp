// ualp: evaluate, tabulate and verify universal associated Legendre
// polynomial identities from the command line.
//
// Exit codes: 0 success / all records passed, 1 verification failures,
// 2 usage error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ualp/ualp.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failures = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    double abs_tol = 1e-7;
    double rel_tol = 1e-7;
    std::string format = "json";
    std::string output;
    bool no_timestamp = false;
};

void write_output(const GlobalOptions& global, const std::string& text)
{
    if (global.output.empty() || global.output == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(global.output, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file '" + global.output + "'");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("failed writing output file '" + global.output + "'");
    }
}

std::string run_eval(double m_prime, int n, const std::vector<double>& xs)
{
    const ualp::UalpSeries series(ualp::PolyParams(m_prime, n));
    std::string text = "x,value\n";
    for (double x : xs) {
        text += ualp::format_number(x) + "," + ualp::format_number(series(ualp::EvalDomainPoint(x))) + "\n";
    }
    return text;
}

std::string run_tabulate(double m_prime, int n_max, int x_count)
{
    std::vector<ualp::UalpSeries> columns;
    std::string text = "x";
    for (int n = 0; n <= n_max; ++n) {
        columns.emplace_back(ualp::PolyParams(m_prime, n));
        text += ",n" + std::to_string(n);
    }
    text += "\n";
    for (int i = 0; i < x_count; ++i) {
        const double x = i == x_count - 1 ? 1.0 : -1.0 + 2.0 * i / (x_count - 1);
        text += ualp::format_number(x);
        for (const auto& column : columns) {
            text += "," + ualp::format_number(column(ualp::EvalDomainPoint(x)));
        }
        text += "\n";
    }
    return text;
}

std::vector<ualp::ParameterMap> read_grid_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read grid file '" + path + "'");
    }
    nlohmann::json document;
    try {
        in >> document;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("grid file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!document.is_array()) {
        throw UsageError("grid file must hold a JSON array of parameter objects");
    }
    std::vector<ualp::ParameterMap> grid;
    for (const auto& entry : document) {
        if (!entry.is_object()) {
            throw UsageError("grid entries must be JSON objects");
        }
        ualp::ParameterMap point;
        for (const auto& [key, value] : entry.items()) {
            if (!value.is_number()) {
                throw UsageError("grid parameter '" + key + "' must be a number");
            }
            point[key] = value.get<double>();
        }
        grid.push_back(std::move(point));
    }
    return grid;
}

std::vector<ualp::ParameterMap> resolve_grid(const std::string& identity, const std::string& grid)
{
    if (grid == "default" || grid == "includes-divergent-point") {
        return ualp::grids::named(identity, grid);
    }
    if (std::filesystem::exists(grid)) {
        return read_grid_file(grid);
    }
    throw UsageError("--grid must be a built-in grid name or an existing JSON file, got '" + grid + "'");
}

int run_verify(const GlobalOptions& global, const std::string& identity, const std::string& grid_name)
{
    if (global.format != "json" && global.format != "csv") {
        throw UsageError("--format must be json or csv");
    }
    if (!(global.abs_tol >= 0.0) || !(global.rel_tol >= 0.0) || (global.abs_tol == 0.0 && global.rel_tol == 0.0)) {
        throw UsageError("tolerances must be non-negative and not both zero");
    }
    (void)ualp::identity_parameter_keys(identity);
    const auto grid = resolve_grid(identity, grid_name);

    ualp::ReportDocument report;
    report.identity_name = identity;
    if (!global.no_timestamp) {
        report.timestamp = ualp::utc_timestamp_now();
    }
    report.tolerance_config.abs_tol = global.abs_tol;
    report.tolerance_config.rel_tol = global.rel_tol;
    // One order of magnitude tighter than the acceptance tolerance.
    report.tolerance_config.engine.abs_tol = (global.abs_tol > 0.0 ? global.abs_tol : global.rel_tol) / 10.0;
    report.tolerance_config.engine.rel_tol = (global.rel_tol > 0.0 ? global.rel_tol : global.abs_tol) / 10.0;
    report.records = ualp::verify_identity_grid(identity, grid, report.tolerance_config.engine, global.abs_tol,
                                                global.rel_tol);

    write_output(global, global.format == "json" ? ualp::report_to_json_string(report)
                                                 : ualp::report_to_csv_string(report));
    return report.all_passed() ? exit_ok : exit_failures;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Universal associated Legendre polynomials: evaluation and identity verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ualp::tool_version));

    GlobalOptions global;
    app.add_option("--abs-tol", global.abs_tol, "Absolute acceptance tolerance")->capture_default_str();
    app.add_option("--rel-tol", global.rel_tol, "Relative acceptance tolerance")->capture_default_str();
    app.add_option("--format", global.format, "Report format: json or csv")->capture_default_str();
    app.add_option("--output", global.output, "Output file (default: standard output)");
    app.add_flag("--no-timestamp", global.no_timestamp, "Omit the report timestamp for reproducible bytes");

    double m_prime = 0.0;
    int n = 0;
    std::vector<double> xs;
    std::vector<double> x_range;
    auto* eval = app.add_subcommand("eval", "Evaluate P_{m'+n}^{m'}(x) and print x,value CSV rows");
    eval->fallthrough();
    eval->add_option("--m-prime", m_prime, "Order m' >= 0")->required();
    eval->add_option("--n", n, "Degree offset n = l' - m' >= 0")->required();
    auto* x_opt = eval->add_option("--x", xs, "Abscissae in [-1, 1]");
    auto* range_opt = eval->add_option("--x-range", x_range, "START STOP COUNT: uniform abscissae")->expected(3);
    x_opt->excludes(range_opt);

    int n_max = 0;
    int x_count = 0;
    auto* tabulate = app.add_subcommand("tabulate", "CSV matrix of P_{m'+n}^{m'} for n = 0..n-max");
    tabulate->fallthrough();
    tabulate->add_option("--m-prime", m_prime, "Order m' >= 0")->required();
    tabulate->add_option("--n-max", n_max, "Largest degree offset")->required();
    tabulate->add_option("--x-count", x_count, "Number of uniform abscissae on [-1, 1]")->required();

    std::string identity;
    std::string grid = "default";
    auto* verify = app.add_subcommand("verify", "Check an integral identity on a parameter grid");
    verify->fallthrough();
    verify->add_option("--identity", identity,
                       "norm | weighted-norm | orthogonality | main-integral | bessel-integral | power-exp")
        ->required();
    verify->add_option("--grid", grid, "Built-in grid name (default, includes-divergent-point) or JSON file")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*eval) {
            if (xs.empty() && x_range.empty()) {
                throw UsageError("eval needs --x or --x-range");
            }
            if (!x_range.empty()) {
                const double count = x_range[2];
                if (!(count >= 1.0) || count != static_cast<int>(count)) {
                    throw UsageError("--x-range COUNT must be a positive integer");
                }
                const int k = static_cast<int>(count);
                for (int i = 0; i < k; ++i) {
                    const double x = k == 1 ? x_range[0]
                                     : i == k - 1 ? x_range[1]
                                                  : x_range[0] + (x_range[1] - x_range[0]) * i / (k - 1);
                    xs.push_back(x);
                }
            }
            write_output(global, run_eval(m_prime, n, xs));
            return exit_ok;
        }
        if (*tabulate) {
            if (n_max < 0) {
                throw UsageError("--n-max must be >= 0");
            }
            if (x_count < 2) {
                throw UsageError("--x-count must be >= 2");
            }
            write_output(global, run_tabulate(m_prime, n_max, x_count));
            return exit_ok;
        }
        return run_verify(global, identity, grid);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        // Usage errors, grid errors and parameter domain errors.
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
}
