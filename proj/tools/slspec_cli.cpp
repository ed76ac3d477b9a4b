// Experiment driver: assembles the Sturm-Liouville discretizations, computes
// spectra, spectral symbols and their rearrangements, and reproduces the
// saturation/maximum-error tables and figure datasets as CSV + JSON.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "slspec/experiments.hpp"
#include "slspec/fd.hpp"
#include "slspec/iga.hpp"
#include "slspec/multidim.hpp"

namespace {

using namespace slspec;

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> scheme;
    std::optional<int> eta;
    std::optional<std::string> n_list;
    std::optional<double> alpha;
    std::optional<std::string> grid;
    std::optional<int> r;
    std::optional<std::string> reference;
    std::optional<int> fine_mesh_n;
    std::optional<std::string> out_dir;
};

void add_common_options(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "experiment config file (key = value lines)");
    cmd->add_option("--scheme", ov.scheme, "fd | iga")->check(CLI::IsMember({"fd", "iga"}));
    cmd->add_option("--eta", ov.eta, "approximation order");
    cmd->add_option("--n", ov.n_list, "mesh parameter (comma-separated list accepted)");
    cmd->add_option("--alpha", ov.alpha, "Euler-Cauchy coefficient");
    cmd->add_option("--grid", ov.grid, "uniform | liouville")
        ->check(CLI::IsMember({"uniform", "liouville"}));
    cmd->add_option("--r", ov.r, "rearrangement sampling resolution (default max(1000, n))");
    cmd->add_option("--reference", ov.reference, "exact | fine-mesh")
        ->check(CLI::IsMember({"exact", "fine-mesh"}));
    cmd->add_option("--fine-mesh-n", ov.fine_mesh_n, "n' for the fine-mesh reference");
    cmd->add_option("--out-dir", ov.out_dir, "output directory");
}

ExperimentConfig build_config(const Overrides& ov) {
    ExperimentConfig config;
    if (ov.config_path) config = ExperimentConfig::from_file(*ov.config_path);
    if (ov.scheme) config.set("scheme", *ov.scheme);
    if (ov.eta) config.set("eta", std::to_string(*ov.eta));
    if (ov.n_list) config.set("n", *ov.n_list);
    if (ov.alpha) config.set("alpha", std::to_string(*ov.alpha));
    if (ov.grid) config.set("grid", *ov.grid);
    if (ov.r) config.set("r", std::to_string(*ov.r));
    if (ov.reference) config.set("reference", *ov.reference);
    if (ov.fine_mesh_n) config.set("fine_mesh_n", std::to_string(*ov.fine_mesh_n));
    if (ov.out_dir) config.set("out_dir", *ov.out_dir);
    config.validate();
    return config;
}

std::filesystem::path output_path(const ExperimentConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.out_dir);
    return std::filesystem::path(config.out_dir) / name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    std::cout << path.string() << '\n';
}

int cmd_assemble(const ExperimentConfig& config) {
    const int n = config.n_values.front();
    const EulerCauchyCase ec = EulerCauchyCase::make(config.alpha);
    const OperatorSpec spec = ec.operator_spec();
    const GridMap map = config.grid == GridKind::Uniform ? GridMap::identity(ec.a, ec.b)
                                                         : liouville_map(config.alpha);
    std::ostringstream text;
    if (config.scheme == Scheme::Fd) {
        const Grid grid = map_grid(make_uniform_grid(ec.a, ec.b, n, config.eta), map);
        assemble_fd(spec, grid, config.eta).write(text);
    } else {
        write_pencil(text, assemble_iga(spec, map, config.eta, n));
    }
    write_file(output_path(config, "matrix_" + to_string(config.scheme) + ".txt"), text.str());
    return 0;
}

int cmd_eig(const ExperimentConfig& config) {
    const int n = config.n_values.front();
    const ProblemSolution sol =
        solve_euler_cauchy(config.scheme, config.eta, n, config.alpha, config.grid);
    std::ostringstream csv;
    csv << "k,k_over_n,lambda,weighted_lambda\n";
    const double weight = 1.0 / (static_cast<double>(n + 1) * (n + 1));
    char buf[96];
    for (int k = 1; k <= n; ++k) {
        const double v = sol.eig.values[static_cast<size_t>(k - 1)];
        std::snprintf(buf, sizeof buf, "%d,%.10e,%.10e,%.10e\n", k,
                      static_cast<double>(k) / n, v, v * weight);
        csv << buf;
    }
    write_file(output_path(config, "eigenvalues.csv"), csv.str());
    if (sol.eig.imag_flagged)
        std::cerr << "warning: imaginary parts up to " << sol.eig.max_imag << " discarded\n";
    return 0;
}

int cmd_symbol(const ExperimentConfig& config, int points) {
    const EulerCauchyCase ec = EulerCauchyCase::make(config.alpha);
    const GridMap map = config.grid == GridKind::Uniform ? GridMap::identity(ec.a, ec.b)
                                                         : liouville_map(config.alpha);
    const SymbolFunction sym = config.scheme == Scheme::Fd
                                   ? symbol_fd(ec.operator_spec(), map, config.eta)
                                   : symbol_iga(ec.operator_spec(), map, config.eta);
    std::ostringstream csv;
    char buf[96];
    std::snprintf(buf, sizeof buf, "# inf_R_omega %.10e sup_R_omega %.10e\n", sym.inf_range,
                  sym.sup_range);
    csv << buf << "theta,f\n";
    const auto f = config.scheme == Scheme::Fd ? fd_symbol_f : iga_symbol_f;
    for (int j = 0; j <= points; ++j) {
        const double theta = std::numbers::pi * j / points;
        std::snprintf(buf, sizeof buf, "%.10e,%.10e\n", theta, f(config.eta, theta));
        csv << buf;
    }
    write_file(output_path(config, "symbol.csv"), csv.str());
    return 0;
}

int cmd_rearrange(const ExperimentConfig& config, int points, const std::string& method) {
    const EulerCauchyCase ec = EulerCauchyCase::make(config.alpha);
    const GridMap map = config.grid == GridKind::Uniform ? GridMap::identity(ec.a, ec.b)
                                                         : liouville_map(config.alpha);
    RearrangedSymbol rearr;
    bool fallback = false;
    if (method == "analytic") {
        if (config.scheme != Scheme::Fd || config.eta != 1 || config.grid != GridKind::Uniform)
            throw ConfigError(
                "rearrange: the analytic route applies to the fd / eta-1 / uniform symbol only");
        const DistributionFunction dist = euler_cauchy_phi(config.alpha);
        fallback = dist.used_fallback;
        rearr = analytic_rearrangement(dist, points);
    } else {
        const SymbolFunction sym = config.scheme == Scheme::Fd
                                       ? symbol_fd(ec.operator_spec(), map, config.eta)
                                       : symbol_iga(ec.operator_spec(), map, config.eta);
        rearr = rearrangement_by_sampling(sym, config.effective_r(points));
    }
    std::ostringstream csv;
    csv << "x,omega_star\n";
    char buf[64];
    for (int j = 0; j <= points; ++j) {
        const double x = static_cast<double>(j) / points;
        std::snprintf(buf, sizeof buf, "%.10e,%.10e\n", x, rearr(x));
        csv << buf;
    }
    write_file(output_path(config, "rearrangement.csv"), csv.str());
    if (fallback) std::cerr << "note: analytic phi fell back to quadrature\n";
    return 0;
}

int cmd_compare(const ExperimentConfig& config) {
    const int n = config.n_values.front();
    const ComparisonResult result = run_comparison(config, n);
    std::ostringstream csv;
    write_per_k_csv(csv, result.spectrum, result.errors);
    write_file(output_path(config, "compare.csv"), csv.str());

    std::ostringstream summary;
    summary << "{\n"
            << "  \"E_n\": " << result.errors.max_error << ",\n"
            << "  \"kbar_over_n\": " << result.errors.argmax_ratio << ",\n"
            << "  \"outliers\": " << result.outlier_count << ",\n"
            << "  \"max_imag\": " << result.max_imag << ",\n"
            << "  \"provenance\": \"" << result.provenance << "\",\n"
            << "  \"phi_fallback\": " << (result.phi_fallback ? "true" : "false") << "\n"
            << "}\n";
    write_file(output_path(config, "compare.json"), summary.str());
    return 0;
}

int cmd_table(const ExperimentConfig& config, int id) {
    std::ostringstream csv;
    std::string summary;
    run_table(id, config, csv, summary);
    write_file(output_path(config, "table" + std::to_string(id) + ".csv"), csv.str());
    write_file(output_path(config, "table" + std::to_string(id) + ".json"), summary + "\n");
    return 0;
}

int cmd_figure(const ExperimentConfig& config, int id) {
    std::ostringstream csv;
    std::string summary;
    run_figure_data(id, config, csv, summary);
    write_file(output_path(config, "figure" + std::to_string(id) + ".csv"), csv.str());
    write_file(output_path(config, "figure" + std::to_string(id) + ".json"), summary + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // Pin the BLAS thread count unless the caller chose one; parallelism is
    // managed per experiment cell (SLSPEC_THREADS).
    setenv("OPENBLAS_NUM_THREADS", "1", 0);

    CLI::App app{"Spectral analysis of Sturm-Liouville discretization schemes"};
    app.require_subcommand(1);

    Overrides ov;
    int table_id = 1;
    int figure_id = 2;
    int points = 512;
    std::string method = "sampled";

    CLI::App* assemble = app.add_subcommand("assemble", "write the discretization matrix");
    add_common_options(assemble, ov);
    CLI::App* eig = app.add_subcommand("eig", "compute and dump the spectrum");
    add_common_options(eig, ov);
    CLI::App* symbol = app.add_subcommand("symbol", "dump the spectral-variable factor f_eta");
    add_common_options(symbol, ov);
    symbol->add_option("--points", points, "grid points");
    CLI::App* rearrange = app.add_subcommand("rearrange", "dump (x, omega*(x)) samples");
    add_common_options(rearrange, ov);
    rearrange->add_option("--points", points, "grid points");
    rearrange->add_option("--method", method, "sampled | analytic")
        ->check(CLI::IsMember({"sampled", "analytic"}));
    CLI::App* compare = app.add_subcommand("compare", "scheme vs reference spectrum errors");
    add_common_options(compare, ov);
    CLI::App* table = app.add_subcommand("table", "reproduce a results table (1-4)");
    add_common_options(table, ov);
    table->add_option("id", table_id, "table id")->required()->check(CLI::Range(1, 4));
    CLI::App* figure = app.add_subcommand("figure", "reproduce a figure dataset (2-6)");
    add_common_options(figure, ov);
    figure->add_option("id", figure_id, "figure id")->required()->check(CLI::Range(2, 6));
    CLI::App* self = app.add_subcommand("selftest", "fast end-to-end checks");
    (void)self;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const auto start = std::chrono::steady_clock::now();
    int status = 0;
    try {
        if (app.got_subcommand("selftest")) {
            status = selftest(std::cout);
        } else {
            const ExperimentConfig config = build_config(ov);
            if (app.got_subcommand("assemble"))
                status = cmd_assemble(config);
            else if (app.got_subcommand("eig"))
                status = cmd_eig(config);
            else if (app.got_subcommand("symbol"))
                status = cmd_symbol(config, points);
            else if (app.got_subcommand("rearrange"))
                status = cmd_rearrange(config, points, method);
            else if (app.got_subcommand("compare"))
                status = cmd_compare(config);
            else if (app.got_subcommand("table"))
                status = cmd_table(config, table_id);
            else if (app.got_subcommand("figure"))
                status = cmd_figure(config, figure_id);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "runtime " << elapsed.count() << " s\n";
    return status;
}
