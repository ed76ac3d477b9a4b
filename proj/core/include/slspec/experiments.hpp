#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slspec/eigensolve.hpp"
#include "slspec/metrics.hpp"
#include "slspec/symbol.hpp"

namespace slspec {

enum class Scheme { Fd, Iga };
enum class GridKind { Uniform, Liouville };
enum class ReferenceKind { Exact, FineMesh };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Declarative description of one experiment. Parsed from flat
/// "key = value" files; command-line flags override file keys.
struct ExperimentConfig {
    Scheme scheme = Scheme::Fd;
    int eta = 1;
    std::vector<int> n_values = {100};
    double alpha = 1.0;
    GridKind grid = GridKind::Uniform;
    int r = 0;  // 0 = default max(1000, n)
    ReferenceKind reference = ReferenceKind::Exact;
    int fine_mesh_n = 10000;
    std::string out_dir = ".";

    static ExperimentConfig from_file(const std::string& path);
    /// Typed assignment of one key; unknown keys or malformed values throw
    /// ConfigError.
    void set(const std::string& key, const std::string& value);
    void validate() const;

    int effective_r(int n) const { return r > 0 ? r : std::max(1000, n); }
};

std::string to_string(Scheme s);
std::string to_string(GridKind g);
std::string to_string(ReferenceKind r);

/// Assemble + solve one problem of the Euler-Cauchy family.
struct ProblemSolution {
    EigenResult eig;        // raw (unweighted) spectrum
    SymbolFunction symbol;  // symbol of the weighted sequence
    int n = 0;
    int eta = 1;
};

ProblemSolution solve_euler_cauchy(Scheme scheme, int eta, int n, double alpha, GridKind grid);

/// Reference spectrum of length count: exact closed form, or the same
/// discretization on the fine mesh when configured.
std::vector<double> reference_spectrum(const ExperimentConfig& config, int count);

/// One scheme-vs-reference comparison (per-k errors, maximum error,
/// outliers). Used by the `compare` verb.
struct ComparisonResult {
    SpectrumReport spectrum;           // unweighted, with outlier flags
    SpectrumReport weighted_spectrum;  // (n+1)^-2 scaled
    ErrorReport errors;
    double max_imag = 0.0;
    int outlier_count = 0;
    bool phi_fallback = false;
    std::string provenance;
};

ComparisonResult run_comparison(const ExperimentConfig& config, int n);

/// Table/figure drivers. CSV data goes to `csv`, a JSON summary string to
/// `summary`. Unknown ids throw ConfigError.
void run_table(int table_id, const ExperimentConfig& config, std::ostream& csv,
               std::string& summary);
void run_figure_data(int figure_id, const ExperimentConfig& config, std::ostream& csv,
                     std::string& summary);

/// Fast end-to-end checks; returns 0 on success, 2 on tolerance failure.
int selftest(std::ostream& log);

/// Worker count for experiment cells: SLSPEC_THREADS when set, otherwise
/// hardware concurrency.
int worker_count();

}  // namespace slspec
