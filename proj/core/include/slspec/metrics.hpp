#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "slspec/symbol.hpp"

namespace slspec {

/// Sorted spectrum with inertia bookkeeping. weight_exponent records the
/// power of (n+1) already applied to the values (0 = raw spectrum).
struct SpectrumReport {
    std::vector<double> values;  // ascending
    double weight_exponent = 0.0;
    std::vector<char> outlier_flags;  // empty or one flag per value

    static SpectrumReport from_values(std::vector<double> v, double weight_exponent = 0.0);

    int dimension() const { return static_cast<int>(values.size()); }
    int d_minus() const;  // eigenvalues < 0
    int d_plus() const { return dimension() - d_minus(); }
    int outlier_count() const;
};

/// Report scaled by (n+1)^exponent.
SpectrumReport weighted(const SpectrumReport& report, int n, double exponent);

/// Number of eigenvalues <= t.
int counting_function(const SpectrumReport& report, double t);

/// Signed index k (negative eigenvalues k < 0, positive k > 0) to the
/// one-based ascending index k-hat: k + d_minus + 1 for k < 0, k + d_minus
/// for k > 0. k = 0 is invalid.
int reindex(int k, int d_minus);

struct ErrorReport {
    std::vector<double> local;  // delta_k, may contain +infinity
    double max_error = 0.0;     // E_n
    int argmax_index = 0;       // one-based k-bar
    double argmax_ratio = 0.0;  // k-bar / d_n
    std::vector<double> numerical;  // err_k (empty if no discrete spectrum given)
    std::vector<double> analytic;   // aerr_k (empty if no rearrangement given)
};

/// Local relative errors |lambda_k(X)/lambda_k(Y) - 1| under the ascending
/// pairing, 0 when both are zero and +infinity when only Y's vanishes,
/// together with their maximum and its location.
ErrorReport local_and_max_errors(const SpectrumReport& X, const SpectrumReport& Y);

/// err_k = |lambda_k(n)/lambda_k(ref) - 1| and
/// aerr_k = |(d_n+1)^2 omega*_k / lambda_k(ref) - 1| where omega*_k are
/// rearrangement samples at k/(d_n+1). eigs.values may be empty, in which
/// case only the analytic column is produced.
ErrorReport numerical_and_analytic_errors(const SpectrumReport& eigs,
                                          const SpectrumReport& reference,
                                          std::span<const double> rearr_samples);

/// c_{alpha,k} = (alpha/4) / (k^2 pi^2 + alpha/4).
double saturation_constant(double alpha, int k);

/// Flags eigenvalues outside [inf R - tol, sup R + tol], tol = 1e-8 sup R.
/// The report must be weighted to the symbol's scale.
std::vector<char> detect_outliers(const SpectrumReport& report, const SymbolFunction& symbol);

/// Limiting distribution zeta of the weighted exact spectrum and its
/// quantile zeta*.
struct WeylLaw {
    std::function<double(double)> zeta;
    std::function<double(double)> zeta_star;
    std::string provenance;
};

/// zeta(t) = sqrt(t)/pi clipped to [0, 1]; zeta*(x) = pi^2 x^2.
WeylLaw weyl_law_euler_cauchy();

struct AsymptoticError {
    double value = 0.0;
    double argmax_x = 0.0;
};

/// sup over an equispaced grid {j/grid} of |omega*(x)/zeta*(x) - 1|,
/// skipping points where zeta* vanishes.
AsymptoticError asymptotic_error(const RearrangedSymbol& rearr, const WeylLaw& law, int grid);

/// CSV emitters. Columns: k, k/n, lambda_k, delta_k, err_k, aerr_k, outlier
/// (absent vectors print as empty fields).
void write_per_k_csv(std::ostream& out, const SpectrumReport& spectrum,
                     const ErrorReport& errors);

}  // namespace slspec
