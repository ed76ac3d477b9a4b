#include "slspec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace slspec {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

SpectrumReport SpectrumReport::from_values(std::vector<double> v, double weight_exponent) {
    std::sort(v.begin(), v.end());
    SpectrumReport report;
    report.values = std::move(v);
    report.weight_exponent = weight_exponent;
    return report;
}

int SpectrumReport::d_minus() const {
    return static_cast<int>(
        std::lower_bound(values.begin(), values.end(), 0.0) - values.begin());
}

int SpectrumReport::outlier_count() const {
    int count = 0;
    for (char f : outlier_flags) count += (f != 0);
    return count;
}

SpectrumReport weighted(const SpectrumReport& report, int n, double exponent) {
    SpectrumReport out = report;
    const double factor = std::pow(static_cast<double>(n + 1), exponent);
    for (double& v : out.values) v *= factor;
    out.weight_exponent = report.weight_exponent + exponent;
    return out;
}

int counting_function(const SpectrumReport& report, double t) {
    return static_cast<int>(
        std::upper_bound(report.values.begin(), report.values.end(), t) - report.values.begin());
}

int reindex(int k, int d_minus) {
    if (k == 0) throw std::invalid_argument("reindex: k must be nonzero");
    return k < 0 ? k + d_minus + 1 : k + d_minus;
}

ErrorReport local_and_max_errors(const SpectrumReport& X, const SpectrumReport& Y) {
    if (X.dimension() != Y.dimension())
        throw std::invalid_argument("local_and_max_errors: dimension mismatch");
    ErrorReport report;
    const int d_n = X.dimension();
    report.local.resize(static_cast<size_t>(d_n));
    report.max_error = -1.0;
    for (int k = 0; k < d_n; ++k) {
        const double x = X.values[static_cast<size_t>(k)];
        const double y = Y.values[static_cast<size_t>(k)];
        double delta;
        if (y != 0.0)
            delta = std::fabs(x / y - 1.0);
        else
            delta = (x == 0.0) ? 0.0 : kInf;
        report.local[static_cast<size_t>(k)] = delta;
        if (delta > report.max_error) {
            report.max_error = delta;
            report.argmax_index = k + 1;
        }
    }
    report.argmax_ratio = static_cast<double>(report.argmax_index) / d_n;
    return report;
}

ErrorReport numerical_and_analytic_errors(const SpectrumReport& eigs,
                                          const SpectrumReport& reference,
                                          std::span<const double> rearr_samples) {
    const int d_n = static_cast<int>(rearr_samples.size());
    if (d_n < 1) throw std::invalid_argument("numerical_and_analytic_errors: no samples");
    if (!eigs.values.empty() && eigs.dimension() != d_n)
        throw std::invalid_argument("numerical_and_analytic_errors: eigs/samples size mismatch");
    if (reference.dimension() < d_n)
        throw std::invalid_argument("numerical_and_analytic_errors: reference too short");

    ErrorReport report;
    const double weight = static_cast<double>(d_n + 1) * (d_n + 1);
    report.analytic.resize(static_cast<size_t>(d_n));
    if (!eigs.values.empty()) report.numerical.resize(static_cast<size_t>(d_n));
    for (int k = 0; k < d_n; ++k) {
        const double ref = reference.values[static_cast<size_t>(k)];
        if (ref == 0.0)
            throw std::domain_error("numerical_and_analytic_errors: zero reference eigenvalue");
        report.analytic[static_cast<size_t>(k)] =
            std::fabs(weight * rearr_samples[static_cast<size_t>(k)] / ref - 1.0);
        if (!eigs.values.empty())
            report.numerical[static_cast<size_t>(k)] =
                std::fabs(eigs.values[static_cast<size_t>(k)] / ref - 1.0);
    }
    if (!report.numerical.empty()) {
        const auto it = std::max_element(report.numerical.begin(), report.numerical.end());
        report.max_error = *it;
        report.argmax_index = static_cast<int>(it - report.numerical.begin()) + 1;
        report.argmax_ratio = static_cast<double>(report.argmax_index) / d_n;
    }
    return report;
}

double saturation_constant(double alpha, int k) {
    if (k < 1) throw std::invalid_argument("saturation_constant: k must be >= 1");
    const double quarter = 0.25 * alpha;
    const double kpi = k * kPi;
    return quarter / (kpi * kpi + quarter);
}

std::vector<char> detect_outliers(const SpectrumReport& report, const SymbolFunction& symbol) {
    const double tol = 1e-8 * std::fabs(symbol.sup_range);
    std::vector<char> flags(report.values.size(), 0);
    for (size_t i = 0; i < report.values.size(); ++i) {
        const double v = report.values[i];
        flags[i] = (v < symbol.inf_range - tol || v > symbol.sup_range + tol) ? 1 : 0;
    }
    return flags;
}

WeylLaw weyl_law_euler_cauchy() {
    WeylLaw law;
    law.zeta = [](double t) {
        if (t <= 0.0) return 0.0;
        return std::min(std::sqrt(t) / kPi, 1.0);
    };
    law.zeta_star = [](double x) { return kPi * kPi * x * x; };
    law.provenance = "euler-cauchy";
    return law;
}

AsymptoticError asymptotic_error(const RearrangedSymbol& rearr, const WeylLaw& law, int grid) {
    if (grid < 1) throw std::invalid_argument("asymptotic_error: grid must be >= 1");
    AsymptoticError best;
    best.value = -1.0;
    for (int j = 1; j <= grid; ++j) {
        const double x = static_cast<double>(j) / grid;
        const double z = law.zeta_star(x);
        if (z == 0.0) continue;
        const double dev = std::fabs(rearr(x) / z - 1.0);
        if (dev > best.value) {
            best.value = dev;
            best.argmax_x = x;
        }
    }
    return best;
}

namespace {

void put_double(std::ostream& out, double v) {
    char buf[32];
    if (std::isinf(v))
        out << (v > 0 ? "inf" : "-inf");
    else {
        std::snprintf(buf, sizeof buf, "%.10e", v);
        out << buf;
    }
}

}  // namespace

void write_per_k_csv(std::ostream& out, const SpectrumReport& spectrum,
                     const ErrorReport& errors) {
    out << "k,k_over_n,lambda,delta,err,aerr,outlier\n";
    const int d_n = spectrum.dimension();
    for (int k = 1; k <= d_n; ++k) {
        const size_t i = static_cast<size_t>(k - 1);
        out << k << ',';
        put_double(out, static_cast<double>(k) / d_n);
        out << ',';
        put_double(out, spectrum.values[i]);
        out << ',';
        if (i < errors.local.size()) put_double(out, errors.local[i]);
        out << ',';
        if (i < errors.numerical.size()) put_double(out, errors.numerical[i]);
        out << ',';
        if (i < errors.analytic.size()) put_double(out, errors.analytic[i]);
        out << ',';
        out << (i < spectrum.outlier_flags.size() ? (spectrum.outlier_flags[i] ? 1 : 0) : 0);
        out << '\n';
    }
}

}  // namespace slspec
