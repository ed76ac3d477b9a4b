#include "slspec/multidim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace slspec {

namespace {
constexpr double kPi = std::numbers::pi;

// n^d with an explicit cap; throws std::length_error past the limit.
size_t checked_power(int n, int d, size_t cap) {
    size_t total = 1;
    for (int j = 0; j < d; ++j) {
        if (total > cap / static_cast<size_t>(n)) throw std::length_error("multidim: size overflow");
        total *= static_cast<size_t>(n);
    }
    return total;
}

}  // namespace

double MultiDimCase::unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: d must be >= 1");
    return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

MultiDimCase MultiDimCase::make(int d, int n) {
    if (d < 1 || n < 1) throw std::invalid_argument("MultiDimCase: d and n must be >= 1");
    return MultiDimCase{d, n, unit_ball_volume(d)};
}

SpectrumReport kron_laplacian_eigs(int d, int n) {
    if (d < 1 || n < 1) throw std::invalid_argument("kron_laplacian_eigs: d and n must be >= 1");
    const size_t total = checked_power(n, d, 1000000);

    std::vector<double> one_dim(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k)
        one_dim[static_cast<size_t>(k - 1)] = 2.0 - 2.0 * std::cos(k * kPi / (n + 1));

    std::vector<double> values;
    values.reserve(total);
    std::vector<int> index(static_cast<size_t>(d), 0);  // 0-based odometer
    const double scale = static_cast<double>(n + 1) * (n + 1);
    while (true) {
        double sum = 0.0;
        for (int j = 0; j < d; ++j) sum += one_dim[static_cast<size_t>(index[static_cast<size_t>(j)])];
        values.push_back(scale * sum);
        int j = 0;
        while (j < d && ++index[static_cast<size_t>(j)] == n) index[static_cast<size_t>(j++)] = 0;
        if (j == d) break;
    }
    return SpectrumReport::from_values(std::move(values));
}

std::vector<double> exact_laplacian_eigs_ddim(int d, int k_max) {
    if (d < 1 || k_max < 1)
        throw std::invalid_argument("exact_laplacian_eigs_ddim: d and k_max must be >= 1");
    const size_t total = checked_power(k_max, d, 40000000);
    std::vector<double> values;
    values.reserve(total);
    std::vector<int> index(static_cast<size_t>(d), 1);
    while (true) {
        double sum = 0.0;
        for (int j = 0; j < d; ++j) {
            const double kj = index[static_cast<size_t>(j)];
            sum += kj * kj;
        }
        values.push_back(kPi * kPi * sum);
        int j = 0;
        while (j < d && ++index[static_cast<size_t>(j)] > k_max) index[static_cast<size_t>(j++)] = 1;
        if (j == d) break;
    }
    std::sort(values.begin(), values.end());
    return values;
}

WeylLaw weyl_law_ddim(int d) {
    const double c_d = MultiDimCase::unit_ball_volume(d);
    const double four_pi2 = 4.0 * kPi * kPi;
    WeylLaw law;
    law.zeta = [c_d, four_pi2, d](double t) {
        if (t <= 0.0) return 0.0;
        return std::min(c_d * std::pow(t / four_pi2, 0.5 * d), 1.0);
    };
    law.zeta_star = [c_d, four_pi2, d](double x) { return four_pi2 * std::pow(x / c_d, 2.0 / d); };
    law.provenance = "d-dim-laplacian";
    return law;
}

double ddim_error_bound(int d) {
    const double c_d = MultiDimCase::unit_ball_volume(d);
    return std::fabs(4.0 * d * std::pow(c_d, 2.0 / d) / (4.0 * kPi * kPi) - 1.0);
}

void write_ddim_comparison_csv(std::ostream& out, const SpectrumReport& discrete_weighted,
                               const SpectrumReport& exact_weighted) {
    if (discrete_weighted.dimension() != exact_weighted.dimension())
        throw std::invalid_argument("write_ddim_comparison_csv: dimension mismatch");
    out << "k_hat_over_dn,weighted_lambda_discrete,weighted_lambda_exact\n";
    const int d_n = discrete_weighted.dimension();
    char buf[96];
    for (int k = 1; k <= d_n; ++k) {
        std::snprintf(buf, sizeof buf, "%.10e,%.10e,%.10e\n", static_cast<double>(k) / d_n,
                      discrete_weighted.values[static_cast<size_t>(k - 1)],
                      exact_weighted.values[static_cast<size_t>(k - 1)]);
        out << buf;
    }
}

}  // namespace slspec
