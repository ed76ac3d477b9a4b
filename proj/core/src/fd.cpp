#include "slspec/fd.hpp"

#include <cmath>
#include <stdexcept>

namespace slspec {

std::vector<double> fd_coefficients(int eta) {
    if (eta < 1 || eta > 30) throw std::invalid_argument("fd_coefficients: eta must be in 1..30");
    std::vector<double> d(static_cast<size_t>(eta) + 1, 0.0);
    // d_k / d_{k-1} = -(eta-k+1)/(eta+k) * (k-1)^2/k^2, d_1 = -2 eta/(eta+1)
    double cur = -2.0 * eta / (eta + 1.0);
    d[1] = cur;
    for (int k = 2; k <= eta; ++k) {
        cur *= -((eta - k + 1.0) / (eta + k)) * ((k - 1.0) * (k - 1.0)) / (static_cast<double>(k) * k);
        d[static_cast<size_t>(k)] = cur;
    }
    double sum = 0.0;
    for (int k = 1; k <= eta; ++k) sum += d[static_cast<size_t>(k)];
    d[0] = -2.0 * sum;
    return d;
}

FdScheme FdScheme::make(int eta) { return FdScheme{eta, fd_coefficients(eta)}; }

double FdScheme::symbol(double theta) const {
    double s = coefficients[0];
    for (size_t k = 1; k < coefficients.size(); ++k)
        s += 2.0 * coefficients[k] * std::cos(static_cast<double>(k) * theta);
    return s;
}

double fd_symbol_f(int eta, double theta) { return FdScheme::make(eta).symbol(theta); }

BandedMatrix assemble_fd(const OperatorSpec& spec, const Grid& grid, int eta) {
    if (eta < 1) throw std::invalid_argument("assemble_fd: eta must be >= 1");
    if (grid.eta < eta) throw std::invalid_argument("assemble_fd: grid ghost depth below eta");
    const int n = grid.n;
    BandedMatrix out(n, eta);

    const int width = 2 * eta + 1;
    std::vector<double> z(static_cast<size_t>(width));
    for (int i = 1; i <= n; ++i) {
        for (int t = 0; t < width; ++t) z[static_cast<size_t>(t)] = grid.mapped_node(i - eta + t);
        // Differences are normalized by the mean local spacing so the
        // products stay O(1) for any eta and mesh size.
        const double s = (z[static_cast<size_t>(width - 1)] - z[0]) / (width - 1);
        const int li = eta;  // local index of node i
        double diag_sum = 0.0;
        for (int lj = 0; lj < width; ++lj) {
            if (lj == li) continue;
            double num = 0.0;
            for (int lm = 0; lm < width; ++lm) {
                if (lm == li || lm == lj) continue;
                double prod = 1.0;
                for (int lk = 0; lk < width; ++lk) {
                    if (lk == li || lk == lj || lk == lm) continue;
                    prod *= (z[static_cast<size_t>(lk)] - z[static_cast<size_t>(li)]) / s;
                }
                num += prod;
            }
            double den = (z[static_cast<size_t>(lj)] - z[static_cast<size_t>(li)]) / s;
            for (int lk = 0; lk < width; ++lk) {
                if (lk == li || lk == lj) continue;
                den *= (z[static_cast<size_t>(lk)] - z[static_cast<size_t>(lj)]) / s;
            }
            if (den == 0.0) throw std::runtime_error("assemble_fd: coincident nodes (singular grid)");
            const double mid = 0.5 * (z[static_cast<size_t>(li)] + z[static_cast<size_t>(lj)]);
            const double l_ij = 2.0 * spec.p_extended(mid) * num / den / (s * s);
            diag_sum += l_ij;
            const int j = i - eta + lj;
            if (j >= 1 && j <= n) out.set(i - 1, j - 1, l_ij);
        }
        out.set(i - 1, i - 1, -diag_sum);
    }
    return out;
}

BandedMatrix weight_matrix(const BandedMatrix& m, int n) {
    const double f = 1.0 / (static_cast<double>(n + 1) * (n + 1));
    return m.scaled(f);
}

}  // namespace slspec
