#pragma once

#include <iosfwd>
#include <vector>

#include "slspec/metrics.hpp"

namespace slspec {

/// d-dimensional Dirichlet Laplacian on the unit cube, n nodes per
/// dimension. c_d is the volume of the unit ball.
struct MultiDimCase {
    int d = 1;
    int n = 1;
    double c_d = 2.0;

    static double unit_ball_volume(int d);
    static MultiDimCase make(int d, int n);
};

/// Spectrum of the Kronecker-sum (2d+1)-point discretization by the sum
/// rule: (n+1)^2 sum_j (2 - 2 cos(k_j pi/(n+1))) over all multi-indices,
/// sorted ascending. Never materializes the n^d x n^d matrix; n^d is capped
/// at 10^6.
SpectrumReport kron_laplacian_eigs(int d, int n);

/// All sums pi^2 (k_1^2 + ... + k_d^2) with each k_j in 1..k_max, sorted.
std::vector<double> exact_laplacian_eigs_ddim(int d, int k_max);

/// zeta(t) = c_d (t/4pi^2)^(d/2) on [0, 4pi^2/c_d^(2/d)];
/// zeta*(x) = 4pi^2 (x/c_d)^(2/d).
WeylLaw weyl_law_ddim(int d);

/// |4d c_d^(2/d) / (4 pi^2) - 1| = |omega*(1)/zeta*(1) - 1|, the value of the
/// maximum-spectral-error lower bound at the top of the spectrum.
double ddim_error_bound(int d);

/// CSV columns: k_hat/d_n, weighted discrete eigenvalue, weighted exact
/// eigenvalue.
void write_ddim_comparison_csv(std::ostream& out, const SpectrumReport& discrete_weighted,
                               const SpectrumReport& exact_weighted);

}  // namespace slspec
