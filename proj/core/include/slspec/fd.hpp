#pragma once

#include <vector>

#include "slspec/banded.hpp"
#include "slspec/operators.hpp"

namespace slspec {

/// (2*eta+1)-point central difference scheme for the second derivative.
/// coefficients holds d_{eta,0} .. d_{eta,eta}.
struct FdScheme {
    int eta = 1;
    std::vector<double> coefficients;

    static FdScheme make(int eta);
    /// Trigonometric polynomial d_0 + 2 sum_k d_k cos(k theta).
    double symbol(double theta) const;
};

/// d_{eta,k} = (-1)^k [eta! eta! / ((eta-k)!(eta+k)!)] 2/k^2 for k >= 1 and
/// d_{eta,0} = -2 sum_k d_{eta,k}, computed by a multiplicative recurrence so
/// the factorial ratios never overflow (eta up to 30).
std::vector<double> fd_coefficients(int eta);

double fd_symbol_f(int eta, double theta);

/// Central-difference matrix of -(p u')' on the mapped grid with Dirichlet
/// truncation: off-diagonal entries use p-bar at mapped-node midpoints, the
/// diagonal is minus the full stencil sum including ghost columns, and
/// columns outside 1..n are dropped.
BandedMatrix assemble_fd(const OperatorSpec& spec, const Grid& grid, int eta);

/// Entrywise scaling by (n+1)^(-2).
BandedMatrix weight_matrix(const BandedMatrix& m, int n);

}  // namespace slspec
