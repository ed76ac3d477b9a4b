#pragma once

#include <span>
#include <string>
#include <vector>

#include "slspec/banded.hpp"

namespace slspec {

struct EigenResult {
    std::vector<double> values;  // ascending
    double max_imag = 0.0;       // largest |Im| seen before discarding
    bool imag_flagged = false;   // max_imag > 1e-8 * max(1, spectral radius)
    std::string method;
};

/// All eigenvalues of a symmetric tridiagonal matrix. Positive definite
/// input goes through the high-relative-accuracy Cholesky/bidiagonal path,
/// anything else through root-free implicit-shift QL.
EigenResult eig_sym_tridiag(std::span<const double> diagonal,
                            std::span<const double> offdiagonal);

EigenResult eig_dense_sym(const BandedMatrix& m);

/// Real nonsymmetric solve (balancing + Hessenberg + shifted QR). Keeps the
/// real parts, records the largest imaginary part and flags the result when
/// it exceeds 1e-8 times the spectral radius. n is capped at 5000.
EigenResult eig_dense_general(const BandedMatrix& m);
EigenResult eig_dense_general(std::vector<double> column_major, int n);

/// Symmetric-definite pencil K x = lambda M x via Cholesky M = L L^T and a
/// symmetric solve on L^-1 K L^-T.
EigenResult eig_gen_sym(const BandedMatrix& K, const BandedMatrix& M);

/// Dispatch: symmetric tridiagonal fast path, dense symmetric, or dense
/// general, decided by bandwidth and a symmetry test. Mapped-grid matrices
/// are nonsymmetric and are never symmetrized; realness of their spectrum is
/// asserted through the imaginary-part flag instead.
EigenResult eig_banded_auto(const BandedMatrix& m);

}  // namespace slspec
