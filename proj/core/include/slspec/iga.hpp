#pragma once

#include <iosfwd>

#include "slspec/banded.hpp"
#include "slspec/operators.hpp"

namespace slspec {

/// Galerkin stiffness/mass pair from a B-spline discretization. Both are
/// symmetric banded with bandwidth eta; M is positive definite.
struct GalerkinPencil {
    BandedMatrix K;
    BandedMatrix M;
    int n = 0;
    int eta = 1;
    int spans = 0;
};

/// Galerkin discretization of -(p u')' with B-splines of degree eta and
/// smoothness C^(eta-1) through the geometry map
///   G(s) = tau(a + (b-a) s),  s in [0, 1]:
///   K_ij = int p(G) B_i' B_j' / G' ds,  M_ij = int B_i B_j G' ds,
/// Gauss-Legendre with eta+1 points per span. The knot vector is sized so
/// the Dirichlet system has dimension n exactly (n + 2 - eta spans).
GalerkinPencil assemble_iga(const OperatorSpec& spec, const GridMap& map, int eta, int n);

/// Spectral-variable factor of the Galerkin symbol. Closed forms for
/// eta = 1, 2; for higher degrees the ratio of the Fourier symbols of the
/// interior stiffness and mass stencils, extracted once from a
/// constant-coefficient assembly (exact by the Toeplitz interior structure).
double iga_symbol_f(int eta, double theta);

/// Banded text export, stiffness block then mass block.
void write_pencil(std::ostream& out, const GalerkinPencil& pencil);

}  // namespace slspec
