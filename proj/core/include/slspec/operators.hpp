#pragma once

#include <functional>
#include <vector>

namespace slspec {

using RealFn = std::function<double(double)>;

enum class BoundaryCondition { Dirichlet };

/// Sturm-Liouville problem -(p u')' + q u = lambda w u on (a, b).
/// p and w must be positive on [a, b]; only Dirichlet conditions are
/// supported, the enumeration documents the restriction.
struct OperatorSpec {
    double a = 0.0;
    double b = 1.0;
    RealFn p;
    RealFn q;
    RealFn w;
    BoundaryCondition bcs = BoundaryCondition::Dirichlet;

    /// Pure diffusion problem: q = 0, w = 1. Validates a < b and positivity
    /// of p on a sample grid.
    static OperatorSpec diffusion(double a, double b, RealFn p);
    static OperatorSpec sturm_liouville(double a, double b, RealFn p, RealFn q, RealFn w);

    /// Constant continuation of p outside [a, b].
    double p_extended(double x) const;
};

/// Diffeomorphism tau of [a, b] onto itself with tau(a) = a, tau(b) = b and
/// nonvanishing derivative, plus its identity extension beyond the interval.
struct GridMap {
    double a = 0.0;
    double b = 1.0;
    RealFn tau;
    RealFn tau_prime;

    static GridMap identity(double a, double b);
    /// Validates the endpoint-fixing and nonzero-derivative requirements.
    static GridMap create(double a, double b, RealFn tau, RealFn tau_prime);

    /// tau-bar: identity for x <= a and x >= b, tau inside.
    double extended(double x) const;
};

/// Reparametrization of [1, e^sqrt(alpha)] induced by the change of variables
/// y = integral of 1/(sqrt(alpha) t): the composition of the affine map onto
/// [0, 1] with y -> e^(sqrt(alpha) y).
GridMap liouville_map(double alpha);

/// Equispaced nodes x_j = a + (b-a) j/(n+1) for j = 1-eta .. n+eta, together
/// with their images under a grid map. eta is the ghost-node depth.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int n = 0;
    int eta = 0;
    std::vector<double> nodes;   // size n + 2*eta, strictly increasing
    std::vector<double> mapped;  // tau-bar(nodes), same size

    /// Node with logical index j in [1-eta, n+eta].
    double node(int j) const { return nodes[static_cast<size_t>(j - 1 + eta)]; }
    double mapped_node(int j) const { return mapped[static_cast<size_t>(j - 1 + eta)]; }
    double spacing() const { return (b - a) / (n + 1); }
};

Grid make_uniform_grid(double a, double b, int n, int eta);

/// Applies the map's extension to every node; throws if the mapped nodes are
/// not strictly increasing.
Grid map_grid(const Grid& grid, const GridMap& map);

/// -(alpha x^2 u')' on (1, e^sqrt(alpha)) with Dirichlet conditions.
/// Eigenvalues are k^2 pi^2 + alpha/4.
struct EulerCauchyCase {
    double alpha = 1.0;
    double a = 1.0;
    double b = 0.0;  // e^sqrt(alpha)

    static EulerCauchyCase make(double alpha);
    OperatorSpec operator_spec() const;
    double eigenvalue(int k) const;
};

std::vector<double> exact_spectrum_euler_cauchy(const EulerCauchyCase& ec, int k_max);

/// Integral of sqrt(w/p) over [a, b]; the length of the interval after the
/// Liouville change of variables. Throws std::domain_error if p or w is
/// nonpositive at a quadrature node.
double liouville_invariant_B(const OperatorSpec& spec, double rel_tol = 1e-12);

}  // namespace slspec
