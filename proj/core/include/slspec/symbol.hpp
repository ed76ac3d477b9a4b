#pragma once

#include <functional>
#include <vector>

#include "slspec/operators.hpp"

namespace slspec {

/// Bivariate spectral symbol omega(x, theta) on a box
/// [x_lo, x_hi] x [th_lo, th_hi], with cached essential-range bounds.
struct SymbolFunction {
    double x_lo = 0.0, x_hi = 1.0;
    double th_lo = 0.0, th_hi = 0.0;
    std::function<double(double, double)> eval;
    double inf_range = 0.0;
    double sup_range = 0.0;

    double measure() const { return (x_hi - x_lo) * (th_hi - th_lo); }
};

/// omega_eta(x, theta) = p(tau(x)) f_eta(theta) / (tau'(x)^2 (b-a)^2) on
/// [a, b] x [0, pi], with the central-difference f_eta.
SymbolFunction symbol_fd(const OperatorSpec& spec, const GridMap& map, int eta);

/// Same product structure with the Galerkin f_eta.
SymbolFunction symbol_iga(const OperatorSpec& spec, const GridMap& map, int eta);

/// Nondecreasing rearrangement on [0, 1], stored as a piecewise-linear
/// interpolant. Positions are implicit (equispaced) unless given explicitly.
class RearrangedSymbol {
  public:
    RearrangedSymbol() = default;
    explicit RearrangedSymbol(std::vector<double> values);
    RearrangedSymbol(std::vector<double> positions, std::vector<double> values);

    double operator()(double x) const;
    size_t breakpoint_count() const { return values_.size(); }
    double breakpoint(size_t j) const;
    double value(size_t j) const { return values_[j]; }
    double min() const { return values_.front(); }
    double max() const { return values_.back(); }

  private:
    std::vector<double> positions_;  // empty => equispaced over [0, 1]
    std::vector<double> values_;     // nondecreasing
};

/// Sampling construction of the rearrangement: the symbol is evaluated on
/// the equispaced r x r interior grid of its box, the r^2 samples are
/// sorted, min/max of the symbol are appended at positions 0 and 1, and the
/// result is the piecewise-linear interpolant over {j/(r^2+1)}.
RearrangedSymbol rearrangement_by_sampling(const SymbolFunction& symbol, int r);

/// omega*_r(k/(n+1)) for k = 1..n.
std::vector<double> sample_rearranged(const RearrangedSymbol& rearr, int n);

/// Distribution function t -> measure fraction of {omega <= t}.
struct DistributionFunction {
    enum class Kind { Analytic, GridCounted };

    std::function<double(double)> phi;
    double t_lo = 0.0;
    double t_hi = 1.0;
    Kind kind = Kind::GridCounted;
    bool used_fallback = false;  // analytic construction fell back to quadrature
};

/// Midpoint counting on a resolution x resolution tensor grid; error
/// O(1/resolution) for symbols with Lipschitz level sets.
double phi_grid(const SymbolFunction& symbol, double t, int resolution);

/// Grid-counted distribution with the samples sorted once so repeated
/// evaluations are a binary search.
DistributionFunction distribution_from_grid(const SymbolFunction& symbol, int resolution);

/// Closed-form distribution function of the Euler-Cauchy 3-point symbol
/// alpha x^2 (2 - 2 cos theta) / (e^sqrt(alpha) - 1)^2. Two branches split at
/// t = 4 alpha / (e^sqrt(alpha) - 1)^2; out-of-range t throws.
double phi_euler_cauchy_analytic(double alpha, double t);

/// Direct quadrature of the arcsin integrand; the fallback route.
double phi_euler_cauchy_quadrature(double alpha, double t);

/// Analytic Euler-Cauchy distribution, cross-validated at construction
/// against a grid count (resolution 2000, max deviation 5e-3). On failure
/// the object silently switches to the quadrature route and reports it via
/// used_fallback.
DistributionFunction euler_cauchy_phi(double alpha);

/// Generalized inverse omega*(x) = inf { t : phi(t) > x } by bisection on
/// [t_lo, t_hi] down to 1e-12 * (t_hi - t_lo). Throws if the bracket does
/// not enclose x.
double invert_phi(const DistributionFunction& dist, double x);
double invert_phi(const DistributionFunction& dist, double x, double lo, double hi);

/// Inversion with uniform relative precision down to the origin: bisection
/// in sqrt(t), for distributions of symbols vanishing quadratically at the
/// left edge. Needed where (n+1)^2 omega*(k/(n+1)) is compared against an
/// eigenvalue to many digits.
double invert_phi_sqrt(const DistributionFunction& dist, double x);

/// Rearrangement tabulated by inverting a distribution function at the
/// equispaced positions j/points, j = 0..points.
RearrangedSymbol analytic_rearrangement(const DistributionFunction& dist, int points);

}  // namespace slspec
