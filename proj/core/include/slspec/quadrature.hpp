#pragma once

#include <functional>
#include <vector>

namespace slspec {

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes/weights via Newton iteration on the Legendre recurrence.
GaussRule gauss_legendre(int points);

/// Adaptive panel integration: 64-point Gauss-Legendre panels compared
/// against their bisection; panels split until the refinement changes the
/// result by less than rel_tol (or the depth limit is hit).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, int max_depth = 24);

}  // namespace slspec
