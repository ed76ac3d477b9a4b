#include "slspec/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slspec {

GaussRule gauss_legendre(int points) {
    if (points < 1) throw std::invalid_argument("gauss_legendre: points must be >= 1");
    GaussRule rule;
    rule.nodes.assign(points, 0.0);
    rule.weights.assign(points, 0.0);
    const int half = (points + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
        double deriv = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < points; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            deriv = points * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / deriv;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.nodes[static_cast<size_t>(i)] = -x;
        rule.nodes[static_cast<size_t>(points - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(points - 1 - i)] = w;
    }
    return rule;
}

namespace {

const GaussRule& panel_rule() {
    static const GaussRule rule = gauss_legendre(64);
    return rule;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& rule = panel_rule();
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + halfwidth * rule.nodes[i]);
    return sum * halfwidth;
}

double refine(const std::function<double(double)>& f, double a, double b, double whole,
              double rel_tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = panel(f, a, mid);
    const double right = panel(f, mid, b);
    const double split = left + right;
    if (depth <= 0 || std::fabs(split - whole) <= rel_tol * std::max(1.0, std::fabs(split)))
        return split;
    return refine(f, a, mid, left, rel_tol, depth - 1) +
           refine(f, mid, b, right, rel_tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int max_depth) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate: a must be <= b");
    }
    return refine(f, a, b, panel(f, a, b), rel_tol, max_depth);
}

}  // namespace slspec
