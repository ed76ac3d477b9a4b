#include "slspec/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slspec/quadrature.hpp"

namespace slspec {

namespace {

void check_positive_on_samples(const RealFn& f, double a, double b, const char* name) {
    constexpr int kSamples = 256;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = a + (b - a) * i / kSamples;
        if (!(f(x) > 0.0)) throw std::domain_error(std::string(name) + " must be positive on [a, b]");
    }
}

}  // namespace

OperatorSpec OperatorSpec::diffusion(double a, double b, RealFn p) {
    return sturm_liouville(a, b, std::move(p), [](double) { return 0.0; },
                           [](double) { return 1.0; });
}

OperatorSpec OperatorSpec::sturm_liouville(double a, double b, RealFn p, RealFn q, RealFn w) {
    if (!(a < b)) throw std::invalid_argument("OperatorSpec: requires a < b");
    check_positive_on_samples(p, a, b, "p");
    check_positive_on_samples(w, a, b, "w");
    OperatorSpec spec;
    spec.a = a;
    spec.b = b;
    spec.p = std::move(p);
    spec.q = std::move(q);
    spec.w = std::move(w);
    return spec;
}

double OperatorSpec::p_extended(double x) const {
    if (x <= a) return p(a);
    if (x >= b) return p(b);
    return p(x);
}

GridMap GridMap::identity(double a, double b) {
    GridMap map;
    map.a = a;
    map.b = b;
    map.tau = [](double x) { return x; };
    map.tau_prime = [](double) { return 1.0; };
    return map;
}

GridMap GridMap::create(double a, double b, RealFn tau, RealFn tau_prime) {
    if (std::fabs(tau(a) - a) > 1e-12 * std::max(1.0, std::fabs(a)) ||
        std::fabs(tau(b) - b) > 1e-12 * std::max(1.0, std::fabs(b)))
        throw std::invalid_argument("GridMap: tau must fix the endpoints");
    constexpr int kSamples = 256;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = a + (b - a) * i / kSamples;
        if (tau_prime(x) == 0.0) throw std::invalid_argument("GridMap: tau' vanishes");
    }
    GridMap map;
    map.a = a;
    map.b = b;
    map.tau = std::move(tau);
    map.tau_prime = std::move(tau_prime);
    return map;
}

double GridMap::extended(double x) const {
    if (x <= a || x >= b) return x;
    return tau(x);
}

GridMap liouville_map(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("liouville_map: alpha must be positive");
    const double s = std::sqrt(alpha);
    const double big_e = std::exp(s);
    auto tau = [s, big_e](double x) { return std::exp(s * (x - 1.0) / (big_e - 1.0)); };
    auto tau_prime = [s, big_e, tau](double x) { return s / (big_e - 1.0) * tau(x); };
    return GridMap::create(1.0, big_e, tau, tau_prime);
}

Grid make_uniform_grid(double a, double b, int n, int eta) {
    if (n < 1) throw std::invalid_argument("make_uniform_grid: n must be >= 1");
    if (eta < 1) throw std::invalid_argument("make_uniform_grid: eta must be >= 1");
    if (!(a < b)) throw std::invalid_argument("make_uniform_grid: requires a < b");
    Grid grid;
    grid.a = a;
    grid.b = b;
    grid.n = n;
    grid.eta = eta;
    grid.nodes.reserve(static_cast<size_t>(n + 2 * eta));
    for (int j = 1 - eta; j <= n + eta; ++j)
        grid.nodes.push_back(a + (b - a) * j / (n + 1.0));
    grid.mapped = grid.nodes;
    return grid;
}

Grid map_grid(const Grid& grid, const GridMap& map) {
    Grid out = grid;
    for (size_t i = 0; i < out.nodes.size(); ++i) out.mapped[i] = map.extended(out.nodes[i]);
    for (size_t i = 1; i < out.mapped.size(); ++i)
        if (!(out.mapped[i] > out.mapped[i - 1]))
            throw std::runtime_error("map_grid: mapped nodes are not strictly increasing");
    return out;
}

EulerCauchyCase EulerCauchyCase::make(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("EulerCauchyCase: alpha must be positive");
    EulerCauchyCase ec;
    ec.alpha = alpha;
    ec.a = 1.0;
    ec.b = std::exp(std::sqrt(alpha));
    return ec;
}

OperatorSpec EulerCauchyCase::operator_spec() const {
    const double alpha_ = alpha;
    return OperatorSpec::diffusion(a, b, [alpha_](double x) { return alpha_ * x * x; });
}

double EulerCauchyCase::eigenvalue(int k) const {
    const double kpi = k * std::numbers::pi;
    return kpi * kpi + 0.25 * alpha;
}

std::vector<double> exact_spectrum_euler_cauchy(const EulerCauchyCase& ec, int k_max) {
    if (k_max < 1) throw std::invalid_argument("exact_spectrum_euler_cauchy: k_max must be >= 1");
    std::vector<double> values;
    values.reserve(static_cast<size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) values.push_back(ec.eigenvalue(k));
    return values;
}

double liouville_invariant_B(const OperatorSpec& spec, double rel_tol) {
    auto integrand = [&spec](double x) {
        const double pv = spec.p(x);
        const double wv = spec.w(x);
        if (!(pv > 0.0) || !(wv > 0.0))
            throw std::domain_error("liouville_invariant_B: p and w must be positive");
        return std::sqrt(wv / pv);
    };
    return integrate(integrand, spec.a, spec.b, rel_tol);
}

}  // namespace slspec
