#include "slspec/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "slspec/fd.hpp"
#include "slspec/iga.hpp"
#include "slspec/quadrature.hpp"

namespace slspec {

namespace {

constexpr double kPi = std::numbers::pi;

// Range bounds of a product symbol g(x) f(theta) with g > 0 and f >= 0 by
// independent 1-D scans (endpoints included).
SymbolFunction make_product_symbol(double a, double b, std::function<double(double)> g,
                                   std::function<double(double)> f) {
    constexpr int kScan = 8192;
    double g_min = g(a), g_max = g(a);
    for (int i = 1; i <= kScan; ++i) {
        const double v = g(a + (b - a) * i / kScan);
        g_min = std::min(g_min, v);
        g_max = std::max(g_max, v);
    }
    double f_min = f(0.0), f_max = f(0.0);
    for (int i = 1; i <= kScan; ++i) {
        const double v = f(kPi * i / kScan);
        f_min = std::min(f_min, v);
        f_max = std::max(f_max, v);
    }
    SymbolFunction sym;
    sym.x_lo = a;
    sym.x_hi = b;
    sym.th_lo = 0.0;
    sym.th_hi = kPi;
    sym.eval = [g = std::move(g), f = std::move(f)](double x, double th) { return g(x) * f(th); };
    sym.inf_range = g_min * f_min;
    sym.sup_range = g_max * f_max;
    return sym;
}

std::function<double(double)> spatial_factor(const OperatorSpec& spec, const GridMap& map) {
    const double width2 = (spec.b - spec.a) * (spec.b - spec.a);
    return [p = spec.p, tau = map.tau, tau_prime = map.tau_prime, width2](double x) {
        const double tp = tau_prime(x);
        return p(tau(x)) / (tp * tp * width2);
    };
}

}  // namespace

SymbolFunction symbol_fd(const OperatorSpec& spec, const GridMap& map, int eta) {
    const FdScheme scheme = FdScheme::make(eta);
    return make_product_symbol(spec.a, spec.b, spatial_factor(spec, map),
                               [scheme](double th) { return scheme.symbol(th); });
}

SymbolFunction symbol_iga(const OperatorSpec& spec, const GridMap& map, int eta) {
    iga_symbol_f(eta, 0.0);  // force the stencil cache before capturing
    return make_product_symbol(spec.a, spec.b, spatial_factor(spec, map),
                               [eta](double th) { return iga_symbol_f(eta, th); });
}

RearrangedSymbol::RearrangedSymbol(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw std::invalid_argument("RearrangedSymbol: need at least 2 values");
}

RearrangedSymbol::RearrangedSymbol(std::vector<double> positions, std::vector<double> values)
    : positions_(std::move(positions)), values_(std::move(values)) {
    if (values_.size() < 2 || positions_.size() != values_.size())
        throw std::invalid_argument("RearrangedSymbol: positions/values mismatch");
}

double RearrangedSymbol::breakpoint(size_t j) const {
    if (!positions_.empty()) return positions_[j];
    return static_cast<double>(j) / (values_.size() - 1);
}

double RearrangedSymbol::operator()(double x) const {
    if (x <= 0.0) return values_.front();
    if (x >= 1.0) return values_.back();
    if (positions_.empty()) {
        const double u = x * (values_.size() - 1);
        const size_t j = std::min(static_cast<size_t>(u), values_.size() - 2);
        const double frac = u - static_cast<double>(j);
        return values_[j] + frac * (values_[j + 1] - values_[j]);
    }
    const auto it = std::upper_bound(positions_.begin(), positions_.end(), x);
    const size_t hi = std::min(static_cast<size_t>(it - positions_.begin()), positions_.size() - 1);
    const size_t lo = hi - 1;
    const double gap = positions_[hi] - positions_[lo];
    const double frac = gap > 0.0 ? (x - positions_[lo]) / gap : 0.0;
    return values_[lo] + frac * (values_[hi] - values_[lo]);
}

RearrangedSymbol rearrangement_by_sampling(const SymbolFunction& symbol, int r) {
    if (r < 1) throw std::invalid_argument("rearrangement_by_sampling: r must be >= 1");
    std::vector<double> samples;
    samples.reserve(static_cast<size_t>(r) * r + 2);
    samples.push_back(symbol.inf_range);
    const double dx = (symbol.x_hi - symbol.x_lo) / (r + 1.0);
    const double dth = (symbol.th_hi - symbol.th_lo) / (r + 1.0);
    for (int i = 1; i <= r; ++i) {
        const double x = symbol.x_lo + dx * i;
        for (int j = 1; j <= r; ++j) samples.push_back(symbol.eval(x, symbol.th_lo + dth * j));
    }
    samples.push_back(symbol.sup_range);
    std::sort(samples.begin(), samples.end());
    return RearrangedSymbol(std::move(samples));
}

std::vector<double> sample_rearranged(const RearrangedSymbol& rearr, int n) {
    if (n < 1) throw std::invalid_argument("sample_rearranged: n must be >= 1");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) out.push_back(rearr(static_cast<double>(k) / (n + 1)));
    return out;
}

double phi_grid(const SymbolFunction& symbol, double t, int resolution) {
    if (resolution < 100) throw std::invalid_argument("phi_grid: resolution must be >= 100");
    const double dx = (symbol.x_hi - symbol.x_lo) / resolution;
    const double dth = (symbol.th_hi - symbol.th_lo) / resolution;
    long count = 0;
    for (int i = 0; i < resolution; ++i) {
        const double x = symbol.x_lo + dx * (i + 0.5);
        for (int j = 0; j < resolution; ++j)
            if (symbol.eval(x, symbol.th_lo + dth * (j + 0.5)) <= t) ++count;
    }
    return static_cast<double>(count) / (static_cast<double>(resolution) * resolution);
}

DistributionFunction distribution_from_grid(const SymbolFunction& symbol, int resolution) {
    if (resolution < 100)
        throw std::invalid_argument("distribution_from_grid: resolution must be >= 100");
    auto samples = std::make_shared<std::vector<double>>();
    samples->reserve(static_cast<size_t>(resolution) * resolution);
    const double dx = (symbol.x_hi - symbol.x_lo) / resolution;
    const double dth = (symbol.th_hi - symbol.th_lo) / resolution;
    for (int i = 0; i < resolution; ++i) {
        const double x = symbol.x_lo + dx * (i + 0.5);
        for (int j = 0; j < resolution; ++j)
            samples->push_back(symbol.eval(x, symbol.th_lo + dth * (j + 0.5)));
    }
    std::sort(samples->begin(), samples->end());
    DistributionFunction dist;
    dist.t_lo = symbol.inf_range;
    dist.t_hi = symbol.sup_range;
    dist.kind = DistributionFunction::Kind::GridCounted;
    dist.phi = [samples](double t) {
        const auto it = std::upper_bound(samples->begin(), samples->end(), t);
        return static_cast<double>(it - samples->begin()) / samples->size();
    };
    return dist;
}

namespace {

struct EulerCauchyPhiParts {
    double s;        // sqrt(alpha)
    double big_e;    // e^s
    double c_factor; // (e^s - 1) / (2 s)
    double t_split;  // 4 alpha / (e^s - 1)^2
    double t_sup;    // 4 alpha e^(2s) / (e^s - 1)^2
};

EulerCauchyPhiParts phi_parts(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("euler_cauchy phi: alpha must be positive");
    EulerCauchyPhiParts parts{};
    parts.s = std::sqrt(alpha);
    parts.big_e = std::exp(parts.s);
    const double em1 = parts.big_e - 1.0;
    parts.c_factor = em1 / (2.0 * parts.s);
    parts.t_split = 4.0 * alpha / (em1 * em1);
    parts.t_sup = parts.t_split * parts.big_e * parts.big_e;
    return parts;
}

// Antiderivative of 2 asin(c/x) for x >= c >= 0:
//   2 x asin(c/x) + 2 c log(x + sqrt(x^2 - c^2)).
double asin_antiderivative(double x, double c) {
    const double u = std::min(c / x, 1.0);
    const double s2 = std::max(x * x - c * c, 0.0);
    return 2.0 * x * std::asin(u) + 2.0 * c * std::log(x + std::sqrt(s2));
}

void check_phi_range(const EulerCauchyPhiParts& parts, double t) {
    const double slack = 1e-9 * parts.t_sup;
    if (t < -slack || t > parts.t_sup + slack)
        throw std::domain_error("euler_cauchy phi: t outside the symbol range");
}

}  // namespace

double phi_euler_cauchy_analytic(double alpha, double t) {
    const EulerCauchyPhiParts parts = phi_parts(alpha);
    check_phi_range(parts, t);
    if (t <= 0.0) return 0.0;
    if (t >= parts.t_sup) return 1.0;
    const double c = parts.c_factor * std::sqrt(t);
    const double denom = kPi * (parts.big_e - 1.0);
    if (c <= 1.0)
        return (asin_antiderivative(parts.big_e, c) - asin_antiderivative(1.0, c)) / denom;
    return (kPi * (c - 1.0) + asin_antiderivative(parts.big_e, c) - asin_antiderivative(c, c)) /
           denom;
}

double phi_euler_cauchy_quadrature(double alpha, double t) {
    const EulerCauchyPhiParts parts = phi_parts(alpha);
    check_phi_range(parts, t);
    if (t <= 0.0) return 0.0;
    if (t >= parts.t_sup) return 1.0;
    const double c = parts.c_factor * std::sqrt(t);
    const double denom = kPi * (parts.big_e - 1.0);
    // Below x = c the arcsin saturates at pi/2, contributing pi (c - 1).
    double acc = 0.0;
    double lo = 1.0;
    if (c > 1.0) {
        acc += kPi * (c - 1.0);
        lo = c;
    }
    acc += integrate([c](double x) { return 2.0 * std::asin(std::min(1.0, c / x)); }, lo,
                     parts.big_e, 1e-11);
    return acc / denom;
}

DistributionFunction euler_cauchy_phi(double alpha) {
    const EulerCauchyPhiParts parts = phi_parts(alpha);

    // Cross-check the closed form against a direct grid count before
    // trusting it; on disagreement use the quadrature route.
    const EulerCauchyCase ec = EulerCauchyCase::make(alpha);
    const SymbolFunction sym = symbol_fd(ec.operator_spec(), GridMap::identity(ec.a, ec.b), 1);
    const DistributionFunction grid = distribution_from_grid(sym, 2000);
    bool closed_form_ok = true;
    constexpr int kProbes = 64;
    for (int i = 1; i < kProbes && closed_form_ok; ++i) {
        const double t = parts.t_sup * i / kProbes;
        if (std::fabs(phi_euler_cauchy_analytic(alpha, t) - grid.phi(t)) > 5e-3)
            closed_form_ok = false;
    }

    DistributionFunction dist;
    dist.t_lo = 0.0;
    dist.t_hi = parts.t_sup;
    dist.kind = DistributionFunction::Kind::Analytic;
    dist.used_fallback = !closed_form_ok;
    if (closed_form_ok)
        dist.phi = [alpha](double t) { return phi_euler_cauchy_analytic(alpha, t); };
    else
        dist.phi = [alpha](double t) { return phi_euler_cauchy_quadrature(alpha, t); };
    return dist;
}

double invert_phi(const DistributionFunction& dist, double x) {
    return invert_phi(dist, x, dist.t_lo, dist.t_hi);
}

double invert_phi(const DistributionFunction& dist, double x, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("invert_phi: empty bracket");
    if (dist.phi(lo) > x || dist.phi(hi) < x)
        throw std::runtime_error("invert_phi: bracket does not enclose the target");
    const double tol = 1e-12 * (dist.t_hi - dist.t_lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (dist.phi(mid) > x)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double invert_phi_sqrt(const DistributionFunction& dist, double x) {
    if (dist.phi(dist.t_lo) > x || dist.phi(dist.t_hi) < x)
        throw std::runtime_error("invert_phi_sqrt: bracket does not enclose the target");
    double lo = std::sqrt(std::max(dist.t_lo, 0.0));
    double hi = std::sqrt(dist.t_hi);
    while (hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (dist.phi(mid * mid) > x)
            hi = mid;
        else
            lo = mid;
    }
    const double u = 0.5 * (lo + hi);
    return u * u;
}

RearrangedSymbol analytic_rearrangement(const DistributionFunction& dist, int points) {
    if (points < 1) throw std::invalid_argument("analytic_rearrangement: points must be >= 1");
    std::vector<double> values;
    values.reserve(static_cast<size_t>(points) + 1);
    for (int j = 0; j <= points; ++j)
        values.push_back(invert_phi(dist, static_cast<double>(j) / points));
    return RearrangedSymbol(std::move(values));
}

}  // namespace slspec
