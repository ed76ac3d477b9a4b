#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "slspec/fd.hpp"
#include "slspec/operators.hpp"
#include "slspec/symbol.hpp"

using namespace slspec;

namespace {

constexpr double kPi = std::numbers::pi;
const double kE = std::exp(1.0);

SymbolFunction fd_unit_symbol(int eta = 1) {
    const OperatorSpec unit = OperatorSpec::diffusion(0.0, 1.0, [](double) { return 1.0; });
    return symbol_fd(unit, GridMap::identity(0.0, 1.0), eta);
}

SymbolFunction euler_cauchy_symbol(double alpha) {
    const EulerCauchyCase ec = EulerCauchyCase::make(alpha);
    return symbol_fd(ec.operator_spec(), GridMap::identity(ec.a, ec.b), 1);
}

SymbolFunction constant_symbol(double c) {
    SymbolFunction sym;
    sym.x_lo = 0.0;
    sym.x_hi = 1.0;
    sym.th_lo = 0.0;
    sym.th_hi = kPi;
    sym.eval = [c](double, double) { return c; };
    sym.inf_range = c;
    sym.sup_range = c;
    return sym;
}

}  // namespace

TEST_CASE("fd symbol ranges") {
    const SymbolFunction sym = fd_unit_symbol();
    CHECK(sym.eval(0.3, kPi / 2) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(sym.inf_range == doctest::Approx(0.0));
    CHECK(sym.sup_range == doctest::Approx(4.0).epsilon(1e-12));

    const SymbolFunction ec = euler_cauchy_symbol(1.0);
    CHECK(ec.sup_range ==
          doctest::Approx(4.0 * kE * kE / ((kE - 1.0) * (kE - 1.0))).epsilon(1e-9));
    CHECK(ec.eval(1.5, kPi / 3) ==
          doctest::Approx(1.5 * 1.5 / ((kE - 1.0) * (kE - 1.0))).epsilon(1e-12));
}

TEST_CASE("liouville geometry flattens the spatial factor") {
    const EulerCauchyCase ec = EulerCauchyCase::make(1.0);
    const SymbolFunction sym = symbol_fd(ec.operator_spec(), liouville_map(1.0), 1);
    for (double x : {1.05, 1.7, 2.3, kE - 1e-3})
        for (double th : {0.3, 1.1, 2.9})
            CHECK(sym.eval(x, th) == doctest::Approx(fd_symbol_f(1, th)).epsilon(1e-11));
    CHECK(sym.sup_range == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("iga symbol ranges") {
    const OperatorSpec unit = OperatorSpec::diffusion(0.0, 1.0, [](double) { return 1.0; });
    const GridMap id = GridMap::identity(0.0, 1.0);
    CHECK(symbol_iga(unit, id, 1).sup_range == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(symbol_iga(unit, id, 2).sup_range == doctest::Approx(10.0).epsilon(1e-12));
    const EulerCauchyCase ec = EulerCauchyCase::make(1.0);
    const SymbolFunction sym = symbol_iga(ec.operator_spec(), GridMap::identity(ec.a, ec.b), 1);
    CHECK(sym.sup_range ==
          doctest::Approx(12.0 * kE * kE / ((kE - 1.0) * (kE - 1.0))).epsilon(1e-9));
}

TEST_CASE("rearrangement of the x-independent symbol") {
    // closed form: omega*(x) = 2 - 2 cos(pi x)
    const RearrangedSymbol rearr = rearrangement_by_sampling(fd_unit_symbol(), 500);
    CHECK(rearr(0.5) == doctest::Approx(2.0).epsilon(5e-3));
    for (double x : {0.1, 0.25, 0.75, 0.9})
        CHECK(rearr(x) == doctest::Approx(2.0 - 2.0 * std::cos(kPi * x)).epsilon(2e-2));
    // nondecreasing breakpoints
    for (size_t j = 1; j < rearr.breakpoint_count(); ++j) CHECK(rearr.value(j) >= rearr.value(j - 1));
}

TEST_CASE("rearrangement of a constant symbol") {
    const RearrangedSymbol rearr = rearrangement_by_sampling(constant_symbol(3.7), 10);
    for (double x : {0.0, 0.2, 0.5, 1.0}) CHECK(rearr(x) == doctest::Approx(3.7));
    const auto samples = sample_rearranged(rearr, 7);
    for (double s : samples) CHECK(s == doctest::Approx(3.7));
}

TEST_CASE("rearrangement interpolates its own breakpoints") {
    const RearrangedSymbol rearr = rearrangement_by_sampling(fd_unit_symbol(), 40);
    for (size_t j = 0; j < rearr.breakpoint_count(); j += 97)
        CHECK(rearr(rearr.breakpoint(j)) == doctest::Approx(rearr.value(j)).epsilon(1e-12));
}

TEST_CASE("sampling the exact rearrangement") {
    // omega = 2 - 2 cos(theta): tabulate the closed form densely
    std::vector<double> values;
    const int grid = 4096;
    for (int j = 0; j <= grid; ++j) values.push_back(2.0 - 2.0 * std::cos(kPi * j / grid));
    const RearrangedSymbol exact(std::move(values));
    const auto s = sample_rearranged(exact, 3);
    CHECK(s[0] == doctest::Approx(2.0 - 2.0 * std::cos(kPi / 4)).epsilon(1e-6));
    CHECK(s[1] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(s[2] == doctest::Approx(2.0 - 2.0 * std::cos(3.0 * kPi / 4)).epsilon(1e-6));

    const auto many = sample_rearranged(rearrangement_by_sampling(euler_cauchy_symbol(1.0), 60), 100);
    for (size_t i = 1; i < many.size(); ++i) CHECK(many[i] >= many[i - 1]);
}

TEST_CASE("grid-counted distribution") {
    const SymbolFunction sym = fd_unit_symbol();
    CHECK(phi_grid(sym, -0.5, 200) == doctest::Approx(0.0));
    CHECK(phi_grid(sym, 4.5, 200) == doctest::Approx(1.0));
    // closed form: phi(2) = arccos(1 - 2/2)/pi = 1/2
    CHECK(phi_grid(sym, 2.0, 400) == doctest::Approx(0.5).epsilon(2.0 / 400));
    CHECK_THROWS_AS(phi_grid(sym, 1.0, 10), std::invalid_argument);

    const DistributionFunction dist = distribution_from_grid(sym, 400);
    CHECK(dist.phi(2.0) == doctest::Approx(phi_grid(sym, 2.0, 400)).epsilon(1e-14));
}

TEST_CASE("analytic euler-cauchy distribution") {
    const double alpha = 1.0;
    const double sup = 4.0 * kE * kE / ((kE - 1.0) * (kE - 1.0));
    CHECK(phi_euler_cauchy_analytic(alpha, 0.0) == doctest::Approx(0.0));
    CHECK(phi_euler_cauchy_analytic(alpha, sup) == doctest::Approx(1.0));
    CHECK_THROWS_AS(phi_euler_cauchy_analytic(alpha, sup * 1.01), std::domain_error);

    // branch-1 midpoint against the grid count
    const double t_split = 4.0 / ((kE - 1.0) * (kE - 1.0));
    const SymbolFunction sym = euler_cauchy_symbol(alpha);
    CHECK(phi_euler_cauchy_analytic(alpha, 0.5 * t_split) ==
          doctest::Approx(phi_grid(sym, 0.5 * t_split, 2000)).epsilon(5e-3));

    // the quadrature fallback agrees with the closed form to high accuracy
    for (double t : {0.2 * sup, 0.5 * sup, 0.9 * sup})
        CHECK(phi_euler_cauchy_quadrature(alpha, t) ==
              doctest::Approx(phi_euler_cauchy_analytic(alpha, t)).epsilon(1e-8));

    const DistributionFunction dist = euler_cauchy_phi(alpha);
    CHECK_FALSE(dist.used_fallback);
    CHECK(dist.t_hi == doctest::Approx(sup).epsilon(1e-12));
}

TEST_CASE("inverse distribution by bisection") {
    DistributionFunction linear;
    linear.phi = [](double t) { return std::clamp(t, 0.0, 1.0); };
    linear.t_lo = 0.0;
    linear.t_hi = 1.0;
    CHECK(invert_phi(linear, 0.3) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK_THROWS_AS(invert_phi(linear, 0.3, 0.5, 0.9), std::runtime_error);

    DistributionFunction arc;
    arc.phi = [](double t) { return std::acos(1.0 - std::clamp(t, 0.0, 4.0) / 2.0) / kPi; };
    arc.t_lo = 0.0;
    arc.t_hi = 4.0;
    CHECK(invert_phi(arc, 0.5) == doctest::Approx(2.0).epsilon(1e-9));

    const DistributionFunction dist = euler_cauchy_phi(1.0);
    const double x = 1e-3;
    CHECK(invert_phi(dist, x) / (kPi * kPi * x * x) == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("sqrt-space inversion matches and refines plain bisection") {
    const DistributionFunction dist = euler_cauchy_phi(1.0);
    CHECK(invert_phi_sqrt(dist, 0.5) == doctest::Approx(invert_phi(dist, 0.5)).epsilon(1e-9));

    // small-x curvature oracle from the Taylor expansion of the arcsin
    // integrand: phi(t) = sqrt(t)/pi + beta t^(3/2) + O(t^(5/2)) gives
    // omega*(x) = pi^2 x^2 (1 - gamma x^2 + O(x^4)), gamma = 2 pi^3 beta.
    const double s = 1.0, big_e = kE;
    const double beta = (big_e - 1.0) * (big_e - 1.0) * (1.0 - 1.0 / (big_e * big_e)) /
                        (48.0 * kPi * s * s * s);
    const double gamma = 2.0 * kPi * kPi * kPi * beta;
    const double x = 0.01;
    const double predicted = kPi * kPi * x * x * (1.0 - gamma * x * x);
    CHECK(invert_phi_sqrt(dist, x) == doctest::Approx(predicted).epsilon(1e-6));
}

TEST_CASE("sampled rearrangements tighten as r grows") {
    const SymbolFunction sym = euler_cauchy_symbol(1.0);
    auto sup_distance = [&sym](int r_coarse, int r_fine) {
        const RearrangedSymbol coarse = rearrangement_by_sampling(sym, r_coarse);
        const RearrangedSymbol fine = rearrangement_by_sampling(sym, r_fine);
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double x = static_cast<double>(i) / 1000;
            worst = std::max(worst, std::fabs(coarse(x) - fine(x)));
        }
        return worst;
    };
    const double d1 = sup_distance(100, 400);
    const double d2 = sup_distance(200, 800);
    const double d3 = sup_distance(400, 1600);
    CHECK(d1 > d2);
    CHECK(d2 > d3);
}

TEST_CASE("grid inversion and sampling agree") {
    const SymbolFunction sym = euler_cauchy_symbol(1.0);
    const DistributionFunction grid_dist = distribution_from_grid(sym, 500);
    const RearrangedSymbol sampled = rearrangement_by_sampling(sym, 500);
    const double tol = 4.0 * sym.sup_range / 500;
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9})
        CHECK(std::fabs(invert_phi(grid_dist, x) - sampled(x)) < tol);
}

TEST_CASE("rearrangement converges to the unperturbed symbol as alpha vanishes") {
    const DistributionFunction dist = euler_cauchy_phi(1e-4);
    for (double x : {0.1, 0.3, 0.5, 0.7}) {
        const double limit = 4.0 * std::sin(kPi * x / 2.0) * std::sin(kPi * x / 2.0);
        CHECK(std::fabs(invert_phi(dist, x) - limit) < 1e-3);
    }
    // near x = 1 the gap closes only like sqrt(alpha): the top of the range
    // is 4 alpha e^(2 sqrt(alpha)) / (e^sqrt(alpha)-1)^2 = 4(1 + sqrt(alpha) + ...)
    {
        const double x = 0.9;
        const double limit = 4.0 * std::sin(kPi * x / 2.0) * std::sin(kPi * x / 2.0);
        CHECK(std::fabs(invert_phi(dist, x) - limit) < 5e-3);
        const DistributionFunction coarse = euler_cauchy_phi(1e-2);
        CHECK(std::fabs(invert_phi(dist, x) - limit) <
              std::fabs(invert_phi(coarse, x) - limit));
    }
}
