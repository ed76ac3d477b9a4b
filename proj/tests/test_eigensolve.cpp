#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "slspec/eigensolve.hpp"

using namespace slspec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("tridiagonal 3x3 closed form") {
    const std::vector<double> d = {2.0, 2.0, 2.0};
    const std::vector<double> e = {-1.0, -1.0};
    const EigenResult eig = eig_sym_tridiag(d, e);
    const double r2 = std::sqrt(2.0);
    CHECK(eig.values[0] == doctest::Approx(2.0 - r2).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(eig.values[2] == doctest::Approx(2.0 + r2).epsilon(1e-14));
}

TEST_CASE("discrete laplacian closed-form eigenvalues") {
    for (int n : {99, 1000}) {
        const double h = 1.0 / (n + 1);
        const std::vector<double> d(static_cast<size_t>(n), 2.0 / (h * h));
        const std::vector<double> e(static_cast<size_t>(n - 1), -1.0 / (h * h));
        const EigenResult eig = eig_sym_tridiag(d, e);
        double worst = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double s = std::sin(0.5 * k * kPi * h);
            const double expected = 4.0 / (h * h) * s * s;
            worst = std::max(worst,
                             std::fabs(eig.values[static_cast<size_t>(k - 1)] / expected - 1.0));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("diagonal input returns the sorted diagonal") {
    const std::vector<double> d = {3.0, 1.0, 2.0};
    const std::vector<double> e = {0.0, 0.0};
    const EigenResult eig = eig_sym_tridiag(d, e);
    CHECK(eig.values[0] == doctest::Approx(1.0));
    CHECK(eig.values[1] == doctest::Approx(2.0));
    CHECK(eig.values[2] == doctest::Approx(3.0));
}

TEST_CASE("indefinite tridiagonal falls back to the QL path") {
    const std::vector<double> d = {-2.0, 0.5, 3.0};
    const std::vector<double> e = {0.3, -0.2};
    const EigenResult eig = eig_sym_tridiag(d, e);
    CHECK(eig.method == "sym_tridiag_ql");
    CHECK(eig.values[0] < eig.values[1]);
    CHECK(eig.values[1] < eig.values[2]);
    double trace = 0.0;
    for (double v : eig.values) trace += v;
    CHECK(trace == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("rotation matrix is flagged as non-real") {
    BandedMatrix rot(2, 1);
    rot.set(0, 1, 1.0);
    rot.set(1, 0, -1.0);
    const EigenResult eig = eig_dense_general(rot);
    CHECK(eig.imag_flagged);
    CHECK(eig.max_imag == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.values[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dense general agrees with the symmetric solvers") {
    const int n = 40;
    BandedMatrix m(n, 2);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, 2.0 + 0.01 * i);
        if (i + 1 < n) {
            m.set(i, i + 1, -1.0 + 0.002 * i);
            m.set(i + 1, i, -1.0 + 0.002 * i);
        }
        if (i + 2 < n) {
            m.set(i, i + 2, 0.1);
            m.set(i + 2, i, 0.1);
        }
    }
    const EigenResult sym = eig_dense_sym(m);
    const EigenResult gen = eig_dense_general(m);
    CHECK_FALSE(gen.imag_flagged);
    for (int i = 0; i < n; ++i)
        CHECK(gen.values[static_cast<size_t>(i)] ==
              doctest::Approx(sym.values[static_cast<size_t>(i)]).epsilon(1e-9));

    BandedMatrix tri(n, 1);
    for (int i = 0; i < n; ++i) {
        tri.set(i, i, 2.0 + 0.05 * i);
        if (i + 1 < n) {
            tri.set(i, i + 1, -0.7);
            tri.set(i + 1, i, -0.7);
        }
    }
    const EigenResult fast = eig_sym_tridiag(tri.diagonal(), tri.superdiagonal());
    const EigenResult slow = eig_dense_general(tri);
    for (int i = 0; i < n; ++i)
        CHECK(slow.values[static_cast<size_t>(i)] ==
              doctest::Approx(fast.values[static_cast<size_t>(i)]).epsilon(1e-9));
}

TEST_CASE("generalized pencil basics") {
    BandedMatrix k(2, 0), m(2, 0);
    k.set(0, 0, 1.0);
    k.set(1, 1, 4.0);
    m.set(0, 0, 1.0);
    m.set(1, 1, 2.0);
    const EigenResult eig = eig_gen_sym(k, m);
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(2.0).epsilon(1e-14));

    BandedMatrix same(3, 1);
    for (int i = 0; i < 3; ++i) same.set(i, i, 2.0);
    same.set(0, 1, -0.5);
    same.set(1, 0, -0.5);
    const EigenResult ones = eig_gen_sym(same, same);
    for (double v : ones.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("non-positive-definite mass is rejected") {
    BandedMatrix k(2, 0), m(2, 0);
    k.set(0, 0, 1.0);
    k.set(1, 1, 1.0);
    m.set(0, 0, 1.0);
    m.set(1, 1, -1.0);
    CHECK_THROWS_AS(eig_gen_sym(k, m), std::runtime_error);
}

TEST_CASE("dense ceiling") {
    CHECK_THROWS_AS(eig_dense_general(std::vector<double>{}, 5001), std::invalid_argument);
}

TEST_CASE("auto dispatch picks the symmetric paths") {
    BandedMatrix tri(10, 1);
    for (int i = 0; i < 10; ++i) {
        tri.set(i, i, 2.0);
        if (i + 1 < 10) {
            tri.set(i, i + 1, -1.0);
            tri.set(i + 1, i, -1.0);
        }
    }
    CHECK(eig_banded_auto(tri).method.substr(0, 11) == "sym_tridiag");

    BandedMatrix wide(10, 2);
    for (int i = 0; i < 10; ++i) wide.set(i, i, 1.0 + i);
    CHECK(eig_banded_auto(wide).method == "dense_sym");

    BandedMatrix skew(10, 1);
    for (int i = 0; i < 10; ++i) {
        skew.set(i, i, 2.0);
        if (i + 1 < 10) {
            skew.set(i, i + 1, -1.2);
            skew.set(i + 1, i, -0.8);
        }
    }
    CHECK(eig_banded_auto(skew).method == "dense_general");
}
