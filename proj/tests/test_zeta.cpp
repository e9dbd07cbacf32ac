#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "zetalab/zeta.hpp"

using namespace zetalab;

namespace {

// independent compensated-summation oracle in long double
cplx zeta_sum_oracle(long long N, double t) {
    long double re = 0.0L, im = 0.0L;
    for (long long n = N + 1; n <= 2 * N; ++n) {
        long double ph = (long double)t * std::log((long double)n);
        re += std::cos((double)ph);
        im += std::sin((double)ph);
    }
    return {(double)re, (double)im};
}

} // namespace

TEST_CASE("zeta_sum trivial values") {
    ZetaSumSpec spec;
    spec.n_start = 7;
    spec.t = 0.0;
    CHECK(zeta_sum(spec) == cplx{7.0, 0.0}); // every term is exactly 1

    spec.n_start = 1;
    spec.t = 2.37;
    cplx v = zeta_sum(spec);
    double ph = 2.37 * std::log(2.0);
    CHECK(std::abs(v - cplx{std::cos(ph), std::sin(ph)}) < 1e-15);
}

TEST_CASE("zeta_sum against the direct summation oracle") {
    ZetaSumSpec spec;
    spec.n_start = 10;
    spec.t = 5.0;
    CHECK(std::abs(zeta_sum(spec) - zeta_sum_oracle(10, 5.0)) < 1e-12);
}

TEST_CASE("zeta_sum weight table validation") {
    ZetaSumSpec spec;
    spec.n_start = 4;
    spec.weights = {1.0, 2.0};
    CHECK_THROWS_AS(zeta_sum(spec), domain_error);
    spec.weights = {1.0, 0.0, 0.0, 0.0};
    spec.t = 0.0;
    CHECK(zeta_sum(spec) == cplx{1.0, 0.0});
}

TEST_CASE("zeta(1/2) against the doubled-order Euler-Maclaurin oracle") {
    cplx v = zeta_euler_maclaurin({0.5, 0.0});
    EulerMaclaurinOptions doubled;
    doubled.length_factor = 1.0;
    doubled.bernoulli_terms = 14;
    cplx oracle = zeta_euler_maclaurin({0.5, 0.0}, doubled);
    CHECK(std::abs(v - oracle) < 1e-12);
    CHECK(std::abs(v.real() - (-1.4603545088095868)) < 1e-9);
    CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("zeta(2) sanity") {
    CHECK(zeta_euler_maclaurin({2.0, 0.0}).real() == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
}

TEST_CASE("zeta pole and preconditions") {
    CHECK_THROWS_AS(zeta_euler_maclaurin({1.0, 0.0}), pole_error);
    CHECK_THROWS_AS(zeta_critical(5.0, ZetaMethod::riemann_siegel), domain_error);
    CHECK_NOTHROW(zeta_critical(0.0)); // t = 0 is fine on the critical line
}

TEST_CASE("Schwarz reflection at t = 37.5") {
    cplx up = zeta_critical(37.5);
    cplx dn = zeta_critical(-37.5);
    CHECK(std::abs(up - std::conj(dn)) < 1e-13);
}

TEST_CASE("reflection property for random t") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> td(0.0, 500.0);
    for (int i = 0; i < 50; ++i) {
        double t = td(rng);
        CHECK(std::abs(zeta_critical(t) - std::conj(zeta_critical(-t))) < 1e-12);
    }
}

TEST_CASE("euler_maclaurin and riemann_siegel agree at t = 1000") {
    cplx em = zeta_critical(1000.0, ZetaMethod::euler_maclaurin);
    cplx rs = zeta_critical(1000.0, ZetaMethod::riemann_siegel);
    CHECK(std::abs(em - rs) < 1e-8);
}

TEST_CASE("cross-method agreement samples both remainder regimes") {
    for (double t : {10.0, 55.5, 203.7, 8000.0}) {
        cplx em = zeta_critical(t, ZetaMethod::euler_maclaurin);
        cplx rs = zeta_critical(t, ZetaMethod::riemann_siegel);
        CHECK(std::abs(em - rs) < 1e-9);
    }
    // asymptotic-series regime
    cplx em = zeta_critical(60000.0, ZetaMethod::euler_maclaurin);
    cplx rs = zeta_critical(60000.0, ZetaMethod::riemann_siegel);
    CHECK(std::abs(em - rs) < 1e-8);
}

TEST_CASE("euler_maclaurin reports non-convergence for a too-short sum") {
    EulerMaclaurinOptions bad;
    bad.length_factor = 0.02;
    CHECK_THROWS_AS(zeta_euler_maclaurin({0.5, 1000.0}, bad), convergence_error);
}

TEST_CASE("validated range predicate") {
    CHECK(zeta_range_validated(1e5));
    CHECK(!zeta_range_validated(2e6));
}
