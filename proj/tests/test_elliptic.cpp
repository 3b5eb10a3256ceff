#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <dynloc/elliptic.hpp>
#include <dynloc/rng.hpp>

#include "oracles.hpp"

using dynloc::complete_K;
using dynloc::EllipticParameter;
using dynloc::pi;
using dynloc::sn_cn_dn;

TEST_CASE("elliptic parameter domain") {
    CHECK_THROWS_AS(EllipticParameter(-0.001), std::domain_error);
    CHECK_THROWS_AS(EllipticParameter(1.001), std::domain_error);
    CHECK_THROWS_AS(EllipticParameter(std::nan("")), std::domain_error);
    CHECK(EllipticParameter(0.0).value() == 0.0);
    CHECK(EllipticParameter(1.0).value() == 1.0);
}

TEST_CASE("K(0) = pi/2, K(1) diverges") {
    CHECK(complete_K(EllipticParameter(0.0)) == Catch::Approx(pi / 2).epsilon(1e-15));
    CHECK_THROWS_AS(complete_K(EllipticParameter(1.0)), std::domain_error);
}

TEST_CASE("K(m) against the defining integral") {
    // independent quadrature of int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta)
    for (const double m : {0.1, 0.5, 0.9, 0.99}) {
        const double ref = oracles::integrate_simpson(
            [m](double th) {
                const double s = std::sin(th);
                return 1.0 / std::sqrt(1.0 - m * s * s);
            },
            0.0, pi / 2, 1e-15);
        CHECK(complete_K(EllipticParameter(m)) == Catch::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("K monotonicity") {
    double prev = 0.0;
    for (double m = 0.0; m < 0.999; m += 0.013) {
        const double K = complete_K(EllipticParameter(m));
        CHECK(K > prev);
        prev = K;
    }
}

TEST_CASE("sn cn dn degenerate limits") {
    for (const double u : {-3.7, -1.0, 0.0, 0.3, 2.0, 11.4}) {
        const auto trig = sn_cn_dn(u, EllipticParameter(0.0));
        CHECK(trig.sn == Catch::Approx(std::sin(u)).margin(1e-15));
        CHECK(trig.cn == Catch::Approx(std::cos(u)).margin(1e-15));
        CHECK(trig.dn == 1.0);

        const auto hyp = sn_cn_dn(u, EllipticParameter(1.0));
        CHECK(hyp.sn == Catch::Approx(std::tanh(u)).margin(1e-15));
        CHECK(hyp.cn == Catch::Approx(1.0 / std::cosh(u)).margin(1e-15));
        CHECK(hyp.dn == Catch::Approx(1.0 / std::cosh(u)).margin(1e-15));
    }
}

TEST_CASE("sn cn dn rejects non-finite arguments") {
    CHECK_THROWS_AS(sn_cn_dn(std::nan(""), EllipticParameter(0.5)), std::domain_error);
    CHECK_THROWS_AS(sn_cn_dn(INFINITY, EllipticParameter(0.5)), std::domain_error);
}

TEST_CASE("pythagorean identities on a (u, m) grid") {
    for (double m = 0.0; m < 0.995; m += 0.1) {
        const double mm = std::min(m, 0.99);
        const EllipticParameter em(mm);
        const double K = complete_K(em);
        for (int i = -40; i <= 40; ++i) {
            const double u = i * (4.0 * K / 40.0);
            const auto j = sn_cn_dn(u, em);
            CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-11);
            CHECK(std::abs(j.dn * j.dn + mm * j.sn * j.sn - 1.0) < 1e-11);
        }
    }
}

TEST_CASE("periodicity and parity") {
    for (const double m : {0.1, 0.5, 0.9, 0.99}) {
        const EllipticParameter em(m);
        const double K = complete_K(em);
        for (const double u : {0.17, 1.3, -2.9, 5.11}) {
            const auto a = sn_cn_dn(u, em);
            const auto b = sn_cn_dn(u + 4.0 * K, em);
            const auto c = sn_cn_dn(u + 2.0 * K, em);
            CHECK(std::abs(a.sn - b.sn) < 1e-10);   // sn period 4K
            CHECK(std::abs(a.dn - c.dn) < 1e-10);   // dn period 2K
            const auto neg = sn_cn_dn(-u, em);
            CHECK(std::abs(neg.sn + a.sn) < 1e-12);  // sn odd
            CHECK(std::abs(neg.dn - a.dn) < 1e-12);  // dn even
        }
    }
}

TEST_CASE("sn cn dn against the ODE oracle at random points") {
    // deterministic "random" sample via the counter rng
    const std::uint64_t seed = 0xe11f00d;
    for (int i = 0; i < 50; ++i) {
        const double u = -5.0 + 10.0 * dynloc::uniform01(seed, 2 * i);
        const double m = 0.01 + 0.98 * dynloc::uniform01(seed, 2 * i + 1);
        const auto lib = sn_cn_dn(u, EllipticParameter(m));
        const auto ode = oracles::jacobi_by_ode(u, m);
        CHECK(std::abs(lib.sn - ode[0]) < 1e-10);
        CHECK(std::abs(lib.cn - ode[1]) < 1e-10);
        CHECK(std::abs(lib.dn - ode[2]) < 1e-10);
    }
}

TEST_CASE("half-quarter-period identities at m = 0.7") {
    // sn(K) = 1, cn(K) = 0, dn(K) = sqrt(1-m)
    const EllipticParameter em(0.7);
    const double K = complete_K(em);
    const auto at_K = sn_cn_dn(K, em);
    CHECK(at_K.sn == Catch::Approx(1.0).margin(1e-12));
    CHECK(at_K.cn == Catch::Approx(0.0).margin(1e-12));
    CHECK(at_K.dn == Catch::Approx(std::sqrt(0.3)).margin(1e-12));

    const auto mid = sn_cn_dn(0.5 * K, em);
    const auto ode = oracles::jacobi_by_ode(0.5 * K, 0.7, 20000);
    CHECK(mid.sn == Catch::Approx(ode[0]).margin(1e-11));
    CHECK(mid.cn == Catch::Approx(ode[1]).margin(1e-11));
    CHECK(mid.dn == Catch::Approx(ode[2]).margin(1e-11));
}
