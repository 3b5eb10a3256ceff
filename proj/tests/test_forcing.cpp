#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <dynloc/forcing.hpp>

#include "oracles.hpp"

using namespace dynloc;

namespace {
// N(m) recomputed from the published constants, term by term.
double n_reference(double m) {
    const double sig = 1.0 / (1.0 + std::exp((m - 0.3727) / 0.26883));
    return 1.0 / (0.43932 + 0.69796 * sig);
}
}  // namespace

TEST_CASE("normalization endpoint values") {
    CHECK(normalization(EllipticParameter(0.0)) ==
          Catch::Approx(n_reference(0.0)).epsilon(1e-15));
    CHECK(normalization(EllipticParameter(1.0)) ==
          Catch::Approx(n_reference(1.0)).epsilon(1e-15));
    // sigmoid midpoint: exp(0) = 1
    CHECK(normalization(EllipticParameter(0.3727)) ==
          Catch::Approx(1.0 / (0.43932 + 0.69796 / 2)).epsilon(1e-15));
    // high-precision values of the fit
    CHECK(normalization(EllipticParameter(0.0)) ==
          Catch::Approx(1.0023079735168342).epsilon(1e-13));
    CHECK(normalization(EllipticParameter(1.0)) ==
          Catch::Approx(1.9959555460845195).epsilon(1e-13));
}

TEST_CASE("force vanishes at tau = 0 and at m = 1") {
    for (const double m : {0.0, 0.3, 0.7, 0.9999})
        CHECK(force(0.0, EllipticParameter(m)) == 0.0);
    for (const double tau : {0.3, 1.0, 4.0})
        CHECK(force(tau, EllipticParameter(1.0)) == 0.0);
}

TEST_CASE("m = 0 reduces to the sinusoid") {
    const double n0 = normalization(EllipticParameter(0.0));
    for (int i = 0; i <= 200; ++i) {
        const double tau = Waveform::period * i / 200;
        CHECK(std::abs(force(tau, EllipticParameter(0.0)) - n0 * std::sin(tau)) < 1e-12);
    }
}

TEST_CASE("quarter period value via sn(K) dn(K) identities") {
    // F(pi/2) = N sn(K) dn(K) = N sqrt(1-m)
    const EllipticParameter m(0.7);
    CHECK(force(pi / 2, m) ==
          Catch::Approx(normalization(m) * std::sqrt(0.3)).margin(1e-12));
}

TEST_CASE("antiperiodicity F(tau + pi) = -F(tau)") {
    for (const double m : {0.0, 0.2, 0.5, 0.72, 0.9, 0.99}) {
        const Waveform f{EllipticParameter(m)};
        for (int i = 0; i < 64; ++i) {
            const double tau = -2.0 + 7.1 * i / 64.0;
            CHECK(std::abs(f(tau + pi) + f(tau)) < 1e-10);
        }
    }
}

TEST_CASE("waveform period is 2 pi") {
    for (const double m : {0.3, 0.9}) {
        const Waveform f{EllipticParameter(m)};
        for (const double tau : {0.11, 1.9, 3.0})
            CHECK(f(tau + Waveform::period) == Catch::Approx(f(tau)).margin(1e-10));
    }
}

TEST_CASE("impulse closed form vs quadrature") {
    for (double m = 0.0; m < 0.995; m += 0.1) {
        const double mm = std::min(m, 0.99);
        const double ic = impulse_closed_form(EllipticParameter(mm), Waveform::period);
        const double iq = impulse_quadrature(EllipticParameter(mm), Waveform::period);
        CHECK(std::abs(ic - iq) / ic < 1e-10);
    }
}

TEST_CASE("impulse values and limits") {
    const double n0 = normalization(EllipticParameter(0.0));
    // I(0, T) = T N(0) / pi; at T = 2 pi this is 2 N(0)
    CHECK(impulse_closed_form(EllipticParameter(0.0), 2 * pi) ==
          Catch::Approx(2.0 * n0).epsilon(1e-14));
    CHECK(impulse_quadrature(EllipticParameter(0.0), 2 * pi) ==
          Catch::Approx(2.0 * n0).epsilon(1e-10));
    // linear in T
    const EllipticParameter m(0.42);
    CHECK(impulse_closed_form(m, 6.0) ==
          Catch::Approx(3.0 * impulse_closed_form(m, 2.0)).epsilon(1e-14));
    // vanishing-force limit: I(m) ~ pi N / K decays like 1/|log(1-m)|,
    // so it is small but nonzero at m = 1 - 1e-12; both routes must agree
    // there, and I = 0 exactly at m = 1.
    const EllipticParameter near_one(1.0 - 1e-12);
    const double ic1 = impulse_closed_form(near_one, 2 * pi);
    CHECK(ic1 < impulse_closed_form(EllipticParameter(0.99), 2 * pi));
    CHECK(impulse_quadrature(near_one, 2 * pi) == Catch::Approx(ic1).epsilon(1e-5));
    CHECK(impulse_closed_form(EllipticParameter(1.0), 2 * pi) == 0.0);
    CHECK_THROWS_AS(impulse_closed_form(EllipticParameter(0.5), 0.0), std::domain_error);
}

TEST_CASE("impulse quadrature against the independent Simpson oracle") {
    for (const double m : {0.25, 0.5, 0.85}) {
        const Waveform f{EllipticParameter(m)};
        const double ref =
            oracles::integrate_simpson([&](double t) { return f(t); }, 0.0, pi, 1e-14);
        CHECK(impulse_quadrature(EllipticParameter(m), 2 * pi) ==
              Catch::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("scaled parameter map") {
    // V0 k^2 T^2 = 0.36 pi^2 M  =>  kappa = 0.36
    const double M = 2.0, k = 1.3, T = 0.7;
    const double V0 = 0.36 * pi * pi * M / (k * k * T * T);
    const PhysicalParams phys(M, k, V0, T, 0.05, 1.5, EllipticParameter(0.4));
    const ScaledParams scaled = scale_physical(phys);
    CHECK(scaled.kappa == Catch::Approx(0.36).epsilon(1e-14));
    CHECK(scaled.hbar_eff == Catch::Approx(2 * 0.05 * k * k * T / (pi * M)).epsilon(1e-14));
    CHECK(scaled.lambda == 1.5);
    CHECK(scaled.m.value() == 0.4);
    CHECK(scaled.Omega ==
          Catch::Approx(2 * complete_K(EllipticParameter(0.4)) / pi).epsilon(1e-12));

    // doubling T: kappa quadruples, hbar_eff doubles, lambda and m unchanged
    PhysicalParams phys2 = phys;
    phys2.T = 2 * T;
    const ScaledParams scaled2 = scale_physical(phys2);
    CHECK(scaled2.kappa == Catch::Approx(4 * scaled.kappa).epsilon(1e-14));
    CHECK(scaled2.hbar_eff == Catch::Approx(2 * scaled.hbar_eff).epsilon(1e-14));
    CHECK(scaled2.lambda == scaled.lambda);
    CHECK(scaled2.m.value() == scaled.m.value());
}

TEST_CASE("scaled params invariants") {
    CHECK_THROWS_AS(ScaledParams(-1.0, 2.0, EllipticParameter(0.0), 0.16), std::domain_error);
    CHECK_THROWS_AS(ScaledParams(0.36, -0.1, EllipticParameter(0.0), 0.16), std::domain_error);
    CHECK_THROWS_AS(ScaledParams(0.36, 2.0, EllipticParameter(0.0), 0.0), std::domain_error);
    const ScaledParams p(0.36, 2.0, EllipticParameter(0.5), 0.16);
    CHECK(std::abs(p.Omega - 2.0 * complete_K(p.m) / pi) < 1e-12);
}

TEST_CASE("amplitude normalization within 1.5 percent") {
    // spot-check here; the dense grid lives in the acceptance suite
    for (const double m : {0.0, 0.1, 0.5, 0.72, 0.9, 0.999}) {
        const Waveform f{EllipticParameter(m)};
        double peak = 0.0;
        for (int i = 0; i < 8192; ++i)
            peak = std::max(peak, std::abs(f(Waveform::period * i / 8192)));
        CHECK(peak > 0.985);
        CHECK(peak < 1.015);
    }
}
