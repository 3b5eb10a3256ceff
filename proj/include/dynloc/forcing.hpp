#ifndef DYNLOC_FORCING_HPP
#define DYNLOC_FORCING_HPP

// The elliptic AC drive F(tau; m) = N(m) sn(Omega tau) dn(Omega tau) with
// Omega = 2K(m)/pi, its normalization N(m), its half-period impulse, and
// the physical -> scaled parameter map. In scaled time tau the force
// period is always 2*pi; the physical period T enters only through the
// dimensionless parameters kappa and hbar_eff.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dynloc/elliptic.hpp"
#include "dynloc/quadrature.hpp"

namespace dynloc {

// Fitted sigmoid constants for N(m); keep the waveform amplitude at
// unity to within ~1.5% for every m in [0, 1].
namespace waveform_fit {
inline constexpr double a = 0.43932;
inline constexpr double b = 0.69796;
inline constexpr double c = 0.3727;
inline constexpr double d = 0.26883;
}  // namespace waveform_fit

inline double normalization(EllipticParameter m) {
    using namespace waveform_fit;
    return 1.0 / (a + b / (1.0 + std::exp((m.value() - c) / d)));
}

// Dimensionless system parameters; the single source of truth for a run.
// Omega is derived from m at construction, never set independently.
struct ScaledParams {
    double kappa;            // potential depth
    double lambda;           // modulation depth
    EllipticParameter m;     // waveform shape
    double hbar_eff;         // effective Planck constant
    double Omega;            // 2 K(m) / pi  (infinite at m = 1)

    ScaledParams(double kappa_, double lambda_, EllipticParameter m_, double hbar_eff_)
        : kappa(kappa_), lambda(lambda_), m(m_), hbar_eff(hbar_eff_),
          Omega(m_.value() == 1.0 ? std::numeric_limits<double>::infinity()
                                  : 2.0 * complete_K(m_) / pi) {
        if (!(kappa > 0.0))
            throw std::domain_error("ScaledParams: kappa must be > 0");
        if (!(lambda >= 0.0))
            throw std::domain_error("ScaledParams: lambda must be >= 0");
        if (!(hbar_eff > 0.0))
            throw std::domain_error("ScaledParams: hbar_eff must be > 0");
    }
};

// Lab-frame parameters of the shaken lattice.
struct PhysicalParams {
    double M;       // atomic mass
    double k;       // lattice wave number
    double V0;      // potential height
    double T;       // modulation period
    double hbar;
    double lambda;
    EllipticParameter m;

    PhysicalParams(double M_, double k_, double V0_, double T_, double hbar_,
                   double lambda_, EllipticParameter m_)
        : M(M_), k(k_), V0(V0_), T(T_), hbar(hbar_), lambda(lambda_), m(m_) {
        if (!(M > 0.0 && k > 0.0 && V0 > 0.0 && T > 0.0 && hbar > 0.0))
            throw std::domain_error("PhysicalParams: M, k, V0, T, hbar must be > 0");
        if (!(lambda >= 0.0))
            throw std::domain_error("PhysicalParams: lambda must be >= 0");
    }
};

// kappa = V0 k^2 T^2 / (pi^2 M),  hbar_eff = 2 hbar k^2 T / (pi M);
// lambda and m are dimensionless pass-throughs.
inline ScaledParams scale_physical(const PhysicalParams& p) {
    const double kappa = p.V0 * p.k * p.k * p.T * p.T / (pi * pi * p.M);
    const double hbar_eff = 2.0 * p.hbar * p.k * p.k * p.T / (pi * p.M);
    return {kappa, p.lambda, p.m, hbar_eff};
}

// The normalized drive with period 2*pi in scaled time. Immutable;
// caches N(m) and Omega for repeated evaluation.
class Waveform {
public:
    explicit Waveform(EllipticParameter m)
        : m_(m), norm_(normalization(m)),
          omega_(m.value() == 1.0 ? std::numeric_limits<double>::infinity()
                                  : 2.0 * complete_K(m) / pi) {}

    double operator()(double tau) const {
        if (m_.value() == 1.0)
            return 0.0;  // sn -> 1, dn -> 0: the drive vanishes in this limit
        const JacobiTriple j = sn_cn_dn(omega_ * tau, m_);
        return norm_ * j.sn * j.dn;
    }

    EllipticParameter shape() const { return m_; }
    double norm_factor() const { return norm_; }
    double omega() const { return omega_; }
    static constexpr double period = 2.0 * pi;

private:
    EllipticParameter m_;
    double norm_;
    double omega_;
};

inline double force(double tau, EllipticParameter m) {
    return Waveform(m)(tau);
}

// I(m, T) = int_0^{T/2} F dt = T N(m) / (2 K(m)); -> 0 as m -> 1.
inline double impulse_closed_form(EllipticParameter m, double T) {
    if (!(T > 0.0))
        throw std::domain_error("impulse_closed_form: T must be > 0");
    if (m.value() == 1.0)
        return 0.0;
    return T * normalization(m) / (2.0 * complete_K(m));
}

// Same integral by adaptive quadrature over the scaled half period.
inline double impulse_quadrature(EllipticParameter m, double T) {
    if (!(T > 0.0))
        throw std::domain_error("impulse_quadrature: T must be > 0");
    const Waveform f(m);
    const double scaled = integrate([&](double tau) { return f(tau); }, 0.0, pi, 1e-12);
    return scaled * T / (2.0 * pi);
}

}  // namespace dynloc

#endif
