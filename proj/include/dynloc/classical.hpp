#ifndef DYNLOC_CLASSICAL_HPP
#define DYNLOC_CLASSICAL_HPP

// Classical dynamics of H = p^2/2 - kappa cos[x - lambda F(tau; m)]:
// trajectory and ensemble propagation with a 4th-order explicit
// symplectic integrator (Yoshida composition of position Verlet),
// momentum widths, and stroboscopic surfaces of section.
//
// The Liouville evolution of the initial distribution is solved by
// characteristics: a deterministic Monte Carlo ensemble of trajectories.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dynloc/forcing.hpp"
#include "dynloc/parallel.hpp"
#include "dynloc/rng.hpp"

namespace dynloc {

struct PhaseState {
    double x;
    double p;
};

// dx/dtau = p, dp/dtau = -kappa sin[x - lambda F(tau)]
inline std::pair<double, double> hamilton_rhs(const PhaseState& s, double tau,
                                              const ScaledParams& params,
                                              const Waveform& wf) {
    return {s.p, -params.kappa * std::sin(s.x - params.lambda * wf(tau))};
}

inline std::pair<double, double> hamilton_rhs(const PhaseState& s, double tau,
                                              const ScaledParams& params) {
    return hamilton_rhs(s, tau, params, Waveform(params.m));
}

// Pendulum energy of the unperturbed part, H0 = p^2/2 - kappa cos x.
inline double pendulum_energy(const PhaseState& s, double kappa) {
    return 0.5 * s.p * s.p - kappa * std::cos(s.x);
}

namespace detail {
// Yoshida triple-jump coefficients: S4(h) = S2(w1 h) S2(w0 h) S2(w1 h).
inline constexpr double yoshida_w1 = 1.35120719195965763404768780897;  // 1/(2 - 2^(1/3))
inline constexpr double yoshida_w0 = 1.0 - 2.0 * yoshida_w1;
}  // namespace detail

// One 4th-order step of size dtau (signed) from time tau. Each second-order
// stage is drift-kick-drift with the force evaluated at the stage midpoint.
inline PhaseState step(const PhaseState& s, double tau, double dtau,
                       const ScaledParams& params, const Waveform& wf) {
    double x = s.x;
    double p = s.p;
    double t = tau;
    for (const double gamma : {detail::yoshida_w1, detail::yoshida_w0, detail::yoshida_w1}) {
        const double half = 0.5 * gamma * dtau;
        x += p * half;
        const double drive = params.lambda * wf(t + half);
        p -= params.kappa * std::sin(x - drive) * gamma * dtau;
        x += p * half;
        t += gamma * dtau;
    }
    return {x, p};
}

inline PhaseState step(const PhaseState& s, double tau, double dtau,
                       const ScaledParams& params) {
    if (!(dtau != 0.0))
        throw std::invalid_argument("step: dtau must be nonzero");
    return step(s, tau, dtau, params, Waveform(params.m));
}

// n_steps of signed stepping; slow path (force evaluated analytically),
// used for convergence and time-reversal checks.
inline PhaseState evolve_state(PhaseState s, double tau0, double dtau, long n_steps,
                               const ScaledParams& params, const Waveform& wf) {
    for (long k = 0; k < n_steps; ++k)
        s = step(s, tau0 + static_cast<double>(k) * dtau, dtau, params, wf);
    return s;
}

// Fixed-step propagation over whole force periods with the drive values
// cached at the integrator's stage times. The force is 2*pi periodic and
// the step grid is uniform, so one period of stage values serves forever.
class PeriodStepper {
public:
    PeriodStepper(const ScaledParams& params, int steps_per_period)
        : kappa_(params.kappa), steps_(steps_per_period) {
        if (steps_per_period < 1)
            throw std::invalid_argument("PeriodStepper: steps_per_period must be >= 1");
        dtau_ = Waveform::period / static_cast<double>(steps_);
        const Waveform wf(params.m);
        drive_.resize(3 * static_cast<std::size_t>(steps_));
        kick_[0] = detail::yoshida_w1 * dtau_;
        kick_[1] = detail::yoshida_w0 * dtau_;
        kick_[2] = detail::yoshida_w1 * dtau_;
        for (int k = 0; k < steps_; ++k) {
            double t = static_cast<double>(k) * dtau_;
            for (int stage = 0; stage < 3; ++stage) {
                drive_[3 * static_cast<std::size_t>(k) + stage] =
                    params.lambda * wf(t + 0.5 * kick_[stage]);
                t += kick_[stage];
            }
        }
    }

    PhaseState advance_period(PhaseState s) const {
        const double* a = drive_.data();
        const double h0 = 0.5 * kick_[0];
        const double h1 = 0.5 * kick_[1];
        for (int k = 0; k < steps_; ++k, a += 3) {
            s.x += s.p * h0;
            s.p -= kappa_ * std::sin(s.x - a[0]) * kick_[0];
            s.x += s.p * (h0 + h1);
            s.p -= kappa_ * std::sin(s.x - a[1]) * kick_[1];
            s.x += s.p * (h1 + h0);
            s.p -= kappa_ * std::sin(s.x - a[2]) * kick_[2];
            s.x += s.p * h0;
        }
        return s;
    }

    double dtau() const { return dtau_; }
    int steps_per_period() const { return steps_; }

private:
    double kappa_;
    int steps_;
    double dtau_;
    double kick_[3];
    std::vector<double> drive_;
};

struct ClassicalEnsemble {
    std::vector<PhaseState> states;
    std::uint64_t seed = 0;
    double t = 0.0;
};

// x uniform over one wavelength [0, 2*pi); p Gaussian with std dp0.
inline ClassicalEnsemble make_ensemble(std::size_t n, std::uint64_t seed, double dp0) {
    if (n < 1)
        throw std::invalid_argument("make_ensemble: size must be >= 1");
    if (!(dp0 > 0.0))
        throw std::invalid_argument("make_ensemble: dp0 must be > 0");
    ClassicalEnsemble e;
    e.seed = seed;
    e.states.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t base = 3 * static_cast<std::uint64_t>(i);
        e.states[i].x = 2.0 * pi * uniform01(seed, base);
        e.states[i].p = dp0 * gaussian_pair(seed, base + 1).first;
    }
    return e;
}

struct EvolveSettings {
    int steps_per_period = 1000;
    int threads = 1;
    double box_length = 2.0 * pi * 16.0;  // storage fold only; dynamics is unbounded
};

// Every member advanced n_periods * 2*pi; x folded into [0, L) for storage.
inline ClassicalEnsemble evolve_ensemble(const ClassicalEnsemble& e, int n_periods,
                                         const ScaledParams& params,
                                         const EvolveSettings& settings = {}) {
    if (n_periods < 0)
        throw std::invalid_argument("evolve_ensemble: n_periods must be >= 0");
    ClassicalEnsemble out = e;
    if (n_periods == 0)
        return out;
    const PeriodStepper stepper(params, settings.steps_per_period);
    parallel_for(out.states.size(), settings.threads, [&](std::size_t i) {
        PhaseState s = out.states[i];
        for (int j = 0; j < n_periods; ++j)
            s = stepper.advance_period(s);
        s.x -= settings.box_length * std::floor(s.x / settings.box_length);
        out.states[i] = s;
    });
    out.t += static_cast<double>(n_periods) * Waveform::period;
    return out;
}

// sqrt(<p^2> - <p>^2) / hbar_eff over the ensemble members.
inline double momentum_width(const ClassicalEnsemble& e, const ScaledParams& params) {
    const std::size_t n = e.states.size();
    if (n == 0)
        throw std::invalid_argument("momentum_width: ensemble is empty");
    const double mean =
        pairwise_sum_indexed(0, n, [&](std::size_t i) { return e.states[i].p; }) /
        static_cast<double>(n);
    const double var = pairwise_sum_indexed(0, n, [&](std::size_t i) {
                           const double d = e.states[i].p - mean;
                           return d * d;
                       }) /
                       static_cast<double>(n);
    return std::sqrt(std::max(var, 0.0)) / params.hbar_eff;
}

// Delta p_C at strobes 0..n_periods for the given initial ensemble.
inline std::vector<double> classical_dpc_series(const ClassicalEnsemble& e, int n_periods,
                                                const ScaledParams& params,
                                                const EvolveSettings& settings = {}) {
    if (n_periods < 0)
        throw std::invalid_argument("classical_dpc_series: n_periods must be >= 0");
    const std::size_t n = e.states.size();
    const std::size_t strobes = static_cast<std::size_t>(n_periods) + 1;
    std::vector<double> momenta(n * strobes);
    const PeriodStepper stepper(params, settings.steps_per_period);
    parallel_for(n, settings.threads, [&](std::size_t i) {
        PhaseState s = e.states[i];
        momenta[i * strobes] = s.p;
        for (std::size_t j = 1; j < strobes; ++j) {
            s = stepper.advance_period(s);
            momenta[i * strobes + j] = s.p;
        }
    });
    std::vector<double> widths(strobes);
    for (std::size_t j = 0; j < strobes; ++j) {
        const double mean =
            pairwise_sum_indexed(0, n, [&](std::size_t i) { return momenta[i * strobes + j]; }) /
            static_cast<double>(n);
        const double var = pairwise_sum_indexed(0, n, [&](std::size_t i) {
                               const double d = momenta[i * strobes + j] - mean;
                               return d * d;
                           }) /
                           static_cast<double>(n);
        widths[j] = std::sqrt(std::max(var, 0.0)) / params.hbar_eff;
    }
    return widths;
}

struct SurfaceOfSection {
    std::vector<PhaseState> points;  // x reduced to [-pi, pi)
    double strobe_period = Waveform::period;
    int n_periods = 0;
};

inline double wrap_to_pi(double x) {
    double r = std::remainder(x, 2.0 * pi);
    if (r >= pi)
        r -= 2.0 * pi;
    return r;
}

// Stroboscopic phase-space samples at tau = 2*pi*j, j = 1..n_periods.
// Point layout: trajectory-major, strobe-minor (deterministic).
inline SurfaceOfSection psos(const std::vector<PhaseState>& initial_conditions,
                             int n_periods, const ScaledParams& params,
                             const EvolveSettings& settings = {}) {
    if (n_periods < 1)
        throw std::invalid_argument("psos: n_periods must be >= 1");
    SurfaceOfSection sec;
    sec.n_periods = n_periods;
    const std::size_t per = static_cast<std::size_t>(n_periods);
    sec.points.resize(initial_conditions.size() * per);
    const PeriodStepper stepper(params, settings.steps_per_period);
    parallel_for(initial_conditions.size(), settings.threads, [&](std::size_t i) {
        PhaseState s = initial_conditions[i];
        for (std::size_t j = 0; j < per; ++j) {
            s = stepper.advance_period(s);
            sec.points[i * per + j] = {wrap_to_pi(s.x), s.p};
        }
    });
    return sec;
}

// Uniform cell-centered grid of initial conditions for PSOS scans,
// (x, p) in [-pi, pi) x [p_min, p_max].
inline std::vector<PhaseState> psos_grid(int nx, int np, double p_min, double p_max) {
    if (nx < 1 || np < 1)
        throw std::invalid_argument("psos_grid: grid dimensions must be >= 1");
    if (!(p_min < p_max))
        throw std::invalid_argument("psos_grid: need p_min < p_max");
    std::vector<PhaseState> ics;
    ics.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(np));
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < np; ++j)
            ics.push_back({-pi + (i + 0.5) * 2.0 * pi / nx,
                           p_min + (j + 0.5) * (p_max - p_min) / np});
    return ics;
}

// Exact separatrix of the unperturbed pendulum:
//   x(tau) = +-2 arctan{ sinh[sqrt(kappa)(tau - tau0)] },
//   p(tau) = +-2 sqrt(kappa) sech[sqrt(kappa)(tau - tau0)].
inline PhaseState separatrix(double tau, double tau0, double kappa, int branch) {
    if (!(kappa > 0.0))
        throw std::domain_error("separatrix: kappa must be > 0");
    if (branch != 1 && branch != -1)
        throw std::invalid_argument("separatrix: branch must be +1 or -1");
    const double u = std::sqrt(kappa) * (tau - tau0);
    const double sign = static_cast<double>(branch);
    return {sign * 2.0 * std::atan(std::sinh(u)),
            sign * 2.0 * std::sqrt(kappa) / std::cosh(u)};
}

}  // namespace dynloc

#endif
