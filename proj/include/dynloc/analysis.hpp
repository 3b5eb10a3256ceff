#ifndef DYNLOC_ANALYSIS_HPP
#define DYNLOC_ANALYSIS_HPP

// The chaotic-layer-width series d(lambda, kappa, m), extremum location
// over the shape parameter m, the DL-strength observable
// Delta p_{C-Q} = Delta p_C - Delta p_Q, and the impulse/width/DL
// correlation dataset.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dynloc/classical.hpp"
#include "dynloc/forcing.hpp"
#include "dynloc/quantum.hpp"

namespace dynloc {

struct LayerWidthResult {
    double d = 0.0;
    int n_terms = 0;
    double truncation_error_bound = 0.0;
};

namespace detail {
inline double sech(double x) { return 1.0 / std::cosh(x); }

inline double layer_a(int n, double kappa) {
    const double h = n + 0.5;
    return h * h * h * sech(h * pi / std::sqrt(kappa));
}
}  // namespace detail

// First-order (in lambda) energy width of the chaotic separatrix layer,
//   d = 4 pi^3 lambda N(m) / (kappa sqrt(m) K^2(m)) * sum_n a_n(kappa) b_n(m),
//   a_n = (n+1/2)^3 sech[(n+1/2) pi / sqrt(kappa)],
//   b_n = sech[(n+1/2) pi K(1-m) / K(m)].
// Endpoints: b_n ~ 2 (sqrt(m)/4)^{2n+1} as m -> 0, so the 1/sqrt(m)
// prefactor cancels against b_0 and d -> 8 pi lambda N(0) a_0(kappa)/kappa;
// as m -> 1 the force (and d) vanish.
inline LayerWidthResult layer_width(double lambda, double kappa, EllipticParameter m) {
    if (!(kappa > 0.0))
        throw std::domain_error("layer_width: kappa must be > 0");
    if (!(lambda >= 0.0))
        throw std::domain_error("layer_width: lambda must be >= 0");

    const double mv = m.value();
    if (mv == 1.0)
        return {0.0, 0, 0.0};
    if (mv == 0.0) {
        const double limit =
            8.0 * pi * lambda * normalization(m) * detail::layer_a(0, kappa) / kappa;
        return {limit, 1, 0.0};
    }

    const double K = complete_K(m);
    const double Kc = complete_K(EllipticParameter(1.0 - mv));
    const double prefactor =
        4.0 * pi * pi * pi * lambda * normalization(m) / (kappa * std::sqrt(mv) * K * K);

    constexpr int max_terms = 200;
    constexpr double rel_cutoff = 1e-14;
    double sum = 0.0;
    double last = 0.0;
    double second_last = 0.0;
    double next = 0.0;
    int used = 0;
    for (int n = 0; n < max_terms; ++n) {
        const double term = detail::layer_a(n, kappa) * detail::sech((n + 0.5) * pi * Kc / K);
        if (n > 0 && term < rel_cutoff * sum) {
            next = term;
            break;
        }
        second_last = last;
        last = term;
        sum += term;
        ++used;
    }
    if (next == 0.0 && used == max_terms && second_last > 0.0)
        next = last * (last / second_last);  // geometric extrapolation of the tail
    double ratio = last > 0.0 ? next / last : 0.0;
    ratio = std::min(std::max(ratio, 0.0), 0.95);
    const double bound = 2.0 * prefactor * next / (1.0 - ratio);
    return {prefactor * sum, used, bound};
}

struct MaxOverM {
    double m_star = 0.0;
    double f_star = 0.0;
    bool at_boundary = false;  // set when the coarse scan peaks at an endpoint
};

// Coarse grid scan (default resolution 1e-3) followed by golden-section
// refinement of the bracketing interval; maximizer located to +-refine_tol.
template <typename F>
MaxOverM find_max_over_m(F&& f, double m_lo, double m_hi, double grid_resolution = 1e-3,
                         double refine_tol = 1e-4) {
    if (!(0.0 < m_lo && m_lo < m_hi && m_hi < 1.0))
        throw std::invalid_argument("find_max_over_m: need 0 < m_lo < m_hi < 1");
    const int n = std::max(2, static_cast<int>(std::ceil((m_hi - m_lo) / grid_resolution)));
    auto grid_point = [&](int i) { return m_lo + (m_hi - m_lo) * i / n; };

    int best = 0;
    double fbest = f(grid_point(0));
    for (int i = 1; i <= n; ++i) {
        const double fi = f(grid_point(i));
        if (fi > fbest) {
            fbest = fi;
            best = i;
        }
    }
    if (best == 0 || best == n)
        return {grid_point(best), fbest, true};

    double a = grid_point(best - 1);
    double b = grid_point(best + 1);
    constexpr double invphi = 0.61803398874989484820;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > refine_tol) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double m_star = 0.5 * (a + b);
    return {m_star, f(m_star), false};
}

// One row of the Fig. 2/3 style sweeps.
struct SweepRecord {
    double m = 0.0;
    double lambda = 0.0;
    double dp_c = 0.0;
    double dp_q = 0.0;
    double dp_cmq = 0.0;  // dp_c - dp_q, exactly
    double impulse_norm = 0.0;
    double layer_width = 0.0;
};

struct DlSettings {
    int ensemble_size = 100000;
    int classical_steps_per_period = 1000;
    int n_periods = 50;
    int avg_strobes = 10;
    int n_packets = 8;
    SpatialGrid grid{};
    int quantum_steps_per_period = 2048;
    double dp0 = 0.386;
    std::uint64_t seed = 12345;
    int threads = 1;
};

inline double mean_of_tail(const std::vector<double>& v, int window) {
    const std::size_t w =
        std::min(v.size(), static_cast<std::size_t>(std::max(window, 1)));
    double s = 0.0;
    for (std::size_t j = v.size() - w; j < v.size(); ++j)
        s += v[j];
    return s / static_cast<double>(w);
}

// Classical ensemble and quantum packet average at identical parameters
// and horizon; both widths time-averaged over the same final strobes.
inline SweepRecord dl_strength(const ScaledParams& params, const DlSettings& s) {
    SweepRecord rec;
    rec.m = params.m.value();
    rec.lambda = params.lambda;

    const ClassicalEnsemble ensemble =
        make_ensemble(static_cast<std::size_t>(s.ensemble_size), s.seed, s.dp0);
    EvolveSettings ev;
    ev.steps_per_period = s.classical_steps_per_period;
    ev.threads = s.threads;
    ev.box_length = s.grid.length();
    const std::vector<double> dpc = classical_dpc_series(ensemble, s.n_periods, params, ev);
    rec.dp_c = mean_of_tail(dpc, s.avg_strobes);

    QuantumSettings qs;
    qs.steps_per_period = s.quantum_steps_per_period;
    qs.dp0 = s.dp0;
    qs.avg_strobes = s.avg_strobes;
    qs.threads = s.threads;
    rec.dp_q = averaged_dpq(params, s.n_packets, s.n_periods, s.grid, qs);

    rec.dp_cmq = rec.dp_c - rec.dp_q;
    rec.impulse_norm = impulse_closed_form(params.m, Waveform::period) /
                       impulse_closed_form(EllipticParameter(0.0), Waveform::period);
    rec.layer_width = layer_width(params.lambda, params.kappa, params.m).d;
    return rec;
}

// The Fig. 3 dataset: Delta p_{C-Q}, layer width, and normalized impulse
// on a common m grid. Rows are ordered by grid index.
inline std::vector<SweepRecord> correlation_study(double kappa, double lambda,
                                                  double hbar_eff,
                                                  const std::vector<double>& m_grid,
                                                  const DlSettings& s) {
    std::vector<SweepRecord> records;
    records.reserve(m_grid.size());
    for (const double m : m_grid) {
        const ScaledParams params(kappa, lambda, EllipticParameter(m), hbar_eff);
        records.push_back(dl_strength(params, s));
    }
    return records;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson: need two equal-length series, size >= 2");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0))
        throw std::invalid_argument("pearson: a series is constant");
    return sxy / std::sqrt(sxx * syy);
}

// Peak |F| over one period, by dense scan plus parabolic refinement.
inline double waveform_max_amplitude(EllipticParameter m) {
    const Waveform f(m);
    constexpr int samples = 16384;
    const double h = Waveform::period / samples;
    int best = 0;
    double fbest = 0.0;
    std::vector<double> vals(samples);
    for (int i = 0; i < samples; ++i) {
        vals[i] = std::abs(f(i * h));
        if (vals[i] > fbest) {
            fbest = vals[i];
            best = i;
        }
    }
    const double fm = vals[(best - 1 + samples) % samples];
    const double fp = vals[(best + 1) % samples];
    const double denom = fm - 2.0 * fbest + fp;
    if (denom >= 0.0)
        return fbest;
    const double shift = 0.5 * (fm - fp) / denom;
    const double refined = std::abs(f(best * h + shift * h));
    return std::max(fbest, refined);
}

// Root-mean-square distance over one period between unit-amplitude
// waveforms: sqrt( (1/2 pi) int (F1/max1 - F2/max2)^2 dtau ).
inline double waveform_rms_distance(EllipticParameter m1, EllipticParameter m2) {
    const Waveform f1(m1), f2(m2);
    const double a1 = waveform_max_amplitude(m1);
    const double a2 = waveform_max_amplitude(m2);
    const double integral = integrate(
        [&](double tau) {
            const double d = f1(tau) / a1 - f2(tau) / a2;
            return d * d;
        },
        0.0, Waveform::period, 1e-10);
    return std::sqrt(integral / Waveform::period);
}

}  // namespace dynloc

#endif
