#ifndef DYNLOC_QUANTUM_HPP
#define DYNLOC_QUANTUM_HPP

// Split-operator (Strang) spectral propagation of
//   i hbar_eff d_tau psi = [ -(hbar_eff^2/2) d_xx - kappa cos(x - lambda F(tau)) ] psi
// on a periodic box of length L = 2*pi*n_cells, plus Gaussian packets and
// momentum-width observables.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "dynloc/forcing.hpp"
#include "dynloc/parallel.hpp"

namespace dynloc {

using complexd = std::complex<double>;

// Periodic spatial grid: n_cells lattice cells of width 2*pi, each sampled
// with a power-of-two number of points.
struct SpatialGrid {
    int n_cells;
    int points_per_cell;

    SpatialGrid(int n_cells_ = 16, int points_per_cell_ = 64)
        : n_cells(n_cells_), points_per_cell(points_per_cell_) {
        if (n_cells < 1)
            throw std::invalid_argument("SpatialGrid: n_cells must be >= 1");
        if (points_per_cell < 32 || (points_per_cell & (points_per_cell - 1)) != 0)
            throw std::invalid_argument(
                "SpatialGrid: points_per_cell must be a power of two >= 32");
    }

    double length() const { return 2.0 * pi * n_cells; }
    int size() const { return n_cells * points_per_cell; }
    double dx() const { return 2.0 * pi / points_per_cell; }
    double x(int j) const { return j * dx(); }

    // Wavenumber of FFT bin j (signed, standard wrap at size/2).
    double wavenumber(int j) const {
        const int n = size();
        const int jj = j < n / 2 ? j : j - n;
        return 2.0 * pi * jj / length();
    }

    friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) = default;
};

struct WaveFunction {
    std::vector<complexd> amplitudes;  // one per grid point, ||psi||^2 dx summing to 1
    SpatialGrid grid;
    double t = 0.0;
};

inline double norm(const WaveFunction& psi) {
    const double s2 = pairwise_sum_indexed(0, psi.amplitudes.size(), [&](std::size_t j) {
        return std::norm(psi.amplitudes[j]);
    });
    return std::sqrt(s2 * psi.grid.dx());
}

// psi(x) = (pi dx0)^{-1/4} exp[-(x-x0)^2/(2 dx0) + i x p0/hbar], dx0 = hbar/dp0.
// The envelope uses the minimal image on the ring; the result is renormalized
// on the grid to absorb discretization error.
inline WaveFunction gaussian_packet(double x0, double p0, const ScaledParams& params,
                                    const SpatialGrid& grid, double dp0 = 0.386) {
    if (!(dp0 > 0.0))
        throw std::invalid_argument("gaussian_packet: dp0 must be > 0");
    const double L = grid.length();
    const double dx0 = params.hbar_eff / dp0;  // variance-like width parameter
    const double sigma_x = std::sqrt(0.5 * dx0);
    if (sigma_x > 0.25 * L)
        throw std::invalid_argument(
            "gaussian_packet: packet width exceeds L/4 (wrap-around contamination)");
    x0 -= L * std::floor(x0 / L);

    WaveFunction psi;
    psi.grid = grid;
    psi.amplitudes.resize(static_cast<std::size_t>(grid.size()));
    const double amp0 = std::pow(pi * dx0, -0.25);
    for (int j = 0; j < grid.size(); ++j) {
        const double xj = grid.x(j);
        const double d = std::remainder(xj - x0, L);
        const double env = amp0 * std::exp(-d * d / (2.0 * dx0));
        psi.amplitudes[static_cast<std::size_t>(j)] =
            std::polar(env, xj * p0 / params.hbar_eff);
    }
    const double n = norm(psi);
    for (auto& a : psi.amplitudes)
        a /= n;
    return psi;
}

// Momentum-representation sums: S0 = sum w, S1 = sum w p, S2 = sum w p^2
// with w_j = |psi-tilde_j|^2. Additive across states, so packet mixtures
// combine exactly.
struct MomentumMoments {
    double w = 0.0;
    double wp = 0.0;
    double wpp = 0.0;

    MomentumMoments& operator+=(const MomentumMoments& o) {
        w += o.w;
        wp += o.wp;
        wpp += o.wpp;
        return *this;
    }
    // sqrt(<p^2> - <p>^2) / hbar_eff
    double width(double hbar_eff) const {
        const double mean = wp / w;
        const double var = wpp / w - mean * mean;
        return std::sqrt(std::max(var, 0.0)) / hbar_eff;
    }
};

inline MomentumMoments momentum_moments(const std::vector<complexd>& spectrum,
                                        const SpatialGrid& grid, double hbar_eff) {
    const std::size_t n = spectrum.size();
    MomentumMoments m;
    m.w = pairwise_sum_indexed(0, n, [&](std::size_t j) { return std::norm(spectrum[j]); });
    m.wp = pairwise_sum_indexed(0, n, [&](std::size_t j) {
        return std::norm(spectrum[j]) * hbar_eff * grid.wavenumber(static_cast<int>(j));
    });
    m.wpp = pairwise_sum_indexed(0, n, [&](std::size_t j) {
        const double p = hbar_eff * grid.wavenumber(static_cast<int>(j));
        return std::norm(spectrum[j]) * p * p;
    });
    return m;
}

inline MomentumMoments momentum_moments(const WaveFunction& psi, const ScaledParams& params) {
    Eigen::FFT<double> fft;
    std::vector<complexd> spectrum(psi.amplitudes.size());
    fft.fwd(spectrum.data(), psi.amplitudes.data(),
            static_cast<Eigen::Index>(psi.amplitudes.size()));
    return momentum_moments(spectrum, psi.grid, params.hbar_eff);
}

inline double quantum_momentum_width(const WaveFunction& psi, const ScaledParams& params) {
    return momentum_moments(psi, params).width(params.hbar_eff);
}

// <H0> = <p^2>/2 - kappa <cos x>; conserved when lambda = 0.
inline double h0_expectation(const WaveFunction& psi, const ScaledParams& params) {
    const MomentumMoments mm = momentum_moments(psi, params);
    const double kinetic = 0.5 * mm.wpp / mm.w;
    const std::size_t n = psi.amplitudes.size();
    const double wsum = pairwise_sum_indexed(0, n, [&](std::size_t j) {
        return std::norm(psi.amplitudes[j]);
    });
    const double cbar = pairwise_sum_indexed(0, n, [&](std::size_t j) {
                            return std::norm(psi.amplitudes[j]) *
                                   std::cos(psi.grid.x(static_cast<int>(j)));
                        }) /
                        wsum;
    return kinetic - params.kappa * cbar;
}

inline double position_mean(const WaveFunction& psi) {
    const std::size_t n = psi.amplitudes.size();
    const double wsum = pairwise_sum_indexed(0, n, [&](std::size_t j) {
        return std::norm(psi.amplitudes[j]);
    });
    return pairwise_sum_indexed(0, n, [&](std::size_t j) {
               return std::norm(psi.amplitudes[j]) * psi.grid.x(static_cast<int>(j));
           }) /
           wsum;
}

// One propagator instance per wave function; holds the FFT plan, kinetic
// phase tables, and one period of midpoint drive values. Not thread-safe
// across concurrent calls on the same instance.
class SplitOperator {
public:
    SplitOperator(const SpatialGrid& grid, const ScaledParams& params, int steps_per_period)
        : grid_(grid), hbar_(params.hbar_eff), steps_(steps_per_period) {
        if (steps_per_period < 1)
            throw std::invalid_argument("SplitOperator: steps_per_period must be >= 1");
        const int n = grid.size();
        dtau_ = Waveform::period / static_cast<double>(steps_);
        kin_half_.resize(n);
        kin_full_.resize(n);
        for (int j = 0; j < n; ++j) {
            const double k = grid.wavenumber(j);
            const double phase = -hbar_ * k * k * dtau_ / 4.0;  // exp(-i E_k dt/2 / hbar)
            kin_half_[j] = std::polar(1.0, phase);
            kin_full_[j] = std::polar(1.0, 2.0 * phase);
        }
        cos_x_.resize(n);
        sin_x_.resize(n);
        for (int j = 0; j < n; ++j) {
            cos_x_[j] = std::cos(grid.x(j));
            sin_x_[j] = std::sin(grid.x(j));
        }
        const Waveform wf(params.m);
        cos_drive_.resize(steps_);
        sin_drive_.resize(steps_);
        for (int k = 0; k < steps_; ++k) {
            const double a = params.lambda * wf((k + 0.5) * dtau_);
            cos_drive_[k] = std::cos(a);
            sin_drive_[k] = std::sin(a);
        }
        pot_scale_ = params.kappa * dtau_ / hbar_;
        spectrum_.resize(n);
    }

    // Advance one full period (steps_ Strang steps with fused kinetic
    // half-steps); psi stays in the position representation.
    void advance_period(WaveFunction& psi) {
        auto& a = psi.amplitudes;
        const auto n = static_cast<Eigen::Index>(a.size());
        fft_.fwd(spectrum_.data(), a.data(), n);
        apply(spectrum_, kin_half_);
        for (int k = 0; k < steps_; ++k) {
            fft_.inv(a.data(), spectrum_.data(), n);
            apply_potential(a, k);
            fft_.fwd(spectrum_.data(), a.data(), n);
            apply(spectrum_, k + 1 < steps_ ? kin_full_ : kin_half_);
        }
        fft_.inv(a.data(), spectrum_.data(), n);
        psi.t += Waveform::period;
    }

    // Momentum moments at the current (strobe) time.
    MomentumMoments moments(const WaveFunction& psi) {
        fft_.fwd(spectrum_.data(), psi.amplitudes.data(),
                 static_cast<Eigen::Index>(psi.amplitudes.size()));
        return momentum_moments(spectrum_, grid_, hbar_);
    }

private:
    static void apply(std::vector<complexd>& v, const std::vector<complexd>& factor) {
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] *= factor[j];
    }

    // exp(+i (kappa dt/hbar) cos(x - a_k)) via the angle-difference identity.
    void apply_potential(std::vector<complexd>& v, int k) {
        const double ca = cos_drive_[k];
        const double sa = sin_drive_[k];
        for (std::size_t j = 0; j < v.size(); ++j) {
            const double theta = pot_scale_ * (cos_x_[j] * ca + sin_x_[j] * sa);
            v[j] *= std::polar(1.0, theta);
        }
    }

    SpatialGrid grid_;
    double hbar_;
    int steps_;
    double dtau_;
    double pot_scale_;
    std::vector<complexd> kin_half_, kin_full_;
    std::vector<double> cos_x_, sin_x_;
    std::vector<double> cos_drive_, sin_drive_;
    std::vector<complexd> spectrum_;
    Eigen::FFT<double> fft_;
};

struct QuantumSettings {
    int steps_per_period = 2048;
    double dp0 = 0.386;
    int avg_strobes = 10;
    int threads = 1;
};

inline WaveFunction propagate(const WaveFunction& psi, int n_periods,
                              const ScaledParams& params,
                              const QuantumSettings& settings = {}) {
    if (n_periods < 0)
        throw std::invalid_argument("propagate: n_periods must be >= 0");
    WaveFunction out = psi;
    if (n_periods == 0)
        return out;
    SplitOperator op(psi.grid, params, settings.steps_per_period);
    for (int j = 0; j < n_periods; ++j)
        op.advance_period(out);
    return out;
}

// Delta p_Q of the packet-averaged momentum distribution: n_packets
// Gaussian packets at rest, centers evenly covering the lattice phase
// (x0_i = i 2*pi/n_packets; positions matter only mod 2*pi), distributions
// averaged per strobe, width time-averaged over the final avg_strobes.
inline double averaged_dpq(const ScaledParams& params, int n_packets, int n_periods,
                           const SpatialGrid& grid, const QuantumSettings& settings = {}) {
    if (n_packets < 1)
        throw std::invalid_argument("averaged_dpq: n_packets must be >= 1");
    if (n_periods < 0)
        throw std::invalid_argument("averaged_dpq: n_periods must be >= 0");
    const std::size_t strobes = static_cast<std::size_t>(n_periods) + 1;
    std::vector<MomentumMoments> per_packet(static_cast<std::size_t>(n_packets) * strobes);
    parallel_for(static_cast<std::size_t>(n_packets), settings.threads, [&](std::size_t i) {
        const double x0 = 2.0 * pi * static_cast<double>(i) / n_packets;
        WaveFunction psi = gaussian_packet(x0, 0.0, params, grid, settings.dp0);
        SplitOperator op(grid, params, settings.steps_per_period);
        per_packet[i * strobes] = op.moments(psi);
        for (std::size_t j = 1; j < strobes; ++j) {
            op.advance_period(psi);
            per_packet[i * strobes + j] = op.moments(psi);
        }
    });
    const std::size_t window = std::min<std::size_t>(
        static_cast<std::size_t>(std::max(settings.avg_strobes, 1)), strobes);
    double acc = 0.0;
    for (std::size_t j = strobes - window; j < strobes; ++j) {
        MomentumMoments mixture;
        for (int i = 0; i < n_packets; ++i)
            mixture += per_packet[static_cast<std::size_t>(i) * strobes + j];
        acc += mixture.width(params.hbar_eff);
    }
    return acc / static_cast<double>(window);
}

}  // namespace dynloc

#endif
