#ifndef DYNLOC_HUSIMI_HPP
#define DYNLOC_HUSIMI_HPP

// Husimi quasi-probability on a phase-space window, with the periodic
// boundary conditions handled by an image sum over lattice translations:
//
//   H(x,p) = | sum_{n=-n_images}^{n_images} int_0^{2 pi} dz
//              exp{ -[x-(z+2 pi n)]^2/(2 alpha) - i (z+2 pi n) p / hbar }
//              psi(z + 2 pi n) |^2
//
// The z-integral is a trapezoid sum on the wave-function grid (spectrally
// accurate for this smooth periodic integrand); the Gaussian decay makes
// images beyond |n| ~ 4 irrelevant at alpha = 3.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dynloc/parallel.hpp"
#include "dynloc/quantum.hpp"

namespace dynloc {

// Cell-centered (x, p) raster.
struct PhaseSpaceGrid {
    double x_min = -pi;
    double x_max = pi;
    int nx = 128;
    double p_min = -3.0;
    double p_max = 3.0;
    int np = 128;

    void validate() const {
        if (nx < 1 || np < 1)
            throw std::invalid_argument("PhaseSpaceGrid: nx and np must be >= 1");
        if (!(x_min < x_max) || !(p_min < p_max))
            throw std::invalid_argument("PhaseSpaceGrid: need x_min < x_max and p_min < p_max");
    }
    double dx() const { return (x_max - x_min) / nx; }
    double dp() const { return (p_max - p_min) / np; }
    double x(int i) const { return x_min + (i + 0.5) * dx(); }
    double p(int k) const { return p_min + (k + 0.5) * dp(); }

    friend bool operator==(const PhaseSpaceGrid&, const PhaseSpaceGrid&) = default;
};

struct HusimiGrid {
    PhaseSpaceGrid window;
    double alpha = 3.0;
    // Expected window integral for a unit-norm state contained in the
    // window: 2 pi hbar_eff sqrt(pi alpha). Set to 1 for renormalized grids.
    double normalization = 0.0;
    std::vector<double> values;  // row-major, [i * np + k]

    double& at(int i, int k) { return values[static_cast<std::size_t>(i) * window.np + k]; }
    double at(int i, int k) const { return values[static_cast<std::size_t>(i) * window.np + k]; }

    double total() const { return pairwise_sum(values); }
    double integral() const { return total() * window.dx() * window.dp(); }
};

inline HusimiGrid husimi(const WaveFunction& psi, const PhaseSpaceGrid& window,
                         double alpha, const ScaledParams& params, int n_images = 4,
                         int threads = 1) {
    window.validate();
    if (!(alpha > 0.0))
        throw std::invalid_argument("husimi: alpha must be > 0");
    if (n_images < 0)
        throw std::invalid_argument("husimi: n_images must be >= 0");

    HusimiGrid out;
    out.window = window;
    out.alpha = alpha;
    out.normalization = 2.0 * pi * params.hbar_eff * std::sqrt(pi * alpha);
    out.values.assign(static_cast<std::size_t>(window.nx) * window.np, 0.0);

    const int cell_pts = psi.grid.points_per_cell;  // grid points per 2*pi
    const int total_pts = psi.grid.size();
    const double dz = psi.grid.dx();
    const double hbar = params.hbar_eff;
    const double p0 = window.p(0);
    const double dp = window.dp();

    parallel_for(static_cast<std::size_t>(window.nx), threads, [&](std::size_t row) {
        const double x = window.x(static_cast<int>(row));
        std::vector<complexd> acc(static_cast<std::size_t>(window.np), complexd{0.0, 0.0});
        for (int n = -n_images; n <= n_images; ++n) {
            for (int j = 0; j < cell_pts; ++j) {
                const int idx = j + n * cell_pts;
                const double z = idx * dz;  // z + 2 pi n
                const double d = x - z;
                const double env = std::exp(-d * d / (2.0 * alpha)) * dz;
                // psi is L-periodic; fold the image index into the box
                const int fold = ((idx % total_pts) + total_pts) % total_pts;
                const complexd g = env * psi.amplitudes[static_cast<std::size_t>(fold)];
                // e^{-i z p / hbar} along the p column via phasor recurrence
                complexd phase = std::polar(1.0, -z * p0 / hbar);
                const complexd ratio = std::polar(1.0, -z * dp / hbar);
                for (int k = 0; k < window.np; ++k) {
                    acc[static_cast<std::size_t>(k)] += g * phase;
                    phase *= ratio;
                }
            }
        }
        for (int k = 0; k < window.np; ++k)
            out.at(static_cast<int>(row), k) = std::norm(acc[static_cast<std::size_t>(k)]);
    });
    return out;
}

// Intensity-weighted centroid of the window (plain average; callers keep
// the structure of interest away from the x wrap).
inline std::pair<double, double> husimi_centroid(const HusimiGrid& grid) {
    const double tot = grid.total();
    if (!(tot > 0.0))
        throw std::runtime_error("husimi_centroid: empty grid");
    double sx = 0.0, sp = 0.0;
    for (int i = 0; i < grid.window.nx; ++i)
        for (int k = 0; k < grid.window.np; ++k) {
            sx += grid.at(i, k) * grid.window.x(i);
            sp += grid.at(i, k) * grid.window.p(k);
        }
    return {sx / tot, sp / tot};
}

// Fraction of the window mass inside a caller-defined region.
template <typename Predicate>
double husimi_mass_fraction(const HusimiGrid& grid, Predicate&& inside) {
    double sel = 0.0, tot = 0.0;
    for (int i = 0; i < grid.window.nx; ++i)
        for (int k = 0; k < grid.window.np; ++k) {
            const double v = grid.at(i, k);
            tot += v;
            if (inside(grid.window.x(i), grid.window.p(k)))
                sel += v;
        }
    return tot > 0.0 ? sel / tot : 0.0;
}

// Stroboscopically averaged QSOS: accumulate the Husimi distribution at
// tau = 2 pi j, j = 1..n_periods, and renormalize the average to unit
// window integral.
inline HusimiGrid qsos_average(double x0, double p0, int n_periods,
                               const ScaledParams& params, const SpatialGrid& grid,
                               const PhaseSpaceGrid& window, double alpha = 3.0,
                               int n_images = 4, const QuantumSettings& settings = {}) {
    if (n_periods < 1)
        throw std::invalid_argument("qsos_average: n_periods must be >= 1");
    WaveFunction psi = gaussian_packet(x0, p0, params, grid, settings.dp0);
    SplitOperator op(grid, params, settings.steps_per_period);
    HusimiGrid acc;
    for (int j = 1; j <= n_periods; ++j) {
        op.advance_period(psi);
        HusimiGrid h = husimi(psi, window, alpha, params, n_images, settings.threads);
        if (j == 1) {
            acc = std::move(h);
        } else {
            for (std::size_t i = 0; i < acc.values.size(); ++i)
                acc.values[i] += h.values[i];
        }
    }
    const double integral = acc.integral();
    if (integral > 0.0)
        for (auto& v : acc.values)
            v /= integral;
    acc.normalization = 1.0;
    return acc;
}

// Raw single-strobe QSOS snapshots at tau = 2 pi j, j = 1..n_strobes.
inline std::vector<HusimiGrid> qsos_sequence(double x0, double p0, int n_strobes,
                                             const ScaledParams& params,
                                             const SpatialGrid& grid,
                                             const PhaseSpaceGrid& window,
                                             double alpha = 3.0, int n_images = 4,
                                             const QuantumSettings& settings = {}) {
    if (n_strobes < 1)
        throw std::invalid_argument("qsos_sequence: n_strobes must be >= 1");
    WaveFunction psi = gaussian_packet(x0, p0, params, grid, settings.dp0);
    SplitOperator op(grid, params, settings.steps_per_period);
    std::vector<HusimiGrid> frames;
    frames.reserve(static_cast<std::size_t>(n_strobes));
    for (int j = 1; j <= n_strobes; ++j) {
        op.advance_period(psi);
        frames.push_back(husimi(psi, window, alpha, params, n_images, settings.threads));
    }
    return frames;
}

}  // namespace dynloc

#endif
