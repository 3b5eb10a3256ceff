#ifndef DYNLOC_TESTS_ORACLES_HPP
#define DYNLOC_TESTS_ORACLES_HPP

// Test-only reference implementations, independent of the library's
// algorithm choices: adaptive Simpson quadrature (vs the AGM elliptic
// integral and the Gauss-Kronrod module) and fixed-step RK4 integration
// (vs the Landen recursion and the symplectic stepper).

#include <array>
#include <cmath>
#include <functional>

namespace oracles {

template <typename F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth > 60 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

// Adaptive Simpson with Richardson correction.
template <typename F>
double integrate_simpson(F&& f, double a, double b, double tol = 1e-14) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

// Fixed-step RK4 for y' = rhs(t, y), N components.
template <std::size_t N, typename Rhs>
std::array<double, N> rk4(std::array<double, N> y, double t0, double t1, long steps,
                          Rhs&& rhs) {
    const double h = (t1 - t0) / static_cast<double>(steps);
    auto axpy = [](const std::array<double, N>& base, double s,
                   const std::array<double, N>& k) {
        std::array<double, N> out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = base[i] + s * k[i];
        return out;
    };
    for (long n = 0; n < steps; ++n) {
        const double t = t0 + static_cast<double>(n) * h;
        const auto k1 = rhs(t, y);
        const auto k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
        const auto k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
        const auto k4 = rhs(t + h, axpy(y, h, k3));
        for (std::size_t i = 0; i < N; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return y;
}

// Jacobi elliptic functions by integrating their defining ODE system
//   sn' = cn dn,  cn' = -sn dn,  dn' = -m sn cn  from u = 0.
inline std::array<double, 3> jacobi_by_ode(double u, double m, long steps_per_unit = 4000) {
    if (u == 0.0)
        return {0.0, 1.0, 1.0};
    const long steps = std::max<long>(1000, static_cast<long>(std::abs(u) * steps_per_unit));
    return rk4<3>({0.0, 1.0, 1.0}, 0.0, u, steps,
                  [m](double, const std::array<double, 3>& y) {
                      return std::array<double, 3>{y[1] * y[2], -y[0] * y[2],
                                                   -m * y[0] * y[1]};
                  });
}

// Driven-pendulum trajectory by RK4 with a caller-supplied drive term.
inline std::array<double, 2> pendulum_by_rk4(std::array<double, 2> state, double tau0,
                                             double tau1, long steps, double kappa,
                                             const std::function<double(double)>& drive) {
    return rk4<2>(state, tau0, tau1, steps,
                  [&](double t, const std::array<double, 2>& y) {
                      return std::array<double, 2>{y[1],
                                                   -kappa * std::sin(y[0] - drive(t))};
                  });
}

}  // namespace oracles

#endif
