#ifndef DYNLOC_QUADRATURE_HPP
#define DYNLOC_QUADRATURE_HPP

// Adaptive Gauss-Kronrod (G7, K15) quadrature for smooth 1-D integrands.
// Bisects until |K15 - G7| on the subinterval meets the local tolerance.

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dynloc {

namespace detail {

// QUADPACK dqk15 abscissae/weights (positive half; the rule is symmetric).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = gk_weights[7] * fc;
    double gauss = gauss_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_nodes[i];
        const double sum = f(c - dx) + f(c + dx);
        kronrod += gk_weights[i] * sum;
        if (i % 2 == 1)
            gauss += gauss_weights[i / 2] * sum;
    }
    kronrod *= h;
    gauss *= h;
    return {kronrod, std::abs(kronrod - gauss)};
}

template <typename F>
double integrate_rec(F& f, double a, double b, double tol, int depth) {
    auto [value, err] = gk15(f, a, b);
    if (err <= tol || depth >= 48)
        return value;
    const double c = 0.5 * (a + b);
    return integrate_rec(f, a, c, 0.5 * tol, depth + 1) +
           integrate_rec(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12) {
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("integrate: tolerance must be positive");
    if (a == b)
        return 0.0;
    return detail::integrate_rec(f, a, b, abs_tol, 0);
}

}  // namespace dynloc

#endif
