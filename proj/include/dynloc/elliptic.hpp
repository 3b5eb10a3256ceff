#ifndef DYNLOC_ELLIPTIC_HPP
#define DYNLOC_ELLIPTIC_HPP

// Jacobi elliptic functions sn, cn, dn and the complete elliptic integral
// of the first kind K(m), all parameterized by m = k^2 (not the modulus k).
//
// K(m) uses the arithmetic-geometric mean; sn/cn/dn use the descending
// Landen transformation driven by the same AGM scales (Abramowitz &
// Stegun 16.4), with argument reduction by the 4K period beforehand.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dynloc {

inline constexpr double pi = 3.14159265358979323846264338327950288;

// Elliptic parameter m, restricted to [0, 1]. m = 1 is representable
// (the force vanishes there) but K(1) itself diverges.
class EllipticParameter {
public:
    explicit EllipticParameter(double m) : m_(m) {
        if (!(m >= 0.0 && m <= 1.0))
            throw std::domain_error("elliptic parameter m must lie in [0, 1], got " +
                                    std::to_string(m));
    }
    double value() const { return m_; }

    friend bool operator==(EllipticParameter a, EllipticParameter b) {
        return a.m_ == b.m_;
    }

private:
    double m_;
};

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

namespace detail {
inline constexpr int agm_max_iter = 64;
inline constexpr double agm_tol = 1e-15;
// m beyond this is treated with the hyperbolic m -> 1 closed forms; the
// Landen recursion loses digits to cancellation there.
inline constexpr double hyperbolic_cutoff = 1.0 - 1e-10;
}  // namespace detail

// K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta).
inline double complete_K(EllipticParameter param) {
    const double m = param.value();
    if (m == 1.0)
        throw std::domain_error("complete_K: K(1) diverges (logarithmic singularity)");
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    for (int i = 0; i < detail::agm_max_iter; ++i) {
        if (std::abs(a - b) <= detail::agm_tol * a)
            return pi / (2.0 * a);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    throw std::runtime_error("complete_K: AGM failed to converge");  // unreachable for m in [0,1)
}

// sn(u|m), cn(u|m), dn(u|m) computed together.
inline JacobiTriple sn_cn_dn(double u, EllipticParameter param) {
    if (!std::isfinite(u))
        throw std::domain_error("sn_cn_dn: argument u must be finite");
    const double m = param.value();

    if (m == 0.0)
        return {std::sin(u), std::cos(u), 1.0};
    if (m == 1.0) {
        const double s = 1.0 / std::cosh(u);
        return {std::tanh(u), s, s};
    }
    if (m >= detail::hyperbolic_cutoff) {
        // Hyperbolic closed forms, valid for |arg| <= K after reduction by
        // the 4K period and reflection about K (sn(2K-s) = sn(s),
        // cn(2K-s) = -cn(s), dn(2K-s) = dn(s)).
        const double K = complete_K(param);
        const double r = std::remainder(u, 4.0 * K);
        double s = std::abs(r);
        double cn_sign = 1.0;
        if (s > K) {
            s = 2.0 * K - s;
            cn_sign = -1.0;
        }
        const double sn = std::tanh(s);
        const double cn = cn_sign / std::cosh(s);
        const double dn = std::sqrt((1.0 - m) + m / (std::cosh(s) * std::cosh(s)));
        return {std::copysign(sn, r), cn, dn};
    }

    // Reduce by the 4K period; keeps the scaled angle 2^N a_N u small.
    const double K = complete_K(param);
    const double r = std::remainder(u, 4.0 * K);

    double a[detail::agm_max_iter + 1];
    double c[detail::agm_max_iter + 1];
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    double b = std::sqrt(1.0 - m);
    int n = 0;
    while (n < detail::agm_max_iter) {
        if (c[n] <= detail::agm_tol * a[n])
            break;
        const double an = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        a[n + 1] = an;
        ++n;
    }
    if (n == detail::agm_max_iter)
        throw std::runtime_error("sn_cn_dn: Landen recursion failed to converge");

    double phi = std::ldexp(a[n] * r, n);
    for (int i = n; i >= 1; --i)
        phi = 0.5 * (phi + std::asin(std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0)));

    const double sn = std::sin(phi);
    const double cn = std::cos(phi);
    // dn^2 = (1 - m) + m cn^2 exactly; both terms positive, no cancellation.
    const double dn = std::sqrt((1.0 - m) + m * cn * cn);
    return {sn, cn, dn};
}

}  // namespace dynloc

#endif
