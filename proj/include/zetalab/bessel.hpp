#pragma once

// K-Bessel function of purely imaginary order, K_{ir}(x), the Whittaker
// kernel of the unitary principal series.  Computed from the real integral
//
//     K_{ir}(x) = int_0^inf exp(-x cosh t) cos(rt) dt ,
//
// with the integrand rescaled by e^{x} so the quadrature keeps relative
// accuracy deep into the exponential tail (the x = 50 regime).

#include <limits>

#include "zetalab/core.hpp"
#include "zetalab/quadrature.hpp"

namespace zetalab {

inline double bessel_k_imag(double r, double x, QuadratureSpec spec = {}) {
    require(x > 0.0, "bessel_k_imag: requires x > 0");
    require(std::isfinite(r), "bessel_k_imag: order must be finite");
    r = std::abs(r); // K_{ir} = K_{-ir}, made exact by construction

    // cut where x (cosh T - 1) = 45: integrand below e^{-45} of its peak scale
    const double big = 45.0;
    const double T = std::acosh(1.0 + big / x);

    // resolve the cos(rt) oscillation from the start
    std::size_t init = static_cast<std::size_t>(std::ceil(T * (r + 1.0) / pi)) + 4;

    QuadratureSpec qs = spec;
    qs.abs_tol = std::min(qs.abs_tol, 1e-12);
    auto integrand = [&](double t) -> cplx {
        double w = -x * (std::cosh(t) - 1.0);
        return {std::exp(w) * std::cos(r * t), 0.0};
    };
    auto res = integrate(integrand, 0.0, T, qs, init);
    return std::exp(-x) * res.value.real();
}

// Upper bound on K_0(x) (hence on |K_{ir}(x)|) used by truncation envelopes.
inline double bessel_k0_bound(double x) {
    if (x <= 0.0) return std::numeric_limits<double>::infinity();
    if (x < 1.0) return std::log(2.0 / x) + 1.0;
    return std::sqrt(pi / (2.0 * x)) * std::exp(-x) * (1.0 + 1.0 / (8.0 * x));
}

} // namespace zetalab
