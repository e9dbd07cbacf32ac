#pragma once

// Complex gamma function via the Lanczos approximation (g = 7, 9 terms),
// with reflection for Re s < 1/2.  Good to ~13 significant digits on the
// |s| <= 50 working range.

#include "zetalab/core.hpp"

namespace zetalab {

namespace detail {

inline const double lanczos_g = 7.0;
inline const double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline cplx lanczos_gamma(cplx s) {
    // assumes Re s >= 0.5
    cplx z = s - 1.0;
    cplx x = lanczos_c[0];
    for (int k = 1; k < 9; ++k)
        x += lanczos_c[k] / (z + static_cast<double>(k));
    cplx t = z + lanczos_g + 0.5;
    return std::sqrt(two_pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace detail

inline cplx complex_gamma(cplx s) {
    if (s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real()))
        throw pole_error("complex_gamma: pole at non-positive integer " +
                         std::to_string(static_cast<long long>(s.real())));
    cplx result;
    if (s.real() < 0.5) {
        // Gamma(s) Gamma(1-s) = pi / sin(pi s)
        result = pi / (std::sin(pi * s) * detail::lanczos_gamma(1.0 - s));
    } else {
        result = detail::lanczos_gamma(s);
    }
    return ensure_finite(result, "complex_gamma");
}

} // namespace zetalab
