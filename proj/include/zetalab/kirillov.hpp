#pragma once

// The seed-function construction of shifted convolutions: from the seed
// omega(u) = u^{alpha+1/2} exp(-2 pi u) on u > 0 the inverse Kirillov map
// produces the holomorphic-looking expansion
//
//   (K^{-1} omega)(n[x] a[y]) = y^{alpha+1/2} sum_{n>0} rho(n) n^alpha
//                               e^{-2 pi n y} e(n x),
//
// whose |.|^2 has x-Fourier coefficients built from rho(n) rho(n+m): the
// m-th coefficient equals
//
//   y^{2 alpha + 1} sum_{n>=1} rho(n) rho(n+m) (n (n+m))^alpha
//                              e^{-2 pi (2n+m) y}.
//
// shifted_fourier_coefficient returns that closed form together with the
// numerical x-quadrature of |K^{-1} omega|^2 e(-mx); they must agree.

#include <limits>

#include "zetalab/core.hpp"
#include "zetalab/maass.hpp"
#include "zetalab/window.hpp"

namespace zetalab {

struct SeedSpec {
    double alpha = 2.0;

    void validate() const {
        require(alpha >= 1.0 && std::isfinite(alpha), "SeedSpec: alpha must be >= 1");
    }
};

namespace detail {

inline void kirillov_check_tail(const MaassForm& form, const SeedSpec& seed, double y,
                                int n_trunc, double tol) {
    // coefficient bound over the omitted stored range; the geometric factor
    // covers the decay beyond it
    double c_rho = 0.0;
    for (long long n = n_trunc + 1; n <= form.n_coeff(); ++n)
        c_rho = std::max(c_rho, std::abs(form.coeff(n)));
    if (n_trunc >= form.n_coeff()) c_rho = std::max(1.0, form.max_abs_coeff());
    double first = c_rho * std::pow(n_trunc + 1.0, seed.alpha) * std::exp(-two_pi * (n_trunc + 1) * y);
    double ratio = std::exp(-two_pi * y) *
                   std::pow(1.0 + 1.0 / (n_trunc + 1.0), seed.alpha);
    double tail = (ratio < 1.0) ? first / (1.0 - ratio) : std::numeric_limits<double>::infinity();
    tail *= std::pow(y, seed.alpha + 0.5);
    if (!(tail <= tol))
        throw truncation_error("kirillov: truncation insufficient, tail estimate " +
                               detail::fmt_sci(tail) + " at n_trunc = " + std::to_string(n_trunc));
}

} // namespace detail

inline cplx kirillov_seed_expansion(const MaassForm& form, const SeedSpec& seed, double x,
                                    double y, int n_trunc, double tail_tol = 1e-10) {
    form.validate();
    seed.validate();
    require(y > 0.0, "kirillov_seed_expansion: y must be > 0");
    require(n_trunc >= 1 && n_trunc <= form.n_coeff(),
            "kirillov_seed_expansion: n_trunc must be in [1, n_coeff]");
    detail::kirillov_check_tail(form, seed, y, n_trunc, tail_tol);

    const double x_red = std::remainder(x, 1.0); // exact 1-periodicity in x
    kahan_csum acc;
    for (long long n = 1; n <= n_trunc; ++n) {
        double rho = form.coeff(n);
        if (rho == 0.0) continue;
        double amp = rho * std::pow(static_cast<double>(n), seed.alpha) * std::exp(-two_pi * n * y);
        acc.add(amp * additive_character(n * x_red));
    }
    return std::pow(y, seed.alpha + 0.5) * acc.value();
}

struct ShiftedCoefficientResult {
    double closed_form = 0.0;
    double quadrature = 0.0;
};

// m-th x-Fourier coefficient of |K^{-1} omega(x + iy)|^2 by both routes.
// Both use the same pair truncation (n, n+m <= n_trunc + m), so the routes
// agree to quadrature accuracy; the x-integral of the band-limited periodic
// integrand is taken with a trapezoid rule beyond the Nyquist count.
inline ShiftedCoefficientResult shifted_fourier_coefficient(const MaassForm& form,
                                                            const SeedSpec& seed, long long m,
                                                            double y, int n_trunc,
                                                            double tail_tol = 1e-10) {
    form.validate();
    seed.validate();
    require(m >= 0, "shifted_fourier_coefficient: m must be >= 0");
    require(n_trunc >= 1, "shifted_fourier_coefficient: n_trunc must be >= 1");
    require(m + n_trunc <= form.n_coeff(),
            "shifted_fourier_coefficient: m + n_trunc exceeds the coefficient table");
    require(y > 0.0, "shifted_fourier_coefficient: y must be > 0");
    detail::kirillov_check_tail(form, seed, y, n_trunc, tail_tol);

    ShiftedCoefficientResult out;

    kahan_sum closed;
    for (long long n = 1; n <= n_trunc; ++n) {
        double a = form.coeff(n), b = form.coeff(n + m);
        if (a == 0.0 || b == 0.0) continue;
        double term = a * b *
                      std::pow(static_cast<double>(n) * static_cast<double>(n + m), seed.alpha) *
                      std::exp(-two_pi * (2.0 * n + m) * y);
        closed.add(term);
    }
    out.closed_form = std::pow(y, 2.0 * seed.alpha + 1.0) * closed.value();

    const int n_field = n_trunc + static_cast<int>(m);
    const long long Q = 2 * n_field + m + 9; // beyond Nyquist for the trig degree
    kahan_csum quad;
    for (long long j = 0; j < Q; ++j) {
        double xj = static_cast<double>(j) / static_cast<double>(Q);
        cplx F = kirillov_seed_expansion(form, seed, xj, y, n_field, tail_tol);
        quad.add(std::norm(F) * additive_character(-static_cast<double>(m) * xj));
    }
    cplx qv = quad.value() / static_cast<double>(Q);
    if (std::abs(qv.imag()) > 1e-10)
        throw convergence_error("shifted_fourier_coefficient: imaginary part failed to cancel");
    out.quadrature = qv.real();
    return out;
}

// sum_{n=1}^{n_trunc} rho(n) rho(n+m) W(n/m)
inline double shifted_convolution(const MaassForm& form, long long m, const WindowSpec& W,
                                  int n_trunc) {
    form.validate();
    W.validate();
    if (m < 1) throw domain_error("shifted_convolution: m must be >= 1");
    require(n_trunc >= 1 && m + n_trunc <= form.n_coeff(),
            "shifted_convolution: m + n_trunc exceeds the coefficient table");

    kahan_sum acc;
    for (long long n = 1; n <= n_trunc; ++n) {
        double w = W(static_cast<double>(n) / static_cast<double>(m));
        if (w == 0.0) continue;
        acc.add(form.coeff(n) * form.coeff(n + m) * w);
    }
    return acc.value();
}

} // namespace zetalab
