#pragma once

// Principal-series machinery over the Iwasawa coordinates: the elementary
// vector phi_ell, the Jacquet transform (oscillatory integral with an
// integration-by-parts tail), the truncated Maass expansion with its
// K-Bessel closed-form and Jacquet-quadrature backends, the Casimir
// operator applied by finite differences, Fourier orthogonality, and the
// L-series attached to a coefficient table.

#include <functional>

#include "zetalab/bessel.hpp"
#include "zetalab/core.hpp"
#include "zetalab/gamma.hpp"
#include "zetalab/maass.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/weight.hpp"

namespace zetalab {

// phi_ell(g, nu) = y^{1/2+nu} exp(2 i ell theta)
inline cplx phi_ell(const GroupPoint& g, cplx nu, int ell) {
    cplx ypow = std::exp((0.5 + nu) * std::log(g.y));
    double th = 2.0 * ell * g.theta;
    return ypow * cplx{std::cos(th), std::sin(th)};
}

namespace detail {

// Iwasawa data of w n[xi] g for g = n[x] a[y] k[theta]:  with u = xi + x,
//   y'      = y / (u^2 + y^2)
//   theta'  = atan2(y, -u)        (plus the theta carried by g)
// so that phi_ell(w n[xi] g) = y'^{1/2+nu} e^{2 i ell (theta' + theta)}.
struct JacquetIntegrand {
    cplx nu;
    int ell;
    double x, y, theta;

    cplx h(double xi) const {
        double u = xi + x;
        double denom = u * u + y * y;
        cplx val = std::exp((0.5 + nu) * std::log(y / denom));
        double th = 2.0 * ell * (std::atan2(y, -u) + theta);
        return val * cplx{std::cos(th), std::sin(th)};
    }

    // logarithmic derivative factors: h' = h q, h'' = h (q^2 + q')
    void derivatives(double xi, cplx& h0, cplx& h1, cplx& h2) const {
        double u = xi + x;
        double denom = u * u + y * y;
        h0 = h(xi);
        cplx q = (-(1.0 + 2.0 * nu) * u + cplx{0.0, 2.0 * ell * y}) / denom;
        cplx qp = ((1.0 + 2.0 * nu) * (u * u - y * y) - cplx{0.0, 4.0 * ell * u * y}) /
                  (denom * denom);
        h1 = h0 * q;
        h2 = h0 * (q * q + qp);
    }
};

} // namespace detail

// A^delta phi_ell(g) = int e(-delta xi) phi_ell(w n[xi] g) d xi.
// The finite part is adaptive quadrature on [-Xi - x, Xi - x] (centered on
// the u variable); the tails are three-term integration-by-parts corrections
// with analytic h', h''.  The ell = 0 path is validated against the K-Bessel
// closed form; ell != 0 is experimental.
inline cplx jacquet_transform(cplx nu, int ell, int delta, const GroupPoint& g,
                              QuadratureSpec spec = {}) {
    require(delta == +1 || delta == -1, "jacquet_transform: delta must be +-1");
    spec.validate();
    const double tol = std::max(spec.abs_tol, 1e-12);

    detail::JacquetIntegrand J{nu, ell, g.x, g.y, g.theta};

    // choose the truncation from the by-parts error estimate
    double order_scale = 3.0 + 2.0 * std::abs(nu) + 2.0 * std::abs(ell);
    double Xi = std::max({32.0, 8.0 * g.y, 4.0 * order_scale});
    double err_est = 0.0;
    for (int i = 0; i < 14; ++i) {
        cplx h0p, h1p, h2p, h0m, h1m, h2m;
        J.derivatives(Xi - g.x, h0p, h1p, h2p);
        J.derivatives(-Xi - g.x, h0m, h1m, h2m);
        err_est = (std::abs(h2p) + std::abs(h2m)) * (3.0 * order_scale / Xi) /
                  std::pow(two_pi, 3);
        if (err_est < 0.25 * tol) break;
        Xi *= 2.0;
    }
    if (err_est >= 0.25 * tol)
        throw convergence_error("jacquet_transform: integration-by-parts tail does not reach "
                                "the requested tolerance");

    const double lo = -Xi - g.x, hi = Xi - g.x;
    // oscillation of e(-delta xi) sets the base panel width; the h-phase of
    // large |nu| adds its own near u = 0
    std::size_t init = static_cast<std::size_t>((hi - lo) * 2.0) +
                       static_cast<std::size_t>(4.0 * std::abs(nu.imag())) + 8;
    QuadratureSpec qs = spec;
    qs.abs_tol = 0.5 * tol;
    auto f = [&](double xi) { return additive_character(-delta * xi) * J.h(xi); };
    auto main = integrate(f, lo, hi, qs, init);

    // upper tail at xi = hi, lower tail at xi = lo
    const cplx den{0.0, two_pi * static_cast<double>(delta)}; // 2 pi i delta
    cplx h0, h1, h2;
    J.derivatives(hi, h0, h1, h2);
    cplx upper = additive_character(-delta * hi) * (h0 / den + h1 / (den * den) +
                                                    h2 / (den * den * den));
    J.derivatives(lo, h0, h1, h2);
    cplx lower = -additive_character(-delta * lo) * (h0 / den + h1 / (den * den) +
                                                     h2 / (den * den * den));
    return main.value + upper + lower;
}

// Closed form for the ell = 0 Whittaker kernel at g = a[y], nu = ir:
//   A^+- phi_0(a[y]) = 2 pi^{1/2+nu} sqrt(y) K_{ir}(2 pi y) / Gamma(1/2+nu)
inline cplx jacquet_whittaker_closed_form(double r, double y) {
    require(y > 0.0, "jacquet_whittaker_closed_form: y must be > 0");
    cplx nu{0.0, r};
    return 2.0 * std::pow(cplx{pi, 0.0}, 0.5 + nu) * std::sqrt(y) *
           bessel_k_imag(r, two_pi * y) / complex_gamma(0.5 + nu);
}

// ---------------------------------------------------------------------------
// Truncated Maass expansion.

enum class MaassBackend { kbessel, jacquet };

namespace detail {

// |pi^{-2 nu} Gamma(|l|+nu+1/2) / Gamma(|l|-nu+1/2)|^{1/2}; for nu = ir the
// inner modulus is exactly 1, which is asserted at runtime.
inline double maass_prefactor(double r, int ell) {
    cplx nu{0.0, r};
    double al = std::abs(ell);
    cplx ratio = std::pow(cplx{pi, 0.0}, -2.0 * nu) * complex_gamma(al + nu + 0.5) /
                 complex_gamma(al - nu + 0.5);
    double mod = std::abs(ratio);
    if (std::abs(mod - 1.0) > 1e-10)
        throw error("maass_prefactor: Gamma-ratio modulus deviates from 1 for nu = ir");
    return std::sqrt(mod);
}

} // namespace detail

// Tail envelope of the truncated expansion at the first omitted index.
inline double maass_tail_envelope(const MaassForm& form, double y, int n_from, int ell = 0) {
    (void)ell;
    double c_rho = std::max(1.0, form.max_abs_coeff());
    double kscale = std::abs(2.0 * std::pow(pi, 0.5) / complex_gamma(cplx{0.5, form.r}));
    double first = 2.0 * c_rho / std::sqrt(static_cast<double>(n_from)) * kscale *
                   std::sqrt(n_from * y) * bessel_k0_bound(two_pi * n_from * y);
    return first / std::max(1e-12, -std::expm1(-two_pi * y));
}

// F(g) = pref * sum_{n != 0} rho(n)/sqrt|n| A^{sgn n} phi_ell(a[|n|] g),
// negative n mirrored from positive n with parity +1.  Truncated at n_trunc
// with an explicit tail envelope check.
inline cplx maass_eval(const MaassForm& form, const GroupPoint& g, int ell, int n_trunc,
                       MaassBackend backend = MaassBackend::kbessel, QuadratureSpec spec = {},
                       double tail_tol = 1e-8) {
    form.validate();
    require(n_trunc >= 1 && n_trunc <= form.n_coeff(),
            "maass_eval: n_trunc must be in [1, n_coeff]");
    if (backend == MaassBackend::kbessel)
        require(ell == 0, "maass_eval: the K-Bessel backend serves ell = 0 only");

    double env = maass_tail_envelope(form, g.y, n_trunc + 1, ell);
    if (env > tail_tol)
        throw truncation_error("maass_eval: truncation insufficient at y = " +
                               std::to_string(g.y) + ", tail envelope " + std::to_string(env));

    const double pref = detail::maass_prefactor(form.r, ell);
    const double x_red = std::remainder(g.x, 1.0); // evaluators are 1-periodic in x
    const cplx nu{0.0, form.r};

    kahan_csum acc;
    for (long long n = 1; n <= n_trunc; ++n) {
        double rho = form.coeff(n);
        if (rho == 0.0) continue;
        cplx term;
        if (backend == MaassBackend::kbessel) {
            cplx W = jacquet_whittaker_closed_form(form.r, n * g.y);
            term = (additive_character(n * x_red) + additive_character(-n * x_red)) * W;
        } else {
            GroupPoint pt{std::remainder(n * x_red, 1.0), n * g.y, g.theta};
            term = jacquet_transform(nu, ell, +1, pt, spec) +
                   jacquet_transform(nu, ell, -1, pt, spec);
        }
        acc.add(rho / std::sqrt(static_cast<double>(n)) * term);
    }
    return pref * acc.value();
}

// ---------------------------------------------------------------------------
// Casimir operator by central finite differences with Richardson
// extrapolation:  Omega = -y^2 (dxx + dyy) + y dx dtheta.

struct CasimirResult {
    cplx value{0.0, 0.0};
    double richardson_delta = 0.0; // |D(h/2) - D(h)| convergence diagnostic
};

inline CasimirResult casimir_apply_fd(const std::function<cplx(const GroupPoint&)>& fn,
                                      const GroupPoint& g, double h = 0.0,
                                      double max_disagreement = 0.05) {
    if (h == 0.0) h = g.y / 200.0;
    require(h > 0.0 && h < 0.5 * g.y, "casimir_apply_fd: step must satisfy 0 < h < y/2");

    auto omega = [&](double hh) -> cplx {
        auto at = [&](double dx, double dy, double dth) {
            return fn(GroupPoint{g.x + dx, g.y + dy, g.theta + dth});
        };
        cplx f0 = fn(g);
        cplx fxx = (at(hh, 0, 0) - 2.0 * f0 + at(-hh, 0, 0)) / (hh * hh);
        cplx fyy = (at(0, hh, 0) - 2.0 * f0 + at(0, -hh, 0)) / (hh * hh);
        cplx fxt = (at(hh, 0, hh) - at(hh, 0, -hh) - at(-hh, 0, hh) + at(-hh, 0, -hh)) /
                   (4.0 * hh * hh);
        return -g.y * g.y * (fxx + fyy) + g.y * fxt;
    };

    cplx d1 = omega(h);
    cplx d2 = omega(0.5 * h);
    CasimirResult out;
    out.value = (4.0 * d2 - d1) / 3.0; // Richardson on the O(h^2) scheme
    out.richardson_delta = std::abs(d2 - d1);
    if (out.richardson_delta > max_disagreement * (1.0 + std::abs(out.value)))
        throw convergence_error("casimir_apply_fd: step too large, Richardson stages disagree by " +
                                std::to_string(out.richardson_delta));
    return out;
}

// (Omega F)(g) / F(g), the finite-difference eigenvalue estimate
inline double casimir_eigenvalue_estimate(const std::function<cplx(const GroupPoint&)>& fn,
                                          const GroupPoint& g, double h = 0.0) {
    cplx f0 = fn(g);
    require(std::abs(f0) > 1e-12, "casimir_eigenvalue_estimate: |F(g)| too small at this point");
    auto r = casimir_apply_fd(fn, g, h);
    return (r.value / f0).real();
}

// ---------------------------------------------------------------------------
// Fourier orthogonality: int_0^1 e(n x) conj(e((n+m) x)) dx = delta_{m,0},
// evaluated by quadrature (the contract is delta within 1e-12).
inline double fourier_orthogonality(long long n, long long m, QuadratureSpec spec = {}) {
    spec.validate();
    auto f = [&](double x) {
        return additive_character(static_cast<double>(n) * x) *
               std::conj(additive_character(static_cast<double>(n + m) * x));
    };
    std::size_t init = static_cast<std::size_t>(std::abs(m)) + 4;
    auto r = integrate(f, 0.0, 1.0, spec, init);
    if (std::abs(r.value.imag()) > 1e-12)
        throw convergence_error("fourier_orthogonality: imaginary part failed to cancel");
    return r.value.real();
}

// ---------------------------------------------------------------------------
// L-series of the coefficient table.

enum class LfunScheme { direct, smoothed };

struct LfunResult {
    cplx value{0.0, 0.0};
    double tail_diagnostic = 0.0; // magnitude of the last 10% block
};

inline LfunResult l_function_eval(const MaassForm& form, cplx s,
                                  LfunScheme scheme = LfunScheme::direct, double X = 0.0,
                                  double tail_tol = 1e-8) {
    form.validate();
    const int N = form.n_coeff();

    if (scheme == LfunScheme::direct) {
        require(s.real() > 1.0, "l_function_eval: direct scheme requires Re s > 1");
    } else {
        require(X > 0.0, "l_function_eval: smoothed scheme requires a cutoff X > 0");
        // damping must already be negligible past the stored coefficients
        double c_rho = std::max(1.0, form.max_abs_coeff());
        double beyond = c_rho * std::exp(-(static_cast<double>(N) / X) * (N / X)) *
                        std::pow(static_cast<double>(N), -s.real()) * (X * X / (2.0 * N) + 1.0);
        if (beyond > tail_tol)
            throw truncation_error(
                "l_function_eval: smoothing cutoff still weights n > n_coeff above tolerance");
    }

    kahan_csum acc, last_block;
    const int block_from = N - N / 10;
    for (long long n = 1; n <= N; ++n) {
        double rho = form.coeff(n);
        if (rho == 0.0) continue;
        cplx term = rho * std::exp(-s * std::log(static_cast<double>(n)));
        if (scheme == LfunScheme::smoothed) {
            double z = static_cast<double>(n) / X;
            term *= std::exp(-z * z);
        }
        acc.add(term);
        if (n >= block_from) last_block.add(term);
    }
    return {acc.value(), std::abs(last_block.value())};
}

// Z_2(L, g) = int |L(1/2+it)|^2 g(t) dt with the smoothed evaluator at
// cutoff X.  Heuristic by construction: the critical-line values rest on
// Gaussian-damped partial sums, so the contract is stability under cutoff
// changes rather than independent ground truth.
struct LMomentResult {
    double value = 0.0;
    double error_bound = 0.0;
};

inline LMomentResult l_moment(const MaassForm& form, const WeightSpec& g, QuadratureSpec spec = {},
                              double X = 16.0) {
    form.validate();
    g.validate();
    spec.validate();
    auto [lo, hi] = g.support(0.1 * spec.abs_tol);
    auto f = [&](double t) -> cplx {
        cplx L = l_function_eval(form, {0.5, t}, LfunScheme::smoothed, X).value;
        return {std::norm(L) * g.profile(t), 0.0};
    };
    std::size_t init = static_cast<std::size_t>((hi - lo) / std::max(0.25, g.delta / 8.0)) + 8;
    auto r = integrate(f, lo, hi, spec, init);
    return {g.amplitude * r.value.real(), std::abs(g.amplitude) * r.error_bound};
}

} // namespace zetalab
