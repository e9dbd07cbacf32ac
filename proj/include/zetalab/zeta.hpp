#pragma once

// Critical-line zeta evaluation and zeta-sums.
//
// Two independent evaluators back zeta_critical:
//
//  * euler_maclaurin - classical Euler-Maclaurin with adjustable truncation
//    (the reference oracle; its length factor and correction order are
//    caller-tunable so a doubled-order run is an independent check).
//
//  * riemann_siegel - the main sum of length floor(sqrt(t/2pi)) plus the
//    reflected structure.  For moderate t the remainder is computed exactly:
//    writing zeta(s) = sum_{n<=m} n^{-s} + M^{1-s}/(s-1)
//                      + sum_{k!=0} int_M^inf x^{-s} e(kx) dx   (M = m + 1/2)
//    by Poisson summation, each dual integral is evaluated by numerical
//    steepest descent (a real saddle leg where the stationary point
//    x = t/(2 pi k) lies beyond M, then a contour rotated into the decaying
//    half-plane), and the far k-tail is summed by integration by parts in
//    +-k pairs, where odd orders cancel.  This reaches ~1e-11 absolute down
//    to t = 10, where the classical asymptotic expansion stalls near 1e-5.
//    For large t the classical expansion (theta function, main sum, and
//    correction terms built from the cos/cos kernel) takes over.

#include <vector>

#include "zetalab/core.hpp"
#include "zetalab/quadrature.hpp"

namespace zetalab {

enum class ZetaMethod { euler_maclaurin, riemann_siegel };

// validated range of zeta_critical; beyond it the CLI warns
inline bool zeta_range_validated(double t) { return std::abs(t) <= 1e6; }

// ---------------------------------------------------------------------------
// zeta-sum: sum_{N < n <= 2N} n^{it}, optionally with a per-term weight table.

struct ZetaSumSpec {
    long long n_start = 1; // N
    double t = 0.0;
    std::vector<double> weights; // optional; weights[j] multiplies n = N+1+j

    void validate() const {
        require(n_start >= 1, "ZetaSumSpec: N must be >= 1");
        require(std::isfinite(t), "ZetaSumSpec: t must be finite");
        if (!weights.empty())
            require(static_cast<long long>(weights.size()) == n_start,
                    "ZetaSumSpec: weight table must have one entry per term (N entries)");
        for (double w : weights)
            require(std::isfinite(w) && w >= 0.0, "ZetaSumSpec: weights must be finite and >= 0");
    }
};

inline cplx zeta_sum(const ZetaSumSpec& spec) {
    spec.validate();
    kahan_csum acc;
    for (long long n = spec.n_start + 1; n <= 2 * spec.n_start; ++n) {
        double phase = spec.t * std::log(static_cast<double>(n));
        cplx term{std::cos(phase), std::sin(phase)};
        if (!spec.weights.empty()) term *= spec.weights[n - spec.n_start - 1];
        acc.add(term);
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin.

struct EulerMaclaurinOptions {
    double length_factor = 0.5; // direct sum length ~ factor * (|Im s| + 20)
    int bernoulli_terms = 13;   // correction terms (2k-th Bernoulli, k <= this)
};

namespace detail {

// B_{2k} for k = 1..14 as exact rationals
inline double bernoulli_2k(int k) {
    static const double num[15] = {0, 1, -1, 1, -1, 5, -691, 7, -3617, 43867,
                                   -174611, 854513, -236364091, 8553103, -23749461029.0};
    static const double den[15] = {1, 6, 30, 42, 30, 66, 2730, 6, 510, 798,
                                   330, 138, 2730, 6, 870};
    return num[k] / den[k];
}

inline cplx pow_ll(long long n, cplx minus_s_exponent) {
    // n^{e} for real n > 0
    return std::exp(minus_s_exponent * std::log(static_cast<double>(n)));
}

} // namespace detail

inline cplx zeta_euler_maclaurin(cplx s, EulerMaclaurinOptions opt = {}) {
    if (s == cplx{1.0, 0.0}) throw pole_error("zeta: pole at s = 1");
    require(opt.length_factor > 0.0, "EulerMaclaurinOptions: length_factor must be > 0");
    require(opt.bernoulli_terms >= 1 && opt.bernoulli_terms <= 14,
            "EulerMaclaurinOptions: bernoulli_terms in [1, 14]");

    const long long N =
        std::max<long long>(16, static_cast<long long>(
                                    std::ceil(opt.length_factor * (std::abs(s.imag()) + 20.0))));

    kahan_csum acc;
    for (long long n = 1; n < N; ++n) acc.add(detail::pow_ll(n, -s));

    const cplx Npow_1ms = detail::pow_ll(N, 1.0 - s);
    const cplx Npow_ms = detail::pow_ll(N, -s);
    acc.add(Npow_1ms / (s - 1.0));
    acc.add(0.5 * Npow_ms);

    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    cplx poch = s;           // product over j = 0..2k-2, starts at k = 1
    double fact = 2.0;       // (2k)!
    double rpow = 1.0 / N;   // N^{-2k+1}
    double tail_scale = 1.0 + std::abs(acc.value());
    cplx term{0.0, 0.0};
    for (int k = 1; k <= opt.bernoulli_terms; ++k) {
        term = (detail::bernoulli_2k(k) / fact) * poch * Npow_ms * rpow;
        acc.add(term);
        if (std::abs(term) < 1e-17 * tail_scale) break;
        poch *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        rpow /= static_cast<double>(N) * static_cast<double>(N);
    }
    if (std::abs(term) > 1e-10 * tail_scale)
        throw convergence_error("zeta_euler_maclaurin: correction series not converged; "
                                "increase length_factor or bernoulli_terms");
    return acc.value();
}

// ---------------------------------------------------------------------------
// Riemann-Siegel, exact-remainder path.

namespace detail {

// alternating tail sum A_p(K) = sum_{k > K} (-1)^k / k^p
inline double alternating_tail(int p, long long K) {
    kahan_sum s;
    const int J = 2000;
    double sign = (K + 1) % 2 == 0 ? 1.0 : -1.0;
    for (int j = 1; j <= J; ++j) {
        double k = static_cast<double>(K + j);
        s.add(sign * std::pow(k, -p));
        sign = -sign;
    }
    // Boole tail from n0 = K + J + 1:  (-1)^{n0} [f/2 - f'/4 + f'''/48]
    double n0 = static_cast<double>(K + J + 1);
    double sgn0 = (K + J + 1) % 2 == 0 ? 1.0 : -1.0;
    double f = std::pow(n0, -p);
    double fp = -p * std::pow(n0, -p - 1);
    double fppp = -static_cast<double>(p) * (p + 1) * (p + 2) * std::pow(n0, -p - 3);
    s.add(sgn0 * (0.5 * f - 0.25 * fp + fppp / 48.0));
    return s.value();
}

// One-sided dual integral J(k, sign) = int_M^inf x^{-s} e^{sign 2 pi i k x} dx
// evaluated by deformation into the decaying half-plane.
struct RsPoissonWorker {
    cplx s;
    double t;
    double M;
    QuadratureSpec leg_spec;

    cplx integrand_vertical(double x0, double u, double k2pi, int updown) const {
        // x = x0 + i*updown*u;  e^{sign 2 pi i k x} contributes e^{-k2pi u}
        cplx x{x0, updown * u};
        return std::exp(-s * std::log(x) - k2pi * u);
    }

    // int_0^inf (x0 + i du)^{-s} e^{-k2pi u} du, rotated leg shared by both signs
    cplx vertical_leg(double x0, double k2pi, int updown) const {
        // decay exponent g(u) = updown * t * atan(u/x0) - k2pi * u  (< 0 eventually)
        auto g = [&](double u) { return updown * t * std::atan(u / x0) - k2pi * u; };
        double U = 42.0 / k2pi;
        while (g(U) > -42.0) U *= 1.5;
        // phase scale along the leg for the initial split and the noise floor
        double phase = std::abs(t) * (0.5 * std::log1p(U * U / (x0 * x0)) + std::abs(std::log(x0)));
        std::size_t init = static_cast<std::size_t>(phase / 3.0) + 4;
        QuadratureSpec vspec = leg_spec;
        vspec.f_noise = 2.2e-16 * (4.0 + phase);
        auto f = [&](double u) { return integrand_vertical(x0, u, k2pi, updown); };
        auto r = integrate(f, 0.0, U, vspec, init);
        return r.value;
    }

    // J(k, +1): saddle at x* = t / (2 pi k); real leg [M, 2x*] if x* > M
    cplx j_plus(long long k) const {
        const double k2pi = two_pi * static_cast<double>(k);
        const double xstar = t / k2pi;
        cplx total{0.0, 0.0};
        double x0 = M;
        if (xstar > M) {
            double xb = 2.0 * xstar;
            // total phase variation of 2 pi k x - t ln x over [M, xb]
            double v1 = t * std::log(xstar / M) - k2pi * (xstar - M);
            double v2 = k2pi * (xb - xstar) - t * std::log(xb / xstar);
            std::size_t init = static_cast<std::size_t>((v1 + v2) / 3.0) + 8;
            // tolerance scaled with the phase volume: long oscillatory legs
            // carry a proportionally larger rounding floor
            QuadratureSpec rspec = leg_spec;
            rspec.abs_tol = std::max(leg_spec.abs_tol, 2e-17 * (v1 + v2));
            rspec.f_noise = 2.2e-16 * (4.0 + k2pi * xb + t * std::abs(std::log(xb)));
            auto f = [&](double x) {
                double ph = k2pi * x - t * std::log(x);
                return std::pow(x, -0.5) * cplx{std::cos(ph), std::sin(ph)};
            };
            auto r = integrate(f, M, xb, rspec, init);
            total += r.value;
            x0 = xb;
        }
        // e^{2 pi i k x0} * i * vertical (upward)
        double ph0 = k2pi * x0;
        cplx rot = cplx{0.0, 1.0} * cplx{std::cos(ph0), std::sin(ph0)};
        total += rot * vertical_leg(x0, k2pi, +1);
        return total;
    }

    // J(k, -1): no stationary point; rotate downward at M
    cplx j_minus(long long k) const {
        const double k2pi = two_pi * static_cast<double>(k);
        double ph0 = -k2pi * M;
        cplx rot = cplx{0.0, -1.0} * cplx{std::cos(ph0), std::sin(ph0)};
        return rot * vertical_leg(M, k2pi, -1);
    }
};

inline cplx zeta_rs_poisson(double t) {
    const cplx s{0.5, t};
    const double a = std::sqrt(t / two_pi);
    const long long m = static_cast<long long>(std::floor(a));
    const double M = static_cast<double>(m) + 0.5;

    kahan_csum acc;
    for (long long n = 1; n <= m; ++n) acc.add(pow_ll(n, -s));
    acc.add(std::pow(M, 1.0 - s) / (s - 1.0));

    RsPoissonWorker w;
    w.s = s;
    w.t = t;
    w.M = M;
    w.leg_spec.abs_tol = 1e-12;
    w.leg_spec.max_depth = 22;

    const long long K = std::max<long long>(
        static_cast<long long>(std::ceil(a * a / M)) + 48,
        static_cast<long long>(std::ceil(2.0 * t / (pi * M))));

    for (long long k = 1; k <= K; ++k) {
        acc.add(w.j_plus(k));
        acc.add(w.j_minus(k));
    }

    // Paired integration-by-parts tail over k > K.  Odd-order boundary terms
    // cancel between +k and -k; the surviving orders give, for odd j,
    //   T_j = -2 (-1)^{(j+1)/2} prod_{i<j}(s+i) M^{-s-j} (2 pi)^{-(j+1)} A_{j+1}(K).
    cplx prod{1.0, 0.0}; // prod_{i=0}^{j-1} (s+i)
    int absorbed = 0;
    for (int j = 1; j <= 15; j += 2) {
        while (absorbed < j) {
            prod *= (s + static_cast<double>(absorbed));
            ++absorbed;
        }
        double parity = (((j + 1) / 2) % 2 == 0) ? 1.0 : -1.0;
        cplx term = -2.0 * parity * prod * std::pow(M, -s - static_cast<double>(j)) *
                    std::pow(two_pi, -(j + 1.0)) * alternating_tail(j + 1, K);
        acc.add(term);
        if (std::abs(term) < 1e-16) break;
    }
    return acc.value();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Riemann-Siegel, asymptotic-series path (large t).

// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi, by the standard asymptotic
// expansion; accurate far below 1e-10 for t >= 100.
inline double riemann_siegel_theta(double t) {
    require(t > 0.0, "riemann_siegel_theta: t must be positive");
    double lt = std::log(t / two_pi);
    return 0.5 * t * lt - 0.5 * t - pi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t) +
           31.0 / (80640.0 * std::pow(t, 5));
}

namespace detail {

// The cos/cos kernel of the Riemann-Siegel correction terms,
//   Psi(z) = cos(2 pi (z^2 - z - 1/16)) / cos(2 pi z),
// entire after removing the common zeros at z0 = 1/4 + j/2.  Near those
// points numerator and denominator are evaluated as exact sines of small
// shifts so the ratio stays fully accurate.
inline cplx rs_psi(cplx z) {
    double j = std::round(2.0 * (z.real() - 0.25));
    cplx z0{0.25 + 0.5 * j, 0.0};
    cplx eps = z - z0;
    if (std::abs(eps) < 0.05) {
        // A(z) - A(z0) = 2 pi ((2 z0 - 1) eps + eps^2), A(z0) = q pi / 2,
        // q = j^2 - j - 1 odd; cos(2 pi z) = -sin(2 pi z0) sin(2 pi eps).
        long long ji = static_cast<long long>(j);
        long long q = ji * ji - ji - 1;
        double sA = ((q % 4 + 4) % 4 == 1) ? 1.0 : -1.0;   // sin(q pi / 2)
        double sB = (((ji % 2) + 2) % 2 == 0) ? 1.0 : -1.0; // sin(2 pi z0) = sin(pi/2 + pi j)
        cplx delta = two_pi * ((2.0 * z0.real() - 1.0) * eps + eps * eps);
        return (sA / sB) * std::sin(delta) / std::sin(two_pi * eps);
    }
    cplx A = two_pi * (z * z - z - 0.0625);
    return std::cos(A) / std::cos(two_pi * z);
}

// n-th derivative of Psi at real p by the Cauchy integral on a circle that
// keeps clear of the removable singularities.
inline double rs_psi_derivative(double p, int n) {
    const int N = 128;
    double rho = 0.3;
    for (int attempt = 0; attempt < 8; ++attempt) {
        bool ok = true;
        for (int i = 0; i < N && ok; ++i) {
            double phi = two_pi * i / N;
            cplx z = cplx{p, 0.0} + rho * cplx{std::cos(phi), std::sin(phi)};
            double jj = std::round(2.0 * (z.real() - 0.25));
            cplx z0{0.25 + 0.5 * jj, 0.0};
            if (std::abs(z - z0) < 0.02) ok = false;
        }
        if (ok) break;
        rho += 0.07;
    }
    kahan_csum acc;
    for (int i = 0; i < N; ++i) {
        double phi = two_pi * i / N;
        cplx w{std::cos(phi), std::sin(phi)};
        cplx z = cplx{p, 0.0} + rho * w;
        // f^(n)(p) = n!/(N rho^n) sum f(z_i) e^{-i n phi_i}
        acc.add(rs_psi(z) * std::pow(w, -n));
    }
    double nfact = 1.0;
    for (int i = 2; i <= n; ++i) nfact *= i;
    cplx d = acc.value() * (nfact / (N * std::pow(rho, n)));
    return d.real();
}

inline cplx zeta_rs_series(double t) {
    const double a = std::sqrt(t / two_pi);
    const long long m = static_cast<long long>(std::floor(a));
    const double p = a - static_cast<double>(m);
    const double theta = riemann_siegel_theta(t);

    kahan_sum zsum;
    for (long long n = 1; n <= m; ++n) {
        double ph = theta - t * std::log(static_cast<double>(n));
        zsum.add(std::cos(ph) / std::sqrt(static_cast<double>(n)));
    }
    double Z = 2.0 * zsum.value();

    double c0 = rs_psi({p, 0.0}).real();
    double c1 = -rs_psi_derivative(p, 3) / (96.0 * pi * pi);
    double c2 = rs_psi_derivative(p, 2) / (64.0 * pi * pi) +
                rs_psi_derivative(p, 6) / (18432.0 * std::pow(pi, 4));
    double u = std::pow(t / two_pi, -0.5);
    double corr = std::pow(t / two_pi, -0.25) * (c0 + u * (c1 + u * c2));
    Z += (m % 2 == 0 ? -1.0 : 1.0) * corr; // (-1)^{m-1}

    cplx phase{std::cos(theta), -std::sin(theta)}; // e^{-i theta}
    return phase * Z;
}

} // namespace detail

// threshold above which the asymptotic series is both fast and far below
// the 1e-8 contract (the kept correction orders leave ~1e-10 there)
inline constexpr double rs_series_threshold = 5e4;

// ---------------------------------------------------------------------------
// zeta(1/2 + it).

inline cplx zeta_critical(double t, ZetaMethod method = ZetaMethod::euler_maclaurin,
                          EulerMaclaurinOptions em_opt = {}) {
    if (t < 0.0) return std::conj(zeta_critical(-t, method, em_opt));
    if (method == ZetaMethod::euler_maclaurin)
        return zeta_euler_maclaurin(cplx{0.5, t}, em_opt);
    require(t >= 10.0, "zeta_critical: riemann_siegel method requires t >= 10");
    if (t < rs_series_threshold) return detail::zeta_rs_poisson(t);
    return detail::zeta_rs_series(t);
}

} // namespace zetalab

