#pragma once

// Moment integrals of |zeta| against smooth weights, the plain symmetric
// fourth moment, and the empirical subconvexity-ratio scan.

#include <vector>

#include "zetalab/quadrature.hpp"
#include "zetalab/weight.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

namespace detail {

// |zeta(1/2+it)|^{2k} oscillates on the scale 2 pi / log(t/2pi); uniform
// grids under-resolve, so breakpoints shrink with that local scale.
inline std::vector<double> oscillation_breakpoints(double lo, double hi) {
    std::vector<double> pts;
    pts.push_back(lo);
    double t = lo;
    while (t < hi) {
        double w = std::min(2.0, pi / std::max(1.0, std::log1p(std::abs(t) / two_pi)));
        t += w;
        pts.push_back(std::min(t, hi));
    }
    if (pts.back() != hi) pts.push_back(hi);
    return pts;
}

} // namespace detail

struct MomentResult {
    double value = 0.0;
    double error_bound = 0.0;
    bool experimental = false; // set for powers outside {2, 4}
};

// Z(g) = int |zeta(1/2+it)|^{two_k} g(t) dt.  The weight amplitude scales
// the result after quadrature, so linearity in the amplitude is exact and
// refinement is amplitude-invariant.
inline MomentResult moment_integral(int two_k, const WeightSpec& g, QuadratureSpec spec = {},
                                    ZetaMethod method = ZetaMethod::euler_maclaurin) {
    require(two_k >= 1, "moment_integral: power must be >= 1");
    g.validate();
    spec.validate();

    auto [lo, hi] = g.support(0.1 * spec.abs_tol);
    auto pts = detail::oscillation_breakpoints(lo, hi);
    auto f = [&](double t) -> cplx {
        double z = std::abs(zeta_critical(t, method));
        return {std::pow(z, two_k) * g.profile(t), 0.0};
    };
    auto r = integrate(f, pts, spec);

    MomentResult out;
    out.value = g.amplitude * r.value.real();
    out.error_bound = std::abs(g.amplitude) * r.error_bound;
    out.experimental = !(two_k == 2 || two_k == 4);
    return out;
}

// int_{-T}^{T} |zeta(1/2+it)|^4 dt = 2 int_0^T, by reflection symmetry.
inline MomentResult plain_fourth_moment(double T, QuadratureSpec spec = {},
                                        ZetaMethod method = ZetaMethod::euler_maclaurin) {
    require(T >= 0.0 && std::isfinite(T), "plain_fourth_moment: T must be >= 0");
    spec.validate();
    MomentResult out;
    if (T == 0.0) return out;

    auto pts = detail::oscillation_breakpoints(0.0, T);
    auto f = [&](double t) -> cplx {
        double z = std::abs(zeta_critical(t, method));
        return {z * z * z * z, 0.0};
    };
    auto r = integrate(f, pts, spec);
    out.value = 2.0 * r.value.real();
    out.error_bound = 2.0 * r.error_bound;
    return out;
}

// ---------------------------------------------------------------------------
// Empirical scan of |zeta(1/2+it)| / (t^{1/6} log t) on log-spaced samples.

struct ScanSample {
    double t = 0.0;
    double ratio = 0.0;
};

struct ScanReport {
    double max_ratio = 0.0;
    double argmax_t = 0.0;
    std::vector<ScanSample> samples;
};

inline ScanReport subconvexity_ratio_scan(double t_lo, double t_hi, long long samples,
                                          ZetaMethod method = ZetaMethod::euler_maclaurin) {
    require(t_lo >= 2.0, "subconvexity_ratio_scan: t_lo must be >= 2");
    require(t_hi > t_lo, "subconvexity_ratio_scan: need t_lo < t_hi");
    require(samples >= 1, "subconvexity_ratio_scan: need at least one sample");

    ScanReport rep;
    rep.samples.reserve(static_cast<std::size_t>(samples));
    const double lr = std::log(t_hi / t_lo);
    for (long long i = 0; i < samples; ++i) {
        double frac = samples == 1 ? 0.0
                                   : static_cast<double>(i) / static_cast<double>(samples - 1);
        double t = t_lo * std::exp(lr * frac);
        double ratio = std::abs(zeta_critical(t, method)) /
                       (std::pow(t, 1.0 / 6.0) * std::log(t));
        rep.samples.push_back({t, ratio});
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.argmax_t = t;
        }
    }
    return rep;
}

} // namespace zetalab
