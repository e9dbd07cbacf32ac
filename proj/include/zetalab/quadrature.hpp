#pragma once

// Adaptive quadrature for (possibly oscillatory) complex integrands.
//
// The engine is a globally adaptive Gauss-Legendre pair: each panel is
// estimated with 15-point Gauss-Legendre and the error gauged against the
// 7-point rule.  Panels live in a worst-first heap; the worst panel is
// bisected until the summed error estimate drops below the tolerance or the
// panel budget implied by max_depth runs out.  Node tables are generated at
// startup by Newton iteration on the Legendre recurrence, so there are no
// transcribed magic constants to mistype.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "zetalab/core.hpp"

namespace zetalab {

struct QuadratureSpec {
    enum class Scheme { adaptive, fixed_panel };

    Scheme scheme = Scheme::adaptive;
    double abs_tol = 1e-10;
    int max_depth = 20;     // panel budget is 64 * 2^min(max_depth, 24)
    int fixed_panels = 256; // used only by Scheme::fixed_panel

    // Relative noise of integrand values (units of the local |f| mass).  For
    // integrands built from huge phase arguments (t log x ~ 1e4 rad) the
    // G15-G7 estimate saturates at eps * |phase|; callers that know their
    // phase scale raise this so refinement stops at the genuine floor
    // instead of chasing noise.  Panels at the floor are not treated as a
    // convergence failure.
    double f_noise = 4e-16;

    void validate() const {
        require(abs_tol > 0.0, "QuadratureSpec: tolerance must be > 0");
        require(max_depth >= 1, "QuadratureSpec: max refinement depth must be >= 1");
        require(fixed_panels >= 1, "QuadratureSpec: fixed_panels must be >= 1");
        require(f_noise > 0.0, "QuadratureSpec: f_noise must be > 0");
    }
};

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double error_bound = 0.0;
    std::size_t panels = 0;
    std::size_t evaluations = 0;

    double real() const { return value.real(); }
};

namespace detail {

// Legendre nodes/weights on [-1, 1] by Newton iteration from the Chebyshev
// initial guesses; standard and accurate to machine precision.
inline void legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (4.0 * i + 3.0) / (4.0 * n + 2.0));
        double dp = 0.0;
        for (int it = 0; it < 64; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // recompute dp at the converged root for the weight formula
                p0 = 1.0; p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

struct GaussPair {
    std::vector<double> n7, w7, n15, w15;
    GaussPair() {
        legendre_rule(7, n7, w7);
        legendre_rule(15, n15, w15);
    }
    static const GaussPair& instance() {
        static const GaussPair g;
        return g;
    }
};

struct Panel {
    double a, b;
    cplx value;
    double err;
    double l1; // sum of |w f| h over the 15-point rule: sets the rounding floor
};

struct PanelWorse {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.err != q.err) return p.err < q.err;
        return p.a > q.a; // deterministic tie-break
    }
};

template <class F>
Panel estimate_panel(F&& f, double a, double b, std::size_t& evals) {
    const GaussPair& g = GaussPair::instance();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s15{0.0, 0.0}, s7{0.0, 0.0};
    double l1 = 0.0;
    for (int i = 0; i < 15; ++i) {
        cplx v = f(c + h * g.n15[i]);
        s15 += g.w15[i] * v;
        l1 += g.w15[i] * std::abs(v);
    }
    for (int i = 0; i < 7; ++i)
        s7 += g.w7[i] * f(c + h * g.n7[i]);
    evals += 22;
    s15 *= h;
    s7 *= h;
    return Panel{a, b, s15, std::abs(s15 - s7), l1 * h};
}

// Shared worst-first refinement loop.  Refines to comfortably below the
// tolerance so the reported bound shrinks monotonically as the requested
// tolerance shrinks; stops early when the estimates hit the integrand's
// declared noise floor.
template <class F>
QuadratureResult refine_and_sum(F&& f, std::vector<Panel>&& heap, const QuadratureSpec& spec,
                                QuadratureResult& out) {
    const PanelWorse cmp;
    const std::size_t budget =
        64u * (std::size_t{1} << std::min(spec.max_depth, 24)) + heap.size();
    std::make_heap(heap.begin(), heap.end(), cmp);

    double total_err = 0.0;
    for (const auto& p : heap) total_err += p.err;

    auto recompute_total = [&]() {
        kahan_sum s;
        for (const auto& p : heap) s.add(p.err);
        total_err = s.value();
    };

    const double target = 0.45 * spec.abs_tol;
    bool noise_limited = false;
    std::size_t since_recompute = 0;
    while (total_err > target && heap.size() < budget) {
        // the incremental error total drifts over many updates; refresh it
        // before trusting a borderline value
        if (++since_recompute >= std::max<std::size_t>(512, heap.size() / 4)) {
            recompute_total();
            since_recompute = 0;
            if (total_err <= target) break;
        }
        Panel worst = heap.front();
        if (worst.b - worst.a <= std::abs(worst.a) * 1e-15 + 1e-300)
            break; // cannot subdivide further in double precision
        if (worst.err <= spec.f_noise * worst.l1) {
            // worst panel's estimate is integrand noise, not rule error
            recompute_total();
            noise_limited = true;
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), cmp);
        heap.pop_back();
        total_err -= worst.err;
        double mid = 0.5 * (worst.a + worst.b);
        auto l = estimate_panel(f, worst.a, mid, out.evaluations);
        auto r = estimate_panel(f, mid, worst.b, out.evaluations);
        total_err += l.err + r.err;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end(), cmp);
    }

    std::sort(heap.begin(), heap.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });

    kahan_csum acc;
    kahan_sum errs;
    for (const auto& p : heap) {
        acc.add(p.value);
        errs.add(p.err);
    }
    out.value = acc.value();
    out.error_bound = errs.value();
    out.panels = heap.size();

    if (out.error_bound > spec.abs_tol && !noise_limited)
        throw convergence_error("quadrature: error estimate " + fmt_sci(out.error_bound) +
                                " still above tolerance " + fmt_sci(spec.abs_tol) +
                                " after " + std::to_string(out.panels) + " panels");
    return out;
}

} // namespace detail

// Integrate f over [a, b].  initial_panels pre-splits the interval uniformly,
// which is how oscillatory integrands communicate their resolution scale; the
// adaptive refinement then works locally.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                           std::size_t initial_panels = 1) {
    spec.validate();
    require(std::isfinite(a) && std::isfinite(b), "integrate: endpoints must be finite");

    QuadratureResult out;
    if (a == b) return out;

    if (spec.scheme == QuadratureSpec::Scheme::fixed_panel) {
        std::size_t n = std::max<std::size_t>(spec.fixed_panels, initial_panels);
        kahan_csum acc;
        kahan_sum errs;
        for (std::size_t i = 0; i < n; ++i) {
            double pa = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
            double pb = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n);
            auto p = detail::estimate_panel(f, pa, pb, out.evaluations);
            acc.add(p.value);
            errs.add(p.err);
        }
        out.value = acc.value();
        out.error_bound = errs.value();
        out.panels = n;
        if (out.error_bound > spec.abs_tol)
            throw convergence_error("quadrature: fixed-panel error estimate " +
                                    detail::fmt_sci(out.error_bound) + " exceeds tolerance " +
                                    detail::fmt_sci(spec.abs_tol));
        return out;
    }

    initial_panels = std::max<std::size_t>(1, initial_panels);
    std::vector<detail::Panel> heap;
    heap.reserve(initial_panels * 2);
    for (std::size_t i = 0; i < initial_panels; ++i) {
        double pa = a + (b - a) * static_cast<double>(i) / static_cast<double>(initial_panels);
        double pb = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(initial_panels);
        heap.push_back(detail::estimate_panel(f, pa, pb, out.evaluations));
    }
    return detail::refine_and_sum(f, std::move(heap), spec, out);
}

// Variant taking explicit breakpoints: the initial panels are the
// consecutive intervals, so callers can pre-scale panel widths to a local
// oscillation length.
template <class F>
QuadratureResult integrate(F&& f, const std::vector<double>& breakpoints,
                           const QuadratureSpec& spec) {
    require(breakpoints.size() >= 2, "integrate: need at least two breakpoints");
    spec.validate();

    QuadratureResult out;
    std::vector<detail::Panel> heap;
    heap.reserve(breakpoints.size() * 2);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        require(breakpoints[i] < breakpoints[i + 1], "integrate: breakpoints must increase");
        heap.push_back(detail::estimate_panel(f, breakpoints[i], breakpoints[i + 1],
                                              out.evaluations));
    }
    return detail::refine_and_sum(f, std::move(heap), spec, out);
}

// Decaying-envelope truncation for half-infinite ranges: the integration is
// cut where the caller-declared pointwise envelope falls below tol/10.
template <class Env>
double envelope_cutoff(Env&& envelope, double from, double tol) {
    double step = 1.0;
    double t = from + step;
    for (int i = 0; i < 80; ++i) {
        if (envelope(t) < 0.1 * tol) return t;
        step *= 1.7;
        t = from + step;
    }
    throw convergence_error("quadrature: declared envelope never fell below tolerance/10");
}

// [a, +inf) with a declared decreasing envelope for |f|.
template <class F, class Env>
QuadratureResult integrate_half_line(F&& f, double a, Env&& envelope, const QuadratureSpec& spec,
                                     std::size_t panels_per_unit = 2) {
    double b = envelope_cutoff(envelope, a, spec.abs_tol);
    std::size_t init = std::max<std::size_t>(4, static_cast<std::size_t>((b - a) * panels_per_unit));
    return integrate(f, a, b, spec, init);
}

// (-inf, +inf) with a declared even-ish envelope for |f|.
template <class F, class Env>
QuadratureResult integrate_real_line(F&& f, Env&& envelope, const QuadratureSpec& spec,
                                     std::size_t panels_per_unit = 2) {
    double b = envelope_cutoff(envelope, 0.0, spec.abs_tol);
    double a = -envelope_cutoff([&](double t) { return envelope(-t); }, 0.0, spec.abs_tol);
    std::size_t init = std::max<std::size_t>(4, static_cast<std::size_t>((b - a) * panels_per_unit));
    return integrate(f, a, b, spec, init);
}

} // namespace zetalab
