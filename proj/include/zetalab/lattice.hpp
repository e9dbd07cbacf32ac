#pragma once

// Exact integer combinatorics of 2x2 matrix sums: the determinant-sign
// partition of box sums, the rank-<=1 (det = 0) stratum, Hecke coset
// representatives with unique factorization, and a truncated Poincare
// series over PSL(2,Z) with an explicit tail bound.

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "zetalab/core.hpp"

namespace zetalab {

namespace detail {

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw overflow_error("IntMatrix2: 64-bit multiply overflow");
    return r;
}

inline long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r))
        throw overflow_error("IntMatrix2: 64-bit subtract overflow");
    return r;
}

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw overflow_error("IntMatrix2: 64-bit add overflow");
    return r;
}

} // namespace detail

// M = (k l; n m) with exact 64-bit entries; overflow raises, never wraps.
struct IntMatrix2 {
    long long k = 0, l = 0, n = 0, m = 0;

    long long det() const {
        return detail::checked_sub(detail::checked_mul(k, m), detail::checked_mul(l, n));
    }

    IntMatrix2 operator*(const IntMatrix2& o) const {
        using detail::checked_add;
        using detail::checked_mul;
        return {checked_add(checked_mul(k, o.k), checked_mul(l, o.n)),
                checked_add(checked_mul(k, o.l), checked_mul(l, o.m)),
                checked_add(checked_mul(n, o.k), checked_mul(m, o.n)),
                checked_add(checked_mul(n, o.l), checked_mul(m, o.m))};
    }

    bool operator==(const IntMatrix2&) const = default;

    static IntMatrix2 identity() { return {1, 0, 0, 1}; }
};

struct BoxSpec {
    long long B = 1;

    void validate() const {
        require(B >= 0, "BoxSpec: B must be >= 0");
        // enumeration walks (2B+1)^4 points; keep it addressable and sane
        require(B <= 64, "BoxSpec: box too large to enumerate ((2B+1)^4 points)");
    }
    long long side() const { return 2 * B + 1; }
};

struct DetPartition {
    double sum_zero = 0.0;
    double sum_pos = 0.0;
    double sum_neg = 0.0;
    double total = 0.0;
    long long count_zero = 0, count_pos = 0, count_neg = 0;
};

// sum over the box of f(M), split by sign of det M.  Summation is plain
// bucket accumulation in a fixed traversal order, so integer-valued f is
// exact as long as the partial sums stay below 2^53.
template <class F>
DetPartition partition_by_det(const BoxSpec& box, F&& f) {
    box.validate();
    DetPartition p;
    const long long B = box.B;
    for (long long k = -B; k <= B; ++k)
        for (long long l = -B; l <= B; ++l)
            for (long long n = -B; n <= B; ++n)
                for (long long m = -B; m <= B; ++m) {
                    IntMatrix2 M{k, l, n, m};
                    double v = f(M);
                    long long d = M.det();
                    p.total += v;
                    if (d == 0) {
                        p.sum_zero += v;
                        ++p.count_zero;
                    } else if (d > 0) {
                        p.sum_pos += v;
                        ++p.count_pos;
                    } else {
                        p.sum_neg += v;
                        ++p.count_neg;
                    }
                }
    return p;
}

// Streams every matrix in the box with km = ln exactly once; returns count.
inline long long enumerate_det_zero(const BoxSpec& box,
                                    const std::function<void(const IntMatrix2&)>& sink = {}) {
    box.validate();
    long long count = 0;
    const long long B = box.B;
    for (long long k = -B; k <= B; ++k)
        for (long long l = -B; l <= B; ++l)
            for (long long n = -B; n <= B; ++n)
                for (long long m = -B; m <= B; ++m) {
                    IntMatrix2 M{k, l, n, m};
                    if (M.det() == 0) {
                        ++count;
                        if (sink) sink(M);
                    }
                }
    return count;
}

// ---------------------------------------------------------------------------
// Hecke coset structure for det n > 0.

// Upper-triangular normal form: {(a b; 0 d) : ad = n, 0 <= b < d},
// sigma_1(n) of them, listed with a ascending then b ascending.
inline std::vector<IntMatrix2> hecke_coset_reps(long long n) {
    require(n >= 1, "hecke_coset_reps: n must be >= 1");
    std::vector<IntMatrix2> reps;
    for (long long a = 1; a <= n; ++a) {
        if (n % a != 0) continue;
        long long d = n / a;
        for (long long b = 0; b < d; ++b) reps.push_back({a, b, 0, d});
    }
    return reps;
}

namespace detail {

// extended gcd: returns g >= 0 with x*a + y*b = g
struct ExtGcd {
    long long g, x, y;
};
inline ExtGcd ext_gcd(long long a, long long b) {
    long long old_r = a, r = b;
    long long old_s = 1, s = 0;
    long long old_t = 0, t = 1;
    while (r != 0) {
        long long q = old_r / r;
        long long tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

} // namespace detail

struct HeckeFactorization {
    IntMatrix2 gamma; // in SL(2,Z)
    IntMatrix2 rep;   // upper-triangular normal form with det = det M
};

// Unique factorization M = gamma * rep with gamma in SL(2,Z) and rep the
// normal-form coset representative.  The first column (k, n) determines
// a = gcd(k, n); the rest is extended-gcd completion plus the b -> b mod d
// left-unipotent normalization.
inline HeckeFactorization factor_det_n(const IntMatrix2& M) {
    long long D = M.det();
    if (D < 1) throw domain_error("factor_det_n: requires det M >= 1");

    auto [g, x, y] = detail::ext_gcd(M.k, M.n); // g = gcd > 0 since det != 0
    long long p = M.k / g, q = M.n / g;         // coprime first column direction
    // gamma0 = (p -y; q x), det = p x + y q = 1
    IntMatrix2 gamma{p, -y, q, x};
    // rep0 = gamma0^{-1} M = (x y; -q p) M, lower-left vanishes by construction
    long long btilde = detail::checked_add(detail::checked_mul(x, M.l), detail::checked_mul(y, M.m));
    long long d = D / g;
    // left-multiply rep by n[j] to put b in [0, d); compensate gamma
    long long j = -detail::floor_div(btilde, d);
    long long b = btilde + j * d;
    IntMatrix2 rep{g, b, 0, d};
    IntMatrix2 shift{1, -j, 0, 1}; // gamma <- gamma * n[-j]
    HeckeFactorization out{gamma * shift, rep};
    // exact reconstruction is part of the contract
    if (!(out.gamma * out.rep == M) || out.gamma.det() != 1)
        throw error("factor_det_n: internal factorization check failed");
    return out;
}

// ---------------------------------------------------------------------------
// Truncated Poincare series F(g) = sum_{M in PSL(2,Z)} f(M g) for the
// declared Gaussian family f(h) = amplitude * exp(-beta (|h|_F^2 - 2)).

struct PoincareSpec {
    double amplitude = 1.0;
    double beta = 1.0;

    void validate() const {
        require(std::isfinite(amplitude), "PoincareSpec: amplitude must be finite");
        require(beta > 0.0, "PoincareSpec: beta must be > 0");
    }
};

struct PoincareResult {
    double value = 0.0;
    double tail_bound = 0.0;
    std::size_t terms = 0;
};

namespace detail {

// Gram matrix of the quadratic form row -> |row * n[x] a[y]|^2
struct RowForm {
    double y, x;
    double q(double r0, double r1) const {
        double t = r0 * x + r1;
        return r0 * r0 * y + t * t / y;
    }
};

} // namespace detail

inline PoincareResult poincare_series(const PoincareSpec& f, const GroupPoint& g, double cutoff,
                                      double tail_tol = 1e-8) {
    f.validate();
    require(cutoff > 0.0, "poincare_series: cutoff must be > 0");

    if (f.amplitude == 0.0) return {0.0, 0.0, 0};

    const double R2 = cutoff * cutoff;
    require(R2 > 2.0, "poincare_series: cutoff below the minimum Frobenius norm sqrt(2)");
    detail::RowForm form{g.y, g.x};

    kahan_sum acc;
    std::size_t terms = 0;

    auto add_if_inside = [&](long long a, long long b, double bottom_q) {
        double n2 = form.q(static_cast<double>(a), static_cast<double>(b)) + bottom_q;
        if (n2 <= R2) {
            acc.add(f.amplitude * std::exp(-f.beta * (n2 - 2.0)));
            ++terms;
        }
    };

    // c = 0: PSL representatives (1 j; 0 1)
    {
        double bottom_q = form.q(0.0, 1.0);
        if (bottom_q <= R2) {
            // j-range from (x + j)^2 / y + y <= R2 - bottom_q
            double budget = R2 - bottom_q;
            double disc = budget * g.y - g.y * g.y;
            if (disc >= 0.0) {
                double w = std::sqrt(disc);
                long long j_lo = static_cast<long long>(std::floor(-g.x - w));
                long long j_hi = static_cast<long long>(std::ceil(-g.x + w));
                for (long long j = j_lo; j <= j_hi; ++j) add_if_inside(1, j, bottom_q);
            }
        }
    }

    // c >= 1: coprime bottom rows (c, d), all unipotent lifts
    long long c_max = static_cast<long long>(std::floor(cutoff / std::sqrt(g.y)));
    for (long long c = 1; c <= c_max; ++c) {
        double cy = static_cast<double>(c) * static_cast<double>(c) * g.y;
        double rem = R2 - cy;
        if (rem <= 0.0) break;
        double w = std::sqrt(rem * g.y);
        double center = -static_cast<double>(c) * g.x;
        long long d_lo = static_cast<long long>(std::floor(center - w));
        long long d_hi = static_cast<long long>(std::ceil(center + w));
        for (long long d = d_lo; d <= d_hi; ++d) {
            auto [gd, u, v] = detail::ext_gcd(d, c);
            if (gd != 1) continue;
            double bottom_q = form.q(static_cast<double>(c), static_cast<double>(d));
            if (bottom_q > R2) continue;
            // base lift (a0, b0) with a0 d - b0 c = 1
            long long a0 = u, b0 = -v;
            // top-row budget: Q(r0 + j rb) <= R2 - bottom_q, quadratic in j
            double A = bottom_q; // Q(c, d)
            double r0q = form.q(static_cast<double>(a0), static_cast<double>(b0));
            // bilinear term via polarization
            double cross =
                0.5 * (form.q(static_cast<double>(a0 + c), static_cast<double>(b0 + d)) - r0q - A);
            double budget = R2 - bottom_q;
            // A j^2 + 2 cross j + r0q <= budget
            double disc = cross * cross - A * (r0q - budget);
            if (disc < 0.0) continue;
            double sq = std::sqrt(disc);
            long long j_lo = static_cast<long long>(std::floor((-cross - sq) / A));
            long long j_hi = static_cast<long long>(std::ceil((-cross + sq) / A));
            for (long long j = j_lo; j <= j_hi; ++j)
                add_if_inside(a0 + j * c, b0 + j * d, bottom_q);
        }
    }

    PoincareResult out;
    out.value = acc.value();
    out.terms = terms;

    // tail estimate from the decay envelope: the PSL orbit count inside
    // Frobenius radius r grows ~ linearly in r^2, with the observed density
    // used as the constant (factor 3 of headroom)
    double density = std::max<double>(static_cast<double>(terms), 8.0) / std::max(R2 - 2.0, 1.0);
    out.tail_bound =
        3.0 * density * std::abs(f.amplitude) * std::exp(-f.beta * (R2 - 2.0)) / f.beta;
    if (out.tail_bound > tail_tol)
        throw truncation_error("poincare_series: tail estimate " + std::to_string(out.tail_bound) +
                               " exceeds requested tolerance; increase the cutoff");
    return out;
}

} // namespace zetalab
