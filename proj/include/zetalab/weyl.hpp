#pragma once

// The squaring transform behind the divide-and-conquer treatment of
// zeta-sums: sum_n w(n) |sum_{0<m<=M} (m+n)^{it}|^2, split into its diagonal
// (m = m') and off-diagonal parts, and the two-dimensional reindexing of a
// double sum by deviation from the symmetric axis m = n.

#include <cstdint>
#include <map>
#include <vector>

#include "zetalab/core.hpp"

namespace zetalab {

// Finitely supported nonnegative weight table on consecutive integers.
struct WeightTable {
    long long n_first = 1;
    std::vector<double> w;

    static WeightTable indicator(long long lo, long long hi) {
        require(lo <= hi, "WeightTable: empty indicator range");
        WeightTable t;
        t.n_first = lo;
        t.w.assign(static_cast<std::size_t>(hi - lo + 1), 1.0);
        return t;
    }
    void validate() const {
        require(!w.empty(), "WeightTable: empty support");
        for (double v : w)
            require(std::isfinite(v) && v >= 0.0, "WeightTable: weights must be finite and >= 0");
    }
};

struct WeylSquareResult {
    double total = 0.0;
    double diagonal = 0.0;
    double off_diagonal = 0.0;
};

// sum_n w(n) |S(n)|^2 with S(n) = sum_{m=1}^{M} (m+n)^{it}.  The diagonal
// part is M * sum w(n) exactly; the off-diagonal part is accumulated from
// |S(n)|^2 - M so the reported split reflects the actual cancellation.
inline WeylSquareResult weyl_square(long long M, double t, const WeightTable& w) {
    require(M >= 1, "weyl_square: M must be >= 1");
    w.validate();

    WeylSquareResult out;
    kahan_sum total, offdiag, wsum;
    for (std::size_t j = 0; j < w.w.size(); ++j) {
        if (w.w[j] == 0.0) {
            wsum.add(0.0);
            continue;
        }
        long long n = w.n_first + static_cast<long long>(j);
        kahan_csum inner;
        for (long long m = 1; m <= M; ++m) {
            double ph = t * std::log(static_cast<double>(m + n));
            inner.add({std::cos(ph), std::sin(ph)});
        }
        double s2 = std::norm(inner.value());
        total.add(w.w[j] * s2);
        offdiag.add(w.w[j] * (s2 - static_cast<double>(M)));
        wsum.add(w.w[j]);
    }
    out.total = total.value();
    out.diagonal = static_cast<double>(M) * wsum.value();
    out.off_diagonal = offdiag.value();
    return out;
}

// ---------------------------------------------------------------------------
// Atkinson-style reindexing of a finite double sum.

// Finite-support table on pairs of positive integers.
struct PairTable {
    long long m_first = 1, n_first = 1;
    std::size_t rows = 0, cols = 0;   // m-extent, n-extent
    std::vector<double> values;       // row-major: f(m_first+i, n_first+j)

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    void validate() const {
        require(rows >= 1 && cols >= 1 && values.size() == rows * cols,
                "PairTable: inconsistent dimensions");
        for (double v : values) require(std::isfinite(v), "PairTable: non-finite entry");
    }
};

struct ReindexReport {
    double total_raw = 0.0;      // plain double sum
    double total_offset = 0.0;   // regrouped as sum_h sum_n f(n+h, n), h over Z
    double total_sym = 0.0;      // below-diagonal + diagonal + above-diagonal
    double diagonal = 0.0;       // m = n part
    double above = 0.0;          // m > n part
    double below = 0.0;          // m < n part
    std::map<long long, double> offset_sums; // h -> sum_n f(n+h, n)
};

// Rewrites sum_m sum_n f(m, n) by classifying on the offset h = m - n from
// the symmetric axis.  All three routes are plain reorderings of the same
// finite set of terms, so for integer-valued f they agree exactly.
inline ReindexReport atkinson_reindex(const PairTable& f) {
    f.validate();
    ReindexReport rep;

    kahan_sum raw, diag, above, below;
    for (std::size_t i = 0; i < f.rows; ++i)
        for (std::size_t j = 0; j < f.cols; ++j) {
            double v = f.at(i, j);
            long long m = f.m_first + static_cast<long long>(i);
            long long n = f.n_first + static_cast<long long>(j);
            raw.add(v);
            if (m == n)
                diag.add(v);
            else if (m > n)
                above.add(v);
            else
                below.add(v);
        }
    rep.total_raw = raw.value();
    rep.diagonal = diag.value();
    rep.above = above.value();
    rep.below = below.value();
    rep.total_sym = rep.below + rep.diagonal + rep.above;

    // offset classification, each h summed in its own pass
    long long h_lo = f.m_first - (f.n_first + static_cast<long long>(f.cols) - 1);
    long long h_hi = f.m_first + static_cast<long long>(f.rows) - 1 - f.n_first;
    kahan_sum off_total;
    for (long long h = h_lo; h <= h_hi; ++h) {
        kahan_sum s;
        bool touched = false;
        for (std::size_t j = 0; j < f.cols; ++j) {
            long long n = f.n_first + static_cast<long long>(j);
            long long m = n + h;
            if (m < f.m_first || m >= f.m_first + static_cast<long long>(f.rows)) continue;
            s.add(f.at(static_cast<std::size_t>(m - f.m_first), j));
            touched = true;
        }
        if (touched) {
            rep.offset_sums[h] = s.value();
            off_total.add(s.value());
        }
    }
    rep.total_offset = off_total.value();
    return rep;
}

} // namespace zetalab
