#pragma once

// Divisor-function sieve, the additive divisor sum
// sum_{n<=N} d(n) d(n+m) W(n/m), and the classical leading-term baseline.

#include <cstdint>
#include <vector>

#include "zetalab/core.hpp"
#include "zetalab/window.hpp"

namespace zetalab {

class DivisorTable {
public:
    explicit DivisorTable(long long n_max) : n_max_(n_max) {
        require(n_max >= 1, "divisor_sieve: N must be >= 1");
        require(n_max <= 100'000'000, "divisor_sieve: N above the 1e8 memory guard");
        d_.assign(static_cast<std::size_t>(n_max) + 1, 0u);
        for (long long i = 1; i <= n_max; ++i)
            for (long long j = i; j <= n_max; j += i) ++d_[static_cast<std::size_t>(j)];
    }

    long long n_max() const { return n_max_; }
    std::uint32_t operator()(long long n) const {
        require(n >= 1 && n <= n_max_, "DivisorTable: index out of range");
        return d_[static_cast<std::size_t>(n)];
    }

private:
    long long n_max_;
    std::vector<std::uint32_t> d_;
};

inline DivisorTable divisor_sieve(long long n_max) { return DivisorTable(n_max); }

// d(n) by trial division; the independent backend for cross-checks.
inline long long divisor_count_trial(long long n) {
    require(n >= 1, "divisor_count_trial: n must be >= 1");
    long long count = 0;
    for (long long i = 1; i * i <= n; ++i) {
        if (n % i == 0) count += (i * i == n) ? 1 : 2;
    }
    return count;
}

enum class DivisorBackend { sieve, trial };

// sum_{n<=N} d(n) d(n+m) W(n/m)
inline double additive_divisor_sum(long long N, long long m, const WindowSpec& W,
                                   DivisorBackend backend = DivisorBackend::sieve) {
    if (m < 1) throw domain_error("additive_divisor_sum: m must be >= 1 (diagonal case excluded)");
    require(N >= 1, "additive_divisor_sum: N must be >= 1");
    W.validate();

    kahan_sum acc;
    if (backend == DivisorBackend::sieve) {
        DivisorTable d(N + m);
        for (long long n = 1; n <= N; ++n) {
            double w = W(static_cast<double>(n) / static_cast<double>(m));
            if (w == 0.0) continue;
            acc.add(static_cast<double>(d(n)) * static_cast<double>(d(n + m)) * w);
        }
    } else {
        for (long long n = 1; n <= N; ++n) {
            double w = W(static_cast<double>(n) / static_cast<double>(m));
            if (w == 0.0) continue;
            acc.add(static_cast<double>(divisor_count_trial(n)) *
                    static_cast<double>(divisor_count_trial(n + m)) * w);
        }
    }
    return acc.value();
}

// sigma_{-1}(m) = sum_{d|m} 1/d
inline double sigma_minus_one(long long m) {
    require(m >= 1, "sigma_minus_one: m must be >= 1");
    double s = 0.0;
    for (long long d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            s += 1.0 / static_cast<double>(d);
            if (d * d != m) s += static_cast<double>(d) / static_cast<double>(m);
        }
    }
    return s;
}

// classical leading asymptotic (6/pi^2) sigma_{-1}(m) N log^2 N, used as a
// comparison baseline only (no secondary log-polynomial terms)
inline double ingham_main_term(long long N, long long m) {
    require(N >= 2, "ingham_main_term: N must be >= 2");
    double logN = std::log(static_cast<double>(N));
    return (6.0 / (pi * pi)) * sigma_minus_one(m) * static_cast<double>(N) * logN * logN;
}

} // namespace zetalab
