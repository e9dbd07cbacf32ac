// Regenerates data/maass_r9p5337.csv by solving the automorphy condition
// for the first cusp form on PSL(2,Z) (spectral parameter r below, known to
// ~14 digits from the literature; the form is odd, so the solve uses the
// sine expansion).
//
// Method: the truncated expansion
//     F(x + iy) = 2 sqrt(y) sum_{m<=M} c(m) K_{ir}(2 pi m y) sin(2 pi m x)
// is modular, so sampling it on a horocycle y = Y below the fundamental
// domain and pulling each sample back into the domain changes nothing.
// Discrete sine orthogonality on the horocycle grid then returns each
// coefficient:
//     c(n) sqrt(Y) K_{ir}(2 pi n Y)
//         = (2/Q) sum_j F(pullback(x_j + iY)) sin(2 pi n x_j).
// Every n gets its own horocycle with 2 pi n Y_n = const, which keeps the
// extraction uniformly conditioned and clear of the K_{ir} oscillatory
// zone.  The inner sum needs only c(m) for m <= 10 (higher terms are below
// e^{-43} at the pulled-back heights), so a short fixed-point iteration on
// those determines everything.
//
// The emitted table satisfies Hecke multiplicativity to the accuracy of the
// solve without it ever being imposed; the defects are printed, as is the
// comparison against published values of c(2), c(3), c(5).

#include <cmath>
#include <cstdio>
#include <vector>

#include "zetalab/bessel.hpp"

using namespace zetalab;

namespace {

constexpr double kSpectralR = 9.5336952613535575;
constexpr int kInnerM = 10;   // expansion length at pulled-back heights
constexpr double kArg = 10.8; // 2 pi n Y_n, just past the K_{ir} turning point

struct Pullback {
    double x, y;
};

Pullback pull_to_fundamental_domain(double x, double y) {
    for (int it = 0; it < 200; ++it) {
        x -= std::round(x);
        double n2 = x * x + y * y;
        if (n2 >= 1.0 - 1e-14) break;
        x = -x / n2;
        y = y / n2;
    }
    return {x, y};
}

double kbessel(double x) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-15;
    if (x > 650.0) return 0.0; // underflow of e^{-x}; the term is dead anyway
    return bessel_k_imag(kSpectralR, x, spec);
}

// F at a fundamental-domain point from the current inner coefficients
double eval_form(const std::vector<double>& c, double x, double y) {
    double s = 0.0;
    for (int m = 1; m <= kInnerM; ++m) {
        double k = kbessel(two_pi * m * y);
        if (k == 0.0) continue;
        s += c[m] * k * std::sin(two_pi * m * x);
    }
    return 2.0 * std::sqrt(y) * s;
}

// c(n) from its own horocycle: the sine-DFT of F( pullback(x + iY_n) )
// returns 2 sqrt(Y_n) c(n) K_{ir}(2 pi n Y_n), and 2 pi n Y_n = kArg.
double extract(const std::vector<double>& c, int n) {
    const double Y = kArg / (two_pi * n);
    const long long Q = 2 * n + 30;
    double acc = 0.0;
    for (long long j = 1; j <= Q; ++j) {
        double xj = (j - 0.5) / (2.0 * Q);
        auto p = pull_to_fundamental_domain(xj, Y);
        acc += eval_form(c, p.x, p.y) * std::sin(two_pi * n * xj);
    }
    return (2.0 / Q) * acc / (2.0 * std::sqrt(Y) * kbessel(kArg));
}

} // namespace

int main(int argc, char** argv) {
    const int n_max = 160;

    std::vector<double> c(kInnerM + 1, 0.0);
    c[1] = 1.0;

    // fixed point on the inner coefficients; the update is a strong
    // contraction because the m = 1 term dominates at pulled-back heights
    for (int it = 0; it < 18; ++it) {
        std::vector<double> next = c;
        for (int n = 2; n <= kInnerM; ++n) next[n] = extract(c, n);
        double delta = 0.0;
        for (int n = 2; n <= kInnerM; ++n) delta = std::max(delta, std::abs(next[n] - c[n]));
        c = next;
        std::printf("iteration %2d: max delta %.3e\n", it + 1, delta);
        if (delta < 1e-13) break;
    }

    std::vector<double> full(n_max + 1, 0.0);
    full[1] = 1.0;
    for (int n = 2; n <= n_max; ++n) full[n] = extract(c, n);

    // self-consistency of the normalized slot
    std::printf("c(1) self-consistency residual: %.3e\n", std::abs(extract(c, 1) - 1.0));

    // multiplicativity defects (not imposed anywhere above)
    const int primes[] = {2, 3, 5, 7, 11};
    double worst = 0.0;
    for (std::size_t i = 0; i < std::size(primes); ++i)
        for (std::size_t j = i + 1; j < std::size(primes); ++j) {
            int p = primes[i], q = primes[j];
            if (p * q > n_max) continue;
            double d = std::abs(full[p] * full[q] - full[p * q]);
            worst = std::max(worst, d);
            std::printf("|c(%d)c(%d) - c(%d)| = %.3e\n", p, q, p * q, d);
        }
    std::printf("hecke recursion |c(2)^2 - 1 - c(4)| = %.3e\n",
                std::abs(full[2] * full[2] - 1.0 - full[4]));

    // published anchors
    std::printf("c(2) = %.9f (published -1.068333551)\n", full[2]);
    std::printf("c(3) = %.9f (published -0.456197355)\n", full[3]);
    std::printf("c(5) = %.9f (published -0.290672555)\n", full[5]);

    const char* path = argc > 1 ? argv[1] : "data/maass_r9p5337.csv";
    std::FILE* out = std::fopen(path, "w");
    if (!out) {
        std::perror("fopen");
        return 1;
    }
    std::fprintf(out, "# Maass cusp form coefficient table, level 1, rho(1) = 1.\n");
    std::fprintf(out, "# Spectral parameter: first cusp form on PSL(2,Z) (published value).\n");
    std::fprintf(out, "# Coefficients computed by tools/make_maass_table from the automorphy\n");
    std::fprintf(out, "# condition (horocycle sampling + fundamental-domain pullback); Hecke\n");
    std::fprintf(out, "# multiplicativity is emergent, not imposed.  The underlying form is\n");
    std::fprintf(out, "# odd; this artifact's data model consumes the coefficient values with\n");
    std::fprintf(out, "# the even-parity convention.\n");
    std::fprintf(out, "r=9.5336952613536\n");
    std::fprintf(out, "parity=+1\n");
    for (int n = 1; n <= n_max; ++n) std::fprintf(out, "%d,%.12f\n", n, full[n]);
    std::fclose(out);
    std::printf("wrote %s (n <= %d), worst multiplicativity defect %.3e\n", path, n_max, worst);
    return 0;
}
