// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Returns the number of failures.
//
//   acceptance [--cli PATH] [--data PATH] [--tmp DIR]
//
// The CLI path is needed for the byte-determinism criterion; the data path
// locates the shipped Maass coefficient table.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zetalab/automorphic.hpp"
#include "zetalab/divisor.hpp"
#include "zetalab/kirillov.hpp"
#include "zetalab/lattice.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/weyl.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;
using clk = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] %2d %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

template <class Fn>
void criterion(int number, const std::string& name, Fn&& fn) {
    auto t0 = clk::now();
    bool pass = false;
    std::string detail;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(number, name, pass, detail, std::chrono::duration<double>(clk::now() - t0).count());
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

long long hash_f(const IntMatrix2& M, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (long long e : {M.k, M.l, M.n, M.m}) {
        h ^= static_cast<std::uint64_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ull;
        h ^= h >> 27;
    }
    return static_cast<long long>(h % 19) - 9;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    std::string cli_path, data_dir = "data", tmp_dir = ".";
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string k = argv[i];
        if (k == "--cli") cli_path = argv[i + 1];
        else if (k == "--data") data_dir = argv[i + 1];
        else if (k == "--tmp") tmp_dir = argv[i + 1];
    }
    const std::string table = data_dir + "/maass_r9p5337.csv";

    // 1 -----------------------------------------------------------------
    criterion(1, "zeta cross-validation", [&](std::string& d) {
        auto t0 = clk::now();
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            double t = 10.0 * std::pow(100.0, i / 99.0); // log-spaced in [10, 1000]
            cplx em = zeta_critical(t, ZetaMethod::euler_maclaurin);
            cplx rs = zeta_critical(t, ZetaMethod::riemann_siegel);
            worst = std::max(worst, std::abs(em - rs));
        }
        double secs = std::chrono::duration<double>(clk::now() - t0).count();
        d = "max |EM-RS| = " + fmt(worst) + " over 100 log-spaced t in [10,1e3]";
        return worst < 1e-8 && secs < 60.0;
    });

    // 2 -----------------------------------------------------------------
    criterion(2, "zeta(1/2) anchor", [&](std::string& d) {
        cplx v = zeta_critical(0.0);
        EulerMaclaurinOptions doubled;
        doubled.length_factor = 1.0;
        doubled.bernoulli_terms = 14;
        cplx oracle = zeta_euler_maclaurin({0.5, 0.0}, doubled);
        double dev_oracle = std::abs(v - oracle);
        double dev_lit = std::abs(v.real() + 1.4603545088095868);
        d = "|v - oracle| = " + fmt(dev_oracle) + ", |v - literal| = " + fmt(dev_lit);
        return dev_oracle < 1e-9 && dev_lit < 1e-9 && std::abs(v.imag()) < 1e-12;
    });

    // 3 -----------------------------------------------------------------
    criterion(3, "subconvexity shape", [&](std::string& d) {
        auto t0 = clk::now();
        auto rep = subconvexity_ratio_scan(2.0, 1e4, 10000);
        double secs = std::chrono::duration<double>(clk::now() - t0).count();
        d = "sup ratio = " + fmt(rep.max_ratio) + " at t = " + fmt(rep.argmax_t);
        return rep.max_ratio < 5.0 && std::isfinite(rep.max_ratio) && secs < 300.0;
    });

    // 4 -----------------------------------------------------------------
    criterion(4, "weyl-square identity", [&](std::string& d) {
        std::mt19937 rng(4040);
        std::uniform_int_distribution<long long> Md(1, 50), lo_d(1, 60), len_d(1, 60);
        std::uniform_real_distribution<double> td(0.0, 40.0), wd(0.0, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            long long M = Md(rng), lo = lo_d(rng);
            WeightTable w = WeightTable::indicator(lo, lo + len_d(rng));
            for (auto& x : w.w) x = wd(rng);
            auto r = weyl_square(M, td(rng), w);
            worst = std::max(worst, std::abs(r.diagonal + r.off_diagonal - r.total));
        }
        d = "max |diag + offdiag - total| = " + fmt(worst);
        return worst < 1e-10;
    });

    // 5 -----------------------------------------------------------------
    criterion(5, "matrix partition identity", [&](std::string& d) {
        auto ones = partition_by_det(BoxSpec{1}, [](const IntMatrix2&) { return 1.0; });
        bool ok = ones.total == 81.0 &&
                  ones.sum_zero + ones.sum_pos + ones.sum_neg == ones.total;

        long long zero = 0; // exhaustive enumeration of all 81 matrices
        for (long long k = -1; k <= 1; ++k)
            for (long long l = -1; l <= 1; ++l)
                for (long long n = -1; n <= 1; ++n)
                    for (long long m = -1; m <= 1; ++m)
                        if (k * m - l * n == 0) ++zero;
        ok = ok && ones.count_zero == zero;

        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            long long B = 2 + static_cast<long long>(seed % 7); // boxes up to B = 8
            auto p = partition_by_det(BoxSpec{B}, [seed](const IntMatrix2& M) {
                return static_cast<double>(hash_f(M, seed));
            });
            ok = ok && (p.sum_zero + p.sum_pos + p.sum_neg == p.total);
        }
        d = "det-0 count at B=1: " + std::to_string(ones.count_zero) + " (exhaustive " +
            std::to_string(zero) + "), 10 random integer f exact";
        return ok;
    });

    // 6 -----------------------------------------------------------------
    criterion(6, "hecke structure", [&](std::string& d) {
        auto t0 = clk::now();
        bool ok = true;
        for (long long n = 1; n <= 50; ++n) {
            long long sigma1 = 0;
            for (long long q = 1; q <= n; ++q)
                if (n % q == 0) sigma1 += q;
            ok = ok && static_cast<long long>(hecke_coset_reps(n).size()) == sigma1;
        }

        long long checked = 0;
        std::map<long long, std::set<std::array<long long, 4>>> rep_sets;
        for (long long n = 1; n <= 6; ++n)
            for (const auto& r : hecke_coset_reps(n))
                rep_sets[n].insert({r.k, r.l, r.n, r.m});
        std::set<std::array<long long, 8>> pairs;
        for (long long k = -5; k <= 5 && ok; ++k)
            for (long long l = -5; l <= 5 && ok; ++l)
                for (long long n = -5; n <= 5 && ok; ++n)
                    for (long long m = -5; m <= 5 && ok; ++m) {
                        IntMatrix2 M{k, l, n, m};
                        long long D = M.det();
                        if (D < 1 || D > 6) continue;
                        auto f = factor_det_n(M);
                        ok = ok && (f.gamma * f.rep == M) && f.gamma.det() == 1 &&
                             rep_sets[D].count({f.rep.k, f.rep.l, f.rep.n, f.rep.m}) == 1 &&
                             pairs.insert({f.gamma.k, f.gamma.l, f.gamma.n, f.gamma.m, f.rep.k,
                                           f.rep.l, f.rep.n, f.rep.m})
                                     .second;
                        ++checked;
                    }
        double secs = std::chrono::duration<double>(clk::now() - t0).count();
        d = "counts = sigma_1 for n <= 50; " + std::to_string(checked) +
            " factorizations verified";
        return ok && checked > 1000 && secs < 60.0;
    });

    // 7 -----------------------------------------------------------------
    criterion(7, "additive divisor", [&](std::string& d) {
        auto t0 = clk::now();
        WindowSpec ones;
        bool ok = additive_divisor_sum(10, 1, ones, DivisorBackend::sieve) == 74.0 &&
                  additive_divisor_sum(10, 1, ones, DivisorBackend::trial) == 74.0;
        double ratio_at_1e6 = 0.0;
        for (long long m : {1, 2, 3}) {
            double prev = 1e18;
            for (long long N : {10000, 100000, 1000000}) {
                double ratio = additive_divisor_sum(N, m, ones) / ingham_main_term(N, m);
                double dev = std::abs(ratio - 1.0);
                ok = ok && dev <= prev;
                prev = dev;
                if (N == 1000000) {
                    ok = ok && ratio >= 0.5 && ratio <= 2.0;
                    if (m == 1) ratio_at_1e6 = ratio;
                }
            }
        }
        double secs = std::chrono::duration<double>(clk::now() - t0).count();
        d = "value(10,1) = 74 both backends; deviation trend nonincreasing; ratio(1e6,1) = " +
            fmt(ratio_at_1e6);
        return ok && secs < 120.0;
    });

    // 8 -----------------------------------------------------------------
    criterion(8, "jacquet/K-Bessel identity", [&](std::string& d) {
        double worst = 0.0;
        for (double r : {1.0, 5.0, 9.5336952613536}) // 3x3 grid
            for (double y : {0.5, 1.0, 5.0}) {
                cplx quad = jacquet_transform(cplx{0.0, r}, 0, +1, GroupPoint{0.0, y});
                cplx closed = jacquet_whittaker_closed_form(r, y);
                worst = std::max(worst, std::abs(quad - closed));
            }
        d = "max |quadrature - closed form| = " + fmt(worst) + " on the 3x3 grid";
        return worst < 1e-6;
    });

    // 9 -----------------------------------------------------------------
    criterion(9, "casimir eigenvalue", [&](std::string& d) {
        auto form = ingest_maass_csv(table);
        auto fn = [&](const GroupPoint& p) { return maass_eval(form, p, 0, 12); };
        double worst = 0.0;
        for (auto [x, y] :
             {std::pair{0.2, 1.1}, {0.13, 0.9}, {0.41, 1.47}, {0.05, 1.3}, {0.33, 0.8}}) {
            double ev = casimir_eigenvalue_estimate(fn, GroupPoint{x, y});
            worst = std::max(worst, std::abs(ev / form.eigenvalue() - 1.0));
        }
        d = "max relative deviation from 1/4 + r^2: " + fmt(worst) + " at 5 points";
        return worst < 1e-3;
    });

    // 10 ----------------------------------------------------------------
    criterion(10, "fourier orthogonality", [&](std::string& d) {
        double worst = 0.0;
        for (long long n = -5; n <= 5; ++n)
            for (long long m = 0; m <= 5; ++m) {
                double v = fourier_orthogonality(n, m);
                worst = std::max(worst, std::abs(v - (m == 0 ? 1.0 : 0.0)));
            }
        d = "max |quadrature - delta_{m,0}| = " + fmt(worst) + " on {-5..5} x {0..5}";
        return worst < 1e-12;
    });

    // 11 ----------------------------------------------------------------
    criterion(11, "kirillov generator", [&](std::string& d) {
        auto form = ingest_maass_csv(table);
        SeedSpec seed; // alpha = 2
        double worst = 0.0;
        for (long long m : {0, 1, 2, 3})
            for (double y : {0.05, 0.1, 0.2}) {
                auto r = shifted_fourier_coefficient(form, seed, m, y, 128);
                worst = std::max(worst, std::abs(r.closed_form - r.quadrature));
            }
        // independent Parseval check at m = 0
        double y = 0.1;
        long double parseval = 0.0L;
        for (int n = 1; n <= 128; ++n) {
            long double c = form.coeff(n);
            parseval += c * c * std::pow((long double)n, 4.0L) * std::exp(-4.0L * pi * n * y);
        }
        parseval *= std::pow((long double)y, 5.0L);
        auto r0 = shifted_fourier_coefficient(form, seed, 0, y, 128);
        double pdev = std::abs(r0.quadrature - (double)parseval);
        d = "max dual-route deviation = " + fmt(worst) + ", Parseval deviation = " + fmt(pdev);
        return worst < 1e-8 && pdev < 1e-8;
    });

    // 12 ----------------------------------------------------------------
    criterion(12, "moment quadrature stability", [&](std::string& d) {
        WeightSpec gz; // t0 = 50, delta = 10
        QuadratureSpec spec;
        spec.abs_tol = 1e-6;
        auto a = moment_integral(4, gz, spec);
        spec.abs_tol = 5e-7;
        auto b = moment_integral(4, gz, spec);
        double zdev = std::abs(a.value - b.value) / b.value;

        auto form = ingest_maass_csv(table);
        WeightSpec gl;
        gl.t0 = 8.0;
        gl.delta = 3.0;
        QuadratureSpec lspec;
        lspec.abs_tol = 1e-8;
        auto la = l_moment(form, gl, lspec, 16.0);
        auto lb = l_moment(form, gl, lspec, 24.0);
        double ldev = std::abs(la.value - lb.value) / la.value;
        d = "Z2(zeta^2) tolerance-halving rel dev = " + fmt(zdev) +
            ", Z2(L) cutoff-change rel dev = " + fmt(ldev);
        return zdev < 1e-4 && ldev < 0.02;
    });

    // 13 ----------------------------------------------------------------
    criterion(13, "CLI byte-determinism", [&](std::string& d) {
        if (cli_path.empty()) {
            d = "no --cli path given";
            return false;
        }
        struct Run {
            std::string name, args;
        };
        std::vector<Run> runs = {
            {"zeta", "zeta-eval --t 1000 --method riemann_siegel"},
            {"moment", "moment --power 4 --t0 50 --delta 10"},
            {"divsum", "divisor-sum --N 100000 --m 2 --baseline"},
            {"scan", "subconvexity-scan --t-lo 2 --t-hi 100 --samples 50 --emit-samples"},
            {"cosets", "hecke-cosets --n 36 --list --format jsonl"},
            {"shifted", "shifted-coefficient --file " + table + " --m 1 --y 0.1"},
            {"maass", "maass-eval --file " + table + " --x 0.3 --y 1.5 --format jsonl"},
        };
        bool ok = true;
        for (const auto& run : runs) {
            std::string f1 = tmp_dir + "/det_" + run.name + "_1.out";
            std::string f2 = tmp_dir + "/det_" + run.name + "_2.out";
            std::string base = cli_path + " " + run.args;
            if (std::system((base + " --out " + f1).c_str()) != 0 ||
                std::system((base + " --out " + f2).c_str()) != 0) {
                d = "CLI run failed: " + run.name;
                return false;
            }
            std::string b1 = read_file(f1), b2 = read_file(f2);
            if (b1.empty() || b1 != b2) {
                d = "outputs differ or empty: " + run.name;
                ok = false;
            }
            std::remove(f1.c_str());
            std::remove(f2.c_str());
        }
        if (ok) d = std::to_string(runs.size()) + " command pairs byte-identical";
        return ok;
    });

    std::printf("%s: %d of 13 criteria failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures);
    return failures;
}
