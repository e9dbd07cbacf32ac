// zetalab command-line front end: runs every library operation, echoes the
// configuration, and emits self-describing csv or json-lines records for
// offline plotting.  Exit codes: 0 success, 1 numeric non-convergence,
// 2 validation error (one machine-parsable line on stderr).

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

#include "zetalab/automorphic.hpp"
#include "zetalab/divisor.hpp"
#include "zetalab/kirillov.hpp"
#include "zetalab/lattice.hpp"
#include "zetalab/maass.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/report.hpp"
#include "zetalab/weyl.hpp"
#include "zetalab/window.hpp"
#include "zetalab/zeta.hpp"

using namespace zetalab;

namespace {

struct Global {
    std::string out = "-";
    std::string format = "csv";
    double quad_tol = 1e-10;
    int quad_depth = 20;
    bool timing = false;
    std::vector<ResultRecord> records;

    QuadratureSpec quad() const {
        QuadratureSpec q;
        q.abs_tol = quad_tol;
        q.max_depth = quad_depth;
        return q;
    }
    OutputFormat fmt() const {
        if (format == "csv") return OutputFormat::csv;
        if (format == "jsonl" || format == "json-lines") return OutputFormat::json_lines;
        throw domain_error("unknown output format '" + format + "' (csv | jsonl)");
    }
};

ZetaMethod parse_method(const std::string& m) {
    if (m == "euler_maclaurin" || m == "em") return ZetaMethod::euler_maclaurin;
    if (m == "riemann_siegel" || m == "rs") return ZetaMethod::riemann_siegel;
    throw domain_error("unknown method '" + m + "' (euler_maclaurin | riemann_siegel)");
}

// window flags shared by the convolution-style subcommands
struct WindowOpts {
    std::string kind = "ones";
    double lo = 0.0, hi = 1.0, center = 1.0, width = 1.0, scale = 1.0, power = 2.0, alpha = 2.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--window", kind,
                        "weight window kind: ones | indicator | gaussian | rational | kirillov")
            ->capture_default_str();
        cmd->add_option("--w-lo", lo, "indicator window lower edge (argument n/m)");
        cmd->add_option("--w-hi", hi, "indicator window upper edge (argument n/m)");
        cmd->add_option("--w-center", center, "gaussian window center");
        cmd->add_option("--w-width", width, "gaussian window width");
        cmd->add_option("--w-scale", scale, "rational-decay window scale");
        cmd->add_option("--w-power", power, "rational-decay window power");
        cmd->add_option("--w-alpha", alpha, "kirillov-induced window alpha");
    }

    WindowSpec build() const {
        WindowSpec w;
        if (kind == "ones")
            w.kind = WindowSpec::Kind::ones;
        else if (kind == "indicator")
            w.kind = WindowSpec::Kind::indicator;
        else if (kind == "gaussian")
            w.kind = WindowSpec::Kind::gaussian;
        else if (kind == "rational")
            w.kind = WindowSpec::Kind::rational_decay;
        else if (kind == "kirillov")
            w.kind = WindowSpec::Kind::kirillov_induced;
        else
            throw domain_error("unknown window kind '" + kind + "'");
        w.lo = lo;
        w.hi = hi;
        w.center = center;
        w.width = width;
        w.scale = scale;
        w.power = power;
        w.alpha = alpha;
        w.validate();
        return w;
    }
};

void add_complex_outputs(ResultRecord& r, cplx v) {
    r.add_output("re", v.real());
    r.add_output("im", v.imag());
    r.add_output("abs", std::abs(v));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zetalab: a numerical workbench for critical-line zeta values, GL(2) lattice\n"
                 "sums, divisor correlations, Maass-form evaluation, and the seed-function\n"
                 "generator of shifted convolution sums."};
    app.require_subcommand(1);
    app.fallthrough(); // global output options may follow the subcommand
    app.set_config("--config", "", "key=value configuration file; command-line flags win");
    app.allow_config_extras(false);

    auto g = std::make_shared<Global>();
    app.add_option("--out", g->out, "output path ('-' for stdout)")->capture_default_str();
    app.add_option("--format", g->format, "output format: csv | jsonl")->capture_default_str();
    app.add_option("--quad-tol", g->quad_tol, "quadrature absolute tolerance")
        ->capture_default_str();
    app.add_option("--quad-depth", g->quad_depth, "quadrature max refinement depth")
        ->capture_default_str();
    app.add_flag("--timing", g->timing, "include wall-clock duration in the emitted records");

    // ---------------------------------------------------------------- zeta-eval
    {
        auto cmd = app.add_subcommand(
            "zeta-eval", "zeta(1/2 + it) by Euler-Maclaurin or the Riemann-Siegel evaluator");
        auto t = std::make_shared<double>(0.0);
        auto method = std::make_shared<std::string>("euler_maclaurin");
        cmd->add_option("--t", *t, "imaginary part t")->required();
        cmd->add_option("--method", *method, "euler_maclaurin | riemann_siegel")
            ->capture_default_str();
        cmd->callback([g, t, method] {
            cplx v = zeta_critical(*t, parse_method(*method));
            ResultRecord r;
            r.id = "zeta-eval";
            r.add_input("t", *t);
            r.add_input("method", *method);
            add_complex_outputs(r, v);
            if (!zeta_range_validated(*t)) {
                std::cerr << "warning: t outside the validated range |t| <= 1e6\n";
                r.add_diag("validated_range", 0.0);
            } else {
                r.add_diag("validated_range", 1.0);
            }
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- zeta-sum
    {
        auto cmd = app.add_subcommand("zeta-sum",
                                      "direct zeta-sum over N < n <= 2N of n^{it}, optionally "
                                      "weighted per term");
        auto N = std::make_shared<long long>(1);
        auto t = std::make_shared<double>(0.0);
        auto wfile = std::make_shared<std::string>();
        cmd->add_option("--N", *N, "sum start (N terms, N < n <= 2N)")->required();
        cmd->add_option("--t", *t, "frequency t")->required();
        cmd->add_option("--weights-file", *wfile, "optional file with one weight per line");
        cmd->callback([g, N, t, wfile] {
            ZetaSumSpec spec;
            spec.n_start = *N;
            spec.t = *t;
            if (!wfile->empty()) {
                std::ifstream in(*wfile);
                if (!in) throw parse_error("cannot open weight file '" + *wfile + "'");
                double w;
                while (in >> w) spec.weights.push_back(w);
            }
            cplx v = zeta_sum(spec);
            ResultRecord r;
            r.id = "zeta-sum";
            r.add_input("N", static_cast<double>(*N));
            r.add_input("t", *t);
            add_complex_outputs(r, v);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- weyl-square
    {
        auto cmd = app.add_subcommand("weyl-square",
                                      "squared inner sums sum_n w(n) |sum_{m<=M} (m+n)^{it}|^2 "
                                      "with the diagonal / off-diagonal split");
        auto M = std::make_shared<long long>(1);
        auto t = std::make_shared<double>(0.0);
        auto nlo = std::make_shared<long long>(1);
        auto nhi = std::make_shared<long long>(50);
        cmd->add_option("--M", *M, "inner sum length")->required();
        cmd->add_option("--t", *t, "frequency t")->required();
        cmd->add_option("--n-lo", *nlo, "indicator weight support start")->capture_default_str();
        cmd->add_option("--n-hi", *nhi, "indicator weight support end")->capture_default_str();
        cmd->callback([g, M, t, nlo, nhi] {
            auto res = weyl_square(*M, *t, WeightTable::indicator(*nlo, *nhi));
            ResultRecord r;
            r.id = "weyl-square";
            r.add_input("M", static_cast<double>(*M));
            r.add_input("t", *t);
            r.add_input("n_lo", static_cast<double>(*nlo));
            r.add_input("n_hi", static_cast<double>(*nhi));
            r.add_output("total", res.total);
            r.add_output("diagonal", res.diagonal);
            r.add_output("off_diagonal", res.off_diagonal);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- moment
    {
        auto cmd = app.add_subcommand(
            "moment", "weighted moment integral of |zeta(1/2+it)|^{power} against a Gaussian "
                      "weight g(t)");
        auto power = std::make_shared<int>(4);
        auto t0 = std::make_shared<double>(50.0);
        auto delta = std::make_shared<double>(10.0);
        auto amp = std::make_shared<double>(1.0);
        cmd->add_option("--power", *power, "exponent 2k applied to |zeta|")->capture_default_str();
        cmd->add_option("--t0", *t0, "weight center")->capture_default_str();
        cmd->add_option("--delta", *delta, "weight width")->capture_default_str();
        cmd->add_option("--amplitude", *amp, "weight amplitude")->capture_default_str();
        cmd->callback([g, power, t0, delta, amp] {
            WeightSpec w;
            w.t0 = *t0;
            w.delta = *delta;
            w.amplitude = *amp;
            auto res = moment_integral(*power, w, g->quad());
            ResultRecord r;
            r.id = "moment";
            r.add_input("power", static_cast<double>(*power));
            r.add_input("t0", *t0);
            r.add_input("delta", *delta);
            r.add_input("amplitude", *amp);
            r.add_output("value", res.value);
            r.add_output("error_bound", res.error_bound);
            r.add_diag("experimental", res.experimental ? 1.0 : 0.0);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- fourth-moment
    {
        auto cmd = app.add_subcommand("fourth-moment",
                                      "plain fourth power mean over [-T, T], computed as twice "
                                      "the [0, T] integral by reflection");
        auto T = std::make_shared<double>(10.0);
        cmd->add_option("--T", *T, "interval endpoint")->required();
        cmd->callback([g, T] {
            auto res = plain_fourth_moment(*T, g->quad());
            ResultRecord r;
            r.id = "fourth-moment";
            r.add_input("T", *T);
            r.add_output("value", res.value);
            r.add_output("error_bound", res.error_bound);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- subconvexity-scan
    {
        auto cmd = app.add_subcommand("subconvexity-scan",
                                      "max of |zeta(1/2+it)| / (t^{1/6} log t) over log-spaced "
                                      "samples");
        auto tlo = std::make_shared<double>(2.0);
        auto thi = std::make_shared<double>(1e4);
        auto n = std::make_shared<long long>(1000);
        auto emit_samples = std::make_shared<bool>(false);
        cmd->add_option("--t-lo", *tlo, "scan start (>= 2)")->capture_default_str();
        cmd->add_option("--t-hi", *thi, "scan end")->capture_default_str();
        cmd->add_option("--samples", *n, "number of log-spaced samples")->capture_default_str();
        cmd->add_flag("--emit-samples", *emit_samples, "emit one record per sample");
        cmd->callback([g, tlo, thi, n, emit_samples] {
            auto rep = subconvexity_ratio_scan(*tlo, *thi, *n);
            ResultRecord r;
            r.id = "subconvexity-scan";
            r.add_input("t_lo", *tlo);
            r.add_input("t_hi", *thi);
            r.add_input("samples", static_cast<double>(*n));
            r.add_output("max_ratio", rep.max_ratio);
            r.add_output("argmax_t", rep.argmax_t);
            g->records.push_back(std::move(r));
            if (*emit_samples)
                for (const auto& s : rep.samples) {
                    ResultRecord e;
                    e.id = "subconvexity-sample";
                    e.add_input("t", s.t);
                    e.add_output("ratio", s.ratio);
                    g->records.push_back(std::move(e));
                }
        });
    }

    // ---------------------------------------------------------------- lattice-partition
    {
        auto cmd = app.add_subcommand("lattice-partition",
                                      "box sum of f over 2x2 integer matrices split by the sign "
                                      "of det");
        auto B = std::make_shared<long long>(1);
        auto fname = std::make_shared<std::string>("one");
        cmd->add_option("--B", *B, "box bound: entries in [-B, B]")->required();
        cmd->add_option("--f", *fname, "summand: one | det | absdet")->capture_default_str();
        cmd->callback([g, B, fname] {
            DetPartition p;
            if (*fname == "one")
                p = partition_by_det(BoxSpec{*B}, [](const IntMatrix2&) { return 1.0; });
            else if (*fname == "det")
                p = partition_by_det(BoxSpec{*B},
                                     [](const IntMatrix2& M) { return double(M.det()); });
            else if (*fname == "absdet")
                p = partition_by_det(BoxSpec{*B},
                                     [](const IntMatrix2& M) { return std::abs(double(M.det())); });
            else
                throw domain_error("unknown summand '" + *fname + "' (one | det | absdet)");
            ResultRecord r;
            r.id = "lattice-partition";
            r.add_input("B", static_cast<double>(*B));
            r.add_input("f", *fname);
            r.add_output("sum_zero", p.sum_zero);
            r.add_output("sum_pos", p.sum_pos);
            r.add_output("sum_neg", p.sum_neg);
            r.add_output("total", p.total);
            r.add_diag("count_zero", static_cast<double>(p.count_zero));
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- hecke-cosets
    {
        auto cmd = app.add_subcommand("hecke-cosets",
                                      "upper-triangular coset representatives of determinant n; "
                                      "their count is sigma_1(n)");
        auto n = std::make_shared<long long>(1);
        auto list = std::make_shared<bool>(false);
        cmd->add_option("--n", *n, "determinant (>= 1)")->required();
        cmd->add_flag("--list", *list, "emit one record per representative");
        cmd->callback([g, n, list] {
            auto reps = hecke_coset_reps(*n);
            ResultRecord r;
            r.id = "hecke-cosets";
            r.add_input("n", static_cast<double>(*n));
            r.add_output("count", static_cast<double>(reps.size()));
            g->records.push_back(std::move(r));
            if (*list)
                for (const auto& m : reps) {
                    ResultRecord e;
                    e.id = "hecke-coset-rep";
                    e.add_output("a", static_cast<double>(m.k));
                    e.add_output("b", static_cast<double>(m.l));
                    e.add_output("d", static_cast<double>(m.m));
                    g->records.push_back(std::move(e));
                }
        });
    }

    // ---------------------------------------------------------------- hecke-factor
    {
        auto cmd = app.add_subcommand("hecke-factor",
                                      "unique factorization M = gamma * rep with gamma in "
                                      "SL(2,Z) and rep the normal-form representative");
        auto k = std::make_shared<long long>(0);
        auto l = std::make_shared<long long>(0);
        auto n = std::make_shared<long long>(0);
        auto m = std::make_shared<long long>(0);
        cmd->add_option("--k", *k, "entry M(1,1)")->required();
        cmd->add_option("--l", *l, "entry M(1,2)")->required();
        cmd->add_option("--n", *n, "entry M(2,1)")->required();
        cmd->add_option("--m", *m, "entry M(2,2)")->required();
        cmd->callback([g, k, l, n, m] {
            IntMatrix2 M{*k, *l, *n, *m};
            auto f = factor_det_n(M);
            ResultRecord r;
            r.id = "hecke-factor";
            r.add_input("k", static_cast<double>(*k));
            r.add_input("l", static_cast<double>(*l));
            r.add_input("n", static_cast<double>(*n));
            r.add_input("m", static_cast<double>(*m));
            r.add_output("gamma_k", static_cast<double>(f.gamma.k));
            r.add_output("gamma_l", static_cast<double>(f.gamma.l));
            r.add_output("gamma_n", static_cast<double>(f.gamma.n));
            r.add_output("gamma_m", static_cast<double>(f.gamma.m));
            r.add_output("rep_a", static_cast<double>(f.rep.k));
            r.add_output("rep_b", static_cast<double>(f.rep.l));
            r.add_output("rep_d", static_cast<double>(f.rep.m));
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- poincare
    {
        auto cmd = app.add_subcommand("poincare",
                                      "truncated Poincare series over PSL(2,Z) for the Gaussian "
                                      "Frobenius-norm test function, with a tail bound");
        auto x = std::make_shared<double>(0.0);
        auto y = std::make_shared<double>(1.0);
        auto theta = std::make_shared<double>(0.0);
        auto cutoff = std::make_shared<double>(8.0);
        auto amp = std::make_shared<double>(1.0);
        auto beta = std::make_shared<double>(1.0);
        auto tail_tol = std::make_shared<double>(1e-8);
        cmd->add_option("--x", *x, "Iwasawa x")->capture_default_str();
        cmd->add_option("--y", *y, "Iwasawa y (> 0)")->capture_default_str();
        cmd->add_option("--theta", *theta, "Iwasawa angle")->capture_default_str();
        cmd->add_option("--cutoff", *cutoff, "Frobenius-norm shell cutoff")->capture_default_str();
        cmd->add_option("--amplitude", *amp, "test function amplitude")->capture_default_str();
        cmd->add_option("--beta", *beta, "test function decay rate")->capture_default_str();
        cmd->add_option("--tail-tol", *tail_tol, "required bound on the truncation tail")
            ->capture_default_str();
        cmd->callback([g, x, y, theta, cutoff, amp, beta, tail_tol] {
            auto res = poincare_series(PoincareSpec{*amp, *beta}, GroupPoint{*x, *y, *theta},
                                       *cutoff, *tail_tol);
            ResultRecord r;
            r.id = "poincare";
            r.add_input("x", *x);
            r.add_input("y", *y);
            r.add_input("theta", *theta);
            r.add_input("cutoff", *cutoff);
            r.add_input("amplitude", *amp);
            r.add_input("beta", *beta);
            r.add_output("value", res.value);
            r.add_output("tail_bound", res.tail_bound);
            r.add_diag("terms", static_cast<double>(res.terms));
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- divisor-sum
    {
        auto cmd = app.add_subcommand("divisor-sum",
                                      "additive divisor sum over n <= N of d(n) d(n+m) W(n/m)");
        auto N = std::make_shared<long long>(10);
        auto m = std::make_shared<long long>(1);
        auto backend = std::make_shared<std::string>("sieve");
        auto baseline = std::make_shared<bool>(false);
        auto wopt = std::make_shared<WindowOpts>();
        cmd->add_option("--N", *N, "summation limit")->required();
        cmd->add_option("--m", *m, "shift (> 0)")->required();
        cmd->add_option("--backend", *backend, "divisor backend: sieve | trial")
            ->capture_default_str();
        cmd->add_flag("--baseline", *baseline,
                      "also report the classical leading-term baseline and the ratio");
        wopt->attach(cmd);
        cmd->callback([g, N, m, backend, baseline, wopt] {
            DivisorBackend be;
            if (*backend == "sieve")
                be = DivisorBackend::sieve;
            else if (*backend == "trial")
                be = DivisorBackend::trial;
            else
                throw domain_error("unknown backend '" + *backend + "' (sieve | trial)");
            double v = additive_divisor_sum(*N, *m, wopt->build(), be);
            ResultRecord r;
            r.id = "divisor-sum";
            r.add_input("N", static_cast<double>(*N));
            r.add_input("m", static_cast<double>(*m));
            r.add_input("window", wopt->kind);
            r.add_input("backend", *backend);
            r.add_output("value", v);
            if (*baseline) {
                double main = ingham_main_term(*N, *m);
                r.add_output("baseline", main);
                r.add_output("ratio", v / main);
            }
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- divisor-sieve
    {
        auto cmd = app.add_subcommand("divisor-sieve",
                                      "exact divisor-count table d(n) for n <= N by incremental "
                                      "multiple marking");
        auto N = std::make_shared<long long>(100);
        auto from = std::make_shared<long long>(0);
        auto to = std::make_shared<long long>(0);
        cmd->add_option("--N", *N, "table size (<= 1e8)")->required();
        cmd->add_option("--from", *from, "emit d(n) records starting here");
        cmd->add_option("--to", *to, "emit d(n) records up to here");
        cmd->callback([g, N, from, to] {
            auto d = divisor_sieve(*N);
            long long sum = 0;
            for (long long n = 1; n <= *N; ++n) sum += d(n);
            ResultRecord r;
            r.id = "divisor-sieve";
            r.add_input("N", static_cast<double>(*N));
            r.add_output("d_of_N", static_cast<double>(d(*N)));
            r.add_output("sum_to_N", static_cast<double>(sum));
            g->records.push_back(std::move(r));
            if (*from >= 1 && *to >= *from) {
                require(*to <= *N, "divisor-sieve: emission range beyond the table");
                for (long long n = *from; n <= *to; ++n) {
                    ResultRecord e;
                    e.id = "divisor-entry";
                    e.add_input("n", static_cast<double>(n));
                    e.add_output("d", static_cast<double>(d(n)));
                    g->records.push_back(std::move(e));
                }
            }
        });
    }

    // ---------------------------------------------------------------- maass-ingest
    {
        auto cmd = app.add_subcommand("maass-ingest",
                                      "read and validate a Maass coefficient table (spectral "
                                      "parameter, rho(1)-normalization, Hecke multiplicativity)");
        auto file = std::make_shared<std::string>();
        auto tol = std::make_shared<double>(1e-6);
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--hecke-tol", *tol, "multiplicativity tolerance")->capture_default_str();
        cmd->callback([g, file, tol] {
            auto f = ingest_maass_csv(*file, *tol);
            double worst = 0.0;
            static const int primes[] = {2, 3, 5, 7, 11, 13};
            for (std::size_t i = 0; i < std::size(primes); ++i)
                for (std::size_t j = i + 1; j < std::size(primes); ++j) {
                    long long p = primes[i], q = primes[j];
                    if (p * q > f.n_coeff()) continue;
                    worst = std::max(worst,
                                     std::abs(f.coeff(p) * f.coeff(q) - f.coeff(p * q)));
                }
            ResultRecord r;
            r.id = "maass-ingest";
            r.add_input("file", *file);
            r.add_output("r", f.r);
            r.add_output("n_coeff", static_cast<double>(f.n_coeff()));
            r.add_output("parity", static_cast<double>(f.parity));
            r.add_diag("worst_hecke_defect", worst);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- maass-eval
    {
        auto cmd = app.add_subcommand("maass-eval",
                                      "truncated Maass-form value at an Iwasawa point via the "
                                      "K-Bessel or Jacquet-quadrature backend");
        auto file = std::make_shared<std::string>();
        auto x = std::make_shared<double>(0.0);
        auto y = std::make_shared<double>(1.0);
        auto theta = std::make_shared<double>(0.0);
        auto ell = std::make_shared<int>(0);
        auto ntr = std::make_shared<int>(12);
        auto backend = std::make_shared<std::string>("kbessel");
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--x", *x, "Iwasawa x")->capture_default_str();
        cmd->add_option("--y", *y, "Iwasawa y (> 0)")->capture_default_str();
        cmd->add_option("--theta", *theta, "Iwasawa angle")->capture_default_str();
        cmd->add_option("--ell", *ell, "weight index (0 validated)")->capture_default_str();
        cmd->add_option("--n-trunc", *ntr, "expansion truncation")->capture_default_str();
        cmd->add_option("--backend", *backend, "kbessel | jacquet")->capture_default_str();
        cmd->callback([g, file, x, y, theta, ell, ntr, backend] {
            auto f = ingest_maass_csv(*file);
            MaassBackend be;
            if (*backend == "kbessel")
                be = MaassBackend::kbessel;
            else if (*backend == "jacquet")
                be = MaassBackend::jacquet;
            else
                throw domain_error("unknown backend '" + *backend + "' (kbessel | jacquet)");
            cplx v = maass_eval(f, GroupPoint{*x, *y, *theta}, *ell, *ntr, be, g->quad());
            ResultRecord r;
            r.id = "maass-eval";
            r.add_input("file", *file);
            r.add_input("x", *x);
            r.add_input("y", *y);
            r.add_input("ell", static_cast<double>(*ell));
            r.add_input("n_trunc", static_cast<double>(*ntr));
            r.add_input("backend", *backend);
            add_complex_outputs(r, v);
            r.add_diag("tail_envelope", maass_tail_envelope(f, *y, *ntr + 1, *ell));
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- jacquet
    {
        auto cmd = app.add_subcommand("jacquet",
                                      "Jacquet transform of phi_ell at an Iwasawa point; for "
                                      "ell = 0 at x = theta = 0 the K-Bessel closed form is "
                                      "reported alongside");
        auto rr = std::make_shared<double>(1.0);
        auto x = std::make_shared<double>(0.0);
        auto y = std::make_shared<double>(1.0);
        auto theta = std::make_shared<double>(0.0);
        auto ell = std::make_shared<int>(0);
        auto delta = std::make_shared<int>(1);
        cmd->add_option("--r", *rr, "spectral parameter (nu = ir)")->required();
        cmd->add_option("--x", *x, "Iwasawa x")->capture_default_str();
        cmd->add_option("--y", *y, "Iwasawa y (> 0)")->capture_default_str();
        cmd->add_option("--theta", *theta, "Iwasawa angle")->capture_default_str();
        cmd->add_option("--ell", *ell, "weight index (0 validated)")->capture_default_str();
        cmd->add_option("--delta", *delta, "character sign +1 | -1")->capture_default_str();
        cmd->callback([g, rr, x, y, theta, ell, delta] {
            cplx v = jacquet_transform(cplx{0.0, *rr}, *ell, *delta, GroupPoint{*x, *y, *theta},
                                       g->quad());
            ResultRecord r;
            r.id = "jacquet";
            r.add_input("r", *rr);
            r.add_input("x", *x);
            r.add_input("y", *y);
            r.add_input("ell", static_cast<double>(*ell));
            r.add_input("delta", static_cast<double>(*delta));
            add_complex_outputs(r, v);
            if (*ell == 0 && *x == 0.0 && *theta == 0.0) {
                cplx closed = jacquet_whittaker_closed_form(*rr, *y);
                r.add_diag("closed_re", closed.real());
                r.add_diag("closed_im", closed.imag());
                r.add_diag("closed_abs_diff", std::abs(v - closed));
            }
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- casimir-check
    {
        auto cmd = app.add_subcommand("casimir-check",
                                      "finite-difference Casimir eigenvalue of the truncated "
                                      "Maass expansion against 1/4 + r^2");
        auto file = std::make_shared<std::string>();
        auto x = std::make_shared<double>(0.2);
        auto y = std::make_shared<double>(1.1);
        auto ntr = std::make_shared<int>(12);
        auto h = std::make_shared<double>(0.0);
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--x", *x, "Iwasawa x")->capture_default_str();
        cmd->add_option("--y", *y, "Iwasawa y (> 0)")->capture_default_str();
        cmd->add_option("--n-trunc", *ntr, "expansion truncation")->capture_default_str();
        cmd->add_option("--step", *h, "finite-difference step (0 = y/200)")->capture_default_str();
        cmd->callback([g, file, x, y, ntr, h] {
            auto f = ingest_maass_csv(*file);
            auto fn = [&](const GroupPoint& p) { return maass_eval(f, p, 0, *ntr); };
            GroupPoint at{*x, *y};
            auto full = casimir_apply_fd(fn, at, *h);
            double ev = (full.value / fn(at)).real();
            ResultRecord r;
            r.id = "casimir-check";
            r.add_input("file", *file);
            r.add_input("x", *x);
            r.add_input("y", *y);
            r.add_input("n_trunc", static_cast<double>(*ntr));
            r.add_output("eigenvalue", ev);
            r.add_output("expected", f.eigenvalue());
            r.add_output("rel_err", std::abs(ev / f.eigenvalue() - 1.0));
            r.add_diag("richardson_delta", full.richardson_delta);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- lfun-eval
    {
        auto cmd = app.add_subcommand("lfun-eval",
                                      "L-series of the coefficient table (direct for Re s > 1, "
                                      "Gaussian-damped heuristic elsewhere)");
        auto file = std::make_shared<std::string>();
        auto sigma = std::make_shared<double>(2.0);
        auto t = std::make_shared<double>(0.0);
        auto scheme = std::make_shared<std::string>("direct");
        auto X = std::make_shared<double>(16.0);
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--sigma", *sigma, "Re s")->capture_default_str();
        cmd->add_option("--t", *t, "Im s")->capture_default_str();
        cmd->add_option("--scheme", *scheme, "direct | smoothed")->capture_default_str();
        cmd->add_option("--X", *X, "smoothing cutoff for the damped scheme")
            ->capture_default_str();
        cmd->callback([g, file, sigma, t, scheme, X] {
            auto f = ingest_maass_csv(*file);
            LfunScheme sc;
            if (*scheme == "direct")
                sc = LfunScheme::direct;
            else if (*scheme == "smoothed")
                sc = LfunScheme::smoothed;
            else
                throw domain_error("unknown scheme '" + *scheme + "' (direct | smoothed)");
            auto res = l_function_eval(f, {*sigma, *t}, sc, *X);
            ResultRecord r;
            r.id = "lfun-eval";
            r.add_input("file", *file);
            r.add_input("sigma", *sigma);
            r.add_input("t", *t);
            r.add_input("scheme", *scheme);
            if (sc == LfunScheme::smoothed) r.add_input("X", *X);
            add_complex_outputs(r, res.value);
            r.add_diag("tail_diagnostic", res.tail_diagnostic);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- lfun-moment
    {
        auto cmd = app.add_subcommand("lfun-moment",
                                      "second moment of |L(1/2+it)| against a Gaussian weight "
                                      "(heuristic smoothed evaluator; contract is cutoff "
                                      "stability)");
        auto file = std::make_shared<std::string>();
        auto t0 = std::make_shared<double>(8.0);
        auto delta = std::make_shared<double>(3.0);
        auto X = std::make_shared<double>(16.0);
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--t0", *t0, "weight center")->capture_default_str();
        cmd->add_option("--delta", *delta, "weight width")->capture_default_str();
        cmd->add_option("--X", *X, "smoothing cutoff")->capture_default_str();
        cmd->callback([g, file, t0, delta, X] {
            auto f = ingest_maass_csv(*file);
            WeightSpec w;
            w.t0 = *t0;
            w.delta = *delta;
            QuadratureSpec spec = g->quad();
            spec.abs_tol = std::max(spec.abs_tol, 1e-8);
            auto res = l_moment(f, w, spec, *X);
            ResultRecord r;
            r.id = "lfun-moment";
            r.add_input("file", *file);
            r.add_input("t0", *t0);
            r.add_input("delta", *delta);
            r.add_input("X", *X);
            r.add_output("value", res.value);
            r.add_output("error_bound", res.error_bound);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- kirillov-expand
    {
        auto cmd = app.add_subcommand("kirillov-expand",
                                      "seed-function expansion y^{a+1/2} sum rho(n) n^a "
                                      "e^{-2 pi n y} e(nx) from the coefficient table");
        auto file = std::make_shared<std::string>();
        auto alpha = std::make_shared<double>(2.0);
        auto x = std::make_shared<double>(0.0);
        auto y = std::make_shared<double>(0.2);
        auto ntr = std::make_shared<int>(64);
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--alpha", *alpha, "seed decay exponent (>= 1)")->capture_default_str();
        cmd->add_option("--x", *x, "horocycle coordinate x")->capture_default_str();
        cmd->add_option("--y", *y, "horocycle height y (> 0)")->capture_default_str();
        cmd->add_option("--n-trunc", *ntr, "expansion truncation")->capture_default_str();
        cmd->callback([g, file, alpha, x, y, ntr] {
            auto f = ingest_maass_csv(*file);
            cplx v = kirillov_seed_expansion(f, SeedSpec{*alpha}, *x, *y, *ntr);
            ResultRecord r;
            r.id = "kirillov-expand";
            r.add_input("file", *file);
            r.add_input("alpha", *alpha);
            r.add_input("x", *x);
            r.add_input("y", *y);
            r.add_input("n_trunc", static_cast<double>(*ntr));
            add_complex_outputs(r, v);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- shifted-coefficient
    {
        auto cmd = app.add_subcommand("shifted-coefficient",
                                      "m-th x-Fourier coefficient of |K^{-1}omega|^2 by the "
                                      "closed-form pair sum and by numerical x-quadrature");
        auto file = std::make_shared<std::string>();
        auto alpha = std::make_shared<double>(2.0);
        auto m = std::make_shared<long long>(1);
        auto y = std::make_shared<double>(0.1);
        auto ntr = std::make_shared<int>(128);
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--alpha", *alpha, "seed decay exponent (>= 1)")->capture_default_str();
        cmd->add_option("--m", *m, "Fourier mode (>= 0)")->capture_default_str();
        cmd->add_option("--y", *y, "horocycle height y (> 0)")->capture_default_str();
        cmd->add_option("--n-trunc", *ntr, "pair truncation")->capture_default_str();
        cmd->callback([g, file, alpha, m, y, ntr] {
            auto f = ingest_maass_csv(*file);
            auto res = shifted_fourier_coefficient(f, SeedSpec{*alpha}, *m, *y, *ntr);
            ResultRecord r;
            r.id = "shifted-coefficient";
            r.add_input("file", *file);
            r.add_input("alpha", *alpha);
            r.add_input("m", static_cast<double>(*m));
            r.add_input("y", *y);
            r.add_input("n_trunc", static_cast<double>(*ntr));
            r.add_output("closed_form", res.closed_form);
            r.add_output("quadrature", res.quadrature);
            r.add_output("abs_diff", std::abs(res.closed_form - res.quadrature));
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- shifted-convolution
    {
        auto cmd = app.add_subcommand("shifted-convolution",
                                      "truncated shifted convolution sum rho(n) rho(n+m) W(n/m)");
        auto file = std::make_shared<std::string>();
        auto m = std::make_shared<long long>(1);
        auto ntr = std::make_shared<int>(128);
        auto wopt = std::make_shared<WindowOpts>();
        cmd->add_option("--file", *file, "coefficient table path")->required();
        cmd->add_option("--m", *m, "shift (> 0)")->capture_default_str();
        cmd->add_option("--n-trunc", *ntr, "truncation")->capture_default_str();
        wopt->attach(cmd);
        cmd->callback([g, file, m, ntr, wopt] {
            auto f = ingest_maass_csv(*file);
            double v = shifted_convolution(f, *m, wopt->build(), *ntr);
            ResultRecord r;
            r.id = "shifted-convolution";
            r.add_input("file", *file);
            r.add_input("m", static_cast<double>(*m));
            r.add_input("n_trunc", static_cast<double>(*ntr));
            r.add_input("window", wopt->kind);
            r.add_output("value", v);
            g->records.push_back(std::move(r));
        });
    }

    // ---------------------------------------------------------------- orthogonality
    {
        auto cmd = app.add_subcommand("orthogonality",
                                      "quadrature of int_0^1 e(nx) conj(e((n+m)x)) dx, which is "
                                      "1 for m = 0 and 0 otherwise");
        auto n = std::make_shared<long long>(1);
        auto m = std::make_shared<long long>(0);
        cmd->add_option("--n", *n, "frequency n")->required();
        cmd->add_option("--m", *m, "shift m")->required();
        cmd->callback([g, n, m] {
            double v = fourier_orthogonality(*n, *m, g->quad());
            ResultRecord r;
            r.id = "orthogonality";
            r.add_input("n", static_cast<double>(*n));
            r.add_input("m", static_cast<double>(*m));
            r.add_output("value", v);
            r.add_output("deviation", std::abs(v - (*m == 0 ? 1.0 : 0.0)));
            g->records.push_back(std::move(r));
        });
    }

    auto started = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: validation: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: non-convergence: " << e.what() << "\n";
        return 1;
    } catch (const truncation_error& e) {
        std::cerr << "error: non-convergence: " << e.what() << "\n";
        return 1;
    } catch (const error& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }

    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    for (auto& r : g->records) r.duration_seconds = seconds;

    try {
        std::string path = g->out;
        if (path != "-" && !path.empty() && path.front() != '/') {
            if (const char* dir = std::getenv("ZETALAB_OUTDIR"); dir && *dir)
                path = std::string(dir) + "/" + path;
        }
        emit_results(g->records, g->fmt(), path, g->timing);
    } catch (const std::exception& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
