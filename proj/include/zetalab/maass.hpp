#pragma once

// Maass cusp form data model: spectral parameter r (nu = ir, Casimir
// eigenvalue 1/4 + r^2) and a real coefficient table rho(n) normalized to
// rho(1) = 1.  Coefficients are either ingested from a text table (format
// below) or built synthetically for tests.
//
// File format: lines starting with '#' are comments; the first data line is
// "r=<decimal>"; an optional "parity=+1" line may follow; then one "n,rho"
// pair per line with n strictly increasing from 1.  Parsing is
// locale-independent with '.' as the radix point.

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "zetalab/core.hpp"

namespace zetalab {

struct MaassForm {
    double r = 0.0;              // spectral parameter
    std::vector<double> rho;     // rho[n] for n >= 1; rho[0] unused
    int parity = +1;             // only +1 (even) is validated
    std::string source = "synthetic";

    int n_coeff() const { return static_cast<int>(rho.size()) - 1; }

    double coeff(long long n) const {
        require(n >= 1 && n < static_cast<long long>(rho.size()),
                "MaassForm: coefficient index out of range");
        return rho[static_cast<std::size_t>(n)];
    }

    double eigenvalue() const { return 0.25 + r * r; }

    double max_abs_coeff() const {
        double m = 0.0;
        for (std::size_t n = 1; n < rho.size(); ++n) m = std::max(m, std::abs(rho[n]));
        return m;
    }

    void validate() const {
        require(r > 0.0 && std::isfinite(r), "MaassForm: spectral parameter must be positive");
        require(n_coeff() >= 16, "MaassForm: need at least 16 coefficients");
        require(parity == +1, "MaassForm: only even forms (parity +1) are supported");
        require(rho.size() >= 2 && rho[1] != 0.0, "MaassForm: rho(1) must be nonzero");
        for (std::size_t n = 1; n < rho.size(); ++n)
            require(std::isfinite(rho[n]), "MaassForm: non-finite coefficient");
    }

    // delta coefficients: rho(1) = 1, all higher coefficients zero
    static MaassForm synthetic_delta(double r_, int n) {
        MaassForm f;
        f.r = r_;
        f.rho.assign(static_cast<std::size_t>(n) + 1, 0.0);
        f.rho[1] = 1.0;
        f.source = "synthetic-delta";
        f.validate();
        return f;
    }

    // rho(n) = 1/n^2 (multiplicative, rapidly summable)
    static MaassForm synthetic_inverse_square(double r_, int n) {
        MaassForm f;
        f.r = r_;
        f.rho.assign(static_cast<std::size_t>(n) + 1, 0.0);
        for (long long k = 1; k <= n; ++k)
            f.rho[static_cast<std::size_t>(k)] = 1.0 / (static_cast<double>(k) * k);
        f.source = "synthetic-invsq";
        f.validate();
        return f;
    }
};

namespace detail {

inline bool parse_double(std::string_view sv, double& out) {
    const char* b = sv.data();
    const char* e = sv.data() + sv.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e;
}

inline bool parse_ll(std::string_view sv, long long& out) {
    const char* b = sv.data();
    const char* e = sv.data() + sv.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    if (b < e && *b == '+') ++b; // from_chars rejects an explicit plus
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e;
}

inline std::string_view strip(std::string_view sv) {
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t' || sv.front() == '\r'))
        sv.remove_prefix(1);
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r'))
        sv.remove_suffix(1);
    return sv;
}

} // namespace detail

// Hecke multiplicativity sanity check: |rho(p) rho(q) - rho(pq)| <= tol for
// small coprime prime pairs inside the table.  Returns the failures.
inline std::vector<std::string> hecke_multiplicativity_defects(const MaassForm& f,
                                                               double tol = 1e-6) {
    static const int primes[] = {2, 3, 5, 7, 11, 13};
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < std::size(primes); ++i)
        for (std::size_t j = i + 1; j < std::size(primes); ++j) {
            long long p = primes[i], q = primes[j], pq = p * q;
            if (pq > f.n_coeff()) continue;
            double defect = std::abs(f.coeff(p) * f.coeff(q) - f.coeff(pq));
            if (defect > tol) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "rho(%lld)rho(%lld) != rho(%lld), defect %.3e", p, q,
                              pq, defect);
                bad.emplace_back(buf);
            }
        }
    return bad;
}

inline MaassForm ingest_maass_csv(const std::string& path, double hecke_tol = 1e-6) {
    std::ifstream in(path);
    if (!in) throw parse_error("ingest_maass_csv: cannot open '" + path + "'");

    MaassForm f;
    f.source = path;
    f.rho.assign(1, 0.0);

    std::string line;
    long long lineno = 0;
    bool have_r = false;
    long long expect_n = 1;

    auto fail = [&](const std::string& what) {
        throw parse_error("ingest_maass_csv: " + path + ":" + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = detail::strip(line);
        if (sv.empty() || sv.front() == '#') continue;

        if (!have_r) {
            if (sv.substr(0, 2) != "r=") fail("expected 'r=<decimal>' as the first data line");
            if (!detail::parse_double(sv.substr(2), f.r)) fail("malformed spectral parameter");
            have_r = true;
            continue;
        }
        if (sv.substr(0, 7) == "parity=") {
            long long p;
            if (!detail::parse_ll(sv.substr(7), p)) fail("malformed parity");
            f.parity = static_cast<int>(p);
            continue;
        }

        auto comma = sv.find(',');
        if (comma == std::string_view::npos) fail("expected 'n,rho'");
        long long n;
        double v;
        if (!detail::parse_ll(sv.substr(0, comma), n)) fail("malformed index");
        if (!detail::parse_double(sv.substr(comma + 1), v)) fail("malformed coefficient");
        if (n != expect_n) fail("index " + std::to_string(n) + " out of order (expected " +
                                std::to_string(expect_n) + ")");
        f.rho.push_back(v);
        ++expect_n;
    }
    if (!have_r) {
        lineno = 0;
        fail("no data lines (missing 'r=')");
    }

    // semantic validation
    std::vector<std::string> problems;
    if (!(f.r > 0.0) || !std::isfinite(f.r)) problems.push_back("spectral parameter not positive");
    if (f.n_coeff() < 16) problems.push_back("fewer than 16 coefficients");
    if (f.parity != +1) problems.push_back("parity " + std::to_string(f.parity) + " not supported");
    if (f.rho.size() < 2 || f.rho[1] == 0.0) problems.push_back("rho(1) must be nonzero");

    if (problems.empty()) {
        // normalize to rho(1) = 1 before the multiplicativity check
        double r1 = f.rho[1];
        if (r1 != 1.0)
            for (std::size_t n = 1; n < f.rho.size(); ++n) f.rho[n] /= r1;
        auto defects = hecke_multiplicativity_defects(f, hecke_tol);
        problems.insert(problems.end(), defects.begin(), defects.end());
    }

    if (!problems.empty()) {
        std::string all = "ingest_maass_csv: " + path + ": validation failed:";
        for (const auto& p : problems) all += "\n  - " + p;
        throw validation_error(all);
    }
    f.validate();
    return f;
}

} // namespace zetalab
