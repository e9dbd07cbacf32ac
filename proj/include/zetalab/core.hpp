#pragma once

// Shared value types, error taxonomy, and the additive character e(xi).

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace zetalab {

using cplx = std::complex<double>;

inline constexpr double pi     = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

// ---------------------------------------------------------------------------
// Errors.  Validation failures (bad arguments, bad files) are distinct from
// numeric failures (non-convergence, insufficient truncation) so the CLI can
// map them to exit codes 2 and 1 respectively.

class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// bad argument / precondition violation
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

// evaluation at a pole (gamma at non-positive integers, zeta at s = 1)
class pole_error : public domain_error {
public:
    explicit pole_error(const std::string& what) : domain_error(what) {}
};

// exact integer arithmetic would overflow
class overflow_error : public domain_error {
public:
    explicit overflow_error(const std::string& what) : domain_error(what) {}
};

// malformed input file
class parse_error : public domain_error {
public:
    explicit parse_error(const std::string& what) : domain_error(what) {}
};

// structurally valid input that fails semantic checks
class validation_error : public domain_error {
public:
    explicit validation_error(const std::string& what) : domain_error(what) {}
};

// quadrature or series did not reach the requested tolerance
class convergence_error : public error {
public:
    explicit convergence_error(const std::string& what) : error(what) {}
};

// coefficient table or series cutoff too short for the requested tail bound
class truncation_error : public error {
public:
    explicit truncation_error(const std::string& what) : error(what) {}
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw domain_error(what);
}

namespace detail {
inline std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}
} // namespace detail

inline double ensure_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw error(std::string(what) + ": non-finite value");
    return v;
}

inline cplx ensure_finite(cplx v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw error(std::string(what) + ": non-finite value");
    return v;
}

// ---------------------------------------------------------------------------
// e(xi) = exp(2 pi i xi).  The argument is reduced with std::remainder, which
// is exact, so xi and xi + 1 produce bit-identical results whenever the shift
// itself is exactly representable.  Quarter-period points are returned exactly.
inline cplx additive_character(double xi) {
    double r = std::remainder(xi, 1.0);   // r in [-1/2, 1/2]
    if (r == 0.0) return {1.0, 0.0};
    if (r == 0.5 || r == -0.5) return {-1.0, 0.0};
    if (r == 0.25) return {0.0, 1.0};
    if (r == -0.25) return {0.0, -1.0};
    double a = two_pi * r;
    return {std::cos(a), std::sin(a)};
}

// ---------------------------------------------------------------------------
// Neumaier-compensated accumulation.  Summation order is always the caller's
// iteration order, so reductions stay deterministic.

class kahan_sum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class kahan_csum {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    kahan_sum re_, im_;
};

// ---------------------------------------------------------------------------
// Iwasawa coordinates (x, y, theta) of a point g = n[x] a[y] k[theta].
// theta is an angle mod pi (projective convention), normalized to [0, pi).

struct GroupPoint {
    double x = 0.0;
    double y = 1.0;
    double theta = 0.0;

    GroupPoint() = default;
    GroupPoint(double x_, double y_, double theta_ = 0.0)
        : x(x_), y(y_), theta(normalize_angle(theta_)) {
        require(y > 0.0 && std::isfinite(y), "GroupPoint: y must be positive and finite");
        require(std::isfinite(x), "GroupPoint: x must be finite");
    }

    static double normalize_angle(double t) {
        double r = std::fmod(t, pi);
        if (r < 0.0) r += pi;
        return r;
    }
};

} // namespace zetalab
