#pragma once

// Smooth weight g(t) for moment integrals: a Gaussian bump centered at T0
// of width Delta.  The amplitude is factored out of quadrature (applied to
// the final value), which keeps refinement amplitude-invariant and makes
// linearity in the amplitude exact.

#include "zetalab/core.hpp"

namespace zetalab {

struct WeightSpec {
    double t0 = 50.0;
    double delta = 10.0;
    double amplitude = 1.0;

    void validate() const {
        require(delta > 0.0, "WeightSpec: width must be > 0");
        require(std::isfinite(t0) && std::isfinite(amplitude), "WeightSpec: non-finite field");
    }

    // unit-amplitude profile
    double profile(double t) const {
        double z = (t - t0) / delta;
        return std::exp(-z * z);
    }

    double operator()(double t) const { return amplitude * profile(t); }

    // effective support: the tail of the unit profile is below tol outside
    std::pair<double, double> support(double tol) const {
        double c = std::sqrt(std::max(1.0, -std::log(std::max(tol, 1e-300))));
        return {t0 - c * delta, t0 + c * delta};
    }
};

} // namespace zetalab
