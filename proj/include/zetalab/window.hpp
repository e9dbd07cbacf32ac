#pragma once

// Test windows W for convolution sums.  The window argument is the ratio
// n/m throughout (not n/N): indicator windows therefore select the n ~ m
// regime, matching the shifted-convolution scaling.

#include <limits>

#include "zetalab/core.hpp"

namespace zetalab {

struct WindowSpec {
    enum class Kind {
        ones,            // W = 1 (unweighted default)
        indicator,       // W = 1 on [lo, hi], else 0
        gaussian,        // W = exp(-((u - center)/width)^2)
        rational_decay,  // W = 1 / (1 + (u/scale)^power)
        kirillov_induced // W = (u(u+1))^alpha / (2u+1)^{2 alpha + 2}
    };

    Kind kind = Kind::ones;
    double lo = 0.0, hi = 1.0;        // indicator
    double center = 1.0, width = 1.0; // gaussian
    double scale = 1.0;               // rational_decay
    double power = 2.0;               // rational_decay
    double alpha = 2.0;               // kirillov_induced

    void validate() const {
        switch (kind) {
        case Kind::ones: break;
        case Kind::indicator: require(lo <= hi, "WindowSpec: empty indicator window"); break;
        case Kind::gaussian: require(width > 0.0, "WindowSpec: gaussian width must be > 0"); break;
        case Kind::rational_decay:
            require(scale > 0.0 && power > 0.0, "WindowSpec: rational decay needs scale, power > 0");
            break;
        case Kind::kirillov_induced:
            require(alpha >= 1.0, "WindowSpec: kirillov_induced needs alpha >= 1");
            break;
        }
    }

    double operator()(double u) const {
        switch (kind) {
        case Kind::ones: return 1.0;
        case Kind::indicator: return (u >= lo && u <= hi) ? 1.0 : 0.0;
        case Kind::gaussian: {
            double z = (u - center) / width;
            return std::exp(-z * z);
        }
        case Kind::rational_decay: return 1.0 / (1.0 + std::pow(u / scale, power));
        case Kind::kirillov_induced:
            if (u <= 0.0) return 0.0;
            return std::pow(u * (u + 1.0), alpha) / std::pow(2.0 * u + 1.0, 2.0 * alpha + 2.0);
        }
        return 0.0;
    }

    // effective support [lo, hi] outside which W < tol (conservative)
    std::pair<double, double> support(double tol = 1e-12) const {
        switch (kind) {
        case Kind::indicator: return {lo, hi};
        case Kind::gaussian: {
            double c = std::sqrt(std::max(1.0, -std::log(tol)));
            return {center - c * width, center + c * width};
        }
        case Kind::ones:
        case Kind::rational_decay:
        case Kind::kirillov_induced:
            return {0.0, std::numeric_limits<double>::infinity()};
        }
        return {0.0, std::numeric_limits<double>::infinity()};
    }
};

} // namespace zetalab
