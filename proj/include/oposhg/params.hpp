#pragma once

#include <cmath>
#include <string>

#include "oposhg/errors.hpp"
#include "oposhg/types.hpp"

namespace oposhg {

/// Physical constants of the three-mode cavity model. All rates are in units
/// of gamma1; parse_config() rescales arbitrary input so that gamma1 == 1.
struct SystemParams {
    double gamma1 = 1.0;  ///< loss rate of the fundamental at w1
    double gamma2 = 1.0;  ///< loss rate of the pumped mode at w2 = 2 w1
    double gamma3 = 1.0;  ///< loss rate of the upconverted mode at w3 = 4 w1
    double kappa1 = 0.01; ///< downconversion nonlinearity (w2 -> 2 w1)
    double kappa2 = 0.01; ///< upconversion nonlinearity (2 w2 -> w3)
    Complex eps2{0.0, 0.0}; ///< coherent pump amplitude at w2
    Complex eps1{0.0, 0.0}; ///< injected signal amplitude at w1 (default none)

    void validate() const {
        if (!(gamma1 > 0.0) || !(gamma2 > 0.0) || !(gamma3 > 0.0))
            throw ConfigError("non-positive loss rate");
        if (kappa1 < 0.0 || kappa2 < 0.0)
            throw ConfigError("negative nonlinear coupling");
        if (!std::isfinite(std::abs(eps2)) || !std::isfinite(std::abs(eps1)))
            throw ConfigError("non-finite pump amplitude");
    }

    /// Returns the same physics expressed in units of gamma1.
    SystemParams normalized() const {
        SystemParams q = *this;
        const double g = gamma1;
        q.gamma1 = 1.0;
        q.gamma2 = gamma2 / g;
        q.gamma3 = gamma3 / g;
        q.kappa1 = kappa1 / g;
        q.kappa2 = kappa2 / g;
        q.eps2 = eps2 / g;
        q.eps1 = eps1 / g;
        return q;
    }
};

}  // namespace oposhg
