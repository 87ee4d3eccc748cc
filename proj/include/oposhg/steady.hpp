#pragma once

#include <array>
#include <optional>
#include <string>

#include "oposhg/params.hpp"
#include "oposhg/types.hpp"

namespace oposhg {

enum class Branch { Below, AbovePlus, AboveMinus, Injected };

std::string branch_name(Branch b);

/// A classical fixed point of the noise-free equations of motion.
struct SteadyState {
    PhaseSpaceState amplitudes;  // plus sector is the conjugate of alpha
    Branch branch = Branch::Below;
    bool stable = false;
    double residual = 0.0;  // max drift magnitude at the fixed point
};

struct StabilityReport {
    std::array<Complex, 6> eigenvalues{};  // of the drift matrix A
    double min_real = 0.0;
    bool stable = false;    // all real parts above the tolerance
    bool marginal = false;  // smallest real part within the tolerance of zero
};

inline constexpr double kStabilityTol = 1e-9;
inline constexpr double kFixedPointTol = 1e-10;

/// Oscillation threshold pump amplitude: gamma1*gamma2/kappa1 +
/// gamma1^3*kappa2^2 / (2*gamma3*kappa1^3). Above the bare OPO value whenever
/// kappa2 > 0.
double threshold_pump(const SystemParams& p);

/// Zero-signal branch with alpha1 = 0 (closed form + cubic polish). Requires
/// 0 <= eps2 < threshold; use zero_branch() to evaluate the same solution
/// without the domain guard (it exists, unstably, above threshold too).
SteadyState steady_below(const SystemParams& p);

/// The alpha1 = 0 fixed point for any eps2 >= 0, stability not implied.
SteadyState zero_branch(const SystemParams& p);

/// Above-threshold branch: alpha1 = sign * sqrt(2 (eps2 - eps2c) / kappa1),
/// alpha2 = gamma1/kappa1, alpha3 = -gamma1^2 kappa2 / (2 kappa1^2 gamma3).
SteadyState steady_above(const SystemParams& p, int sign);

/// Fixed point with an injected signal, found by damped Newton seeded from
/// classical time integration (or from `hint` when given). Falls back to pure
/// time integration if Newton stalls.
SteadyState steady_injected(const SystemParams& p,
                            std::optional<PhaseSpaceState> hint = std::nullopt);

/// Eigenvalues of the drift matrix A at a fixed point. Stable means every
/// eigenvalue has real part > kStabilityTol.
StabilityReport stability(const SystemParams& p, const SteadyState& ss);

}  // namespace oposhg
