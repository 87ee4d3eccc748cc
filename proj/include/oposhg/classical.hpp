#pragma once

#include <optional>
#include <vector>

#include "oposhg/params.hpp"
#include "oposhg/types.hpp"

namespace oposhg {

/// A sampled solution of the equations of motion (deterministic or one
/// stochastic realization).
struct Trajectory {
    std::vector<double> times;
    std::vector<PhaseSpaceState> states;
    std::vector<std::array<Complex, 3>> intensities;  // N_i = alpha_i^+ alpha_i
    std::optional<double> diverged_at;                // stochastic runs only

    std::size_t size() const { return times.size(); }
};

/// Fixed-step RK4 integration of the noise-free equations. Samples every
/// `stride` steps (plus the initial point). Throws SolverError with the time
/// stamp if the state stops being finite.
Trajectory integrate_classical(const SystemParams& p, const PhaseSpaceState& initial, double dt,
                               double t_final, int stride = 1);

/// Oscillation metric for the self-pulsing regime: local maxima of the series
/// restricted to t >= t_min that exceed the following trough by more than
/// `min_ratio`.
struct PulseStats {
    int n_pulses = 0;
    double max_ratio = 0.0;  // largest peak-to-following-trough ratio seen
};

PulseStats count_pulses(const std::vector<double>& times, const std::vector<double>& values,
                        double t_min, double min_ratio = 1.5);

/// Real part of N_mode along a trajectory (exact for conjugate data).
std::vector<double> intensity_series(const Trajectory& traj, int mode);

}  // namespace oposhg
