#pragma once

#include <cstdint>
#include <vector>

#include "oposhg/classical.hpp"
#include "oposhg/config.hpp"
#include "oposhg/params.hpp"
#include "oposhg/rng.hpp"
#include "oposhg/types.hpp"

namespace oposhg {

/// Ensemble-averaged intensities with standard errors over trajectory-level
/// values. The imaginary parts are tracked as a normal-ordering consistency
/// diagnostic; physically meaningful averages have them at the noise level.
struct EnsembleStats {
    std::vector<double> times;
    std::array<std::vector<double>, 3> mean_n;
    std::array<std::vector<double>, 3> stderr_n;
    std::array<std::vector<double>, 3> mean_n_imag;
    std::array<std::vector<double>, 3> stderr_n_imag;
    long n_traj = 0;
    long n_discarded = 0;
    std::uint64_t seed = 0;
    bool discard_budget_exceeded = false;
};

/// Integrates one positive-P trajectory with Euler-Maruyama steps, drawing
/// four N(0,1) increments per step from `noise`. A trajectory whose variables
/// exceed `divergence_bound` in magnitude is cut short and flagged.
Trajectory simulate_trajectory(const SystemParams& p, NoiseSource& noise, double dt,
                               double t_final, const PhaseSpaceState& initial, int stride = 1,
                               double divergence_bound = 1e6);

/// Convenience overload seeding a Gaussian stream for one trajectory index.
Trajectory simulate_trajectory(const SystemParams& p, std::uint64_t trajectory_seed, double dt,
                               double t_final, const PhaseSpaceState& initial, int stride = 1,
                               double divergence_bound = 1e6);

/// Runs settings.n_traj independent trajectories and reduces them into
/// EnsembleStats. Deterministic for fixed (seed, n_traj, dt, t_final,
/// out_stride) regardless of settings.threads: per-trajectory streams are
/// derived from the master seed and trajectory index, and the reduction is
/// performed in fixed chunk order.
EnsembleStats run_ensemble(const SystemParams& p, const RunSettings& settings,
                           const PhaseSpaceState& initial = {});

}  // namespace oposhg
