#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "oposhg/params.hpp"
#include "oposhg/types.hpp"

namespace oposhg {

/// Numerical and execution settings shared by the run-producing operations.
/// Times are in units of 1/gamma1, frequencies in units of gamma1.
struct RunSettings {
    double dt = 1e-3;
    double t_final = 50.0;
    long n_traj = 10000;
    std::uint64_t seed = 20250901;
    double omega_max = 6.0;
    int omega_points = 601;
    int out_stride = 0;  ///< sample every this many steps; 0 -> ~500 samples
    int threads = 0;     ///< 0 -> hardware concurrency
    double divergence_bound = 1e6;
    double discard_budget = 1e-3;  ///< tolerated fraction of divergent trajectories
    std::array<Complex, 3> initial{};  ///< alpha seeds; plus sector starts conjugate

    int resolved_stride(double total_time) const;
    void validate() const;
};

struct Config {
    SystemParams params;
    RunSettings run;
};

/// Parses a JSON document with a required "params" section and an optional
/// "run" section. eps2 may be given directly or as "eps2_over_threshold";
/// complex values are [re, im] pairs. gamma1 != 1 is accepted and all rates
/// are rescaled to units of gamma1.
Config parse_config(const std::string& text);

/// Inverse of parse_config up to bit-identical round trip.
std::string serialize_config(const Config& config);

}  // namespace oposhg
