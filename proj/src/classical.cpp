#include "oposhg/classical.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "oposhg/dynamics.hpp"
#include "oposhg/errors.hpp"

namespace oposhg {

namespace {

bool finite(const SixVector& v) {
    for (const Complex& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

void record(Trajectory& traj, double t, const SixVector& v) {
    traj.times.push_back(t);
    PhaseSpaceState s = PhaseSpaceState::from_vector(v);
    traj.intensities.push_back({s.intensity(1), s.intensity(2), s.intensity(3)});
    traj.states.push_back(std::move(s));
}

}  // namespace

Trajectory integrate_classical(const SystemParams& p, const PhaseSpaceState& initial, double dt,
                               double t_final, int stride) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
    if (stride < 1) throw ConfigError("stride must be at least 1");

    const long n_steps = std::lround(t_final / dt);
    SixVector v = initial.to_vector();
    Trajectory traj;
    traj.times.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
    record(traj, 0.0, v);
    for (long i = 1; i <= n_steps; ++i) {
        v = rk4_step(p, v, dt);
        if (!finite(v)) {
            std::ostringstream os;
            os << "classical integration overflowed at t = " << i * dt;
            throw SolverError(os.str(), std::numeric_limits<double>::infinity());
        }
        if (i % stride == 0) record(traj, i * dt, v);
    }
    return traj;
}

PulseStats count_pulses(const std::vector<double>& times, const std::vector<double>& values,
                        double t_min, double min_ratio) {
    PulseStats stats;
    // Extrema of the window, in order: +1 for a peak, -1 for a trough.
    std::vector<std::pair<int, double>> extrema;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        if (times[i] < t_min) continue;
        if (values[i] > values[i - 1] && values[i] >= values[i + 1])
            extrema.emplace_back(+1, values[i]);
        else if (values[i] < values[i - 1] && values[i] <= values[i + 1])
            extrema.emplace_back(-1, values[i]);
    }
    for (std::size_t i = 0; i < extrema.size(); ++i) {
        if (extrema[i].first != +1) continue;
        for (std::size_t j = i + 1; j < extrema.size(); ++j) {
            if (extrema[j].first != -1) continue;
            const double trough = std::max(extrema[j].second, 1e-300);
            const double ratio = extrema[i].second / trough;
            stats.max_ratio = std::max(stats.max_ratio, ratio);
            if (ratio > min_ratio) ++stats.n_pulses;
            break;
        }
    }
    return stats;
}

std::vector<double> intensity_series(const Trajectory& traj, int mode) {
    std::vector<double> out;
    out.reserve(traj.intensities.size());
    for (const auto& n : traj.intensities) out.push_back(n[mode - 1].real());
    return out;
}

}  // namespace oposhg
