#include "oposhg/pplus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oposhg/dynamics.hpp"
#include "oposhg/errors.hpp"
#include "oposhg/parallel.hpp"

namespace oposhg {

namespace {

constexpr long kChunk = 64;  // trajectories per reduction block

bool exceeds_bound(const SixVector& v, double bound) {
    const double b2 = bound * bound;
    for (const Complex& c : v) {
        const double m2 = c.real() * c.real() + c.imag() * c.imag();
        if (!(m2 <= b2)) return true;  // catches NaN as well
    }
    return false;
}

struct ChunkAccumulator {
    // Per (mode, sample): running sums of Re N, (Re N)^2, Im N, (Im N)^2.
    std::vector<double> sum_re, sum_re2, sum_im, sum_im2;
    long n_valid = 0;
    long n_discarded = 0;

    explicit ChunkAccumulator(std::size_t n_samples)
        : sum_re(3 * n_samples, 0.0),
          sum_re2(3 * n_samples, 0.0),
          sum_im(3 * n_samples, 0.0),
          sum_im2(3 * n_samples, 0.0) {}
};

}  // namespace

Trajectory simulate_trajectory(const SystemParams& p, NoiseSource& noise, double dt,
                               double t_final, const PhaseSpaceState& initial, int stride,
                               double divergence_bound) {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (stride < 1) throw ConfigError("stride must be at least 1");
    const long n_steps = std::lround(t_final / dt);
    const double sqrt_dt = std::sqrt(dt);

    Trajectory traj;
    SixVector v = initial.to_vector();
    auto record = [&](double t) {
        PhaseSpaceState s = PhaseSpaceState::from_vector(v);
        traj.times.push_back(t);
        traj.intensities.push_back({s.intensity(1), s.intensity(2), s.intensity(3)});
        traj.states.push_back(std::move(s));
    };
    record(0.0);
    double xi[4];
    for (long i = 1; i <= n_steps; ++i) {
        noise.fill(xi);
        euler_maruyama_step(p, v, dt, sqrt_dt, xi);
        if (exceeds_bound(v, divergence_bound)) {
            traj.diverged_at = i * dt;
            return traj;
        }
        if (i % stride == 0) record(i * dt);
    }
    return traj;
}

Trajectory simulate_trajectory(const SystemParams& p, std::uint64_t trajectory_seed, double dt,
                               double t_final, const PhaseSpaceState& initial, int stride,
                               double divergence_bound) {
    GaussianNoise noise(trajectory_seed);
    return simulate_trajectory(p, noise, dt, t_final, initial, stride, divergence_bound);
}

EnsembleStats run_ensemble(const SystemParams& p, const RunSettings& settings,
                           const PhaseSpaceState& initial) {
    settings.validate();
    if (settings.n_traj < 2) throw ConfigError("run_ensemble needs n_traj >= 2");

    const long n_steps = std::lround(settings.t_final / settings.dt);
    const int stride = settings.resolved_stride(settings.t_final);
    const std::size_t n_samples = static_cast<std::size_t>(n_steps / stride) + 1;
    const double dt = settings.dt;
    const double sqrt_dt = std::sqrt(dt);
    const SixVector v0 = initial.to_vector();

    const long n_chunks = (settings.n_traj + kChunk - 1) / kChunk;
    std::vector<ChunkAccumulator> chunks;
    chunks.reserve(static_cast<std::size_t>(n_chunks));
    for (long c = 0; c < n_chunks; ++c) chunks.emplace_back(n_samples);

    parallel_for(static_cast<std::size_t>(n_chunks), settings.threads, [&](std::size_t ci) {
        ChunkAccumulator& acc = chunks[ci];
        const long begin = static_cast<long>(ci) * kChunk;
        const long end = std::min(begin + kChunk, settings.n_traj);
        // Trajectory samples buffer; merged only if the trajectory survives.
        std::vector<Complex> local(3 * n_samples);
        double xi[4];
        for (long traj = begin; traj < end; ++traj) {
            GaussianNoise noise(trajectory_seed(settings.seed, static_cast<std::uint64_t>(traj)));
            SixVector v = v0;
            bool diverged = false;
            std::size_t sample = 0;
            auto record = [&] {
                local[sample] = v[1] * v[0];
                local[n_samples + sample] = v[3] * v[2];
                local[2 * n_samples + sample] = v[5] * v[4];
                ++sample;
            };
            record();
            for (long i = 1; i <= n_steps; ++i) {
                noise.fill(xi);
                euler_maruyama_step(p, v, dt, sqrt_dt, xi);
                if (exceeds_bound(v, settings.divergence_bound)) {
                    diverged = true;
                    break;
                }
                if (i % stride == 0) record();
            }
            if (diverged) {
                ++acc.n_discarded;
                continue;
            }
            ++acc.n_valid;
            for (std::size_t k = 0; k < 3 * n_samples; ++k) {
                const double re = local[k].real();
                const double im = local[k].imag();
                acc.sum_re[k] += re;
                acc.sum_re2[k] += re * re;
                acc.sum_im[k] += im;
                acc.sum_im2[k] += im * im;
            }
        }
    });

    // Deterministic reduction in chunk order.
    EnsembleStats stats;
    stats.n_traj = settings.n_traj;
    stats.seed = settings.seed;
    stats.times.resize(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s)
        stats.times[s] = static_cast<double>(s) * stride * dt;

    std::vector<double> sum_re(3 * n_samples, 0.0), sum_re2(3 * n_samples, 0.0);
    std::vector<double> sum_im(3 * n_samples, 0.0), sum_im2(3 * n_samples, 0.0);
    long n_valid = 0;
    for (const ChunkAccumulator& acc : chunks) {
        n_valid += acc.n_valid;
        stats.n_discarded += acc.n_discarded;
        for (std::size_t k = 0; k < 3 * n_samples; ++k) {
            sum_re[k] += acc.sum_re[k];
            sum_re2[k] += acc.sum_re2[k];
            sum_im[k] += acc.sum_im[k];
            sum_im2[k] += acc.sum_im2[k];
        }
    }
    stats.discard_budget_exceeded =
        static_cast<double>(stats.n_discarded) >
        settings.discard_budget * static_cast<double>(settings.n_traj);

    auto reduce = [n_valid](double sum, double sum2, double& mean, double& se) {
        if (n_valid < 1) {
            mean = std::numeric_limits<double>::quiet_NaN();
            se = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        const double n = static_cast<double>(n_valid);
        mean = sum / n;
        if (n_valid < 2) {
            se = std::numeric_limits<double>::quiet_NaN();
            return;
        }
        const double var = std::max(0.0, (sum2 - sum * sum / n) / (n - 1.0));
        se = std::sqrt(var / n);
    };
    for (int mode = 0; mode < 3; ++mode) {
        stats.mean_n[mode].resize(n_samples);
        stats.stderr_n[mode].resize(n_samples);
        stats.mean_n_imag[mode].resize(n_samples);
        stats.stderr_n_imag[mode].resize(n_samples);
        for (std::size_t s = 0; s < n_samples; ++s) {
            const std::size_t k = static_cast<std::size_t>(mode) * n_samples + s;
            reduce(sum_re[k], sum_re2[k], stats.mean_n[mode][s], stats.stderr_n[mode][s]);
            reduce(sum_im[k], sum_im2[k], stats.mean_n_imag[mode][s],
                   stats.stderr_n_imag[mode][s]);
        }
    }
    return stats;
}

}  // namespace oposhg
