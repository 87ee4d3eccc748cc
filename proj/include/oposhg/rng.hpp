#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace oposhg {

/// splitmix64 finalizer; decorrelates consecutive seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed for trajectory `index` derived from the run's master seed. Depends
/// only on (master, index), never on worker assignment.
constexpr std::uint64_t trajectory_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
}

/// Source of standard-normal increments for one stochastic trajectory.
class NoiseSource {
public:
    virtual ~NoiseSource() = default;
    virtual void fill(std::span<double> out) = 0;
};

class GaussianNoise final : public NoiseSource {
public:
    explicit GaussianNoise(std::uint64_t seed) : engine_(seed) {}
    void fill(std::span<double> out) override {
        for (double& x : out) x = normal_(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Degenerate source used to check the stochastic stepper against the
/// deterministic integrator.
class ZeroNoise final : public NoiseSource {
public:
    void fill(std::span<double> out) override {
        for (double& x : out) x = 0.0;
    }
};

}  // namespace oposhg
