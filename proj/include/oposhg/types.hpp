#pragma once

#include <array>
#include <complex>

namespace oposhg {

using Complex = std::complex<double>;

/// The six positive-P phase-space variables, ordered (alpha_1, alpha_1^+,
/// alpha_2, alpha_2^+, alpha_3, alpha_3^+). The plus sector is an independent
/// variable set; it coincides with the complex conjugate of the alpha sector
/// only for deterministic evolution from conjugate initial data.
using SixVector = std::array<Complex, 6>;

struct PhaseSpaceState {
    std::array<Complex, 3> alpha{};
    std::array<Complex, 3> alpha_plus{};

    /// Builds a state whose plus sector is the conjugate of `a`.
    static PhaseSpaceState conjugate_pair(const std::array<Complex, 3>& a) {
        PhaseSpaceState s;
        s.alpha = a;
        for (int i = 0; i < 3; ++i) s.alpha_plus[i] = std::conj(a[i]);
        return s;
    }

    SixVector to_vector() const {
        return {alpha[0], alpha_plus[0], alpha[1], alpha_plus[1], alpha[2], alpha_plus[2]};
    }

    static PhaseSpaceState from_vector(const SixVector& v) {
        PhaseSpaceState s;
        s.alpha = {v[0], v[2], v[4]};
        s.alpha_plus = {v[1], v[3], v[5]};
        return s;
    }

    /// Intensity N_i = alpha_i^+ alpha_i (complex for a single stochastic
    /// trajectory; real for conjugate data).
    Complex intensity(int mode) const { return alpha_plus[mode - 1] * alpha[mode - 1]; }
};

// Row conventions shared by the fluctuation vector (alpha sector, plus sector)
// and the quadrature vector (X, Y). Modes are 1-based; rows are 0-based.
constexpr int alpha_row(int mode) { return 2 * (mode - 1); }
constexpr int alpha_plus_row(int mode) { return 2 * mode - 1; }
constexpr int x_row(int mode) { return 2 * (mode - 1); }
constexpr int y_row(int mode) { return 2 * mode - 1; }

}  // namespace oposhg
