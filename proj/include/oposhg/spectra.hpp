#pragma once

#include <vector>

#include <Eigen/Core>

#include "oposhg/params.hpp"
#include "oposhg/steady.hpp"
#include "oposhg/types.hpp"

namespace oposhg {

using Matrix6 = Eigen::Matrix<Complex, 6, 6>;

enum class Quadrature { X, Y };

/// Drift and diffusion matrices of the linearized fluctuation dynamics
/// d(da) = -A da dt + B dW, D = B B^T, at a steady state.
struct FluctuationMatrices {
    Matrix6 A;
    Matrix6 D;
};

/// A with the steady-state means substituted; equals minus the Jacobian of
/// the deterministic drift.
Matrix6 drift_matrix(const SystemParams& p, const SteadyState& ss);

/// Diagonal D = diag(k1 a2, k1 a2+, k2 a3, k2 a3+, 0, 0). Entries may be
/// negative: the doubled phase space does not require positive diffusion.
Matrix6 diffusion_matrix(const SystemParams& p, const SteadyState& ss);

FluctuationMatrices fluctuation_matrices(const SystemParams& p, const SteadyState& ss);

/// Intracavity spectral matrix S(w) = (A + iw)^-1 D (A^T - iw)^-1, the
/// identity implied on the frequency terms. Throws NumericsError when either
/// resolvent factor has condition number above 1e12 (e.g. w = 0 exactly at
/// threshold).
Matrix6 spectral_matrix(const Matrix6& A, const Matrix6& D, double omega);

/// Congruence transform to quadrature ordering: S^q = Q S Q^T with Q built
/// from 2x2 blocks [[1, 1], [-i, i]].
Matrix6 quadrature_spectra(const Matrix6& S);

const Matrix6& quadrature_transform();

/// Output variance (i == j) or covariance via the input-output relations:
/// delta_ij + sqrt(gamma_i gamma_j) (S^q_ab + S^q_ba) on the X or Y rows.
/// The imaginary residue must stay below 1e-9 or NumericsError is thrown.
double output_moment(int mode_i, int mode_j, Quadrature quad, const Matrix6& Sq,
                     const SystemParams& p);

/// All twelve X/Y output moments at one frequency. Modes are 1-based.
struct OutputMoments {
    double xx[3][3]{};
    double yy[3][3]{};

    double vx(int i) const { return xx[i - 1][i - 1]; }
    double vy(int i) const { return yy[i - 1][i - 1]; }
    double cov_x(int i, int j) const { return xx[i - 1][j - 1]; }
    double cov_y(int i, int j) const { return yy[i - 1][j - 1]; }
};

OutputMoments output_moments(const SystemParams& p, const Matrix6& Sq);

/// Convenience: full pipeline A,D -> S(w) -> S^q -> moments.
OutputMoments moments_at(const SystemParams& p, const FluctuationMatrices& m, double omega);

struct SpectrumTable {
    std::vector<double> omegas;
    std::vector<OutputMoments> moments;
};

std::vector<double> omega_grid(double omega_max, int points);

/// Evaluates the moment pipeline over a frequency grid, parallel over omega.
/// The steady state must be stable; otherwise DomainError names the offending
/// eigenvalue.
SpectrumTable compute_spectrum_table(const SystemParams& p, const SteadyState& ss,
                                     const std::vector<double>& omegas, int threads = 0);

}  // namespace oposhg
