#pragma once

// Test-only oracles, kept independent of the library implementation paths
// they are used to check.

#include <array>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "oposhg/dynamics.hpp"
#include "oposhg/params.hpp"
#include "oposhg/spectra.hpp"

namespace oracles {

using oposhg::Complex;
using oposhg::Matrix6;
using oposhg::SixVector;
using oposhg::SystemParams;

/// Bisection root of (kappa2^2 / 2 gamma3) x^3 + gamma2 x - eps2 = 0; the
/// below-threshold pumped-mode amplitude, by a route independent of the
/// radical formula.
inline double bisect_cubic(const SystemParams& p, double eps2) {
    auto f = [&](double x) {
        return p.kappa2 * p.kappa2 / (2.0 * p.gamma3) * x * x * x + p.gamma2 * x - eps2;
    };
    double lo = 0.0;
    double hi = std::max(1.0, eps2 / p.gamma2);
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Central-difference Jacobian of the deterministic drift with respect to the
/// six complex variables, step 1e-5.
inline Matrix6 fd_jacobian(const SystemParams& p, const SixVector& v0) {
    Matrix6 jac;
    const double h = 1e-5;
    for (int c = 0; c < 6; ++c) {
        SixVector vp = v0, vm = v0;
        vp[c] += h;
        vm[c] -= h;
        const SixVector fp = oposhg::drift(p, vp);
        const SixVector fm = oposhg::drift(p, vm);
        for (int r = 0; r < 6; ++r) jac(r, c) = (fp[r] - fm[r]) / (2.0 * h);
    }
    return jac;
}

/// Stationary covariance C of d(da) = -A da dt + B dW with D = B B^T, from
/// the Lyapunov equation A C + C A^T = D solved by vectorization. C_ij =
/// <da_i da_j>; the intracavity occupation of mode m is C(2m-1, 2m-2).
inline Matrix6 lyapunov_covariance(const Matrix6& A, const Matrix6& D) {
    Eigen::Matrix<Complex, 36, 36> m = Eigen::Matrix<Complex, 36, 36>::Zero();
    // vec is column-major: vec(AC) = (I (x) A) vec C, vec(C A^T) = (A (x) I) vec C.
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) {
                m(i + 6 * j, k + 6 * j) += A(i, k);  // I (x) A
                m(i + 6 * j, i + 6 * k) += A(j, k);  // A (x) I
            }
    Eigen::Matrix<Complex, 36, 1> rhs;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) rhs(i + 6 * j) = D(i, j);
    const Eigen::Matrix<Complex, 36, 1> sol = m.partialPivLu().solve(rhs);
    Matrix6 c;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i) c(i, j) = sol(i + 6 * j);
    return c;
}

/// Detects a real eigenvalue of the (real) drift matrix in (x_lo, x_hi) by
/// sign changes of det(A - xI) on a dense grid. Cross-check for the soft-mode
/// stability flip, independent of the eigenvalue solver.
inline bool has_real_eigenvalue_between(const Matrix6& A, double x_lo, double x_hi,
                                        int n_grid = 4000) {
    Eigen::Matrix<double, 6, 6> a = A.real();
    auto det_at = [&](double x) {
        Eigen::Matrix<double, 6, 6> m = a - x * Eigen::Matrix<double, 6, 6>::Identity();
        return m.determinant();
    };
    double prev = det_at(x_lo);
    for (int i = 1; i <= n_grid; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / n_grid;
        const double d = det_at(x);
        if (prev == 0.0 || (prev < 0.0) != (d < 0.0)) return true;
        prev = d;
    }
    return false;
}

/// Deterministic below-threshold parameter draws for property tests.
inline SystemParams random_below_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams p;
    p.gamma1 = 1.0;
    p.gamma2 = 0.5 + 1.5 * u(rng);
    p.gamma3 = 0.5 + 1.5 * u(rng);
    p.kappa1 = 0.004 + 0.04 * u(rng);
    p.kappa2 = 0.004 + 0.04 * u(rng);
    const double thr = p.gamma1 * p.gamma2 / p.kappa1 +
                       std::pow(p.gamma1, 3) * p.kappa2 * p.kappa2 /
                           (2.0 * p.gamma3 * std::pow(p.kappa1, 3));
    p.eps2 = (0.1 + 0.85 * u(rng)) * thr;
    return p;
}

}  // namespace oracles
