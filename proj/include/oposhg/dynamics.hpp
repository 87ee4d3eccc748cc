#pragma once

#include <cmath>
#include <complex>

#include "oposhg/params.hpp"
#include "oposhg/types.hpp"

namespace oposhg {

/// Deterministic drift of the positive-P equations of motion, evaluated on the
/// six-variable vector (a1, a1p, a2, a2p, a3, a3p).
inline SixVector drift(const SystemParams& p, const SixVector& v) {
    const Complex a1 = v[0], a1p = v[1], a2 = v[2], a2p = v[3], a3 = v[4], a3p = v[5];
    return {
        p.eps1 - p.gamma1 * a1 + p.kappa1 * a1p * a2,
        std::conj(p.eps1) - p.gamma1 * a1p + p.kappa1 * a1 * a2p,
        p.eps2 - p.gamma2 * a2 + p.kappa2 * a2p * a3 - 0.5 * p.kappa1 * a1 * a1,
        std::conj(p.eps2) - p.gamma2 * a2p + p.kappa2 * a2 * a3p - 0.5 * p.kappa1 * a1p * a1p,
        -p.gamma3 * a3 - 0.5 * p.kappa2 * a2 * a2,
        -p.gamma3 * a3p - 0.5 * p.kappa2 * a2p * a2p,
    };
}

/// Max-norm of the drift; zero at a fixed point.
inline double drift_residual(const SystemParams& p, const SixVector& v) {
    const SixVector f = drift(p, v);
    double r = 0.0;
    for (const Complex& c : f) r = std::max(r, std::abs(c));
    return r;
}

inline double drift_residual(const SystemParams& p, const PhaseSpaceState& s) {
    return drift_residual(p, s.to_vector());
}

/// One classical fourth-order Runge-Kutta step of size dt.
inline SixVector rk4_step(const SystemParams& p, const SixVector& v, double dt) {
    SixVector k1 = drift(p, v);
    SixVector u;
    for (int i = 0; i < 6; ++i) u[i] = v[i] + 0.5 * dt * k1[i];
    SixVector k2 = drift(p, u);
    for (int i = 0; i < 6; ++i) u[i] = v[i] + 0.5 * dt * k2[i];
    SixVector k3 = drift(p, u);
    for (int i = 0; i < 6; ++i) u[i] = v[i] + dt * k3[i];
    SixVector k4 = drift(p, u);
    SixVector out;
    for (int i = 0; i < 6; ++i)
        out[i] = v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

/// One Ito Euler-Maruyama step. `xi` holds four independent N(0,1) draws; the
/// noise amplitudes use the principal complex square root, and the a3 lines
/// carry no noise.
inline void euler_maruyama_step(const SystemParams& p, SixVector& v, double dt,
                                double sqrt_dt, const double xi[4]) {
    const Complex a1 = v[0], a1p = v[1], a2 = v[2], a2p = v[3], a3 = v[4], a3p = v[5];
    const Complex n1 = std::sqrt(p.kappa1 * a2);
    const Complex n2 = std::sqrt(p.kappa1 * a2p);
    const Complex n3 = std::sqrt(p.kappa2 * a3);
    const Complex n4 = std::sqrt(p.kappa2 * a3p);
    v[0] += dt * (p.eps1 - p.gamma1 * a1 + p.kappa1 * a1p * a2) + sqrt_dt * xi[0] * n1;
    v[1] += dt * (std::conj(p.eps1) - p.gamma1 * a1p + p.kappa1 * a1 * a2p) + sqrt_dt * xi[1] * n2;
    v[2] += dt * (p.eps2 - p.gamma2 * a2 + p.kappa2 * a2p * a3 - 0.5 * p.kappa1 * a1 * a1) +
            sqrt_dt * xi[2] * n3;
    v[3] += dt * (std::conj(p.eps2) - p.gamma2 * a2p + p.kappa2 * a2 * a3p -
                  0.5 * p.kappa1 * a1p * a1p) +
            sqrt_dt * xi[3] * n4;
    v[4] += dt * (-p.gamma3 * a3 - 0.5 * p.kappa2 * a2 * a2);
    v[5] += dt * (-p.gamma3 * a3p - 0.5 * p.kappa2 * a2p * a2p);
}

}  // namespace oposhg
