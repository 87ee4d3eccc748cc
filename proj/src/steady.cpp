#include "oposhg/steady.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "oposhg/dynamics.hpp"
#include "oposhg/errors.hpp"
#include "oposhg/spectra.hpp"

namespace oposhg {

namespace {

/// Pump amplitude for the analytic branches; they are derived for a real
/// non-negative eps2.
double real_pump(const SystemParams& p) {
    if (p.eps2.imag() != 0.0 || p.eps2.real() < 0.0)
        throw DomainError("analytic steady-state branches require real eps2 >= 0");
    return p.eps2.real();
}

/// Real root of (kappa2^2 / 2 gamma3) x^3 + gamma2 x - eps2 = 0 via the
/// radical formula, polished with Newton to keep the drift residual tight in
/// cancellation-prone regimes (tiny eps2, tiny kappa2 handled separately).
double pumped_mode_root(const SystemParams& p, double eps2) {
    if (eps2 == 0.0) return 0.0;
    const double g2 = p.gamma2, g3 = p.gamma3, k2 = p.kappa2;
    double x;
    if (k2 == 0.0) {
        x = eps2 / g2;
    } else {
        const double disc = 8.0 * g2 * g2 * g2 * g3 * g3 * g3 * std::pow(k2, 6) +
                            27.0 * eps2 * eps2 * g3 * g3 * std::pow(k2, 8);
        const double xi = std::cbrt(27.0 * eps2 * g3 * std::pow(k2, 4) +
                                    3.0 * std::sqrt(3.0) * std::sqrt(disc));
        x = xi / (3.0 * k2 * k2) - 2.0 * g2 * g3 / xi;
    }
    const double a = k2 * k2 / (2.0 * g3);
    for (int it = 0; it < 4; ++it) {
        const double f = a * x * x * x + g2 * x - eps2;
        const double fp = 3.0 * a * x * x + g2;
        x -= f / fp;
    }
    return x;
}

SteadyState finish(const SystemParams& p, const std::array<Complex, 3>& alpha, Branch branch) {
    SteadyState ss;
    ss.amplitudes = PhaseSpaceState::conjugate_pair(alpha);
    ss.branch = branch;
    ss.residual = drift_residual(p, ss.amplitudes);
    ss.stable = stability(p, ss).stable;
    return ss;
}

using Vector6r = Eigen::Matrix<double, 6, 1>;

std::array<Complex, 3> unpack(const Vector6r& v) {
    return {Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5])};
}

/// Drift restricted to conjugate states, as 6 real components.
Vector6r real_drift(const SystemParams& p, const Vector6r& v) {
    const SixVector f = drift(p, PhaseSpaceState::conjugate_pair(unpack(v)).to_vector());
    Vector6r out;
    out << f[0].real(), f[0].imag(), f[2].real(), f[2].imag(), f[4].real(), f[4].imag();
    return out;
}

Vector6r integrate_to_vector(const SystemParams& p, std::array<Complex, 3> a0, double t_end,
                             double dt) {
    SixVector v = PhaseSpaceState::conjugate_pair(a0).to_vector();
    const long n = std::lround(t_end / dt);
    for (long i = 0; i < n; ++i) v = rk4_step(p, v, dt);
    Vector6r out;
    out << v[0].real(), v[0].imag(), v[2].real(), v[2].imag(), v[4].real(), v[4].imag();
    return out;
}

}  // namespace

std::string branch_name(Branch b) {
    switch (b) {
        case Branch::Below: return "below";
        case Branch::AbovePlus: return "above-plus";
        case Branch::AboveMinus: return "above-minus";
        case Branch::Injected: return "injected";
    }
    return "?";
}

double threshold_pump(const SystemParams& p) {
    if (!(p.kappa1 > 0.0)) throw DomainError("threshold undefined: kappa1 = 0");
    if (!(p.gamma3 > 0.0)) throw DomainError("threshold undefined: gamma3 <= 0");
    return p.gamma1 * p.gamma2 / p.kappa1 +
           std::pow(p.gamma1, 3) * p.kappa2 * p.kappa2 /
               (2.0 * p.gamma3 * std::pow(p.kappa1, 3));
}

SteadyState zero_branch(const SystemParams& p) {
    const double eps2 = real_pump(p);
    const double a2 = pumped_mode_root(p, eps2);
    const double a3 = -p.kappa2 * a2 * a2 / (2.0 * p.gamma3);
    return finish(p, {Complex(0.0), Complex(a2), Complex(a3)}, Branch::Below);
}

SteadyState steady_below(const SystemParams& p) {
    const double eps2 = real_pump(p);
    const double thr = threshold_pump(p);
    if (eps2 >= thr) {
        std::ostringstream os;
        os << "below-threshold branch requested at eps2 = " << eps2 << " >= threshold " << thr;
        throw DomainError(os.str());
    }
    return zero_branch(p);
}

SteadyState steady_above(const SystemParams& p, int sign) {
    const double eps2 = real_pump(p);
    const double thr = threshold_pump(p);
    if (eps2 <= thr) {
        std::ostringstream os;
        os << "above-threshold branch requested at eps2 = " << eps2 << " <= threshold " << thr;
        throw DomainError(os.str());
    }
    const double a1 = (sign >= 0 ? 1.0 : -1.0) * std::sqrt(2.0 * (eps2 - thr) / p.kappa1);
    const double a2 = p.gamma1 / p.kappa1;
    const double a3 =
        -p.gamma1 * p.gamma1 * p.kappa2 / (2.0 * p.kappa1 * p.kappa1 * p.gamma3);
    return finish(p, {Complex(a1), Complex(a2), Complex(a3)},
                  sign >= 0 ? Branch::AbovePlus : Branch::AboveMinus);
}

SteadyState steady_injected(const SystemParams& p, std::optional<PhaseSpaceState> hint) {
    constexpr double kTol = 1e-12;
    constexpr int kMaxIter = 200;

    // Seed: caller hint, else 20/gamma1 units of classical integration from
    // the no-signal branch (or vacuum above threshold, where noise-free decay
    // toward the unstable zero branch would be useless for eps1 != 0).
    Vector6r v;
    if (hint) {
        v << hint->alpha[0].real(), hint->alpha[0].imag(), hint->alpha[1].real(),
            hint->alpha[1].imag(), hint->alpha[2].real(), hint->alpha[2].imag();
        v = integrate_to_vector(p, unpack(v), 5.0, 1e-3);
    } else {
        v = integrate_to_vector(p, {}, 20.0, 1e-3);
    }

    auto max_abs = [](const Vector6r& f) { return f.cwiseAbs().maxCoeff(); };

    double best = max_abs(real_drift(p, v));
    Vector6r best_v = v;
    bool converged = best < kTol;
    for (int it = 0; it < kMaxIter && !converged; ++it) {
        const Vector6r f0 = real_drift(p, v);
        Eigen::Matrix<double, 6, 6> jac;
        for (int c = 0; c < 6; ++c) {
            const double h = 1e-6 * std::max(1.0, std::abs(v[c]));
            Vector6r vp = v, vm = v;
            vp[c] += h;
            vm[c] -= h;
            jac.col(c) = (real_drift(p, vp) - real_drift(p, vm)) / (2.0 * h);
        }
        const Vector6r step = jac.partialPivLu().solve(-f0);
        if (!step.allFinite()) break;
        const double n0 = f0.norm();
        double lambda = 1.0;
        Vector6r v_next = v + step;
        while (lambda > 1e-6 && real_drift(p, v_next).norm() >= n0) {
            lambda *= 0.5;
            v_next = v + lambda * step;
        }
        v = v_next;
        const double r = max_abs(real_drift(p, v));
        if (r < best) {
            best = r;
            best_v = v;
        }
        converged = r < kTol;
    }
    if (!converged) {
        // Newton stalled; push toward the attractor by time integration.
        v = integrate_to_vector(p, unpack(best_v), 200.0, 1e-3);
        const double r = max_abs(real_drift(p, v));
        if (r < best) {
            best = r;
            best_v = v;
        }
    }
    if (best > kFixedPointTol) {
        std::ostringstream os;
        os << "injected-signal fixed point did not converge; best residual " << best;
        throw SolverError(os.str(), best);
    }
    return finish(p, unpack(best_v), Branch::Injected);
}

StabilityReport stability(const SystemParams& p, const SteadyState& ss) {
    const Matrix6 a = drift_matrix(p, ss);
    Eigen::ComplexEigenSolver<Matrix6> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericsError("eigenvalue solver failed on the drift matrix");
    StabilityReport report;
    double min_real = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 6; ++i) {
        report.eigenvalues[i] = solver.eigenvalues()[i];
        min_real = std::min(min_real, solver.eigenvalues()[i].real());
    }
    report.min_real = min_real;
    report.stable = min_real > kStabilityTol;
    report.marginal = std::abs(min_real) <= kStabilityTol;
    return report;
}

}  // namespace oposhg
