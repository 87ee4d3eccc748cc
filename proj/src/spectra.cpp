#include "oposhg/spectra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "oposhg/errors.hpp"
#include "oposhg/parallel.hpp"

namespace oposhg {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kImagTol = 1e-9;

double condition_number(const Matrix6& m) {
    Eigen::JacobiSVD<Matrix6> svd(m);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

}  // namespace

Matrix6 drift_matrix(const SystemParams& p, const SteadyState& ss) {
    const auto& a = ss.amplitudes.alpha;
    const auto& ap = ss.amplitudes.alpha_plus;
    const double g1 = p.gamma1, g2 = p.gamma2, g3 = p.gamma3;
    const double k1 = p.kappa1, k2 = p.kappa2;
    Matrix6 m = Matrix6::Zero();
    m(0, 0) = g1;
    m(0, 1) = -k1 * a[1];
    m(0, 2) = -k1 * ap[0];
    m(1, 0) = -k1 * ap[1];
    m(1, 1) = g1;
    m(1, 3) = -k1 * a[0];
    m(2, 0) = k1 * a[0];
    m(2, 2) = g2;
    m(2, 3) = -k2 * a[2];
    m(2, 4) = -k2 * ap[1];
    m(3, 1) = k1 * ap[0];
    m(3, 2) = -k2 * ap[2];
    m(3, 3) = g2;
    m(3, 5) = -k2 * a[1];
    m(4, 2) = k2 * a[1];
    m(4, 4) = g3;
    m(5, 3) = k2 * ap[1];
    m(5, 5) = g3;
    return m;
}

Matrix6 diffusion_matrix(const SystemParams& p, const SteadyState& ss) {
    const auto& a = ss.amplitudes.alpha;
    const auto& ap = ss.amplitudes.alpha_plus;
    Matrix6 m = Matrix6::Zero();
    m(0, 0) = p.kappa1 * a[1];
    m(1, 1) = p.kappa1 * ap[1];
    m(2, 2) = p.kappa2 * a[2];
    m(3, 3) = p.kappa2 * ap[2];
    return m;
}

FluctuationMatrices fluctuation_matrices(const SystemParams& p, const SteadyState& ss) {
    return {drift_matrix(p, ss), diffusion_matrix(p, ss)};
}

Matrix6 spectral_matrix(const Matrix6& A, const Matrix6& D, double omega) {
    const Complex iw(0.0, omega);
    const Matrix6 left = A + iw * Matrix6::Identity();
    const Matrix6 right_t = A - iw * Matrix6::Identity();  // (A^T - iw)^T
    if (condition_number(left) > kConditionLimit || condition_number(right_t) > kConditionLimit) {
        std::ostringstream os;
        os << "resolvent ill-conditioned at omega = " << omega;
        throw NumericsError(os.str());
    }
    const Matrix6 x = left.partialPivLu().solve(D);
    // S = X (A^T - iw)^-1  <=>  S^T = (A - iw)^-1 X^T
    return right_t.partialPivLu().solve(x.transpose()).transpose();
}

const Matrix6& quadrature_transform() {
    static const Matrix6 q = [] {
        Matrix6 m = Matrix6::Zero();
        const Complex i(0.0, 1.0);
        for (int b = 0; b < 3; ++b) {
            m(2 * b, 2 * b) = 1.0;
            m(2 * b, 2 * b + 1) = 1.0;
            m(2 * b + 1, 2 * b) = -i;
            m(2 * b + 1, 2 * b + 1) = i;
        }
        return m;
    }();
    return q;
}

Matrix6 quadrature_spectra(const Matrix6& S) {
    const Matrix6& q = quadrature_transform();
    return q * S * q.transpose();
}

double output_moment(int mode_i, int mode_j, Quadrature quad, const Matrix6& Sq,
                     const SystemParams& p) {
    const int a = quad == Quadrature::X ? x_row(mode_i) : y_row(mode_i);
    const int b = quad == Quadrature::X ? x_row(mode_j) : y_row(mode_j);
    const double gammas[3] = {p.gamma1, p.gamma2, p.gamma3};
    const Complex sum = Sq(a, b) + Sq(b, a);
    const double delta = mode_i == mode_j ? 1.0 : 0.0;
    const Complex value = delta + std::sqrt(gammas[mode_i - 1] * gammas[mode_j - 1]) * sum;
    if (std::abs(value.imag()) > kImagTol) {
        std::ostringstream os;
        os << "output moment (" << mode_i << "," << mode_j << ") has imaginary residue "
           << value.imag();
        throw NumericsError(os.str());
    }
    return value.real();
}

OutputMoments output_moments(const SystemParams& p, const Matrix6& Sq) {
    OutputMoments m;
    for (int i = 1; i <= 3; ++i) {
        for (int j = i; j <= 3; ++j) {
            const double x = output_moment(i, j, Quadrature::X, Sq, p);
            const double y = output_moment(i, j, Quadrature::Y, Sq, p);
            m.xx[i - 1][j - 1] = m.xx[j - 1][i - 1] = x;
            m.yy[i - 1][j - 1] = m.yy[j - 1][i - 1] = y;
        }
    }
    return m;
}

OutputMoments moments_at(const SystemParams& p, const FluctuationMatrices& m, double omega) {
    return output_moments(p, quadrature_spectra(spectral_matrix(m.A, m.D, omega)));
}

std::vector<double> omega_grid(double omega_max, int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] = omega_max * i / (points - 1);
    return grid;
}

SpectrumTable compute_spectrum_table(const SystemParams& p, const SteadyState& ss,
                                     const std::vector<double>& omegas, int threads) {
    const StabilityReport report = stability(p, ss);
    if (!report.stable) {
        double worst = report.eigenvalues[0].real();
        Complex bad = report.eigenvalues[0];
        for (const Complex& ev : report.eigenvalues) {
            if (ev.real() < worst) {
                worst = ev.real();
                bad = ev;
            }
        }
        std::ostringstream os;
        os << "steady state (" << branch_name(ss.branch)
           << ") is not stable: drift-matrix eigenvalue " << bad.real();
        if (bad.imag() != 0.0) os << (bad.imag() > 0 ? "+" : "") << bad.imag() << "i";
        os << " has non-positive real part";
        throw DomainError(os.str());
    }
    const FluctuationMatrices m = fluctuation_matrices(p, ss);
    SpectrumTable table;
    table.omegas = omegas;
    table.moments.resize(omegas.size());
    parallel_for(omegas.size(), threads,
                 [&](std::size_t i) { table.moments[i] = moments_at(p, m, omegas[i]); });
    return table;
}

}  // namespace oposhg
