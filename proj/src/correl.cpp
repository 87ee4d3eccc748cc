#include "oposhg/correl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oposhg/errors.hpp"

namespace oposhg {

namespace {

/// Common resonance factor of the below-threshold mode-2/3 spectra.
double eta_pm(const SystemParams& p, double a2, double a3, double omega, double sign) {
    const double g2 = p.gamma2, g3 = p.gamma3, k2 = p.kappa2;
    const double w2 = omega * omega;
    const double t1 = w2 * std::pow(g2 + g3 - sign * k2 * a3, 2);
    const double t2 = std::pow(-w2 + k2 * k2 * a2 * a2 + g2 * g3 - sign * g3 * k2 * a3, 2);
    return 1.0 / (t1 + t2);
}

double inferred_product(double vx, double vy, double cov_x, double cov_y, double var_x,
                        double var_y) {
    if (!(var_x > 0.0) || !(var_y > 0.0))
        throw DomainError("degenerate input: inference variance is not positive");
    const double sx = vx - cov_x * cov_x / var_x;
    const double sy = vy - cov_y * cov_y / var_y;
    return sx * sy;
}

}  // namespace

double squeezing_analytic_below(const SystemParams& p, double omega, int mode, Quadrature quad) {
    const SteadyState ss = steady_below(p);
    const double a2 = ss.amplitudes.alpha[1].real();
    const double a3 = ss.amplitudes.alpha[2].real();
    const double sign = quad == Quadrature::X ? 1.0 : -1.0;
    switch (mode) {
        case 1: {
            const double c = p.kappa1 * a2;
            return 1.0 + sign * 4.0 * p.gamma1 * c /
                             (omega * omega + std::pow(p.gamma1 - sign * c, 2));
        }
        case 2:
            return 1.0 + sign * 4.0 * p.gamma2 * p.kappa2 * a3 *
                             (omega * omega + p.gamma3 * p.gamma3) * eta_pm(p, a2, a3, omega, sign);
        case 3:
            return 1.0 + sign * 4.0 * p.gamma3 * a2 * a2 * a3 * std::pow(p.kappa2, 3) *
                             eta_pm(p, a2, a3, omega, sign);
        default:
            throw DomainError("mode must be 1, 2 or 3");
    }
}

double reid_epr(const OutputMoments& m, int i, int j) {
    return inferred_product(m.vx(i), m.vy(i), m.cov_x(i, j), m.cov_y(i, j), m.vx(j), m.vy(j));
}

double vlf(const OutputMoments& m, int i, int j, int k) {
    const double rt2 = std::sqrt(2.0);
    const double sx = m.vx(i) + 0.5 * (m.vx(j) + m.vx(k)) + m.cov_x(j, k) -
                      rt2 * (m.cov_x(i, j) + m.cov_x(i, k));
    const double sy = m.vy(i) + 0.5 * (m.vy(j) + m.vy(k)) + m.cov_y(j, k) +
                      rt2 * (m.cov_y(i, j) + m.cov_y(i, k));
    return sx + sy;
}

double obr(const OutputMoments& m, int i, int j, int k, int sign) {
    const double s = sign >= 0 ? 1.0 : -1.0;
    const double cov_x = m.cov_x(i, j) + s * m.cov_x(i, k);
    const double cov_y = m.cov_y(i, j) + s * m.cov_y(i, k);
    const double var_x = m.vx(j) + m.vx(k) + 2.0 * s * m.cov_x(j, k);
    const double var_y = m.vy(j) + m.vy(k) + 2.0 * s * m.cov_y(j, k);
    return inferred_product(m.vx(i), m.vy(i), cov_x, cov_y, var_x, var_y);
}

ObrResult obr_best(const OutputMoments& m, int i, int j, int k) {
    const double plus = obr(m, i, j, k, +1);
    const double minus = obr(m, i, j, k, -1);
    if (minus < plus) return {minus, -1};
    return {plus, +1};
}

int epr_pair_index(int i, int j) {
    for (std::size_t n = 0; n < kEprPairs.size(); ++n)
        if (kEprPairs[n][0] == i && kEprPairs[n][1] == j) return static_cast<int>(n);
    throw DomainError("no such EPR pair");
}

WitnessTable witness_table(const SpectrumTable& spectrum) {
    WitnessTable table;
    table.rows.resize(spectrum.omegas.size());
    for (std::size_t n = 0; n < spectrum.omegas.size(); ++n) {
        const OutputMoments& m = spectrum.moments[n];
        WitnessRow& row = table.rows[n];
        row.omega = spectrum.omegas[n];
        for (int mode = 1; mode <= 3; ++mode) {
            row.squeezing_x[mode - 1] = m.vx(mode);
            row.squeezing_y[mode - 1] = m.vy(mode);
        }
        for (std::size_t e = 0; e < kEprPairs.size(); ++e)
            row.epr[e] = reid_epr(m, kEprPairs[e][0], kEprPairs[e][1]);
        row.steering_sum = 0.0;
        for (std::size_t r = 0; r < kRotations.size(); ++r) {
            const auto [i, j, k] = kRotations[r];
            row.vlf_over_4[r] = vlf(m, i, j, k) / 4.0;
            const ObrResult best = obr_best(m, i, j, k);
            row.obr[r] = best.value;
            row.obr_sign[r] = best.sign;
            row.steering_sum += best.value;
        }
    }
    return table;
}

InjectionScan scan_injected(SystemParams params, const std::vector<double>& eps1_values,
                            const std::vector<double>& omegas, int threads) {
    InjectionScan scan;
    scan.rows.reserve(eps1_values.size());
    std::optional<PhaseSpaceState> seed;
    for (const double eps1 : eps1_values) {
        InjectionScanRow row;
        row.eps1 = eps1;
        params.eps1 = Complex(eps1, 0.0);
        try {
            const SteadyState ss = steady_injected(params, seed);
            seed = ss.amplitudes;
            row.alpha1 = ss.amplitudes.alpha[0];
            row.stable = ss.stable;
            const SpectrumTable spec = compute_spectrum_table(params, ss, omegas, threads);
            for (double& v : row.min_epr_raw) v = std::numeric_limits<double>::infinity();
            for (const OutputMoments& m : spec.moments)
                for (std::size_t e = 0; e < kEprPairs.size(); ++e)
                    row.min_epr_raw[e] =
                        std::min(row.min_epr_raw[e], reid_epr(m, kEprPairs[e][0], kEprPairs[e][1]));
            for (std::size_t e = 0; e < kEprPairs.size(); ++e)
                row.min_epr_capped[e] = std::min(1.0, row.min_epr_raw[e]);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        scan.rows.push_back(std::move(row));
    }
    return scan;
}

}  // namespace oposhg
