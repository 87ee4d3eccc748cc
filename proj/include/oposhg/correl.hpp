#pragma once

#include <string>
#include <vector>

#include "oposhg/params.hpp"
#include "oposhg/spectra.hpp"
#include "oposhg/steady.hpp"

namespace oposhg {

/// Closed-form below-threshold output spectrum S_{j+-} for one mode and
/// quadrature (X is the + branch, Y the - branch). Valid for eps2 <
/// threshold, eps1 = 0.
double squeezing_analytic_below(const SystemParams& p, double omega, int mode, Quadrature quad);

/// Reid inferred-variance product EPR_ij: mode i steered by measurements of
/// mode j when the value drops below 1. Asymmetric in (i, j).
double reid_epr(const OutputMoments& m, int i, int j);

/// van Loock-Furusawa combination variance S_ijk (j and k enter
/// symmetrically). >= 4 separable; < 4 tripartite inseparable; < 2 genuine
/// tripartite entanglement; < 1 genuine tripartite EPR steering.
double vlf(const OutputMoments& m, int i, int j, int k);

/// Two-mode inferred-variance product: modes j and k jointly steering mode i
/// when below 1. `sign` selects the X_j + X_k (+1) or X_j - X_k (-1)
/// combination, applied to both quadratures.
double obr(const OutputMoments& m, int i, int j, int k, int sign);

struct ObrResult {
    double value = 0.0;
    int sign = +1;  // combination sign achieving the minimum
};

ObrResult obr_best(const OutputMoments& m, int i, int j, int k);

/// All witnesses at one frequency. Ordered EPR pairs are indexed by
/// kEprPairs; tripartite rotations by kRotations (inferred mode first).
struct WitnessRow {
    double omega = 0.0;
    double squeezing_x[3]{};  // S_{j+} = V(X_j)
    double squeezing_y[3]{};  // S_{j-} = V(Y_j)
    double epr[6]{};
    double vlf_over_4[3]{};
    double obr[3]{};
    int obr_sign[3]{};
    double steering_sum = 0.0;  // sum of the three sign-optimal OBR values
};

inline constexpr std::array<std::array<int, 2>, 6> kEprPairs{
    {{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}};
inline constexpr std::array<std::array<int, 3>, 3> kRotations{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};

int epr_pair_index(int i, int j);

struct WitnessTable {
    std::vector<WitnessRow> rows;
};

WitnessTable witness_table(const SpectrumTable& spectrum);

/// One point of the injected-signal scan: minima over the frequency grid of
/// each ordered EPR pair, raw and capped at 1 for reporting parity.
struct InjectionScanRow {
    double eps1 = 0.0;
    Complex alpha1{};
    bool stable = false;
    bool ok = false;           // false when the point failed; see error
    std::string error;
    double min_epr_raw[6]{};
    double min_epr_capped[6]{};
};

struct InjectionScan {
    std::vector<InjectionScanRow> rows;
};

/// Scans eps1 over `eps1_values` at fixed eps2, computing the injected fixed
/// point (with continuation seeding), its stability, and per-pair EPR minima
/// over the omega grid. Failed points are flagged and the scan continues.
InjectionScan scan_injected(SystemParams params, const std::vector<double>& eps1_values,
                            const std::vector<double>& omegas, int threads = 0);

}  // namespace oposhg
