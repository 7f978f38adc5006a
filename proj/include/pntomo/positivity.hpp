#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pntomo/fock.hpp"
#include "pntomo/gaussian_state.hpp"
#include "pntomo/tomogram.hpp"

namespace pntomo {

/// Square Re/Im grid per mode for the alpha scan.
struct AlphaGridSpec {
    double box_min = -3.0;
    double box_max = 3.0;
    int resolution = 9;
};

struct ScanSpec {
    int n_max = 15;          ///< total photon number cap, |n| <= n_max
    AlphaGridSpec alpha;
    double tolerance = 1e-10;
};

struct Witness {
    MultiIndex n;
    DisplacementVector alpha;
    double omega;
};

enum class ScanVerdict { PassedAllScans, NegativeWitnessFound };

/// A finite scan cannot certify the universally quantified inequality;
/// PassedAllScans means "no witness found on this grid" and the report carries
/// the scan spec for that reason.
struct PositivityReport {
    std::optional<ValidityReport> uncertainty_checks;
    std::vector<Witness> negative_witnesses;  ///< scan order = lexicographic in (n, alpha)
    std::string scan_spec;
    ScanVerdict verdict = ScanVerdict::PassedAllScans;
    bool overall_positive = true;  ///< uncertainty checks and scan both clean
    std::string first_failure;     ///< names the first inequality that failed
};

/// Scans raw (unclamped) tomogram values over {|n| <= n_max} x alpha grid and
/// collects every value below -tolerance. sigma may violate the uncertainty
/// relations; that is the point.
PositivityReport scan_tomogram_negativity(const GaussianState& state, int n_max,
                                          const AlphaGridSpec& alpha_grid,
                                          double tolerance = 1e-10);

/// Uncertainty inequalities plus the tomogram scan; the combined report fails
/// when either does and names the first failed inequality.
PositivityReport gaussian_positivity_report(const GaussianState& state, const ScanSpec& spec = {});

/// Same scan evaluated through the phase-space quadrature oracle instead of
/// the Hermite formula. Modes <= 2.
PositivityReport wigner_admissibility_check(const GaussianState& state, int n_max,
                                            const AlphaGridSpec& alpha_grid,
                                            double tolerance = 1e-10,
                                            const QuadratureGrid& grid = {});

}  // namespace pntomo
