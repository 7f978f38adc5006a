#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "pntomo/fock.hpp"
#include "pntomo/gaussian_state.hpp"

namespace pntomo {

/// Settings for the tomographic inversion. Defaults: s = -0.5 makes the
/// photon-number weight decay like 3^{-n} so n_max = 20 is ample; s = 0 would
/// leave a non-decaying (-1)^n weight.
struct ReconstructionConfig {
    Eigen::VectorXd s_params;                 ///< per mode, each in (-1, 0]
    int cutoff = 12;                          ///< Fock cutoff per mode
    int radial_nodes = 40;
    int angular_nodes = 40;
    double max_radius = 4.0;
    int n_max = 20;                           ///< per-mode photon-number summation cap
    std::vector<std::complex<double>> center; ///< alpha-grid center per mode; empty = origin

    static ReconstructionConfig defaults(int modes = 1) {
        ReconstructionConfig cfg;
        cfg.s_params = Eigen::VectorXd::Constant(modes, -0.5);
        return cfg;
    }
};

struct ReconstructionResult {
    FockMatrix rho;                      ///< hermitized output
    double trace = 0.0;                  ///< of the raw accumulation
    double hermiticity_residual = 0.0;   ///< max |raw - raw^dagger| before symmetrization
    double min_eigenvalue = 0.0;
    WarningLog warnings;
};

/// Tomogram values on demand; must be defined on the whole scan domain.
using TomogramSource =
    std::function<double(const MultiIndex& n, const DisplacementVector& alpha)>;

/// Inverts tomogram data into a truncated density matrix:
/// rho = integral over alpha of sum_n w_n(s) omega(n, alpha) T(alpha, s),
/// where T = prod_k (2/(1+s_k)) D^{-1}(alpha_k) t_k^{a^dagger a} D(alpha_k),
/// t_k = (s_k-1)/(s_k+1), and w_n carries (2/(1-s_k)) ((s_k+1)/(s_k-1))^{n_k}.
/// The alpha integral is a polar product rule (Gauss-Legendre radius,
/// trapezoid angle) centered per config.
ReconstructionResult reconstruct_density(const TomogramSource& source, int modes,
                                         const ReconstructionConfig& config);

/// Convenience: source = tomogram_value of the state, grid centered at
/// -(mean_q + i mean_p)/sqrt(2) where the tomogram mass sits.
ReconstructionResult reconstruct_from_state(const GaussianState& state,
                                            const ReconstructionConfig& config);

/// Reconstructs, then re-evaluates the tomogram from the reconstructed matrix
/// and returns the max abs deviation over a fixed probe set of (n, alpha).
double roundtrip_residual(const GaussianState& state, const ReconstructionConfig& config);

/// Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int points);

/// One-mode matrix of D^{-1}(alpha) t^{a^dagger a} D(alpha) in closed
/// (associated-Laguerre) form; the building block of the inversion operator.
ComplexMatrix displaced_ordering_kernel(std::complex<double> alpha, double t, int cutoff);

}  // namespace pntomo
