#pragma once

#include <complex>
#include <vector>

#include "pntomo/gaussian_state.hpp"
#include "pntomo/hermite.hpp"

namespace pntomo {

/// Truncated Fock-basis operator: cutoff photons per mode, basis ordered
/// lexicographically by (n_1, ..., n_N), matrix dimension (cutoff+1)^modes.
struct FockMatrix {
    int modes = 1;
    int cutoff = 16;
    ComplexMatrix mat;

    Eigen::Index dim() const { return mat.rows(); }
    /// Flat basis index of the multi-index n.
    Eigen::Index index_of(const MultiIndex& n) const;
};

/// 1 minus the retained trace; quality measure for truncated densities.
double trace_deficit(const FockMatrix& rho);

FockMatrix tensor_product(const FockMatrix& a, const FockMatrix& b);

/// Laguerre polynomial L_n(x) via the standard three-term recurrence. n <= 512.
double laguerre_eval(int n, double x);

/// Associated Laguerre polynomial L_n^{(k)}(x).
double laguerre_assoc_eval(int n, int k, double x);

/// Cartesian tensor quadrature rule for phase-space integrals. The box is
/// widened automatically so it covers at least six standard deviations of the
/// displaced Gaussian being integrated.
struct QuadratureGrid {
    double spacing = 0.05;
    double half_width = 8.0;
};

/// Brute-force tomogram through phase-space quadrature: the photon-number
/// distribution of the displaced state, obtained by integrating its Wigner
/// function against the Fock-state kernels
/// 2 (-1)^n exp(-p^2 - q^2) L_n(2 (p^2 + q^2)) with measure dq dp / (2 pi)
/// per mode. Authoritative oracle for the Hermite-polynomial path.
double tomogram_by_quadrature(const GaussianState& state, const MultiIndex& n,
                              const DisplacementVector& alpha, const QuadratureGrid& grid = {});

/// All values for n <= top componentwise in one sweep over the grid,
/// flattened row-major. Modes <= 2.
std::vector<double> tomogram_batch_by_quadrature(const GaussianState& state, const MultiIndex& top,
                                                 const DisplacementVector& alpha,
                                                 const QuadratureGrid& grid = {});

/// Evaluates at the given spacing and at half the spacing; throws
/// GridTooCoarse when the two differ by more than 1e-6, otherwise returns the
/// finer value.
double tomogram_by_quadrature_checked(const GaussianState& state, const MultiIndex& n,
                                      const DisplacementVector& alpha,
                                      const QuadratureGrid& grid = {});

/// Fock matrix elements <m|D(alpha)|n> of the Weyl displacement operator,
/// dimension (cutoff+1)^2. Emits a TruncationRisk warning when
/// |alpha|^2 > cutoff / 4.
ComplexMatrix displacement_matrix(std::complex<double> alpha, int cutoff,
                                  WarningLog* warnings = nullptr);

/// |gamma><gamma| built from displacement_matrix column 0.
FockMatrix coherent_density(std::complex<double> gamma, int cutoff, WarningLog* warnings = nullptr);

/// Diagonal nbar^n / (nbar + 1)^{n+1}. Negative nbar (> -1/2) produces the
/// sign-alternating pseudo-thermal diagonal used as a non-positive fixture.
FockMatrix thermal_density(double nbar, int cutoff);

/// D(gamma) S(r, theta) |0>, as a density matrix. theta follows the covariance
/// convention of sigma_from_squeeze.
FockMatrix displaced_squeezed_density(double r, double theta, std::complex<double> gamma,
                                      int cutoff, WarningLog* warnings = nullptr);

/// Second, independent oracle: omega(n, alpha) = <n| D(alpha) rho D(alpha)^dagger |n>
/// assembled from per-mode displacement matrices.
double tomogram_from_fock(const FockMatrix& rho, const MultiIndex& n,
                          const DisplacementVector& alpha, WarningLog* warnings = nullptr);

/// Smallest eigenvalue; throws NotHermitian beyond the 1e-10 deviation gate.
double min_eigenvalue(const FockMatrix& rho);

}  // namespace pntomo
