#pragma once

#include <complex>
#include <vector>

#include "pntomo/gaussian_state.hpp"
#include "pntomo/hermite.hpp"

namespace pntomo {

/// Hermite index pairing for the doubled index: mode k occupies positions k
/// and N+k (blocked). The interleaved alternative is the first thing to try if
/// an oracle comparison ever disagrees.
inline constexpr bool kPairedBlocks = true;

/// Everything needed to evaluate the photon-number tomogram of one Gaussian
/// state at one scan point: the 2N x 2N symmetric matrix R driving the Hermite
/// recurrence, the finite linear argument z = R y, and the no-photon
/// probability p0. For one mode the scalar reductions T (trace), d (det) and
/// L = 1 + 2T + 4d are cached as well.
struct TomogramKernel {
    ComplexMatrix R;
    ComplexVector z;
    double p0 = 0.0;
    int modes = 0;
    double T = 0.0, d = 0.0, L = 0.0;  // populated for modes == 1
};

/// Block matrix U = (1/sqrt(2)) [[-iE, iE], [E, E]] mapping quadrature pairs to
/// mode amplitudes.
ComplexMatrix mode_rotation(int modes);

/// Builds the evaluation kernel.
///
/// R = U^dagger (E - 2 sigma)(E + 2 sigma)^{-1} U^*, and z is computed as
/// 2 U^dagger (E + 2 sigma)^{-1} (u, v)^T -- algebraically R times the textbook
/// argument y = 2 U^T (E - 2 sigma)^{-1} (u, v)^T, but finite in the pure
/// coherent limit where E - 2 sigma is singular. u_k = <p_k> + sqrt(2) Im a_k,
/// v_k = <q_k> + sqrt(2) Re a_k.
TomogramKernel build_kernel(const GaussianState& state, const DisplacementVector& alpha);

/// The literal z route through (E - 2 sigma)^{-1}; valid only away from the
/// coherent boundary. Exists so tests can confirm the regularized form above.
ComplexVector kernel_z_via_y(const GaussianState& state, const DisplacementVector& alpha);

/// omega(n, alpha) = p0 H^R_{nn}(y, y*) / (n_1! ... n_N!), unclamped.
/// The imaginary part of the Hermite value is checked against a relative
/// tolerance and discarded.
double tomogram_value_raw(const GaussianState& state, const MultiIndex& n,
                          const DisplacementVector& alpha, int degree_cap = kDefaultDegreeCap);

/// Same, with roundoff negatives in (-1e-12, 0) reported as zero.
double tomogram_value(const GaussianState& state, const MultiIndex& n,
                      const DisplacementVector& alpha, int degree_cap = kDefaultDegreeCap);

/// All tomogram values for n <= top componentwise from a single kernel and a
/// single recurrence table, flattened row-major over (n_1, ..., n_N). Raw
/// (unclamped) values.
std::vector<double> tomogram_batch_raw(const GaussianState& state, const MultiIndex& top,
                                       const DisplacementVector& alpha,
                                       int degree_cap = 2 * kDefaultDegreeCap);

/// Closed form for a coherent state |gamma>: product over modes of
/// |gamma_k + alpha_k|^{2 n_k} exp(-|gamma_k + alpha_k|^2) / n_k!.
double coherent_tomogram(const Eigen::VectorXcd& gamma, const MultiIndex& n,
                         const DisplacementVector& alpha);

/// Closed form for one-mode squeezed/correlated pure states, parameterized by
/// cosh 2r = sigma_pp + sigma_qq and the rotation angle theta. r = 0 routes to
/// the coherent closed form.
double squeezed_tomogram(double r, double theta, double mean_q, double mean_p, int n,
                         std::complex<double> alpha);

/// Adaptive-cutoff sum of omega(n, alpha) over n; stops once the geometric
/// tail estimate drops below tail_tol or the per-mode cap is reached.
double tomogram_normalization(const GaussianState& state, const DisplacementVector& alpha,
                              double tail_tol = 1e-10, int per_mode_cap = kDefaultDegreeCap);

/// One-mode formulas exactly as published, used by consistency tests only;
/// production always goes through the matrix forms in build_kernel.
namespace literal {

/// R = (1/L) [[2(spp - sqq - 2i spq), 1 - 4d], [1 - 4d, 2(spp - sqq + 2i spq)]].
Eigen::Matrix2cd one_mode_R(const GaussianState& state);

/// y_1 = y_2^* with the 2T - 4d - 1 denominator.
std::complex<double> one_mode_y1(const GaussianState& state, std::complex<double> alpha);

/// P_0(alpha) = (2/sqrt(L)) exp(...) with L = 1 + 2T + 4d.
double one_mode_p0(const GaussianState& state, std::complex<double> alpha);

}  // namespace literal

}  // namespace pntomo
