#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pntomo/matrix.hpp"

namespace pntomo {

/// Quadrature block ordering of covariance rows/columns: all p first, then all
/// q. Flip here if an oracle comparison ever exposes a convention mismatch.
inline constexpr bool kMomentumBlockFirst = true;

/// Tomographic scan point: one complex amplitude per mode.
using DisplacementVector = Eigen::VectorXcd;

/// N-mode Gaussian state: quadrature means plus a 2N x 2N real symmetric
/// covariance matrix in (p-block, q-block) order. Dimensionless, hbar = 1.
struct GaussianState {
    Eigen::VectorXd mean_p;
    Eigen::VectorXd mean_q;
    RealSymMatrix sigma;

    GaussianState(Eigen::VectorXd mean_p_in, Eigen::VectorXd mean_q_in, RealSymMatrix sigma_in);

    int modes() const { return static_cast<int>(mean_p.size()); }

    /// Covariance entries addressed by quadrature label.
    double sig_pp(int j, int k) const { return sigma(j, k); }
    double sig_pq(int j, int k) const { return sigma(j, modes() + k); }
    double sig_qq(int j, int k) const { return sigma(modes() + j, modes() + k); }

    static GaussianState vacuum(int modes);
    /// sigma = (nbar + 1/2) E; nbar < 0 gives a Gaussian Hermitian operator
    /// below the quantum bound (useful for positivity scans).
    static GaussianState thermal(double nbar, int modes = 1);
    static GaussianState coherent(const Eigen::VectorXcd& gamma);
    static GaussianState squeezed(double r, double theta, double mean_q = 0.0,
                                  double mean_p = 0.0);
};

/// Pure squeezed/correlated covariance: sigma_pp = (cosh 2r + cos(theta) sinh 2r)/2,
/// sigma_qq with the opposite sign, sigma_pq = sin(theta) sinh(2r)/2. det = 1/4.
RealSymMatrix sigma_from_squeeze(double r, double theta);

struct SqueezeParams {
    double r;
    double theta;
};

/// Inverse map: cosh 2r = sigma_pp + sigma_qq, sin(theta) = 2 sigma_pq / sqrt(T^2 - 1).
/// Faithful only on the pure manifold (det sigma = 1/4). Throws
/// InvalidSqueezeParams when |sin(theta)| derived from sigma exceeds 1 + 1e-12.
SqueezeParams squeeze_params_from_sigma(const RealSymMatrix& sigma);

enum class Verdict { Valid, NecessaryFailed };

/// Outcome of the uncertainty-inequality checks that every quantum covariance
/// matrix has to pass; necessary (not sufficient for N >= 2 correlated states).
struct ValidityReport {
    Eigen::VectorXd per_mode_det;        ///< det of each mode's 2x2 covariance block
    double full_det = 0.0;               ///< det of the full 2N x 2N sigma
    std::vector<bool> passes_per_mode;   ///< per-mode det >= 1/4 (tolerance 1e-12)
    bool passes_full = false;            ///< full det >= (1/4)^N
    Verdict verdict = Verdict::NecessaryFailed;
};

/// Normalized so that the integral of W over dq dp / (2 pi)^N equals one.
double wigner_eval(const GaussianState& state, const Eigen::VectorXd& q, const Eigen::VectorXd& p);

/// Physical displacement: mean_q += sqrt(2) Re alpha, mean_p += sqrt(2) Im alpha,
/// covariance unchanged.
GaussianState displace_state(const GaussianState& state, const DisplacementVector& alpha);

ValidityReport validate(const GaussianState& state);

}  // namespace pntomo
