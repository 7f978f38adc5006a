#include "pntomo/gaussian_state.hpp"

#include <cmath>

namespace pntomo {

GaussianState::GaussianState(Eigen::VectorXd mean_p_in, Eigen::VectorXd mean_q_in,
                             RealSymMatrix sigma_in)
    : mean_p(std::move(mean_p_in)), mean_q(std::move(mean_q_in)), sigma(std::move(sigma_in)) {
    const auto n = mean_p.size();
    if (n == 0) throw DimensionMismatch("GaussianState: at least one mode required");
    if (mean_q.size() != n) throw DimensionMismatch("GaussianState: mean_p and mean_q lengths differ");
    if (sigma.dim() != 2 * n)
        throw DimensionMismatch("GaussianState: sigma must be 2N x 2N");
    for (Eigen::Index i = 0; i < sigma.dim(); ++i) {
        if (!(sigma(i, i) > 0.0))
            throw std::invalid_argument("GaussianState: sigma diagonal entries must be positive");
    }
}

GaussianState GaussianState::vacuum(int modes) {
    return GaussianState(Eigen::VectorXd::Zero(modes), Eigen::VectorXd::Zero(modes),
                         RealSymMatrix(0.5 * Eigen::MatrixXd::Identity(2 * modes, 2 * modes)));
}

GaussianState GaussianState::thermal(double nbar, int modes) {
    return GaussianState(
        Eigen::VectorXd::Zero(modes), Eigen::VectorXd::Zero(modes),
        RealSymMatrix((nbar + 0.5) * Eigen::MatrixXd::Identity(2 * modes, 2 * modes)));
}

GaussianState GaussianState::coherent(const Eigen::VectorXcd& gamma) {
    const auto n = gamma.size();
    Eigen::VectorXd mp(n), mq(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        mq(k) = std::sqrt(2.0) * gamma(k).real();
        mp(k) = std::sqrt(2.0) * gamma(k).imag();
    }
    return GaussianState(mp, mq,
                         RealSymMatrix(0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n)));
}

GaussianState GaussianState::squeezed(double r, double theta, double mean_q, double mean_p) {
    Eigen::VectorXd mp(1), mq(1);
    mp << mean_p;
    mq << mean_q;
    return GaussianState(mp, mq, sigma_from_squeeze(r, theta));
}

RealSymMatrix sigma_from_squeeze(double r, double theta) {
    if (r < 0.0) throw InvalidSqueezeParams("sigma_from_squeeze: r must be >= 0");
    const double ch = std::cosh(2.0 * r);
    const double sh = std::sinh(2.0 * r);
    Eigen::MatrixXd s(2, 2);
    s(0, 0) = 0.5 * (ch + std::cos(theta) * sh);   // sigma_pp
    s(1, 1) = 0.5 * (ch - std::cos(theta) * sh);   // sigma_qq
    s(0, 1) = s(1, 0) = 0.5 * std::sin(theta) * sh;
    return RealSymMatrix(s);
}

SqueezeParams squeeze_params_from_sigma(const RealSymMatrix& sigma) {
    if (sigma.dim() != 2)
        throw DimensionMismatch("squeeze_params_from_sigma: one-mode sigma required");
    const double spp = sigma(0, 0);
    const double sqq = sigma(1, 1);
    const double spq = sigma(0, 1);
    const double trace = spp + sqq;
    if (trace < 1.0 - 1e-12)
        throw InvalidSqueezeParams("squeeze_params_from_sigma: sigma_pp + sigma_qq < 1");
    const double ch = std::max(trace, 1.0);
    const double r = 0.5 * std::acosh(ch);
    if (ch - 1.0 < 1e-14) return {0.0, 0.0};
    const double denom = std::sqrt(ch * ch - 1.0);
    const double sin_theta = 2.0 * spq / denom;
    const double cos_theta = (spp - sqq) / denom;
    if (std::abs(sin_theta) > 1.0 + 1e-12)
        throw InvalidSqueezeParams("squeeze_params_from_sigma: |sin theta| = " +
                                   std::to_string(std::abs(sin_theta)) + " exceeds 1");
    return {r, std::atan2(sin_theta, cos_theta)};
}

double wigner_eval(const GaussianState& state, const Eigen::VectorXd& q,
                   const Eigen::VectorXd& p) {
    const int n = state.modes();
    if (q.size() != n || p.size() != n)
        throw DimensionMismatch("wigner_eval: q and p must have one entry per mode");
    const double det = determinant(state.sigma);
    if (!(det > 0.0))
        throw SingularMatrix("wigner_eval: covariance not positive definite");
    const Eigen::MatrixXd inv = invert(state.sigma);
    Eigen::VectorXd dq(2 * n);
    dq.head(n) = p - state.mean_p;
    dq.tail(n) = q - state.mean_q;
    const double quad = dq.dot(inv * dq);
    return std::exp(-0.5 * quad) / std::sqrt(det);
}

GaussianState displace_state(const GaussianState& state, const DisplacementVector& alpha) {
    if (alpha.size() != state.modes())
        throw DimensionMismatch("displace_state: alpha must have one entry per mode");
    GaussianState out = state;
    for (int k = 0; k < state.modes(); ++k) {
        out.mean_q(k) += std::sqrt(2.0) * alpha(k).real();
        out.mean_p(k) += std::sqrt(2.0) * alpha(k).imag();
    }
    return out;
}

ValidityReport validate(const GaussianState& state) {
    const int n = state.modes();
    ValidityReport rep;
    rep.per_mode_det.resize(n);
    rep.passes_per_mode.resize(n);
    constexpr double tol = 1e-12;
    bool all_modes = true;
    for (int k = 0; k < n; ++k) {
        const double det = state.sig_pp(k, k) * state.sig_qq(k, k) - state.sig_pq(k, k) * state.sig_pq(k, k);
        rep.per_mode_det(k) = det;
        const bool ok = det >= 0.25 - tol;
        rep.passes_per_mode[k] = ok;
        all_modes = all_modes && ok;
    }
    rep.full_det = determinant(state.sigma);
    rep.passes_full = rep.full_det >= std::pow(0.25, n) - tol;
    rep.verdict = (all_modes && rep.passes_full) ? Verdict::Valid : Verdict::NecessaryFailed;
    return rep;
}

}  // namespace pntomo
