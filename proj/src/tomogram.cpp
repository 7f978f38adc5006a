#include "pntomo/tomogram.hpp"

#include <cmath>

namespace pntomo {

using std::complex;

namespace {

constexpr complex<double> kI{0.0, 1.0};

/// Tolerance for the discarded imaginary part, relative to the magnitude.
/// One order above the bound asserted by the test suite.
constexpr double kRealnessGuard = 1e-8;

Eigen::VectorXd stacked_uv(const GaussianState& state, const DisplacementVector& alpha) {
    const int n = state.modes();
    Eigen::VectorXd uv(2 * n);
    for (int k = 0; k < n; ++k) {
        uv(k) = state.mean_p(k) + std::sqrt(2.0) * alpha(k).imag();       // u_k
        uv(n + k) = state.mean_q(k) + std::sqrt(2.0) * alpha(k).real();   // v_k
    }
    return uv;
}

MultiIndex doubled_index(const MultiIndex& n) {
    const std::size_t modes = n.size();
    MultiIndex nn(2 * modes);
    for (std::size_t k = 0; k < modes; ++k) {
        nn[k] = n[k];
        nn[modes + k] = n[k];
    }
    return nn;
}

double factorial_product(const MultiIndex& n) {
    double f = 1.0;
    for (int v : n)
        for (int j = 2; j <= v; ++j) f *= j;
    return f;
}

double take_real(complex<double> h, const char* where) {
    const double mag = std::abs(h);
    if (mag > 0.0 && std::abs(h.imag()) > kRealnessGuard * mag)
        throw std::runtime_error(std::string(where) + ": lost realness, |Im|/|H| = " +
                                 std::to_string(std::abs(h.imag()) / mag));
    return h.real();
}

}  // namespace

ComplexMatrix mode_rotation(int modes) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ComplexMatrix u = ComplexMatrix::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        u(k, k) = -kI * inv_sqrt2;
        u(k, modes + k) = kI * inv_sqrt2;
        u(modes + k, k) = inv_sqrt2;
        u(modes + k, modes + k) = inv_sqrt2;
    }
    return u;
}

TomogramKernel build_kernel(const GaussianState& state, const DisplacementVector& alpha) {
    const int n = state.modes();
    if (alpha.size() != n) throw DimensionMismatch("build_kernel: alpha must have one entry per mode");

    const Eigen::MatrixXd& sig = state.sigma.mat();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    const Eigen::MatrixXd plus = eye + 2.0 * sig;

    const double det_plus = determinant(plus);  // = det(sigma + E/2) * 4^N
    if (!(det_plus > 0.0))
        throw SingularMatrix("build_kernel: sigma + E/2 not positive definite");
    const Eigen::MatrixXd plus_inv = invert(plus);

    const ComplexMatrix u = mode_rotation(n);
    const Eigen::MatrixXd ratio = (eye - 2.0 * sig) * plus_inv;

    TomogramKernel kernel;
    kernel.modes = n;
    kernel.R = u.adjoint() * ratio.cast<complex<double>>() * u.conjugate();
    kernel.R = 0.5 * (kernel.R + kernel.R.transpose().eval());  // roundoff cleanup

    const Eigen::VectorXd uv = stacked_uv(state, alpha);
    kernel.z = 2.0 * (u.adjoint() * (plus_inv * uv).cast<complex<double>>());

    const double quad = uv.dot(plus_inv * uv);  // (2 sigma + E)^{-1} is the same inverse
    kernel.p0 = std::pow(2.0, n) / std::sqrt(det_plus) * std::exp(-quad);

    if (n == 1) {
        kernel.T = sig.trace();
        kernel.d = determinant(state.sigma);
        kernel.L = 1.0 + 2.0 * kernel.T + 4.0 * kernel.d;
    }
    return kernel;
}

ComplexVector kernel_z_via_y(const GaussianState& state, const DisplacementVector& alpha) {
    const int n = state.modes();
    const Eigen::MatrixXd& sig = state.sigma.mat();
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    const Eigen::MatrixXd minus_inv = invert((eye - 2.0 * sig).eval());
    const ComplexMatrix u = mode_rotation(n);
    const Eigen::VectorXd uv = stacked_uv(state, alpha);
    const ComplexVector y = 2.0 * (u.transpose() * (minus_inv * uv).cast<complex<double>>());
    const TomogramKernel kernel = build_kernel(state, alpha);
    return kernel.R * y;
}

double tomogram_value_raw(const GaussianState& state, const MultiIndex& n,
                          const DisplacementVector& alpha, int degree_cap) {
    if (static_cast<int>(n.size()) != state.modes())
        throw DimensionMismatch("tomogram_value: index must have one entry per mode");
    if (total_degree(n) > degree_cap)
        throw DegreeCapExceeded("tomogram_value: |n| = " + std::to_string(total_degree(n)) +
                                " exceeds cap " + std::to_string(degree_cap));
    const TomogramKernel kernel = build_kernel(state, alpha);
    const HermiteParams params(kernel.R, kernel.z);
    const complex<double> h = hermite_eval(params, doubled_index(n), 2 * degree_cap);
    return kernel.p0 * take_real(h, "tomogram_value") / factorial_product(n);
}

double tomogram_value(const GaussianState& state, const MultiIndex& n,
                      const DisplacementVector& alpha, int degree_cap) {
    double v = tomogram_value_raw(state, n, alpha, degree_cap);
    if (v < 0.0 && v > -1e-12) return 0.0;
    return v;
}

std::vector<double> tomogram_batch_raw(const GaussianState& state, const MultiIndex& top,
                                       const DisplacementVector& alpha, int degree_cap) {
    const int modes = state.modes();
    if (static_cast<int>(top.size()) != modes)
        throw DimensionMismatch("tomogram_batch: index must have one entry per mode");
    const TomogramKernel kernel = build_kernel(state, alpha);
    const HermiteParams params(kernel.R, kernel.z);
    const HermiteTable table(params, doubled_index(top), degree_cap);

    std::size_t total = 1;
    for (int t : top) total *= static_cast<std::size_t>(t + 1);

    std::vector<double> out(total);
    MultiIndex n(static_cast<std::size_t>(modes), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        const complex<double> h = table.value(doubled_index(n));
        out[flat] = kernel.p0 * take_real(h, "tomogram_batch") / factorial_product(n);
        for (std::size_t k = n.size(); k-- > 0;) {
            if (n[k] < top[k]) {
                ++n[k];
                break;
            }
            n[k] = 0;
        }
    }
    return out;
}

double coherent_tomogram(const Eigen::VectorXcd& gamma, const MultiIndex& n,
                         const DisplacementVector& alpha) {
    if (gamma.size() != alpha.size() || static_cast<std::size_t>(gamma.size()) != n.size())
        throw DimensionMismatch("coherent_tomogram: gamma, alpha and n lengths differ");
    total_degree(n);  // rejects negative entries
    double value = 1.0;
    for (Eigen::Index k = 0; k < gamma.size(); ++k) {
        const double x = std::norm(gamma(k) + alpha(k));
        double term = std::exp(-x);
        for (int j = 1; j <= n[static_cast<std::size_t>(k)]; ++j) term *= x / j;
        value *= term;
    }
    return value;
}

double squeezed_tomogram(double r, double theta, double mean_q, double mean_p, int n,
                         complex<double> alpha) {
    if (n < 0) throw std::invalid_argument("squeezed_tomogram: negative photon number");
    if (r < 0.0) throw InvalidSqueezeParams("squeezed_tomogram: r must be >= 0");
    if (r == 0.0) {
        Eigen::VectorXcd gamma(1);
        gamma(0) = complex<double>(mean_q, mean_p) / std::sqrt(2.0);
        DisplacementVector a(1);
        a(0) = alpha;
        return coherent_tomogram(gamma, MultiIndex{n}, a);
    }
    const double th = std::tanh(r);
    const double u = mean_p + std::sqrt(2.0) * alpha.imag();
    const double v = mean_q + std::sqrt(2.0) * alpha.real();

    double log_pref = static_cast<double>(n) * std::log(th / 2.0) - std::log(std::cosh(r));
    for (int j = 2; j <= n; ++j) log_pref -= std::log(static_cast<double>(j));

    const double expo = th * std::sin(theta) * u * v - 0.5 * u * u * (1.0 - std::cos(theta) * th) -
                        0.5 * v * v * (1.0 + std::cos(theta) * th);

    const complex<double> minus_i{0.0, -1.0};
    const complex<double> wm = complex<double>(mean_q, -mean_p) + std::sqrt(2.0) * std::conj(alpha);
    const complex<double> wp = complex<double>(mean_q, mean_p) + std::sqrt(2.0) * alpha;
    const complex<double> arg = 0.5 * std::exp(minus_i * (theta / 2.0)) * std::sqrt(th) *
                                (wm + std::exp(kI * theta) / th * wp);
    const complex<double> h = hermite_physicists(n, arg);
    return std::exp(log_pref + expo) * std::norm(h);
}

double tomogram_normalization(const GaussianState& state, const DisplacementVector& alpha,
                              double tail_tol, int per_mode_cap) {
    const int modes = state.modes();
    if (modes == 1) {
        const TomogramKernel kernel = build_kernel(state, alpha);
        const HermiteParams params(kernel.R, kernel.z);
        const HermiteTable table(params, doubled_index(MultiIndex{per_mode_cap}),
                                 2 * per_mode_cap);
        double sum = 0.0;
        double prev = 0.0;
        double fact = 1.0;
        for (int n = 0; n <= per_mode_cap; ++n) {
            if (n >= 2) fact *= n;
            const double term =
                kernel.p0 * take_real(table.value(MultiIndex{n, n}), "normalization") / fact;
            sum += term;
            // geometric tail bound once terms decay
            if (n >= 2 && term < prev && term > 0.0) {
                const double ratio = term / prev;
                if (ratio < 0.99 && term * ratio / (1.0 - ratio) < tail_tol) break;
            }
            prev = std::abs(term);
        }
        return sum;
    }

    MultiIndex top(static_cast<std::size_t>(modes), per_mode_cap);
    if (total_degree(top) > 2 * kDefaultDegreeCap)
        top.assign(static_cast<std::size_t>(modes), 2 * kDefaultDegreeCap / (2 * modes));
    const std::vector<double> all = tomogram_batch_raw(state, top, alpha);
    double sum = 0.0;
    for (double v : all) sum += v;
    return sum;
}

namespace literal {

Eigen::Matrix2cd one_mode_R(const GaussianState& state) {
    if (state.modes() != 1) throw DimensionMismatch("literal::one_mode_R: one mode required");
    const double spp = state.sig_pp(0, 0);
    const double sqq = state.sig_qq(0, 0);
    const double spq = state.sig_pq(0, 0);
    const double d = spp * sqq - spq * spq;
    const double trace = spp + sqq;
    const double big_l = 1.0 + 2.0 * trace + 4.0 * d;
    Eigen::Matrix2cd r;
    r(0, 0) = 2.0 * complex<double>(spp - sqq, -2.0 * spq) / big_l;
    r(1, 1) = 2.0 * complex<double>(spp - sqq, 2.0 * spq) / big_l;
    r(0, 1) = r(1, 0) = complex<double>(1.0 - 4.0 * d, 0.0) / big_l;
    return r;
}

complex<double> one_mode_y1(const GaussianState& state, complex<double> alpha) {
    if (state.modes() != 1) throw DimensionMismatch("literal::one_mode_y1: one mode required");
    const double spp = state.sig_pp(0, 0);
    const double sqq = state.sig_qq(0, 0);
    const double spq = state.sig_pq(0, 0);
    const double d = spp * sqq - spq * spq;
    const double trace = spp + sqq;
    const double denom = 2.0 * trace - 4.0 * d - 1.0;
    const complex<double> qm = complex<double>(state.mean_q(0), -state.mean_p(0)) +
                               std::sqrt(2.0) * std::conj(alpha);
    const complex<double> qp = complex<double>(state.mean_q(0), state.mean_p(0)) +
                               std::sqrt(2.0) * alpha;
    return std::sqrt(2.0) / denom *
           (qm * (trace - 1.0) + complex<double>(spp - sqq, 2.0 * spq) * qp);
}

double one_mode_p0(const GaussianState& state, complex<double> alpha) {
    if (state.modes() != 1) throw DimensionMismatch("literal::one_mode_p0: one mode required");
    const double spp = state.sig_pp(0, 0);
    const double sqq = state.sig_qq(0, 0);
    const double spq = state.sig_pq(0, 0);
    const double d = spp * sqq - spq * spq;
    const double trace = spp + sqq;
    const double big_l = 1.0 + 2.0 * trace + 4.0 * d;
    const double u = state.mean_p(0) + std::sqrt(2.0) * alpha.imag();
    const double v = state.mean_q(0) + std::sqrt(2.0) * alpha.real();
    const double expo = -((2.0 * sqq + 1.0) * u * u + (2.0 * spp + 1.0) * v * v) / big_l +
                        4.0 * spq * u * v / big_l;
    return 2.0 / std::sqrt(big_l) * std::exp(expo);
}

}  // namespace literal

}  // namespace pntomo
