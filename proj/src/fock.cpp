#include "pntomo/fock.hpp"

#include <cmath>
#include <numbers>

#include "pntomo/parallel.hpp"

namespace pntomo {

using std::complex;

Eigen::Index FockMatrix::index_of(const MultiIndex& n) const {
    if (static_cast<int>(n.size()) != modes)
        throw DimensionMismatch("FockMatrix::index_of: index must have one entry per mode");
    Eigen::Index flat = 0;
    for (int v : n) {
        if (v < 0 || v > cutoff) throw std::out_of_range("FockMatrix::index_of: outside cutoff");
        flat = flat * (cutoff + 1) + v;
    }
    return flat;
}

double trace_deficit(const FockMatrix& rho) { return 1.0 - rho.mat.trace().real(); }

FockMatrix tensor_product(const FockMatrix& a, const FockMatrix& b) {
    if (a.cutoff != b.cutoff)
        throw DimensionMismatch("tensor_product: cutoffs differ");
    FockMatrix out;
    out.modes = a.modes + b.modes;
    out.cutoff = a.cutoff;
    const Eigen::Index da = a.dim();
    const Eigen::Index db = b.dim();
    out.mat.resize(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.mat.block(i * db, j * db, db, db) = a.mat(i, j) * b.mat;
    return out;
}

double laguerre_eval(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre_eval: negative order");
    if (n > 512) throw std::invalid_argument("laguerre_eval: order above 512");
    double lm1 = 1.0;  // L_0
    if (n == 0) return lm1;
    double l = 1.0 - x;  // L_1
    for (int k = 1; k < n; ++k) {
        double next = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = next;
    }
    return l;
}

double laguerre_assoc_eval(int n, int k, double x) {
    if (n < 0 || k < 0) throw std::invalid_argument("laguerre_assoc_eval: negative parameter");
    double lm1 = 1.0;  // L_0^k
    if (n == 0) return lm1;
    double l = 1.0 + k - x;  // L_1^k
    for (int m = 1; m < n; ++m) {
        double next = ((2.0 * m + k + 1.0 - x) * l - (m + k) * lm1) / (m + 1.0);
        lm1 = l;
        l = next;
    }
    return l;
}

// ---------------------------------------------------------------------------
// Phase-space quadrature

namespace {

struct AxisTables {
    std::vector<double> nodes;                 // shared by all axes
    std::vector<std::vector<double>> axis;     // per-axis Gaussian-diagonal factor * weight
    std::vector<std::vector<double>> pair;     // per-pair cross factor, empty when coupling ~ 0
    double scale = 1.0;
    int count = 0;
};

AxisTables make_tables(const GaussianState& displaced, const QuadratureGrid& grid) {
    const int modes = displaced.modes();
    const int axes = 2 * modes;
    const Eigen::MatrixXd& sig = displaced.sigma.mat();

    const double det = determinant(displaced.sigma);
    if (!(det > 0.0)) throw SingularMatrix("quadrature: covariance not positive definite");
    const Eigen::MatrixXd a = invert(displaced.sigma);

    Eigen::VectorXd center(axes);
    center.head(modes) = displaced.mean_p;
    center.tail(modes) = displaced.mean_q;

    // Box wide enough for both the state's displaced Gaussian and the
    // exp(-p^2-q^2) kernel factor.
    const double max_std = std::sqrt(sig.diagonal().maxCoeff());
    double half = grid.half_width;
    for (int i = 0; i < axes; ++i)
        half = std::max(half, std::abs(center(i)) + 6.0 * std::max(1.0, max_std));
    const double h = grid.spacing;
    const int steps = static_cast<int>(std::ceil(half / h));
    const int count = 2 * steps + 1;

    AxisTables t;
    t.count = count;
    t.nodes.resize(count);
    for (int i = 0; i < count; ++i) t.nodes[i] = (i - steps) * h;

    t.axis.assign(axes, std::vector<double>(count));
    for (int ax = 0; ax < axes; ++ax) {
        for (int i = 0; i < count; ++i) {
            const double x = t.nodes[i];
            const double dx = x - center(ax);
            double w = h;
            if (i == 0 || i == count - 1) w *= 0.5;  // trapezoid ends
            t.axis[ax][i] = std::exp(-0.5 * a(ax, ax) * dx * dx - x * x) * w;
        }
    }

    t.pair.assign(static_cast<std::size_t>(axes) * axes, {});
    for (int ai = 0; ai < axes; ++ai) {
        for (int bj = ai + 1; bj < axes; ++bj) {
            if (std::abs(a(ai, bj)) < 1e-300) continue;
            auto& tab = t.pair[static_cast<std::size_t>(ai) * axes + bj];
            tab.resize(static_cast<std::size_t>(count) * count);
            for (int s = 0; s < count; ++s) {
                const double ds = t.nodes[s] - center(ai);
                for (int u = 0; u < count; ++u) {
                    const double du = t.nodes[u] - center(bj);
                    tab[static_cast<std::size_t>(s) * count + u] = std::exp(-a(ai, bj) * ds * du);
                }
            }
        }
    }

    // the per-mode kernel factor 2 is applied by the sweeps
    t.scale = 1.0 / std::sqrt(det) / std::pow(2.0 * std::numbers::pi, modes);
    return t;
}

// (-1)^n L_n(2 (x_s^2 + x_u^2)) for n = 0..top over the (p, q) plane of one mode.
std::vector<std::vector<double>> mode_kernel(const std::vector<double>& nodes, int top) {
    const int count = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> k(static_cast<std::size_t>(top) + 1,
                                       std::vector<double>(static_cast<std::size_t>(count) * count));
    for (int s = 0; s < count; ++s) {
        for (int u = 0; u < count; ++u) {
            const double x = 2.0 * (nodes[s] * nodes[s] + nodes[u] * nodes[u]);
            double lm1 = 1.0;
            double l = 1.0 - x;
            const std::size_t at = static_cast<std::size_t>(s) * count + u;
            k[0][at] = 1.0;
            double sign = -1.0;
            for (int n = 1; n <= top; ++n) {
                k[static_cast<std::size_t>(n)][at] = sign * l;
                const double next = ((2.0 * n + 1.0 - x) * l - n * lm1) / (n + 1.0);
                lm1 = l;
                l = next;
                sign = -sign;
            }
        }
    }
    return k;
}

std::vector<double> sweep_one_mode(const AxisTables& t, int top) {
    const int count = t.count;
    const auto kern = mode_kernel(t.nodes, top);
    const auto& gp = t.axis[0];
    const auto& gq = t.axis[1];
    const auto& cross = t.pair[0 * 2 + 1];

    std::vector<std::vector<double>> partials(static_cast<std::size_t>(count));
    parallel_for_index(static_cast<std::size_t>(count), [&](std::size_t s) {
        std::vector<double> acc(static_cast<std::size_t>(top) + 1, 0.0);
        for (int u = 0; u < count; ++u) {
            double c = gp[s] * gq[u];
            if (!cross.empty()) c *= cross[s * static_cast<std::size_t>(count) + u];
            const std::size_t at = s * static_cast<std::size_t>(count) + u;
            for (int n = 0; n <= top; ++n) acc[static_cast<std::size_t>(n)] += c * kern[static_cast<std::size_t>(n)][at];
        }
        partials[s] = std::move(acc);
    });
    auto sums = pairwise_combine(std::move(partials));
    for (double& v : sums) v *= 2.0 * t.scale;  // kernel prefactor 2 per mode
    return sums;
}

std::vector<double> sweep_two_mode(const AxisTables& t, int top1, int top2) {
    // axes: 0 = p1, 1 = p2, 2 = q1, 3 = q2; mode 1 lives on (0, 2), mode 2 on (1, 3)
    const int count = t.count;
    const auto kern1 = mode_kernel(t.nodes, top1);
    const auto kern2 = mode_kernel(t.nodes, top2);
    const auto n2 = static_cast<std::size_t>(count);
    auto pair_at = [&](int ai, int bj) -> const std::vector<double>& {
        return t.pair[static_cast<std::size_t>(ai) * 4 + bj];
    };
    const auto& p01 = pair_at(0, 1);
    const auto& p02 = pair_at(0, 2);
    const auto& p03 = pair_at(0, 3);
    const auto& p12 = pair_at(1, 2);
    const auto& p13 = pair_at(1, 3);
    const auto& p23 = pair_at(2, 3);

    const std::size_t out_size = (static_cast<std::size_t>(top1) + 1) * (top2 + 1);
    std::vector<std::vector<double>> partials(static_cast<std::size_t>(count));

    parallel_for_index(static_cast<std::size_t>(count), [&](std::size_t s0) {
        std::vector<double> acc(out_size, 0.0);
        std::vector<double> tmp(static_cast<std::size_t>(top2) + 1);
        std::vector<double> row3(static_cast<std::size_t>(count));
        const double g0 = t.axis[0][s0];
        for (std::size_t s1 = 0; s1 < n2; ++s1) {
            double c01 = g0 * t.axis[1][s1];
            if (!p01.empty()) c01 *= p01[s0 * n2 + s1];
            if (c01 == 0.0) continue;
            for (std::size_t s2 = 0; s2 < n2; ++s2) {
                double c012 = c01 * t.axis[2][s2];
                if (!p02.empty()) c012 *= p02[s0 * n2 + s2];
                if (!p12.empty()) c012 *= p12[s1 * n2 + s2];
                if (c012 == 0.0) continue;
                // innermost axis factors gathered once
                for (std::size_t s3 = 0; s3 < n2; ++s3) {
                    double c = t.axis[3][s3];
                    if (!p03.empty()) c *= p03[s0 * n2 + s3];
                    if (!p13.empty()) c *= p13[s1 * n2 + s3];
                    if (!p23.empty()) c *= p23[s2 * n2 + s3];
                    row3[s3] = c * c012;
                }
                std::fill(tmp.begin(), tmp.end(), 0.0);
                for (std::size_t s3 = 0; s3 < n2; ++s3) {
                    const double c = row3[s3];
                    if (c == 0.0) continue;
                    const std::size_t at2 = s1 * n2 + s3;
                    for (int m = 0; m <= top2; ++m)
                        tmp[static_cast<std::size_t>(m)] += c * kern2[static_cast<std::size_t>(m)][at2];
                }
                const std::size_t at1 = s0 * n2 + s2;
                for (int n = 0; n <= top1; ++n) {
                    const double k1 = kern1[static_cast<std::size_t>(n)][at1];
                    double* out_row = acc.data() + static_cast<std::size_t>(n) * (top2 + 1);
                    for (int m = 0; m <= top2; ++m) out_row[static_cast<std::size_t>(m)] += k1 * tmp[static_cast<std::size_t>(m)];
                }
            }
        }
        partials[s0] = std::move(acc);
    });
    auto sums = pairwise_combine(std::move(partials));
    for (double& v : sums) v *= 4.0 * t.scale;  // kernel prefactor 2 per mode
    return sums;
}

}  // namespace

std::vector<double> tomogram_batch_by_quadrature(const GaussianState& state, const MultiIndex& top,
                                                 const DisplacementVector& alpha,
                                                 const QuadratureGrid& grid) {
    const int modes = state.modes();
    if (static_cast<int>(top.size()) != modes)
        throw DimensionMismatch("tomogram_by_quadrature: index must have one entry per mode");
    total_degree(top);
    if (modes > 2)
        throw DimensionMismatch("tomogram_by_quadrature: at most two modes supported");

    const GaussianState displaced = displace_state(state, alpha);
    const AxisTables tables = make_tables(displaced, grid);
    if (modes == 1) return sweep_one_mode(tables, top[0]);
    return sweep_two_mode(tables, top[0], top[1]);
}

double tomogram_by_quadrature(const GaussianState& state, const MultiIndex& n,
                              const DisplacementVector& alpha, const QuadratureGrid& grid) {
    const auto values = tomogram_batch_by_quadrature(state, n, alpha, grid);
    return values.back();  // row-major flat index of `n` when top == n
}

double tomogram_by_quadrature_checked(const GaussianState& state, const MultiIndex& n,
                                      const DisplacementVector& alpha,
                                      const QuadratureGrid& grid) {
    const double coarse = tomogram_by_quadrature(state, n, alpha, grid);
    QuadratureGrid fine = grid;
    fine.spacing = 0.5 * grid.spacing;
    const double refined = tomogram_by_quadrature(state, n, alpha, fine);
    if (std::abs(refined - coarse) > 1e-6)
        throw GridTooCoarse("tomogram_by_quadrature: refinement moved the value by " +
                            std::to_string(std::abs(refined - coarse)));
    return refined;
}

// ---------------------------------------------------------------------------
// Displacement operator and reference densities

ComplexMatrix displacement_matrix(complex<double> alpha, int cutoff, WarningLog* warnings) {
    if (cutoff < 0) throw std::invalid_argument("displacement_matrix: negative cutoff");
    const double a2 = std::norm(alpha);
    if (a2 > cutoff / 4.0)
        warn(warnings, "TruncationRisk",
             "displacement_matrix: |alpha|^2 = " + std::to_string(a2) + " exceeds cutoff/4");

    const int dim = cutoff + 1;
    std::vector<double> log_fact(static_cast<std::size_t>(dim), 0.0);
    for (int i = 1; i < dim; ++i) log_fact[static_cast<std::size_t>(i)] = log_fact[static_cast<std::size_t>(i) - 1] + std::log(static_cast<double>(i));

    ComplexMatrix d(dim, dim);
    const double pref = std::exp(-0.5 * a2);
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n < dim; ++n) {
            if (m >= n) {
                const double ratio = std::exp(0.5 * (log_fact[static_cast<std::size_t>(n)] - log_fact[static_cast<std::size_t>(m)]));
                d(m, n) = pref * ratio * std::pow(alpha, m - n) * laguerre_assoc_eval(n, m - n, a2);
            } else {
                const double ratio = std::exp(0.5 * (log_fact[static_cast<std::size_t>(m)] - log_fact[static_cast<std::size_t>(n)]));
                d(m, n) = pref * ratio * std::pow(-std::conj(alpha), n - m) * laguerre_assoc_eval(m, n - m, a2);
            }
        }
    }
    return d;
}

FockMatrix coherent_density(complex<double> gamma, int cutoff, WarningLog* warnings) {
    const ComplexMatrix d = displacement_matrix(gamma, cutoff, warnings);
    const ComplexVector psi = d.col(0);
    FockMatrix rho;
    rho.modes = 1;
    rho.cutoff = cutoff;
    rho.mat = psi * psi.adjoint();
    return rho;
}

FockMatrix thermal_density(double nbar, int cutoff) {
    if (nbar <= -0.5)
        throw std::invalid_argument("thermal_density: nbar must exceed -1/2");
    FockMatrix rho;
    rho.modes = 1;
    rho.cutoff = cutoff;
    rho.mat = ComplexMatrix::Zero(cutoff + 1, cutoff + 1);
    double entry = 1.0 / (nbar + 1.0);
    for (int n = 0; n <= cutoff; ++n) {
        rho.mat(n, n) = entry;
        entry *= nbar / (nbar + 1.0);
    }
    return rho;
}

FockMatrix displaced_squeezed_density(double r, double theta, complex<double> gamma, int cutoff,
                                      WarningLog* warnings) {
    if (r < 0.0) throw InvalidSqueezeParams("displaced_squeezed_density: r must be >= 0");
    ComplexVector psi = ComplexVector::Zero(cutoff + 1);
    psi(0) = 1.0 / std::sqrt(std::cosh(r));
    const complex<double> step = -std::exp(complex<double>(0.0, -theta)) * std::tanh(r);
    for (int m = 0; 2 * m + 2 <= cutoff; ++m) {
        psi(2 * m + 2) = psi(2 * m) * step * std::sqrt((2.0 * m + 1.0) * (2.0 * m + 2.0)) /
                         (2.0 * (m + 1.0));
    }
    const double tail = 1.0 - psi.squaredNorm();
    if (tail > 1e-8)
        warn(warnings, "TruncationRisk",
             "displaced_squeezed_density: squeezed amplitude tail " + std::to_string(tail));
    if (std::abs(gamma) > 0.0) psi = displacement_matrix(gamma, cutoff, warnings) * psi;
    FockMatrix rho;
    rho.modes = 1;
    rho.cutoff = cutoff;
    rho.mat = psi * psi.adjoint();
    return rho;
}

double tomogram_from_fock(const FockMatrix& rho, const MultiIndex& n,
                          const DisplacementVector& alpha, WarningLog* warnings) {
    if (static_cast<int>(n.size()) != rho.modes || alpha.size() != rho.modes)
        throw DimensionMismatch("tomogram_from_fock: index/alpha must match the mode count");
    // r = D(alpha)^dagger |n>, assembled mode by mode; omega = r^dagger rho r.
    ComplexVector r(1);
    r(0) = 1.0;
    for (int k = 0; k < rho.modes; ++k) {
        const ComplexMatrix d = displacement_matrix(alpha(k), rho.cutoff, warnings);
        const ComplexVector rk = d.row(n[static_cast<std::size_t>(k)]).adjoint();
        ComplexVector next(r.size() * rk.size());
        for (Eigen::Index i = 0; i < r.size(); ++i)
            next.segment(i * rk.size(), rk.size()) = r(i) * rk;
        r = std::move(next);
    }
    const complex<double> val = r.adjoint() * (rho.mat * r);
    return val.real();
}

double min_eigenvalue(const FockMatrix& rho) {
    const Eigen::VectorXd evals = hermitian_eigenvalues<complex<double>>(rho.mat);
    return evals(0);
}

}  // namespace pntomo
