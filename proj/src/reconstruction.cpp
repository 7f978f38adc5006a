#include "pntomo/reconstruction.hpp"

#include <cmath>
#include <numbers>

#include "pntomo/tomogram.hpp"

namespace pntomo {

using std::complex;

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int points) {
    if (points < 1) throw ConfigInvalid("gauss_legendre_01: at least one node required");
    // Golub-Welsch on the Jacobi matrix of the Legendre recurrence.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(points, points);
    for (int k = 1; k < points; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jac(k, k - 1) = jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    std::vector<double> nodes(static_cast<std::size_t>(points));
    std::vector<double> weights(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        nodes[static_cast<std::size_t>(i)] = 0.5 * (es.eigenvalues()(i) + 1.0);   // map [-1,1] -> [0,1]
        const double v0 = es.eigenvectors()(0, i);
        weights[static_cast<std::size_t>(i)] = v0 * v0;  // 2 * v0^2 * (interval length 1/2)
    }
    return {nodes, weights};
}

namespace {

void check_config(int modes, const ReconstructionConfig& cfg) {
    if (cfg.s_params.size() != modes)
        throw ConfigInvalid("reconstruction: s_params must have one entry per mode");
    for (Eigen::Index k = 0; k < cfg.s_params.size(); ++k) {
        const double s = cfg.s_params(k);
        if (!(s > -1.0 && s <= 0.0))
            throw ConfigInvalid("reconstruction: s must lie in (-1, 0]");
    }
    if (cfg.cutoff < 0) throw ConfigInvalid("reconstruction: negative cutoff");
    if (cfg.radial_nodes < 1 || cfg.angular_nodes < 1)
        throw ConfigInvalid("reconstruction: grid needs at least one node per direction");
    if (cfg.n_max < 0) throw ConfigInvalid("reconstruction: negative n_max");
    if (!cfg.center.empty() && static_cast<int>(cfg.center.size()) != modes)
        throw ConfigInvalid("reconstruction: center must have one entry per mode");
    double max_center = 0.0;
    for (const auto& c : cfg.center) max_center = std::max(max_center, std::abs(c));
    if (cfg.max_radius < 2.0 + max_center)
        throw ConfigInvalid("reconstruction: max_radius must cover the grid center plus 2");
}

}  // namespace

/// Pulling the displacements through the number operator gives
/// e^{(t-1)|alpha|^2} t^{a^dagger a} e^{mu a^dagger} e^{nu a} with
/// mu = alpha (1 - 1/t), nu = conj(alpha) (t - 1), whose Fock elements are
/// associated Laguerre polynomials. The route through truncated displacement
/// matrices cancels catastrophically for |t| > 1 once |t| |alpha|^2 is large;
/// this form has no cancellation at all.
ComplexMatrix displaced_ordering_kernel(complex<double> alpha, double t, int cutoff) {
    const double a2 = std::norm(alpha);
    const complex<double> mu = alpha * (1.0 - 1.0 / t);
    const complex<double> nu = std::conj(alpha) * (t - 1.0);
    const double x = -(mu * nu).real();  // = -|alpha|^2 (t-1)^2 / t, real
    const double pref = std::exp((t - 1.0) * a2);

    const int dim = cutoff + 1;
    std::vector<double> log_fact(static_cast<std::size_t>(dim), 0.0);
    for (int i = 1; i < dim; ++i)
        log_fact[static_cast<std::size_t>(i)] = log_fact[static_cast<std::size_t>(i) - 1] + std::log(static_cast<double>(i));

    std::vector<double> tpow(static_cast<std::size_t>(dim));
    tpow[0] = 1.0;
    for (int j = 1; j < dim; ++j) tpow[static_cast<std::size_t>(j)] = tpow[static_cast<std::size_t>(j) - 1] * t;

    ComplexMatrix k(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int l = 0; l <= j; ++l) {
            const double ratio = std::exp(0.5 * (log_fact[static_cast<std::size_t>(l)] - log_fact[static_cast<std::size_t>(j)]));
            const double lag = laguerre_assoc_eval(l, j - l, x);
            k(j, l) = pref * tpow[static_cast<std::size_t>(j)] * std::pow(mu, j - l) * ratio * lag;
            if (l != j)
                k(l, j) = pref * tpow[static_cast<std::size_t>(l)] * std::pow(nu, j - l) * ratio * lag;
        }
    }
    return k;
}

ReconstructionResult reconstruct_density(const TomogramSource& source, int modes,
                                         const ReconstructionConfig& cfg) {
    check_config(modes, cfg);
    if (modes > 2) throw ConfigInvalid("reconstruction: at most two modes supported");

    ReconstructionResult result;
    const int dim_per_mode = cfg.cutoff + 1;

    const auto [rad_nodes, rad_weights] = gauss_legendre_01(cfg.radial_nodes);
    const double dphi = 2.0 * std::numbers::pi / cfg.angular_nodes;

    // Per-mode polar nodes: alpha = center + rho e^{i phi}, weight rho drho dphi / pi.
    struct Node {
        complex<double> alpha;
        double weight;
    };
    std::vector<std::vector<Node>> mode_nodes(static_cast<std::size_t>(modes));
    for (int k = 0; k < modes; ++k) {
        const complex<double> center = cfg.center.empty() ? complex<double>(0.0) : cfg.center[static_cast<std::size_t>(k)];
        auto& nodes = mode_nodes[static_cast<std::size_t>(k)];
        nodes.reserve(static_cast<std::size_t>(cfg.radial_nodes) * cfg.angular_nodes);
        for (int i = 0; i < cfg.radial_nodes; ++i) {
            const double rho = rad_nodes[static_cast<std::size_t>(i)] * cfg.max_radius;
            const double wr = rad_weights[static_cast<std::size_t>(i)] * cfg.max_radius * rho;
            for (int j = 0; j < cfg.angular_nodes; ++j) {
                const double phi = dphi * j;
                nodes.push_back({center + std::polar(rho, phi), wr * dphi / std::numbers::pi});
            }
        }
    }

    // n-sum weights per mode: (2/(1-s)) q^n with q = (s+1)/(s-1)
    std::vector<std::vector<double>> nw(static_cast<std::size_t>(modes));
    std::vector<double> t_of(static_cast<std::size_t>(modes));
    std::vector<double> t_scale(static_cast<std::size_t>(modes));
    for (int k = 0; k < modes; ++k) {
        const double s = cfg.s_params(k);
        const double q = (s + 1.0) / (s - 1.0);
        t_of[static_cast<std::size_t>(k)] = (s - 1.0) / (s + 1.0);
        t_scale[static_cast<std::size_t>(k)] = 2.0 / (1.0 + s);
        auto& w = nw[static_cast<std::size_t>(k)];
        w.resize(static_cast<std::size_t>(cfg.n_max) + 1);
        double qn = 2.0 / (1.0 - s);
        for (int n = 0; n <= cfg.n_max; ++n) {
            w[static_cast<std::size_t>(n)] = qn;
            qn *= q;
        }
    }

    const Eigen::Index dim = modes == 1 ? dim_per_mode : dim_per_mode * dim_per_mode;
    ComplexMatrix raw = ComplexMatrix::Zero(dim, dim);

    if (modes == 1) {
        for (const Node& node : mode_nodes[0]) {
            DisplacementVector a(1);
            a(0) = node.alpha;
            double scalar = 0.0;
            for (int n = 0; n <= cfg.n_max; ++n)
                scalar += nw[0][static_cast<std::size_t>(n)] * source(MultiIndex{n}, a);
            const ComplexMatrix kern =
                t_scale[0] * displaced_ordering_kernel(node.alpha, t_of[0], cfg.cutoff);
            raw.noalias() += (node.weight * scalar) * kern;
        }
    } else {
        for (const Node& n1 : mode_nodes[0]) {
            const ComplexMatrix k1 =
                t_scale[0] * displaced_ordering_kernel(n1.alpha, t_of[0], cfg.cutoff);
            for (const Node& n2 : mode_nodes[1]) {
                DisplacementVector a(2);
                a(0) = n1.alpha;
                a(1) = n2.alpha;
                double scalar = 0.0;
                for (int i = 0; i <= cfg.n_max; ++i)
                    for (int j = 0; j <= cfg.n_max; ++j)
                        scalar += nw[0][static_cast<std::size_t>(i)] * nw[1][static_cast<std::size_t>(j)] *
                                  source(MultiIndex{i, j}, a);
                if (scalar == 0.0) continue;
                const ComplexMatrix k2 =
                    t_scale[1] * displaced_ordering_kernel(n2.alpha, t_of[1], cfg.cutoff);
                const double w = n1.weight * n2.weight * scalar;
                for (Eigen::Index r = 0; r < dim_per_mode; ++r)
                    for (Eigen::Index c = 0; c < dim_per_mode; ++c)
                        raw.block(r * dim_per_mode, c * dim_per_mode, dim_per_mode, dim_per_mode)
                            .noalias() += (w * k1(r, c)) * k2;
            }
        }
    }

    result.trace = raw.trace().real();
    result.hermiticity_residual = (raw - raw.adjoint().eval()).cwiseAbs().maxCoeff();
    result.rho.modes = modes;
    result.rho.cutoff = cfg.cutoff;
    result.rho.mat = 0.5 * (raw + raw.adjoint().eval());
    result.min_eigenvalue = min_eigenvalue(result.rho);
    return result;
}

ReconstructionResult reconstruct_from_state(const GaussianState& state,
                                            const ReconstructionConfig& config) {
    ReconstructionConfig cfg = config;
    if (cfg.center.empty()) {
        cfg.center.resize(static_cast<std::size_t>(state.modes()));
        for (int k = 0; k < state.modes(); ++k)
            cfg.center[static_cast<std::size_t>(k)] =
                -complex<double>(state.mean_q(k), state.mean_p(k)) / std::sqrt(2.0);
    }
    // One kernel and one recurrence table per alpha node.
    struct Cache {
        DisplacementVector alpha;
        std::vector<double> values;
    };
    Cache cache;
    const MultiIndex top(static_cast<std::size_t>(state.modes()), cfg.n_max);
    auto source = [&state, &cache, &top, &cfg](const MultiIndex& n,
                                               const DisplacementVector& a) -> double {
        if (cache.alpha.size() != a.size() || cache.alpha != a) {
            cache.alpha = a;
            cache.values = tomogram_batch_raw(state, top, a);
        }
        std::size_t flat = 0;
        for (int v : n) flat = flat * static_cast<std::size_t>(cfg.n_max + 1) + static_cast<std::size_t>(v);
        return cache.values[flat];
    };
    return reconstruct_density(source, state.modes(), cfg);
}

double roundtrip_residual(const GaussianState& state, const ReconstructionConfig& config) {
    const ReconstructionResult rec = reconstruct_from_state(state, config);
    const std::vector<complex<double>> probes = {
        {0.0, 0.0}, {0.5, 0.0}, {0.0, 0.3}, {-0.4, 0.2}, {0.2, -0.6},
    };
    double worst = 0.0;
    for (const auto& p : probes) {
        DisplacementVector a(state.modes());
        for (int k = 0; k < state.modes(); ++k) a(k) = p;
        for (int n = 0; n <= std::min(6, config.cutoff); ++n) {
            MultiIndex idx(static_cast<std::size_t>(state.modes()), 0);
            idx[0] = n;
            const double direct = tomogram_value(state, idx, a);
            const double from_rec = tomogram_from_fock(rec.rho, idx, a);
            worst = std::max(worst, std::abs(direct - from_rec));
        }
    }
    return worst;
}

}  // namespace pntomo
