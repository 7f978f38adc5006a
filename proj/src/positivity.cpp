#include "pntomo/positivity.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace pntomo {

namespace {

std::string describe_scan(int n_max, const AlphaGridSpec& g, double tol) {
    std::ostringstream os;
    os << "|n| <= " << n_max << ", alpha in [" << g.box_min << ", " << g.box_max << "]^2 per mode, "
       << g.resolution << "x" << g.resolution << " nodes, tolerance " << tol;
    return os.str();
}

std::vector<double> grid_values(const AlphaGridSpec& g) {
    std::vector<double> v(static_cast<std::size_t>(g.resolution));
    if (g.resolution == 1) {
        v[0] = 0.5 * (g.box_min + g.box_max);
        return v;
    }
    const double step = (g.box_max - g.box_min) / (g.resolution - 1);
    for (int i = 0; i < g.resolution; ++i) v[static_cast<std::size_t>(i)] = g.box_min + step * i;
    return v;
}

/// All alpha points of the per-mode product grid, lexicographic in
/// (Re a_1, Im a_1, Re a_2, ...).
std::vector<DisplacementVector> alpha_points(int modes, const AlphaGridSpec& g) {
    const auto line = grid_values(g);
    const std::size_t per_mode = line.size() * line.size();
    std::size_t total = 1;
    for (int k = 0; k < modes; ++k) total *= per_mode;
    std::vector<DisplacementVector> out;
    out.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        DisplacementVector a(modes);
        std::size_t rem = flat;
        for (int k = modes - 1; k >= 0; --k) {
            const std::size_t cell = rem % per_mode;
            rem /= per_mode;
            a(k) = std::complex<double>(line[cell / line.size()], line[cell % line.size()]);
        }
        out.push_back(std::move(a));
    }
    return out;
}

/// Multi-indices with total degree <= n_max, lexicographic.
std::vector<MultiIndex> index_set(int modes, int n_max) {
    std::vector<MultiIndex> out;
    MultiIndex n(static_cast<std::size_t>(modes), 0);
    std::function<void(int, int)> rec = [&](int k, int left) {
        if (k == modes) {
            out.push_back(n);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            n[static_cast<std::size_t>(k)] = v;
            rec(k + 1, left - v);
        }
        n[static_cast<std::size_t>(k)] = 0;
    };
    rec(0, n_max);
    return out;
}

using BatchEval = std::function<std::vector<double>(const MultiIndex& top,
                                                    const DisplacementVector& alpha)>;

PositivityReport run_scan(const GaussianState& state, int n_max, const AlphaGridSpec& alpha_grid,
                          double tolerance, const BatchEval& batch) {
    const int modes = state.modes();
    const auto indices = index_set(modes, n_max);
    const MultiIndex top(static_cast<std::size_t>(modes), n_max);

    // flat position of n inside the row-major (n_max+1)^modes batch
    auto flat_of = [&](const MultiIndex& n) {
        std::size_t flat = 0;
        for (int v : n) flat = flat * static_cast<std::size_t>(n_max + 1) + static_cast<std::size_t>(v);
        return flat;
    };

    PositivityReport rep;
    rep.scan_spec = describe_scan(n_max, alpha_grid, tolerance);
    const auto points = alpha_points(modes, alpha_grid);
    std::vector<std::vector<double>> per_point(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) per_point[i] = batch(top, points[i]);

    for (const auto& n : indices) {
        const std::size_t flat = flat_of(n);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double omega = per_point[i][flat];
            if (omega < -tolerance) rep.negative_witnesses.push_back({n, points[i], omega});
        }
    }
    rep.verdict = rep.negative_witnesses.empty() ? ScanVerdict::PassedAllScans
                                                 : ScanVerdict::NegativeWitnessFound;
    rep.overall_positive = rep.negative_witnesses.empty();
    if (!rep.overall_positive) {
        std::ostringstream os;
        os << "tomogram negativity at n = (";
        for (std::size_t k = 0; k < rep.negative_witnesses.front().n.size(); ++k)
            os << (k ? "," : "") << rep.negative_witnesses.front().n[k];
        os << ")";
        rep.first_failure = os.str();
    }
    return rep;
}

}  // namespace

PositivityReport scan_tomogram_negativity(const GaussianState& state, int n_max,
                                          const AlphaGridSpec& alpha_grid, double tolerance) {
    return run_scan(state, n_max, alpha_grid, tolerance,
                    [&](const MultiIndex& top, const DisplacementVector& a) {
                        return tomogram_batch_raw(state, top, a);
                    });
}

PositivityReport gaussian_positivity_report(const GaussianState& state, const ScanSpec& spec) {
    PositivityReport rep =
        scan_tomogram_negativity(state, spec.n_max, spec.alpha, spec.tolerance);
    const ValidityReport checks = validate(state);
    rep.uncertainty_checks = checks;

    std::string uncertainty_failure;
    for (std::size_t k = 0; k < checks.passes_per_mode.size(); ++k) {
        if (!checks.passes_per_mode[k]) {
            uncertainty_failure = "mode " + std::to_string(k + 1) + " determinant below 1/4";
            break;
        }
    }
    if (uncertainty_failure.empty() && !checks.passes_full)
        uncertainty_failure = "full covariance determinant below (1/4)^N";

    if (!uncertainty_failure.empty()) {
        rep.overall_positive = false;
        rep.first_failure = uncertainty_failure;  // uncertainty checks come first in the chain
    }
    return rep;
}

PositivityReport wigner_admissibility_check(const GaussianState& state, int n_max,
                                            const AlphaGridSpec& alpha_grid, double tolerance,
                                            const QuadratureGrid& grid) {
    if (state.modes() > 2)
        throw DimensionMismatch("wigner_admissibility_check: at most two modes supported");
    return run_scan(state, n_max, alpha_grid, tolerance,
                    [&](const MultiIndex& top, const DisplacementVector& a) {
                        return tomogram_batch_by_quadrature(state, top, a, grid);
                    });
}

}  // namespace pntomo
