#include "pntomo/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pntomo {

using std::complex;

int total_degree(const MultiIndex& n) {
    int sum = 0;
    for (int v : n) {
        if (v < 0) throw std::invalid_argument("MultiIndex: negative photon number");
        sum += v;
    }
    return sum;
}

HermiteParams::HermiteParams(ComplexMatrix R_in, ComplexVector z_in)
    : R(std::move(R_in)), z(std::move(z_in)) {
    if (R.rows() != R.cols()) throw DimensionMismatch("HermiteParams: R must be square");
    if (R.rows() != z.size()) throw DimensionMismatch("HermiteParams: R and z dimensions differ");
    if (R.size() > 0) {
        double asym = (R - R.transpose().eval()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * std::max(1.0, R.cwiseAbs().maxCoeff()))
            throw std::invalid_argument("HermiteParams: R not symmetric");
        R = 0.5 * (R + R.transpose().eval());
    }
}

HermiteParams HermiteParams::from_y(const ComplexMatrix& R, const ComplexVector& y) {
    if (R.rows() != R.cols() || R.rows() != y.size())
        throw DimensionMismatch("HermiteParams::from_y: dimensions differ");
    return HermiteParams(R, R * y);
}

HermiteTable::HermiteTable(const HermiteParams& params, const MultiIndex& top, int degree_cap) {
    const auto dims = static_cast<std::size_t>(params.dim());
    if (top.size() != dims) throw DimensionMismatch("HermiteTable: index length != params dim");
    if (total_degree(top) > degree_cap)
        throw DegreeCapExceeded("HermiteTable: total degree " + std::to_string(total_degree(top)) +
                                " exceeds cap " + std::to_string(degree_cap));

    top_ = top;
    stride_.assign(dims, 1);
    std::size_t total = 1;
    for (std::size_t k = dims; k-- > 0;) {
        stride_[k] = total;
        total *= static_cast<std::size_t>(top[k] + 1);
    }
    h_.assign(total, complex<double>(0.0, 0.0));

    const ComplexMatrix& R = params.R;
    const ComplexVector& z = params.z;

    std::vector<int> idx(dims, 0);
    h_[0] = complex<double>(1.0, 0.0);
    for (std::size_t flat = 1; flat < total; ++flat) {
        // odometer increment, row-major: every predecessor index is already filled
        for (std::size_t k = dims; k-- > 0;) {
            if (idx[k] < top_[k]) {
                ++idx[k];
                break;
            }
            idx[k] = 0;
        }
        // pivot on the first nonzero component: H_idx = H_{m + e_j} with m = idx - e_j
        std::size_t j = 0;
        while (idx[j] == 0) ++j;
        const std::size_t base = flat - stride_[j];  // flat index of m
        complex<double> val = z(static_cast<Eigen::Index>(j)) * h_[base];
        for (std::size_t k = 0; k < dims; ++k) {
            int mk = idx[k] - (k == j ? 1 : 0);  // m_k
            if (mk == 0) continue;
            val -= R(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) *
                   static_cast<double>(mk) * h_[base - stride_[k]];
        }
        h_[flat] = val;
    }
}

complex<double> HermiteTable::value(const MultiIndex& m) const {
    if (m.size() != top_.size()) throw DimensionMismatch("HermiteTable::value: index length");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] < 0 || m[k] > top_[k])
            throw std::out_of_range("HermiteTable::value: index outside table");
        flat += static_cast<std::size_t>(m[k]) * stride_[k];
    }
    return h_[flat];
}

complex<double> hermite_eval(const HermiteParams& params, const MultiIndex& n, int degree_cap) {
    return HermiteTable(params, n, degree_cap).value(n);
}

complex<double> hermite_physicists(int n, complex<double> x) {
    if (n < 0) throw std::invalid_argument("hermite_physicists: negative order");
    complex<double> hm1(1.0, 0.0);  // H_0
    if (n == 0) return hm1;
    complex<double> h = 2.0 * x;  // H_1
    for (int k = 1; k < n; ++k) {
        complex<double> next = 2.0 * x * h - 2.0 * static_cast<double>(k) * hm1;
        hm1 = h;
        h = next;
    }
    return h;
}

namespace {

// Points per ring: enough to alias only terms radius^points smaller.
constexpr int kRingMargin = 26;

}  // namespace

HermiteSeriesOracle::HermiteSeriesOracle(const ComplexMatrix& R, const ComplexVector& y,
                                         const MultiIndex& top, double radius)
    : top_(top), radius_(radius) {
    const auto dims = static_cast<std::size_t>(R.rows());
    if (R.rows() != R.cols() || R.rows() != y.size())
        throw DimensionMismatch("HermiteSeriesOracle: dimensions differ");
    if (top.size() != dims) throw DimensionMismatch("HermiteSeriesOracle: index length");
    if (radius <= 0.0 || radius >= 1.0)
        throw std::invalid_argument("HermiteSeriesOracle: radius must be in (0, 1)");

    int top_max = 0;
    for (int t : top) top_max = std::max(top_max, t);
    const int m = top_max + 1 + kRingMargin;
    points_per_axis_ = m;

    stride_.assign(dims, 1);
    std::size_t total = 1;
    for (std::size_t k = dims; k-- > 0;) {
        stride_[k] = total;
        total *= static_cast<std::size_t>(m);
    }

    // Ring nodes x_t = radius * exp(2*pi*i*t/m), shared by all axes.
    std::vector<complex<double>> node(m);
    for (int t = 0; t < m; ++t) {
        double ang = 2.0 * std::numbers::pi * t / m;
        node[t] = radius * complex<double>(std::cos(ang), std::sin(ang));
    }

    // G(x) factorizes into per-axis and per-pair exponentials; tabulate those
    // once instead of calling exp at every grid point.
    const ComplexVector w = R * y;
    std::vector<std::vector<complex<double>>> axis(dims, std::vector<complex<double>>(m));
    for (std::size_t j = 0; j < dims; ++j) {
        auto ej = static_cast<Eigen::Index>(j);
        for (int t = 0; t < m; ++t)
            axis[j][t] = std::exp(w(ej) * node[t] - 0.5 * R(ej, ej) * node[t] * node[t]);
    }
    std::vector<std::vector<complex<double>>> pair(dims * dims);
    for (std::size_t a = 0; a < dims; ++a) {
        for (std::size_t b = a + 1; b < dims; ++b) {
            auto& tab = pair[a * dims + b];
            tab.resize(static_cast<std::size_t>(m) * m);
            auto ea = static_cast<Eigen::Index>(a);
            auto eb = static_cast<Eigen::Index>(b);
            for (int s = 0; s < m; ++s)
                for (int t = 0; t < m; ++t)
                    tab[static_cast<std::size_t>(s) * m + t] = std::exp(-R(ea, eb) * node[s] * node[t]);
        }
    }

    std::vector<complex<double>> grid(total);
    std::vector<int> idx(dims, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        complex<double> g(1.0, 0.0);
        for (std::size_t a = 0; a < dims; ++a) {
            g *= axis[a][static_cast<std::size_t>(idx[a])];
            for (std::size_t b = a + 1; b < dims; ++b)
                g *= pair[a * dims + b][static_cast<std::size_t>(idx[a]) * m + idx[b]];
        }
        grid[flat] = g;
        for (std::size_t k = dims; k-- > 0;) {
            if (++idx[k] < m) break;
            idx[k] = 0;
        }
    }

    // Inverse DFT along each axis in turn: matrix W with W(n,t) = exp(-2*pi*i*n*t/m)/m
    // applied to the axis slabs. Afterwards grid holds c_n * radius^{|n|}.
    ComplexMatrix dft(m, m);
    for (int n = 0; n < m; ++n)
        for (int t = 0; t < m; ++t) {
            double ang = -2.0 * std::numbers::pi * n * t / m;
            dft(n, t) = complex<double>(std::cos(ang), std::sin(ang)) / static_cast<double>(m);
        }

    std::vector<complex<double>> scratch(total);
    for (std::size_t a = 0; a < dims; ++a) {
        const std::size_t inner = stride_[a];               // contiguous run below axis a
        const std::size_t outer = total / (inner * m);      // slabs above axis a
        for (std::size_t o = 0; o < outer; ++o) {
            const std::size_t base = o * m * inner;
            for (std::size_t in = 0; in < inner; ++in) {
                for (int n = 0; n < m; ++n) {
                    complex<double> acc(0.0, 0.0);
                    for (int t = 0; t < m; ++t)
                        acc += dft(n, t) * grid[base + static_cast<std::size_t>(t) * inner + in];
                    scratch[base + static_cast<std::size_t>(n) * inner + in] = acc;
                }
            }
        }
        grid.swap(scratch);
    }
    taylor_ = std::move(grid);
}

complex<double> HermiteSeriesOracle::coeff(const MultiIndex& n) const {
    if (n.size() != top_.size()) throw DimensionMismatch("HermiteSeriesOracle::coeff: index length");
    std::size_t flat = 0;
    double fact = 1.0;
    int degree = 0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] < 0 || n[k] > top_[k])
            throw std::out_of_range("HermiteSeriesOracle::coeff: index outside sampled range");
        flat += static_cast<std::size_t>(n[k]) * stride_[k];
        for (int j = 2; j <= n[k]; ++j) fact *= j;
        degree += n[k];
    }
    return taylor_[flat] * fact / std::pow(radius_, degree);
}

complex<double> hermite_series_oracle(const ComplexMatrix& R, const ComplexVector& y,
                                      const MultiIndex& n, double radius) {
    if (total_degree(n) > 6)
        throw DegreeCapExceeded("hermite_series_oracle: |n| > 6 not supported");
    return HermiteSeriesOracle(R, y, n, radius).coeff(n);
}

}  // namespace pntomo
