#pragma once

#include <complex>
#include <vector>

#include "pntomo/matrix.hpp"

namespace pntomo {

/// Photon numbers per mode (all entries >= 0).
using MultiIndex = std::vector<int>;

/// Total degree cap for polynomial evaluation; configurable per call.
inline constexpr int kDefaultDegreeCap = 64;

/// Sum of the entries. Throws std::invalid_argument on a negative entry.
int total_degree(const MultiIndex& n);

/// Parameters of a multivariable Hermite polynomial family.
///
/// The family is generated by exp(-x R x^T / 2 + y R x^T); the polynomials
/// depend on y only through z = R y and on R itself, which is why z is stored.
/// In the pure coherent limit R -> 0 with y diverging, z stays finite, so this
/// parameterization survives where (R, y) does not.
struct HermiteParams {
    ComplexMatrix R;  ///< symmetric M x M
    ComplexVector z;  ///< = R * y

    /// Checks shapes and symmetry of R to 1e-12, then symmetrizes exactly.
    HermiteParams(ComplexMatrix R_in, ComplexVector z_in);

    static HermiteParams from_y(const ComplexMatrix& R, const ComplexVector& y);

    Eigen::Index dim() const { return z.size(); }
};

/// Dynamic-programming table of H_m for every m <= top componentwise.
///
/// Fill order is row-major over the sub-index lattice; each entry uses the
/// recurrence H_{m+e_j} = z_j H_m - sum_k R_{jk} m_k H_{m-e_k} seeded with
/// H_0 = 1. The table is operation-local, so evaluation is reentrant.
class HermiteTable {
public:
    HermiteTable(const HermiteParams& params, const MultiIndex& top,
                 int degree_cap = kDefaultDegreeCap);

    /// H_m for m <= top componentwise.
    std::complex<double> value(const MultiIndex& m) const;

private:
    std::vector<int> top_;
    std::vector<std::size_t> stride_;
    std::vector<std::complex<double>> h_;
};

/// H^{R}_n(y) with z = R y given through params.
std::complex<double> hermite_eval(const HermiteParams& params, const MultiIndex& n,
                                  int degree_cap = kDefaultDegreeCap);

/// One-variable physicists' Hermite polynomial H_n(x), complex argument.
std::complex<double> hermite_physicists(int n, std::complex<double> x);

/// Test oracle: extracts H_n directly from the generating function as a
/// Taylor coefficient, by sampling exp(-x R x^T / 2 + y R x^T) on polydisc
/// rings of the given radius and discrete-Fourier transforming each axis.
/// Independent of the recurrence path above by construction.
class HermiteSeriesOracle {
public:
    /// Samples enough points for every index m <= top componentwise.
    HermiteSeriesOracle(const ComplexMatrix& R, const ComplexVector& y, const MultiIndex& top,
                        double radius = 0.5);

    std::complex<double> coeff(const MultiIndex& n) const;

private:
    std::vector<int> top_;
    std::vector<std::size_t> stride_;
    int points_per_axis_;
    double radius_;
    std::vector<std::complex<double>> taylor_;  // c_n = H_n / n!
};

/// Single-coefficient convenience wrapper around HermiteSeriesOracle.
/// Restricted to |n| <= 6; finite sampling accuracy degrades beyond that.
std::complex<double> hermite_series_oracle(const ComplexMatrix& R, const ComplexVector& y,
                                           const MultiIndex& n, double radius = 0.5);

}  // namespace pntomo
