#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "pntomo/errors.hpp"

namespace pntomo {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Pivots below this signal a degenerate matrix. Pure-state covariances sit
/// exactly on this boundary (E - 2*sigma is singular there), so callers route
/// the coherent limit separately instead of inverting garbage.
inline constexpr double kSingularPivot = 1e-13;

/// Max allowed deviation from M = M^dagger before eigenvalue extraction.
inline constexpr double kHermitianTol = 1e-10;

/// Real symmetric matrix. Construction symmetrizes, so entries(i,j) and
/// entries(j,i) compare equal exactly afterwards.
class RealSymMatrix {
public:
    explicit RealSymMatrix(const Eigen::MatrixXd& m) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw DimensionMismatch("RealSymMatrix: matrix must be square and non-empty");
        m_ = 0.5 * (m + m.transpose().eval());
    }

    static RealSymMatrix identity(Eigen::Index n) {
        return RealSymMatrix(Eigen::MatrixXd::Identity(n, n));
    }

    Eigen::Index dim() const { return m_.rows(); }
    const Eigen::MatrixXd& mat() const { return m_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    Eigen::MatrixXd m_;
};

namespace detail {

template <class Mat>
void check_pivots(const Mat& lu_packed) {
    for (Eigen::Index i = 0; i < lu_packed.rows(); ++i) {
        if (std::abs(lu_packed(i, i)) < kSingularPivot)
            throw SingularMatrix("invert: pivot below 1e-13, matrix numerically singular");
    }
}

}  // namespace detail

/// Inverse through partially pivoted LU. Throws SingularMatrix when any pivot
/// magnitude drops below kSingularPivot.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
invert(const Eigen::MatrixBase<Derived>& m) {
    using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (m.rows() != m.cols()) throw DimensionMismatch("invert: matrix must be square");
    Eigen::PartialPivLU<Mat> lu(m.derived());
    detail::check_pivots(lu.matrixLU());
    return lu.inverse();
}

inline Eigen::MatrixXd invert(const RealSymMatrix& m) { return invert(m.mat()); }

/// Determinant through the same pivoted elimination. Zero is a valid result.
template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
    using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant: matrix must be square");
    Eigen::PartialPivLU<Mat> lu(m.derived());
    return lu.determinant();
}

inline double determinant(const RealSymMatrix& m) { return determinant(m.mat()); }

/// Ascending real eigenvalues of a Hermitian (or real symmetric) matrix.
template <class Scalar>
Eigen::VectorXd hermitian_eigenvalues(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("hermitian_eigenvalues: matrix must be square");
    double dev = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol)
        throw NotHermitian("hermitian_eigenvalues: ||M - M^dagger||_max = " + std::to_string(dev));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(
        m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// Eigenvalues plus eigenvectors, same contract as hermitian_eigenvalues.
template <class Scalar>
std::pair<Eigen::VectorXd, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>
hermitian_eigensystem(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("hermitian_eigensystem: matrix must be square");
    double dev = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol)
        throw NotHermitian("hermitian_eigensystem: ||M - M^dagger||_max = " + std::to_string(dev));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> es(m);
    return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace pntomo
