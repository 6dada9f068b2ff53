// linalg.hpp: Small dense helpers shared by the dynamics and gate code

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace squidcouple {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Unitary4 = Eigen::Matrix4cd;

namespace pauli {
inline Matrix2c identity() { return Matrix2c::Identity(); }
inline Matrix2c x() { Matrix2c m; m << 0, 1, 1, 0; return m; }
inline Matrix2c y() { Matrix2c m; m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
inline Matrix2c z() { Matrix2c m; m << 1, 0, 0, -1; return m; }
}  // namespace pauli

/// Kronecker product with the left factor acting on qubit 1.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, 4, 4> kron(const Eigen::MatrixBase<DerivedA>& a,
                                                    const Eigen::MatrixBase<DerivedB>& b)
{
    Eigen::Matrix<typename DerivedA::Scalar, 4, 4> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

/// exp(-i * theta * H) for Hermitian H via eigendecomposition.
template <typename Derived>
auto expi_hermitian(const Eigen::MatrixBase<Derived>& H, double theta)
{
    using Mat = Eigen::Matrix<cplx, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    Eigen::SelfAdjointEigenSolver<Mat> es(H.derived());
    const auto& V = es.eigenvectors();
    const auto phases = (es.eigenvalues().array() * (-theta))
                            .unaryExpr([](double p) { return std::polar(1.0, p); })
                            .matrix();
    Mat out = V * phases.asDiagonal() * V.adjoint();
    return out;
}

/// exp(-i * theta * H) by a Taylor series summed to double precision. Only
/// for small steps: falls back to the eigendecomposition when the induced
/// infinity norm of theta * H exceeds 0.5. Real symmetric H (no sigma_y
/// terms) takes a faster path through cos and sin of a real matrix.
template <typename Derived>
auto expi_small(const Eigen::MatrixBase<Derived>& H, double theta)
{
    using Mat = Eigen::Matrix<cplx, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    using RMat = Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    const double norm = std::abs(theta) * H.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm > 0.5) return Mat(expi_hermitian(H, theta));
    int order = 1;
    for (double term = norm; term > 1e-18 && order < 30; term *= norm / (order + 1)) ++order;

    if (H.imag().isZero(0.0)) {
        const RMat A = theta * H.real();
        const RMat A2 = A * A;
        const RMat I = RMat::Identity(H.rows(), H.cols());
        RMat C = I, S = I;
        for (int k = order / 2 + 1; k >= 1; --k) {
            C = I - (A2 * C) / double((2 * k) * (2 * k - 1));
            S = I - (A2 * S) / double((2 * k + 1) * (2 * k));
        }
        Mat out(H.rows(), H.cols());
        out.real() = C;
        out.imag() = -(A * S);
        return out;
    }
    const Mat X = cplx(0.0, -theta) * H.derived();
    Mat out = Mat::Identity(H.rows(), H.cols());
    for (int k = order; k >= 1; --k) out = Mat::Identity(H.rows(), H.cols()) + (X * out) / double(k);
    return out;
}

/// Max-element norm of U^dagger U - I.
template <typename Derived>
double unitarity_defect(const Eigen::MatrixBase<Derived>& U)
{
    const auto n = U.rows();
    return (U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// Nearest unitary (polar factor).
template <typename Derived>
auto polar_unitary(const Eigen::MatrixBase<Derived>& U)
{
    using Mat = Eigen::Matrix<cplx, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    Eigen::JacobiSVD<Mat> svd(U.derived(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat out = svd.matrixU() * svd.matrixV().adjoint();
    return out;
}

}  // namespace squidcouple
