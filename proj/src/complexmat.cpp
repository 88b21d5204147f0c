#include "toeplab/complexmat.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace toeplab {

namespace {

using EMat = Eigen::MatrixXcd;
using EMap = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

EMat to_eigen(const DenseComplexMatrix& A) {
    return EMap(A.data().data(), static_cast<Eigen::Index>(A.rows()),
                static_cast<Eigen::Index>(A.cols()));
}

DenseComplexMatrix from_eigen(const EMat& M) {
    DenseComplexMatrix out(static_cast<std::size_t>(M.rows()), static_cast<std::size_t>(M.cols()));
    for (Eigen::Index r = 0; r < M.rows(); ++r)
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = M(r, c);
    return out;
}

}  // namespace

DenseComplexMatrix::DenseComplexMatrix(std::size_t nrows, std::size_t ncols,
                                       std::vector<Complex> entries)
    : rows_(nrows), cols_(ncols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw ShapeMismatch("entry count does not match nrows*ncols");
    if (!all_finite()) throw InvariantViolation("matrix entries must be finite");
}

DenseComplexMatrix DenseComplexMatrix::identity(std::size_t n) {
    DenseComplexMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = Complex(1.0, 0.0);
    return I;
}

DenseComplexMatrix DenseComplexMatrix::adjoint() const {
    DenseComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

DenseComplexMatrix DenseComplexMatrix::transpose() const {
    DenseComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

DenseComplexMatrix DenseComplexMatrix::operator+(const DenseComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatch("operator+: shape mismatch");
    DenseComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

DenseComplexMatrix DenseComplexMatrix::operator-(const DenseComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeMismatch("operator-: shape mismatch");
    DenseComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

DenseComplexMatrix DenseComplexMatrix::operator*(const DenseComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw ShapeMismatch("operator*: inner dimensions differ");
    EMat C = to_eigen(*this) * to_eigen(rhs);
    return from_eigen(C);
}

DenseComplexMatrix DenseComplexMatrix::operator*(Complex scalar) const {
    DenseComplexMatrix out = *this;
    for (auto& v : out.data_) v *= scalar;
    return out;
}

DenseComplexMatrix DenseComplexMatrix::shifted(Complex z) const {
    if (!square()) throw NonSquare("shifted: matrix must be square");
    DenseComplexMatrix out = *this;
    for (std::size_t i = 0; i < rows_; ++i) out(i, i) -= z;
    return out;
}

double DenseComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double DenseComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool DenseComplexMatrix::all_finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double lu_log_abs_det(const DenseComplexMatrix& A) {
    if (!A.square()) throw NonSquare("lu_log_abs_det: matrix must be square");
    if (A.rows() == 0) return 0.0;
    Eigen::PartialPivLU<EMat> lu(to_eigen(A));
    double acc = 0.0;
    const auto& U = lu.matrixLU();
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
        double piv = std::abs(U(i, i));
        if (piv == 0.0) return -std::numeric_limits<double>::infinity();
        acc += std::log(piv);
    }
    return acc;
}

DenseComplexMatrix solve(const DenseComplexMatrix& A, const DenseComplexMatrix& B) {
    if (!A.square()) throw NonSquare("solve: A must be square");
    if (A.rows() != B.rows()) throw ShapeMismatch("solve: A and B row counts differ");
    Eigen::PartialPivLU<EMat> lu(to_eigen(A));
    EMat X = lu.solve(to_eigen(B));
    return from_eigen(X);
}

std::vector<Complex> eigenvalues(const DenseComplexMatrix& A, std::size_t max_dim) {
    if (!A.square()) throw NonSquare("eigenvalues: matrix must be square");
    if (A.rows() > max_dim)
        throw DimensionLimit("eigenvalues: dimension exceeds configured max");
    if (A.rows() == 0) return {};
    Eigen::ComplexEigenSolver<EMat> es(to_eigen(A), /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NoConvergence("eigenvalues: QR iteration did not converge");
    std::vector<Complex> out(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) out[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
    return out;
}

double smallest_singular_value(const DenseComplexMatrix& A) {
    if (!A.square()) throw NonSquare("smallest_singular_value: matrix must be square");
    const std::size_t n = A.rows();
    if (n == 0) return 0.0;
    Eigen::PartialPivLU<EMat> lu(to_eigen(A));
    // Exactly singular pivot: s_min is 0 by contract.
    for (Eigen::Index i = 0; i < lu.matrixLU().rows(); ++i)
        if (std::abs(lu.matrixLU()(i, i)) == 0.0) return 0.0;

    // Inverse power iteration on A^*A: v <- (A^*A)^{-1} v = A^{-1} A^{-*} v.
    Eigen::VectorXcd v(n);
    for (std::size_t i = 0; i < n; ++i)
        v(static_cast<Eigen::Index>(i)) =
            Complex(std::cos(0.7 * static_cast<double>(i + 1)),
                    std::sin(1.3 * static_cast<double>(i + 1)));
    v.normalize();
    double est = 0.0;
    const int max_iter = 500;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXcd t = lu.adjoint().solve(v);
        Eigen::VectorXcd w = lu.solve(t);
        double lambda = w.norm();  // Rayleigh quotient of (A^*A)^{-1} at unit v
        if (!(lambda > 0.0) || !std::isfinite(lambda)) return 0.0;
        double next = 1.0 / std::sqrt(lambda);
        v = w / lambda;
        if (it > 0 && std::abs(next - est) <= 1e-8 * std::max(next, 1e-300)) return next;
        est = next;
    }
    throw NoConvergence("smallest_singular_value: inverse iteration stalled");
}

double operator_norm_estimate(const DenseComplexMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return 0.0;
    EMat M = to_eigen(A);
    Eigen::VectorXcd v(M.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Complex(std::cos(0.3 * static_cast<double>(i + 2)),
                       std::sin(0.9 * static_cast<double>(i + 2)));
    v.normalize();
    double est = 0.0;
    const int max_iter = 2000;
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXcd w = M.adjoint() * (M * v);
        double lambda = w.norm();
        if (lambda == 0.0) return 0.0;
        double next = std::sqrt(lambda);
        v = w / lambda;
        if (it > 0 && std::abs(next - est) <= 1e-6 * std::max(next, 1e-300)) return next;
        est = next;
    }
    // Stagnation not reached; est is still a certified lower bound.
    return est;
}

std::vector<double> singular_values(const DenseComplexMatrix& A) {
    if (A.rows() == 0 || A.cols() == 0) return {};
    Eigen::JacobiSVD<EMat> svd(to_eigen(A));
    std::vector<double> out(static_cast<std::size_t>(svd.singularValues().size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = svd.singularValues()(static_cast<Eigen::Index>(i));
    return out;
}

}  // namespace toeplab
