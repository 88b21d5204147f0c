#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "toeplab/errors.hpp"

namespace toeplab {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Value type: cheap to copy at desk scale,
/// immutable by convention once handed to an operation.
class DenseComplexMatrix {
public:
    DenseComplexMatrix() = default;
    DenseComplexMatrix(std::size_t nrows, std::size_t ncols)
        : rows_(nrows), cols_(ncols), data_(nrows * ncols, Complex(0.0, 0.0)) {}
    DenseComplexMatrix(std::size_t nrows, std::size_t ncols, std::vector<Complex> entries);

    static DenseComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    DenseComplexMatrix adjoint() const;
    DenseComplexMatrix transpose() const;

    DenseComplexMatrix operator+(const DenseComplexMatrix& rhs) const;
    DenseComplexMatrix operator-(const DenseComplexMatrix& rhs) const;
    DenseComplexMatrix operator*(const DenseComplexMatrix& rhs) const;
    DenseComplexMatrix operator*(Complex scalar) const;

    /// Subtract z from the diagonal (A - z*I).
    DenseComplexMatrix shifted(Complex z) const;

    double frobenius_norm() const;
    double max_abs() const;

    /// All entries finite (no NaN/inf).
    bool all_finite() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> data_;
};

/// log|det A| from partial-pivoted LU; -inf when a pivot is exactly zero.
/// Throws NonSquare.
double lu_log_abs_det(const DenseComplexMatrix& A);

/// Solve A X = B (square A, LU with partial pivoting). Throws NonSquare,
/// ShapeMismatch.
DenseComplexMatrix solve(const DenseComplexMatrix& A, const DenseComplexMatrix& B);

/// Full spectrum (unordered, with multiplicity), Hessenberg + shifted QR.
/// Throws NonSquare, DimensionLimit (n > max_dim), NoConvergence (the QR
/// iteration budget is surfaced, never silently truncated).
std::vector<Complex> eigenvalues(const DenseComplexMatrix& A, std::size_t max_dim = 2048);

/// Smallest singular value via inverse power iteration on A^*A driven by
/// repeated LU solves of A and A^*; relative tolerance 1e-8. Returns 0 when
/// LU detects exact singularity. Throws NonSquare, NoConvergence.
double smallest_singular_value(const DenseComplexMatrix& A);

/// Operator (spectral) norm lower bound by power iteration, certified within
/// 1e-6 relative by iteration stagnation.
double operator_norm_estimate(const DenseComplexMatrix& A);

/// All singular values, descending (direct SVD).
std::vector<double> singular_values(const DenseComplexMatrix& A);

}  // namespace toeplab
