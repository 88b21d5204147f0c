#pragma once

#include <utility>
#include <vector>

#include "toeplab/complexmat.hpp"
#include "toeplab/domains.hpp"
#include "toeplab/symbol.hpp"

namespace toeplab {

/// Dimensions for the finite sections of p(tau): the N x N Toeplitz matrix
/// and the companion circulant on Z/(N + N_+ + N_-)Z.
class OperatorSpec {
public:
    OperatorSpec(LaurentSymbol sym, int n)
        : symbol_(std::move(sym)), n_(n) {
        if (n_ < symbol_.band_width() + 1)
            throw InvariantViolation("OperatorSpec requires N >= N_+ + N_- + 1");
    }

    const LaurentSymbol& symbol() const { return symbol_; }
    int n() const { return n_; }
    /// Circulant dimension N~ = N + N_+ + N_-.
    int n_tilde() const { return n_ + symbol_.band_width(); }
    /// |J| = N_+ + N_-: size of the border block.
    int j_size() const { return symbol_.band_width(); }

private:
    LaurentSymbol symbol_;
    int n_;
};

/// N x N Toeplitz band matrix: entry (r, c) = a_{r-c} on the band
/// -N_- <= r-c <= N_+ (positive j below the diagonal).
DenseComplexMatrix build_toeplitz(const OperatorSpec& spec);

/// N~ x N~ circulant: entry (r, c) = a_j where j = r-c (mod N~) within the
/// band. Throws Overlap when N~ <= N_+ + N_-.
DenseComplexMatrix build_circulant(const OperatorSpec& spec);

/// Closed-form circulant spectrum lambda_k = sum_j a_j w^{-jk}, w =
/// e^{2 pi i / N~}, k = 0..N~-1. Equals {eval_curve(-2 pi k / N~)}.
std::vector<Complex> circulant_spectrum(const OperatorSpec& spec);

/// sum_k log|lambda_k - z| over the circulant spectrum.
double log_abs_det_circulant(const OperatorSpec& spec, Complex z);

/// Resolvent kernel on Z: K(z;k) = (1/2 pi i) contour integral of
/// zeta^{k-1} / (p(1/zeta) - z). Uses the simple-root residue formula when
/// all characteristic roots are simple and |k| >= 1, and trapezoidal contour
/// quadrature (on a circle between the extreme root moduli, with node
/// doubling to 1e-11) otherwise. Throws OnCurve, QuadratureStall.
Complex kernel_K_infinity(const LaurentSymbol& sym, Complex z, int k);

/// Periodized kernel on Z/N~Z, evaluated as the discrete Fourier sum
/// (1/N~) sum_k e^{2 pi i k nu / N~} / (lambda_k - z). Cross-checked against
/// the truncated periodization of K_infinity unless TOEPLAB_NO_SELF_CHECK.
/// Throws OnSpectrum.
Complex kernel_K_N(const OperatorSpec& spec, Complex z, int nu);

/// All N~ kernel values K_N(z; m), m = 0..N~-1 (Fourier route).
std::vector<Complex> kernel_K_N_table(const OperatorSpec& spec, Complex z);

/// (#{lambda_k in region}, (N / 2 pi) * preimage_measure).
std::pair<int, double> circulant_weyl_count(const OperatorSpec& spec, const Region& region);

/// Per-segment minimal spacing of circulant eigenvalues near a curve point.
struct SpacingSegment {
    double theta_star;            // preimage of z0 on this segment
    int eigen_count;              // eigenvalues of the segment inside the disk
    double min_gap;               // min consecutive |lambda - lambda'|
    double gap_times_n;           // min_gap * N~
};

/// For each preimage theta* of z0 (a point on the curve), the minimum pairwise
/// gap of circulant eigenvalues on the curve segment through D(z0, radius).
/// Throws DegenerateCriticalPoint when |f'(theta*)| <= deriv_tol at some
/// preimage, PreconditionViolated when z0 is not on the curve.
std::vector<SpacingSegment> eigenvalue_spacing_check(const OperatorSpec& spec, Complex z0,
                                                     double neighborhood_radius,
                                                     double deriv_tol = 1e-8);

}  // namespace toeplab
