#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "toeplab/errors.hpp"

namespace toeplab {

using Complex = std::complex<double>;

/// Laurent symbol p(t) = sum_{j=-N_-}^{N_+} a_j t^j with nonzero extreme
/// coefficients. The band limits N_+/N_- are derived minimally from the
/// nonzero support; at least one of them must be positive.
class LaurentSymbol {
public:
    explicit LaurentSymbol(std::map<int, Complex> coeffs);

    const std::map<int, Complex>& coeffs() const { return coeffs_; }
    Complex coeff(int j) const {
        auto it = coeffs_.find(j);
        return it == coeffs_.end() ? Complex(0.0, 0.0) : it->second;
    }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    /// Band width M = N_+ + N_- (degree of the characteristic polynomial).
    int band_width() const { return n_plus_ + n_minus_; }

    bool operator==(const LaurentSymbol& rhs) const { return coeffs_ == rhs.coeffs_; }

private:
    std::map<int, Complex> coeffs_;
    int n_plus_ = 0;
    int n_minus_ = 0;
};

/// Roots of the characteristic polynomial at spectral parameter z, split by
/// modulus against the unit circle. Multiplicities come from clustering.
struct RootSplit {
    Complex z;
    std::vector<std::pair<Complex, int>> inside;   // |root| < 1
    std::vector<std::pair<Complex, int>> outside;  // |root| > 1
    int m_plus = 0;   // total multiplicity inside
    int m_minus = 0;  // total multiplicity outside
};

/// Curve point f(theta) = sum_j a_j e^{i j theta}; 2*pi periodic, and
/// {f(theta)} is the symbol curve. Orientation is fixed so that the winding
/// number of f around z equals N_+ - m_+.
Complex eval_curve(const LaurentSymbol& sym, double theta);

/// Derivative d/dtheta of eval_curve.
Complex eval_curve_derivative(const LaurentSymbol& sym, double theta);

/// Ascending coefficients (degree N_+ + N_-) of the characteristic polynomial
///   sum_{j=0}^{M} a_{N_+ - j} zeta^j  -  z zeta^{N_+}.
/// Throws DegenerateParameter for z = 0, or z = a_0 when N_+ or N_- is 0.
std::vector<Complex> characteristic_coeffs(const LaurentSymbol& sym, Complex z);

/// All roots of a complex polynomial (ascending coefficients) by
/// Aberth-Ehrlich simultaneous iteration. tol 1e-13, max 500 iterations.
/// Throws NonConvergence.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending_coeffs);

/// Root split at z. Roots are clustered at cluster_tol = 1e-7 to assign
/// multiplicities. Throws RootsOnCircle when any cluster representative has
/// ||zeta| - 1| <= circle_tol, plus anything characteristic_coeffs throws.
RootSplit roots_split(const LaurentSymbol& sym, Complex z, double circle_tol = 1e-9);

/// Winding number of the symbol curve around z by adaptive discrete argument
/// tracking; orientation satisfies wind(z) = N_+ - m_+. Self-checks against
/// roots_split unless TOEPLAB_NO_SELF_CHECK is defined.
/// Throws OnCurve, RefinementExhausted.
int winding_number(const LaurentSymbol& sym, Complex z);

/// Fredholm index of the half-line operator: m_+ - N_+ = -winding.
int fredholm_index(const LaurentSymbol& sym, Complex z);

/// Precomputed curve samples for fast repeated distance queries.
class CurveSampler {
public:
    explicit CurveSampler(const LaurentSymbol& sym, int grid = 8192);
    /// (distance, argmin theta) of min_theta |z - f(theta)|; grid scan plus
    /// golden-section refinement of the best bracket down to 1e-10 in theta.
    std::pair<double, double> nearest(Complex z) const;

private:
    const LaurentSymbol sym_;
    std::vector<Complex> samples_;
    double step_;
};

/// One-shot global distance to the symbol curve: (distance, theta_star).
std::pair<double, double> dist_to_curve(const LaurentSymbol& sym, Complex z, int grid = 8192);

}  // namespace toeplab
