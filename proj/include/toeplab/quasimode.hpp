#pragma once

#include <vector>

#include "toeplab/operators.hpp"
#include "toeplab/symbol.hpp"

namespace toeplab {

enum class DecaySide { decaying_right, decaying_left };

/// One exponential solution nu -> nu^power * root^nu of (p(tau) - z) u = 0.
struct ExpMode {
    Complex root;
    int power;
};

/// Basis of exponential solutions decaying to the right (roots inside the
/// unit disk) or to the left (roots outside). Total mode count is m_+
/// respectively m_-.
struct ExpSolutionBasis {
    Complex z;
    DecaySide side;
    std::vector<ExpMode> modes;
};

ExpSolutionBasis exp_solution_basis(const LaurentSymbol& sym, Complex z, DecaySide side);

/// Evaluate a mode at integer nu with the exponential part anchored at nu0:
/// nu^power * root^(nu - nu0). The anchor keeps samples within double range;
/// coefficient vectors must be used with matching anchors.
Complex eval_mode(const ExpMode& mode, int nu, int nu0);

/// Boundary matrix A of the right-decaying basis: rows nu = -N_+..-1,
/// columns the modes of exp_solution_basis(..., decaying_right), exponential
/// parts anchored at nu0 = -N_+. Shape N_+ x m_+; a null vector yields a
/// half-line kernel element. Throws RankDeficient when the numerical rank
/// falls below min(N_+, m_+).
DenseComplexMatrix boundary_matrix(const LaurentSymbol& sym, Complex z);

struct Quasimode {
    std::vector<Complex> vec;  // unit vector, length N (indices nu = 0..N-1)
    double residual;           // ||(P_N - z) vec||_2
};

/// Exponentially accurate quasimode for P_N - z. Requires the half-line index
/// m_+ - N_+ to be positive; throws WrongIndexSign otherwise. For the adjoint
/// case (m_- > N_-), call on adjoint_symbol(sym) with conj(z).
Quasimode build_quasimode(const OperatorSpec& spec, Complex z);

/// Symbol of p(tau)^*: b_j = conj(a_{-j}).
LaurentSymbol adjoint_symbol(const LaurentSymbol& sym);

/// Apply the band operator minus z to a finite window vector (zero-padded),
/// i.e. (P_N - z) u without materializing the matrix.
std::vector<Complex> apply_band_shifted(const LaurentSymbol& sym, Complex z,
                                        const std::vector<Complex>& u);

}  // namespace toeplab
