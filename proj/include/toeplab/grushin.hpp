#pragma once

#include <utility>
#include <vector>

#include "toeplab/complexmat.hpp"
#include "toeplab/operators.hpp"

namespace toeplab {

/// The circulant minus z, written out in the I_N/J block split. Row/column
/// order: I_N = [N_+, N_+ + N - 1], then J = [-N_-, N_+ - 1] (both as
/// residues mod N~, J mapped to 0..|J|-1 in that order).
struct GrushinProblem {
    DenseComplexMatrix p_block;       // P_{I_N} - z, N x N
    DenseComplexMatrix r_minus;       // N x |J|
    DenseComplexMatrix r_plus;        // |J| x N
    DenseComplexMatrix r_plus_minus;  // |J| x |J|
};

/// The four blocks of the inverse circulant Grushin problem at z, all built
/// from the periodized kernel K_{N~}.
struct GrushinBlocks {
    Complex z;
    int n = 0;
    int j_size = 0;
    DenseComplexMatrix e;             // N x N
    DenseComplexMatrix e_plus;        // N x |J|
    DenseComplexMatrix e_minus;       // |J| x N
    DenseComplexMatrix e_minus_plus;  // |J| x |J|
};

/// Effective Hamiltonian of the perturbed problem plus the data needed to
/// check the perturbation bounds.
struct PerturbedEffective {
    DenseComplexMatrix e_minus_plus_delta;  // exact Neumann form
    DenseComplexMatrix first_order;         // E0_{-+} - E0_- (delta Q) E0_+
    double delta = 0.0;
    struct Diagnostics {
        double norm_e0 = 0.0;        // ||E^0||
        double norm_e_plus0 = 0.0;   // ||E_+^0||
        double norm_e_minus0 = 0.0;  // ||E_-^0||
        double norm_dq = 0.0;        // ||delta Q||
        double dist_circ = 0.0;      // dist(z, circulant spectrum)
        double drift = 0.0;          // ||E_{-+}^d - E_{-+}^0||
        bool drift_bound_ok = false; // drift <= 2 ||E_+^0|| ||E_-^0|| ||dQ||
        bool norm_bound_ok = false;  // ||E_{-+}^d|| <= 2 / dist
    } diagnostics;
};

/// Restriction of build_circulant(spec) - z to the I_N/J split.
GrushinProblem assemble_grushin_problem(const OperatorSpec& spec, Complex z);

/// Reassemble the four blocks into the full N~ x N~ matrix (inverse of the
/// index split; used by identity checks).
DenseComplexMatrix reassemble_grushin(const OperatorSpec& spec, const GrushinProblem& problem);

/// Inverse blocks from kernel values: every entry is K_{N~}(z; nu - mu) for
/// the representatives nu, mu of the respective index sets.
/// Throws OnSpectrum.
GrushinBlocks grushin_blocks(const OperatorSpec& spec, Complex z);

/// log|det(P_N - z)| two ways (delta = 0 determinant split):
/// lhs = LU of the Toeplitz matrix; rhs = sum_k log|lambda_k - z|
/// + log|det E_{-+}(z)|. Throws OnSpectrum when either side degenerates.
std::pair<double, double> effective_det_factorization(const OperatorSpec& spec, Complex z);

/// Perturbed effective Hamiltonian by the exact Neumann form
///   E_{-+}^d = E_{-+}^0 - E_-^0 (dQ) (1 + E^0 dQ)^{-1} E_+^0
/// (one N x N solve). Requires ||dQ|| ||E^0|| < 1/2; throws NeumannDivergence.
PerturbedEffective perturbed_effective(const OperatorSpec& spec, Complex z,
                                       const DenseComplexMatrix& Q, double delta);

/// Same as perturbed_effective but reusing precomputed unperturbed blocks
/// (the expensive part when many trials run against one z).
PerturbedEffective perturbed_effective_from_blocks(const GrushinBlocks& blocks0,
                                                   const DenseComplexMatrix& Q, double delta);

/// log|det(P_N + delta Q - z)| two ways. The rhs applies the determinant
/// split to the perturbed bordered matrix:
///   rhs = sum_k log|lambda_k - z| + log|det(1 + delta E^0 Q)|
///         + log|det E_{-+}^delta|,
/// where the middle term is exactly log|det P^delta| - log|det P^0| and
/// vanishes at delta = 0.
std::pair<double, double> perturbed_det_factorization(const OperatorSpec& spec, Complex z,
                                                      const DenseComplexMatrix& Q, double delta);

/// Singular values of E_+ and of adjoint(E_-) (each |J| values, descending).
std::pair<std::vector<double>, std::vector<double>> singular_values_E_pm(
    const GrushinBlocks& blocks);

/// Subharmonic weight phi(z) = (1/N) sum over the N~ circulant eigenvalues of
/// log|lambda - z|. Returns -inf on the circulant spectrum. Note the 1/N
/// normalization against an N~-term sum.
double phi(const OperatorSpec& spec, Complex z);

/// psi(z; N) = phi(z) + C log N / N.
double psi(const OperatorSpec& spec, Complex z, double c_psi = 1.0);

/// alpha(z; N) = dist(z, circulant spectrum).
double alpha(const OperatorSpec& spec, Complex z);

}  // namespace toeplab
