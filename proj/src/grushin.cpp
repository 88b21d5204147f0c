#include "toeplab/grushin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toeplab {

namespace {

int mod_wrap(int v, int m) {
    int r = v % m;
    return r < 0 ? r + m : r;
}

/// Z-representatives for I_N (then J) as residues mod N~, in block order.
std::vector<int> split_order(const OperatorSpec& spec) {
    const int nt = spec.n_tilde();
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(nt));
    for (int a = 0; a < spec.n(); ++a) order.push_back(mod_wrap(spec.symbol().n_plus() + a, nt));
    for (int i = 0; i < spec.j_size(); ++i)
        order.push_back(mod_wrap(-spec.symbol().n_minus() + i, nt));
    return order;
}

}  // namespace

GrushinProblem assemble_grushin_problem(const OperatorSpec& spec, Complex z) {
    const int n = spec.n();
    const int js = spec.j_size();
    const auto order = split_order(spec);
    DenseComplexMatrix C = build_circulant(spec).shifted(z);

    GrushinProblem pr;
    pr.p_block = DenseComplexMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    pr.r_minus = DenseComplexMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(js));
    pr.r_plus = DenseComplexMatrix(static_cast<std::size_t>(js), static_cast<std::size_t>(n));
    pr.r_plus_minus = DenseComplexMatrix(static_cast<std::size_t>(js), static_cast<std::size_t>(js));

    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c)
            pr.p_block(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                C(static_cast<std::size_t>(order[static_cast<std::size_t>(r)]),
                  static_cast<std::size_t>(order[static_cast<std::size_t>(c)]));
        for (int c = 0; c < js; ++c)
            pr.r_minus(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                C(static_cast<std::size_t>(order[static_cast<std::size_t>(r)]),
                  static_cast<std::size_t>(order[static_cast<std::size_t>(n + c)]));
    }
    for (int r = 0; r < js; ++r) {
        for (int c = 0; c < n; ++c)
            pr.r_plus(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                C(static_cast<std::size_t>(order[static_cast<std::size_t>(n + r)]),
                  static_cast<std::size_t>(order[static_cast<std::size_t>(c)]));
        for (int c = 0; c < js; ++c)
            pr.r_plus_minus(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                C(static_cast<std::size_t>(order[static_cast<std::size_t>(n + r)]),
                  static_cast<std::size_t>(order[static_cast<std::size_t>(n + c)]));
    }
    return pr;
}

DenseComplexMatrix reassemble_grushin(const OperatorSpec& spec, const GrushinProblem& problem) {
    const int n = spec.n();
    const int js = spec.j_size();
    const int nt = spec.n_tilde();
    const auto order = split_order(spec);
    DenseComplexMatrix C(static_cast<std::size_t>(nt), static_cast<std::size_t>(nt));
    auto put = [&](int br, int bc, const DenseComplexMatrix& blk, int roff, int coff) {
        for (std::size_t r = 0; r < blk.rows(); ++r)
            for (std::size_t c = 0; c < blk.cols(); ++c)
                C(static_cast<std::size_t>(order[static_cast<std::size_t>(roff + static_cast<int>(r))]),
                  static_cast<std::size_t>(order[static_cast<std::size_t>(coff + static_cast<int>(c))])) =
                    blk(r, c);
        (void)br;
        (void)bc;
    };
    put(0, 0, problem.p_block, 0, 0);
    put(0, 1, problem.r_minus, 0, n);
    put(1, 0, problem.r_plus, n, 0);
    put(1, 1, problem.r_plus_minus, n, n);
    (void)js;
    return C;
}

GrushinBlocks grushin_blocks(const OperatorSpec& spec, Complex z) {
    const int n = spec.n();
    const int js = spec.j_size();
    const int nt = spec.n_tilde();
    const int band = spec.symbol().band_width();
    const auto K = kernel_K_N_table(spec, z);

    GrushinBlocks b;
    b.z = z;
    b.n = n;
    b.j_size = js;
    b.e = DenseComplexMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    b.e_plus = DenseComplexMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(js));
    b.e_minus = DenseComplexMatrix(static_cast<std::size_t>(js), static_cast<std::size_t>(n));
    b.e_minus_plus = DenseComplexMatrix(static_cast<std::size_t>(js), static_cast<std::size_t>(js));

    // Representatives: I_N -> N_+ + a, J -> -N_- + i; entries K(nu - mu).
    for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c)
            b.e(static_cast<std::size_t>(a), static_cast<std::size_t>(c)) =
                K[static_cast<std::size_t>(mod_wrap(a - c, nt))];
        for (int i = 0; i < js; ++i)
            b.e_plus(static_cast<std::size_t>(a), static_cast<std::size_t>(i)) =
                K[static_cast<std::size_t>(mod_wrap(a + band - i, nt))];
    }
    for (int i = 0; i < js; ++i) {
        for (int a = 0; a < n; ++a)
            b.e_minus(static_cast<std::size_t>(i), static_cast<std::size_t>(a)) =
                K[static_cast<std::size_t>(mod_wrap(i - band - a, nt))];
        for (int c = 0; c < js; ++c)
            b.e_minus_plus(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) =
                K[static_cast<std::size_t>(mod_wrap(i - c, nt))];
    }
    return b;
}

std::pair<double, double> effective_det_factorization(const OperatorSpec& spec, Complex z) {
    double lhs = lu_log_abs_det(build_toeplitz(spec).shifted(z));
    double circ = log_abs_det_circulant(spec, z);
    if (!std::isfinite(circ)) throw OnSpectrum("effective_det_factorization: z on circulant spectrum");
    GrushinBlocks b = grushin_blocks(spec, z);
    double rhs = circ + lu_log_abs_det(b.e_minus_plus);
    return {lhs, rhs};
}

PerturbedEffective perturbed_effective_from_blocks(const GrushinBlocks& blocks0,
                                                   const DenseComplexMatrix& Q, double delta) {
    const std::size_t n = static_cast<std::size_t>(blocks0.n);
    if (Q.rows() != n || Q.cols() != n)
        throw ShapeMismatch("perturbed_effective: Q must be N x N");

    PerturbedEffective out;
    out.delta = delta;
    auto& d = out.diagnostics;
    d.norm_e0 = operator_norm_estimate(blocks0.e);
    d.norm_e_plus0 = operator_norm_estimate(blocks0.e_plus);
    d.norm_e_minus0 = operator_norm_estimate(blocks0.e_minus);
    d.norm_dq = std::abs(delta) * operator_norm_estimate(Q);

    if (delta == 0.0) {
        out.e_minus_plus_delta = blocks0.e_minus_plus;
        out.first_order = blocks0.e_minus_plus;
        d.drift = 0.0;
        d.drift_bound_ok = true;
        d.norm_bound_ok = true;
        return out;
    }

    if (!(d.norm_dq * d.norm_e0 < 0.5))
        throw NeumannDivergence("perturbed_effective: ||dQ|| ||E^0|| >= 1/2");

    DenseComplexMatrix dQ = Q * Complex(delta, 0.0);
    // X = (1 + E^0 dQ)^{-1} E_+^0: one N x N solve.
    DenseComplexMatrix lhs = DenseComplexMatrix::identity(n) + blocks0.e * dQ;
    DenseComplexMatrix X = solve(lhs, blocks0.e_plus);
    out.e_minus_plus_delta = blocks0.e_minus_plus - blocks0.e_minus * (dQ * X);
    out.first_order = blocks0.e_minus_plus - blocks0.e_minus * (dQ * blocks0.e_plus);

    d.drift = operator_norm_estimate(out.e_minus_plus_delta - blocks0.e_minus_plus);
    d.drift_bound_ok = d.drift <= 2.0 * d.norm_e_plus0 * d.norm_e_minus0 * d.norm_dq + 1e-12;
    return out;
}

PerturbedEffective perturbed_effective(const OperatorSpec& spec, Complex z,
                                       const DenseComplexMatrix& Q, double delta) {
    GrushinBlocks blocks0 = grushin_blocks(spec, z);
    PerturbedEffective out = perturbed_effective_from_blocks(blocks0, Q, delta);
    double dist = alpha(spec, z);
    out.diagnostics.dist_circ = dist;
    out.diagnostics.norm_bound_ok =
        operator_norm_estimate(out.e_minus_plus_delta) <= 2.0 / dist + 1e-9;
    return out;
}

std::pair<double, double> perturbed_det_factorization(const OperatorSpec& spec, Complex z,
                                                      const DenseComplexMatrix& Q, double delta) {
    double lhs = lu_log_abs_det(perturb(build_toeplitz(spec), delta, Q).shifted(z));
    double circ = log_abs_det_circulant(spec, z);
    if (!std::isfinite(circ)) throw OnSpectrum("perturbed_det_factorization: z on circulant spectrum");

    GrushinBlocks b = grushin_blocks(spec, z);
    PerturbedEffective pe = perturbed_effective_from_blocks(b, Q, delta);
    double correction = 0.0;
    if (delta != 0.0) {
        DenseComplexMatrix dQ = Q * Complex(delta, 0.0);
        correction =
            lu_log_abs_det(DenseComplexMatrix::identity(static_cast<std::size_t>(b.n)) + b.e * dQ);
    }
    double rhs = circ + correction + lu_log_abs_det(pe.e_minus_plus_delta);
    return {lhs, rhs};
}

std::pair<std::vector<double>, std::vector<double>> singular_values_E_pm(
    const GrushinBlocks& blocks) {
    return {singular_values(blocks.e_plus), singular_values(blocks.e_minus.adjoint())};
}

double phi(const OperatorSpec& spec, Complex z) {
    return log_abs_det_circulant(spec, z) / static_cast<double>(spec.n());
}

double psi(const OperatorSpec& spec, Complex z, double c_psi) {
    return phi(spec, z) +
           c_psi * std::log(static_cast<double>(spec.n())) / static_cast<double>(spec.n());
}

double alpha(const OperatorSpec& spec, Complex z) {
    double mind = std::numeric_limits<double>::infinity();
    for (const auto& lam : circulant_spectrum(spec)) mind = std::min(mind, std::abs(lam - z));
    return mind;
}

}  // namespace toeplab
