#include "toeplab/quasimode.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace toeplab {

ExpSolutionBasis exp_solution_basis(const LaurentSymbol& sym, Complex z, DecaySide side) {
    RootSplit split = roots_split(sym, z);
    ExpSolutionBasis basis;
    basis.z = z;
    basis.side = side;
    const auto& clusters = (side == DecaySide::decaying_right) ? split.inside : split.outside;
    for (const auto& [root, mult] : clusters)
        for (int k = 0; k < mult; ++k) basis.modes.push_back({root, k});
    return basis;
}

Complex eval_mode(const ExpMode& mode, int nu, int nu0) {
    double poly = (mode.power == 0)
                      ? 1.0
                      : std::pow(static_cast<double>(nu), static_cast<double>(mode.power));
    return poly * std::pow(mode.root, Complex(static_cast<double>(nu - nu0), 0.0));
}

DenseComplexMatrix boundary_matrix(const LaurentSymbol& sym, Complex z) {
    const int np = sym.n_plus();
    ExpSolutionBasis basis = exp_solution_basis(sym, z, DecaySide::decaying_right);
    const int mp = static_cast<int>(basis.modes.size());
    DenseComplexMatrix A(static_cast<std::size_t>(np), static_cast<std::size_t>(mp));
    for (int r = 0; r < np; ++r) {
        int nu = -np + r;
        for (int c = 0; c < mp; ++c)
            A(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                eval_mode(basis.modes[static_cast<std::size_t>(c)], nu, -np);
    }
    if (np >= 1 && mp >= 1) {
        auto sv = singular_values(A);
        const int expect = std::min(np, mp);
        if (sv.empty() || sv[static_cast<std::size_t>(expect - 1)] <= 1e-10 * sv[0])
            throw RankDeficient("boundary_matrix: Van der Monde block lost maximal rank");
    }
    return A;
}

std::vector<Complex> apply_band_shifted(const LaurentSymbol& sym, Complex z,
                                        const std::vector<Complex>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<Complex> r(u.size(), Complex(0.0, 0.0));
    for (int nu = 0; nu < n; ++nu) {
        Complex acc(0.0, 0.0);
        for (const auto& [j, a] : sym.coeffs()) {
            int src = nu - j;
            if (src >= 0 && src < n) acc += a * u[static_cast<std::size_t>(src)];
        }
        r[static_cast<std::size_t>(nu)] = acc - z * u[static_cast<std::size_t>(nu)];
    }
    return r;
}

Quasimode build_quasimode(const OperatorSpec& spec, Complex z) {
    const auto& sym = spec.symbol();
    const int np = sym.n_plus();
    RootSplit split = roots_split(sym, z);
    if (split.m_plus - np <= 0)
        throw WrongIndexSign("build_quasimode: requires m_+ > N_+ (positive half-line index)");

    ExpSolutionBasis basis = exp_solution_basis(sym, z, DecaySide::decaying_right);
    const int mp = static_cast<int>(basis.modes.size());

    // Kernel coefficients: null vector of the boundary matrix (rows
    // nu = -N_+..-1). With no boundary rows any vector works; take the
    // fastest-decaying single mode for determinism.
    Eigen::VectorXcd coeff(mp);
    if (np == 0) {
        coeff.setZero();
        int best = 0;
        for (int c = 1; c < mp; ++c)
            if (std::abs(basis.modes[static_cast<std::size_t>(c)].root) <
                std::abs(basis.modes[static_cast<std::size_t>(best)].root))
                best = c;
        coeff(best) = Complex(1.0, 0.0);
    } else {
        DenseComplexMatrix A = boundary_matrix(sym, z);
        Eigen::MatrixXcd M(np, mp);
        for (int r = 0; r < np; ++r)
            for (int c = 0; c < mp; ++c)
                M(r, c) = A(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
        coeff = svd.matrixV().col(mp - 1);
    }

    const int n = spec.n();
    std::vector<Complex> u(static_cast<std::size_t>(n));
    for (int nu = 0; nu < n; ++nu) {
        Complex acc(0.0, 0.0);
        for (int c = 0; c < mp; ++c)
            acc += coeff(c) * eval_mode(basis.modes[static_cast<std::size_t>(c)], nu, -np);
        u[static_cast<std::size_t>(nu)] = acc;
    }
    double norm = 0.0;
    for (const auto& v : u) norm += std::norm(v);
    norm = std::sqrt(norm);
    if (!(norm > 0.0))
        throw Error("build_quasimode: kernel vector vanished on the window");
    for (auto& v : u) v /= norm;

    auto r = apply_band_shifted(sym, z, u);
    double res = 0.0;
    for (const auto& v : r) res += std::norm(v);
    Quasimode out;
    out.vec = std::move(u);
    out.residual = std::sqrt(res);
    return out;
}

LaurentSymbol adjoint_symbol(const LaurentSymbol& sym) {
    std::map<int, Complex> coeffs;
    for (const auto& [j, a] : sym.coeffs()) coeffs[-j] = std::conj(a);
    return LaurentSymbol(std::move(coeffs));
}

}  // namespace toeplab
