#include "toeplab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace toeplab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int mod_wrap(int v, int m) {
    int r = v % m;
    return r < 0 ? r + m : r;
}
}  // namespace

DenseComplexMatrix build_toeplitz(const OperatorSpec& spec) {
    const int n = spec.n();
    const auto& sym = spec.symbol();
    DenseComplexMatrix M(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (const auto& [j, a] : sym.coeffs())
        for (int r = std::max(0, j); r < std::min(n, n + j); ++r)
            M(static_cast<std::size_t>(r), static_cast<std::size_t>(r - j)) = a;
    return M;
}

DenseComplexMatrix build_circulant(const OperatorSpec& spec) {
    const int nt = spec.n_tilde();
    const auto& sym = spec.symbol();
    if (nt <= sym.band_width())
        throw Overlap("build_circulant: N~ <= N_+ + N_- causes band wraparound overlap");
    DenseComplexMatrix M(static_cast<std::size_t>(nt), static_cast<std::size_t>(nt));
    for (int r = 0; r < nt; ++r)
        for (const auto& [j, a] : sym.coeffs())
            M(static_cast<std::size_t>(r), static_cast<std::size_t>(mod_wrap(r - j, nt))) = a;
    return M;
}

std::vector<Complex> circulant_spectrum(const OperatorSpec& spec) {
    const int nt = spec.n_tilde();
    std::vector<Complex> lambdas(static_cast<std::size_t>(nt));
    for (int k = 0; k < nt; ++k)
        lambdas[static_cast<std::size_t>(k)] =
            eval_curve(spec.symbol(), -kTwoPi * static_cast<double>(k) / nt);
    return lambdas;
}

double log_abs_det_circulant(const OperatorSpec& spec, Complex z) {
    double acc = 0.0;
    for (const auto& lam : circulant_spectrum(spec)) {
        double d = std::abs(lam - z);
        if (d == 0.0) return -std::numeric_limits<double>::infinity();
        acc += std::log(d);
    }
    return acc;
}

namespace {

/// d/dzeta of p(1/zeta) = sum_j a_j zeta^{-j}.
Complex symbol_curve_dzeta(const LaurentSymbol& sym, Complex zeta) {
    Complex acc(0.0, 0.0);
    for (const auto& [j, a] : sym.coeffs())
        acc += a * static_cast<double>(-j) * std::pow(zeta, Complex(-j - 1, 0.0));
    return acc;
}

Complex horner(const std::vector<Complex>& ascending, Complex x) {
    Complex p = ascending.back();
    for (std::size_t i = ascending.size() - 1; i-- > 0;) p = p * x + ascending[i];
    return p;
}

/// (1/2 pi i) times the contour integral over |zeta| = r of
/// zeta^{k + N_+ - 1} / q_z(zeta), by trapezoid with node doubling.
Complex contour_quadrature(const std::vector<Complex>& qz, int power, double r) {
    auto sample = [&](int n) {
        Complex acc(0.0, 0.0);
        for (int l = 0; l < n; ++l) {
            double ang = kTwoPi * static_cast<double>(l) / n;
            Complex zeta = std::polar(r, ang);
            Complex num = std::polar(std::pow(r, static_cast<double>(power + 1)),
                                     ang * static_cast<double>(power + 1));
            acc += num / horner(qz, zeta);
        }
        return acc / static_cast<double>(n);
    };
    int n = 64;
    Complex prev = sample(n);
    while (n <= (1 << 20)) {
        n *= 2;
        Complex cur = sample(n);
        if (std::abs(cur - prev) <= 1e-11 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw QuadratureStall("kernel_K_infinity: contour quadrature did not stabilize");
}

}  // namespace

Complex kernel_K_infinity(const LaurentSymbol& sym, Complex z, int k) {
    RootSplit split;
    try {
        split = roots_split(sym, z);
    } catch (const RootsOnCircle&) {
        throw OnCurve("kernel_K_infinity: z lies on the symbol curve");
    }

    bool all_simple = true;
    for (const auto& [root, mult] : split.inside)
        if (mult > 1) all_simple = false;
    for (const auto& [root, mult] : split.outside)
        if (mult > 1) all_simple = false;

    if (all_simple && k >= 1) {
        Complex acc(0.0, 0.0);
        for (const auto& [zeta, mult] : split.inside)
            acc += std::pow(zeta, Complex(k - 1, 0.0)) / symbol_curve_dzeta(sym, zeta);
        return acc;
    }
    if (all_simple && k <= -1) {
        Complex acc(0.0, 0.0);
        for (const auto& [zeta, mult] : split.outside)
            acc += std::pow(zeta, Complex(k - 1, 0.0)) / symbol_curve_dzeta(sym, zeta);
        return -acc;
    }

    // k = 0 or multiple roots: quadrature on a circle between the extreme
    // root moduli (poles kept maximally distant in log scale).
    double rho_in = 0.0, rho_out = std::numeric_limits<double>::infinity();
    for (const auto& [root, mult] : split.inside) rho_in = std::max(rho_in, std::abs(root));
    for (const auto& [root, mult] : split.outside) rho_out = std::min(rho_out, std::abs(root));
    double r;
    if (split.inside.empty() && split.outside.empty())
        throw Error("kernel_K_infinity: characteristic polynomial has no roots");
    if (split.inside.empty()) r = rho_out / 3.0;
    else if (split.outside.empty()) r = 3.0 * rho_in;
    else r = std::sqrt(rho_in * rho_out);

    const auto qz = characteristic_coeffs(sym, z);
    return contour_quadrature(qz, k + sym.n_plus() - 1, r);
}

std::vector<Complex> kernel_K_N_table(const OperatorSpec& spec, Complex z) {
    const int nt = spec.n_tilde();
    const auto lambdas = circulant_spectrum(spec);
    double mind = std::numeric_limits<double>::infinity();
    for (const auto& lam : lambdas) mind = std::min(mind, std::abs(lam - z));
    if (mind < 1e-14)
        throw OnSpectrum("kernel_K_N: z coincides with a circulant eigenvalue");

    std::vector<Complex> inv(static_cast<std::size_t>(nt));
    for (int k = 0; k < nt; ++k)
        inv[static_cast<std::size_t>(k)] = Complex(1.0, 0.0) / (lambdas[static_cast<std::size_t>(k)] - z);

    std::vector<Complex> table(static_cast<std::size_t>(nt));
    for (int m = 0; m < nt; ++m) {
        Complex acc(0.0, 0.0);
        for (int k = 0; k < nt; ++k)
            acc += std::polar(1.0, kTwoPi * static_cast<double>(k) * static_cast<double>(m) / nt) *
                   inv[static_cast<std::size_t>(k)];
        table[static_cast<std::size_t>(m)] = acc / static_cast<double>(nt);
    }
    return table;
}

Complex kernel_K_N(const OperatorSpec& spec, Complex z, int nu) {
    const int nt = spec.n_tilde();
    const auto lambdas = circulant_spectrum(spec);
    double mind = std::numeric_limits<double>::infinity();
    for (const auto& lam : lambdas) mind = std::min(mind, std::abs(lam - z));
    if (mind < 1e-14)
        throw OnSpectrum("kernel_K_N: z coincides with a circulant eigenvalue");

    const int m = mod_wrap(nu, nt);
    Complex fourier(0.0, 0.0);
    for (int k = 0; k < nt; ++k)
        fourier += std::polar(1.0, kTwoPi * static_cast<double>(k) * static_cast<double>(m) / nt) /
                   (lambdas[static_cast<std::size_t>(k)] - z);
    fourier /= static_cast<double>(nt);

#ifndef TOEPLAB_NO_SELF_CHECK
    if (mind >= 1e-3) {
        // Periodization of the Z-kernel, truncated when terms drop below 1e-14.
        Complex period = kernel_K_infinity(spec.symbol(), z, m);
        for (int wrap = 1; wrap <= 5000; ++wrap) {
            Complex t1 = kernel_K_infinity(spec.symbol(), z, m - wrap * nt);
            Complex t2 = kernel_K_infinity(spec.symbol(), z, m + wrap * nt);
            period += t1 + t2;
            if (std::abs(t1) < 1e-14 && std::abs(t2) < 1e-14) {
                if (std::abs(period - fourier) > 1e-8 * std::max(1.0, std::abs(fourier)))
                    throw Error("kernel_K_N self-check failed: periodization vs Fourier sum");
                break;
            }
        }
    }
#endif
    return fourier;
}

std::pair<int, double> circulant_weyl_count(const OperatorSpec& spec, const Region& region) {
    const auto lambdas = circulant_spectrum(spec);
    int count = count_in_region(lambdas, region);
    double predicted =
        static_cast<double>(spec.n()) / kTwoPi * preimage_measure(spec.symbol(), region);
    return {count, predicted};
}

std::vector<SpacingSegment> eigenvalue_spacing_check(const OperatorSpec& spec, Complex z0,
                                                     double neighborhood_radius,
                                                     double deriv_tol) {
    const auto& sym = spec.symbol();
    const int scan = 8192;
    const double h = kTwoPi / scan;

    // Locate the preimages of z0 on the curve: refined local minima of
    // |f(theta) - z0| that actually hit the curve.
    std::vector<double> dist(static_cast<std::size_t>(scan));
    for (int i = 0; i < scan; ++i) dist[static_cast<std::size_t>(i)] = std::abs(eval_curve(sym, h * i) - z0);

    std::vector<double> preimages;
    for (int i = 0; i < scan; ++i) {
        double prev = dist[static_cast<std::size_t>(mod_wrap(i - 1, scan))];
        double next = dist[static_cast<std::size_t>(mod_wrap(i + 1, scan))];
        double cur = dist[static_cast<std::size_t>(i)];
        if (cur <= prev && cur < next && cur < neighborhood_radius) {
            double a = h * (i - 1), b = h * (i + 1);
            auto d = [&](double th) { return std::abs(eval_curve(sym, th) - z0); };
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = d(x1), f2 = d(x2);
            while (b - a > 1e-12) {
                if (f1 < f2) { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = d(x1); }
                else { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = d(x2); }
            }
            double theta = 0.5 * (a + b);
            if (d(theta) < 1e-6 * std::max(1.0, std::abs(z0))) {
                double wrapped = std::fmod(theta + kTwoPi, kTwoPi);
                preimages.push_back(wrapped);
            }
        }
    }
    if (preimages.empty())
        throw PreconditionViolated("eigenvalue_spacing_check: z0 is not on the symbol curve");
    for (double th : preimages)
        if (std::abs(eval_curve_derivative(sym, th)) <= deriv_tol)
            throw DegenerateCriticalPoint(
                "eigenvalue_spacing_check: dp vanishes at a preimage of z0");

    const int nt = spec.n_tilde();
    const auto lambdas = circulant_spectrum(spec);

    auto circ_dist = [](double a, double b) {
        double d = std::fmod(std::abs(a - b), kTwoPi);
        return std::min(d, kTwoPi - d);
    };

    std::vector<SpacingSegment> segments;
    for (double theta_star : preimages) {
        // Eigenvalues in the disk whose Fourier angle belongs to this segment.
        std::vector<std::pair<double, Complex>> members;  // (theta_k, lambda_k)
        for (int k = 0; k < nt; ++k) {
            const auto lam = lambdas[static_cast<std::size_t>(k)];
            if (std::abs(lam - z0) > neighborhood_radius) continue;
            double theta_k = std::fmod(-kTwoPi * static_cast<double>(k) / nt + kTwoPi, kTwoPi);
            double best = std::numeric_limits<double>::infinity();
            for (double other : preimages) best = std::min(best, circ_dist(theta_k, other));
            if (circ_dist(theta_k, theta_star) <= best + 1e-12) members.emplace_back(theta_k, lam);
        }
        SpacingSegment seg;
        seg.theta_star = theta_star;
        seg.eigen_count = static_cast<int>(members.size());
        seg.min_gap = std::numeric_limits<double>::infinity();
        if (members.size() >= 2) {
            // Order along the segment (offset angles relative to theta_star to
            // dodge the wrap), then take consecutive gaps.
            std::sort(members.begin(), members.end(), [&](const auto& lhs, const auto& rhs) {
                auto off = [&](double t) {
                    double d = std::fmod(t - theta_star + 3.0 * kTwoPi / 2.0, kTwoPi) - kTwoPi / 2.0;
                    return d;
                };
                return off(lhs.first) < off(rhs.first);
            });
            for (std::size_t i = 0; i + 1 < members.size(); ++i)
                seg.min_gap = std::min(seg.min_gap, std::abs(members[i + 1].second - members[i].second));
        }
        seg.gap_times_n = seg.min_gap * static_cast<double>(nt);
        segments.push_back(seg);
    }
    return segments;
}

}  // namespace toeplab
