#include "toeplab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace toeplab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

LaurentSymbol::LaurentSymbol(std::map<int, Complex> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag()))
            throw InvariantViolation("symbol coefficients must be finite");
        if (it->second == Complex(0.0, 0.0))
            it = coeffs_.erase(it);
        else
            ++it;
    }
    if (coeffs_.empty()) throw EmptySymbol("symbol has no nonzero coefficients");
    const int jmin = coeffs_.begin()->first;
    const int jmax = coeffs_.rbegin()->first;
    n_plus_ = std::max(0, jmax);
    n_minus_ = std::max(0, -jmin);
    if (n_plus_ + n_minus_ == 0)
        throw InvariantViolation("constant symbol: N_+ = N_- = 0 is not allowed");
}

Complex eval_curve(const LaurentSymbol& sym, double theta) {
    Complex acc(0.0, 0.0);
    for (const auto& [j, a] : sym.coeffs())
        acc += a * std::polar(1.0, static_cast<double>(j) * theta);
    return acc;
}

Complex eval_curve_derivative(const LaurentSymbol& sym, double theta) {
    Complex acc(0.0, 0.0);
    for (const auto& [j, a] : sym.coeffs())
        acc += a * Complex(0.0, static_cast<double>(j)) *
               std::polar(1.0, static_cast<double>(j) * theta);
    return acc;
}

std::vector<Complex> characteristic_coeffs(const LaurentSymbol& sym, Complex z) {
    if (z == Complex(0.0, 0.0))
        throw DegenerateParameter("characteristic polynomial undefined at z = 0");
    const int np = sym.n_plus();
    const int nm = sym.n_minus();
    if ((np == 0 || nm == 0) && z == sym.coeff(0))
        throw DegenerateParameter("z = a_0 degenerates the characteristic polynomial");
    const int deg = np + nm;
    std::vector<Complex> c(static_cast<std::size_t>(deg) + 1);
    for (int j = 0; j <= deg; ++j) c[static_cast<std::size_t>(j)] = sym.coeff(np - j);
    c[static_cast<std::size_t>(np)] -= z;
    return c;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& ascending_coeffs) {
    std::vector<Complex> c = ascending_coeffs;
    if (c.size() < 2) return {};
    const std::size_t deg = c.size() - 1;
    if (std::abs(c[deg]) == 0.0)
        throw InvariantViolation("polynomial_roots: leading coefficient is zero");

    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));
    for (auto& v : c) v /= scale;

    if (deg == 1) return {-c[0] / c[1]};

    auto horner = [&](Complex x, Complex& p, Complex& dp) {
        p = c[deg];
        dp = Complex(0.0, 0.0);
        for (std::size_t k = deg; k-- > 0;) {
            dp = dp * x + p;
            p = p * x + c[k];
        }
    };

    // Initial guesses on a circle at the geometric-mean root modulus, with
    // an angular offset to break coefficient symmetries.
    const double r0 =
        std::pow(std::max(std::abs(c[0]) / std::abs(c[deg]), 1e-12), 1.0 / static_cast<double>(deg));
    std::vector<Complex> x(deg);
    for (std::size_t i = 0; i < deg; ++i) {
        double ang = kTwoPi * (static_cast<double>(i) + 0.35) / static_cast<double>(deg) + 0.42;
        x[i] = std::polar(r0, ang);
    }

    const double tol = 1e-13;
    const int max_iter = 500;
    for (int iter = 0; iter < max_iter; ++iter) {
        double max_step = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            Complex p, dp;
            horner(x[i], p, dp);
            if (std::abs(p) == 0.0) continue;
            Complex w = (std::abs(dp) == 0.0) ? Complex(0.0, 0.0) : p / dp;
            Complex s(0.0, 0.0);
            for (std::size_t j = 0; j < deg; ++j) {
                if (j == i) continue;
                Complex d = x[i] - x[j];
                if (std::abs(d) < 1e-30) d = Complex(1e-30, 0.0);
                s += Complex(1.0, 0.0) / d;
            }
            Complex denom = Complex(1.0, 0.0) - w * s;
            Complex step = (std::abs(denom) < 1e-30) ? w : w / denom;
            if (std::abs(dp) == 0.0) step = Complex(1e-3, 1e-3);  // nudge off a critical point
            x[i] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(x[i])));
        }
        if (max_step <= tol) return x;
    }
    throw NonConvergence("polynomial_roots: Aberth-Ehrlich iteration budget exceeded");
}

RootSplit roots_split(const LaurentSymbol& sym, Complex z, double circle_tol) {
    const auto coeffs = characteristic_coeffs(sym, z);
    auto roots = polynomial_roots(coeffs);

    // Greedy clustering at cluster_tol; cluster cardinality = multiplicity.
    const double cluster_tol = 1e-7;
    std::vector<bool> used(roots.size(), false);
    std::vector<std::pair<Complex, int>> clustered;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        Complex sum = roots[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) <= cluster_tol) {
                sum += roots[j];
                ++count;
                used[j] = true;
            }
        }
        clustered.emplace_back(sum / static_cast<double>(count), count);
    }

    RootSplit split;
    split.z = z;
    for (const auto& [root, mult] : clustered) {
        const double r = std::abs(root);
        if (std::abs(r - 1.0) <= circle_tol)
            throw RootsOnCircle("characteristic root on the unit circle: z is on the symbol curve");
        if (r < 1.0) {
            split.inside.emplace_back(root, mult);
            split.m_plus += mult;
        } else {
            split.outside.emplace_back(root, mult);
            split.m_minus += mult;
        }
    }
    return split;
}

namespace {

int winding_by_tracking(const LaurentSymbol& sym, Complex z) {
    struct Node {
        double theta;
        Complex w;
    };
    const int n0 = 256;
    const int max_depth = 48;
    const double curve_eps = 1e-13;

    auto value = [&](double th) {
        Complex w = eval_curve(sym, th) - z;
        if (std::abs(w) < curve_eps) throw OnCurve("winding_number: z lies on the symbol curve");
        return w;
    };

    double total = 0.0;
    // Iterative subdivision: each segment must turn by < pi/2.
    std::vector<std::tuple<Node, Node, int>> stack;
    Node prev{0.0, value(0.0)};
    for (int i = 1; i <= n0; ++i) {
        double th = kTwoPi * static_cast<double>(i) / n0;
        Node cur{th, value(th)};
        stack.emplace_back(prev, cur, 0);
        while (!stack.empty()) {
            auto [a, b, depth] = stack.back();
            stack.pop_back();
            double dphi = std::arg(b.w / a.w);
            if (std::abs(dphi) < std::numbers::pi / 2.0) {
                total += dphi;
            } else {
                if (depth >= max_depth)
                    throw RefinementExhausted(
                        "winding_number: argument turn >= pi/2 at maximum refinement");
                double tm = 0.5 * (a.theta + b.theta);
                Node mid{tm, value(tm)};
                stack.emplace_back(mid, b, depth + 1);
                stack.emplace_back(a, mid, depth + 1);
            }
        }
        prev = cur;
    }
    double k = total / kTwoPi;
    int wind = static_cast<int>(std::lround(k));
    if (std::abs(k - static_cast<double>(wind)) > 1e-6)
        throw RefinementExhausted("winding_number: argument sum is not an integer multiple of 2*pi");
    return wind;
}

}  // namespace

int winding_number(const LaurentSymbol& sym, Complex z) {
    int wind = winding_by_tracking(sym, z);
#ifndef TOEPLAB_NO_SELF_CHECK
    try {
        RootSplit split = roots_split(sym, z);
        int by_roots = sym.n_plus() - split.m_plus;
        if (wind != by_roots)
            throw Error("winding_number self-check failed: tracking disagrees with root count");
    } catch (const DegenerateParameter&) {
        // z at a special point of the characteristic equation; tracking result stands.
    } catch (const RootsOnCircle&) {
    } catch (const NonConvergence&) {
    }
#endif
    return wind;
}

int fredholm_index(const LaurentSymbol& sym, Complex z) {
    RootSplit split = roots_split(sym, z);
    return split.m_plus - sym.n_plus();
}

CurveSampler::CurveSampler(const LaurentSymbol& sym, int grid)
    : sym_(sym), samples_(static_cast<std::size_t>(grid)), step_(kTwoPi / grid) {
    for (int i = 0; i < grid; ++i)
        samples_[static_cast<std::size_t>(i)] = eval_curve(sym_, step_ * i);
}

std::pair<double, double> CurveSampler::nearest(Complex z) const {
    std::size_t best = 0;
    double best_d2 = std::norm(z - samples_[0]);
    for (std::size_t i = 1; i < samples_.size(); ++i) {
        double d2 = std::norm(z - samples_[i]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    // Golden-section refinement on the bracket around the best sample.
    double lo = step_ * (static_cast<double>(best) - 1.0);
    double hi = step_ * (static_cast<double>(best) + 1.0);
    auto d = [&](double th) { return std::abs(z - eval_curve(sym_, th)); };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = d(x1), f2 = d(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = d(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = d(x2);
        }
    }
    double theta = 0.5 * (a + b);
    double theta_wrapped = std::fmod(theta, kTwoPi);
    if (theta_wrapped < 0.0) theta_wrapped += kTwoPi;
    return {d(theta), theta_wrapped};
}

std::pair<double, double> dist_to_curve(const LaurentSymbol& sym, Complex z, int grid) {
    return CurveSampler(sym, grid).nearest(z);
}

}  // namespace toeplab
