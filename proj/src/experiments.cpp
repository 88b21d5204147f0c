#include "toeplab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <thread>

#include "toeplab/symparse.hpp"

namespace toeplab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(i) for i = 0..count-1 on up to `threads` workers.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(resolve_threads(threads), std::max(1, count));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::exception_ptr first_error = nullptr;
    std::mutex err_mu;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

bool delta_window_ok(int n, int band, double delta, double epsilon0, double c = 1.0) {
    double lo = c * std::exp(-std::pow(static_cast<double>(n), epsilon0) / (2.0 * band));
    double hi = std::pow(static_cast<double>(n), -4.0) / c;
    return delta >= lo && delta <= hi;
}

}  // namespace

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw PreconditionViolated("fit_line: need >= 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double pred = fit.intercept + fit.slope * xs[i];
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    auto idx = static_cast<std::size_t>(
        std::llround(q * static_cast<double>(values.size() - 1)));
    return values[std::min(idx, values.size() - 1)];
}

WeylTrialResult weyl_trial(const OperatorSpec& spec, double delta, const Region& region,
                           SeededStream stream, const CurveSampler& sampler, double epsilon0,
                           const std::vector<Complex>& logdet_probes) {
    const auto t_start = std::chrono::steady_clock::now();
    const int n = spec.n();

    DenseComplexMatrix Q = sample_gaussian_matrix(static_cast<std::size_t>(n), stream);
    DenseComplexMatrix P = perturb(build_toeplitz(spec), delta, Q);
    std::vector<Complex> eigs = eigenvalues(P);

    WeylTrialResult out;
    out.eigens.reserve(eigs.size());
    std::vector<double> dists;
    dists.reserve(eigs.size());
    for (const auto& z : eigs) {
        auto [d, th] = sampler.nearest(z);
        out.eigens.push_back({z, d, th});
        dists.push_back(d);
    }

    auto& rec = out.record;
    rec.master_seed = stream.master_seed();
    rec.trial_index = stream.trial_index();
    rec.symbol_id = format_symbol(spec.symbol(), SymbolConvention::zeta_inverse);
    rec.n = n;
    rec.delta = delta;
    rec.region = region.describe();
    rec.observed_count = count_in_region(eigs, region);
    rec.predicted_count =
        static_cast<double>(n) / kTwoPi * preimage_measure(spec.symbol(), region);
    rec.hs_norm = Q.frobenius_norm();
    rec.q50 = quantile(dists, 0.50);
    rec.q90 = quantile(dists, 0.90);
    rec.q99 = quantile(dists, 0.99);
    rec.delta_window_ok = delta_window_ok(n, spec.symbol().band_width(), delta, epsilon0);
    for (const auto& probe : logdet_probes) {
        PerturbedEffective pe = perturbed_effective(spec, probe, Q, delta);
        rec.log_det_eminusplus.push_back(lu_log_abs_det(pe.e_minus_plus_delta));
    }
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start)
            .count();
    return out;
}

WeylTrialResult thin_tube_trial(const OperatorSpec& spec, double delta, double epsilon,
                                SeededStream stream, const CurveSampler& sampler,
                                double epsilon0) {
    const int n = spec.n();
    double tau = std::pow(static_cast<double>(n), -1.0 + epsilon);
    Region region{CurveTube{spec.symbol(), tau}};
    WeylTrialResult out = weyl_trial(spec, delta, region, stream, sampler, epsilon0);
    // Membership in the tube is exactly dist <= tau, so reuse the distances.
    int inside = 0;
    for (const auto& e : out.eigens)
        if (e.dist <= tau) ++inside;
    out.record.observed_count = inside;
    out.record.out_of_tube = n - inside;
    return out;
}

std::vector<WeylTrialResult> run_trials(const OperatorSpec& spec, double delta,
                                        const std::optional<Region>& region,
                                        std::optional<double> tube_epsilon,
                                        std::uint64_t master_seed, int n_trials, int threads,
                                        double epsilon0) {
    if (!region.has_value() && !tube_epsilon.has_value())
        throw ConfigError("run_trials: need a region or a tube epsilon");
    CurveSampler sampler(spec.symbol());
    std::vector<WeylTrialResult> results(static_cast<std::size_t>(n_trials));
    parallel_for(n_trials, threads, [&](int i) {
        SeededStream stream(master_seed, static_cast<std::uint64_t>(i));
        results[static_cast<std::size_t>(i)] =
            tube_epsilon.has_value()
                ? thin_tube_trial(spec, delta, *tube_epsilon, stream, sampler, epsilon0)
                : weyl_trial(spec, delta, *region, stream, sampler, epsilon0);
    });
    return results;
}

namespace {

/// -(1/2pi) integral over [0,2pi] of log|z - f(theta)|, trapezoid with node
/// doubling to 1e-10 (periodic smooth integrand away from the curve).
double log_potential_curve(const LaurentSymbol& sym, Complex z) {
    auto sum = [&](int n) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += std::log(std::abs(z - eval_curve(sym, kTwoPi * i / n)));
        return acc / static_cast<double>(n);
    };
    int n = 64;
    double prev = sum(n);
    while (n <= (1 << 22)) {
        n *= 2;
        double cur = sum(n);
        if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) return -cur;
        prev = cur;
    }
    throw QuadratureStall("potential_compare: U_xi quadrature did not stabilize");
}

}  // namespace

std::vector<PotentialProbe> potential_compare(const OperatorSpec& spec, double delta,
                                              const std::vector<Complex>& probes,
                                              SeededStream stream) {
    const int n = spec.n();
    DenseComplexMatrix Q = sample_gaussian_matrix(static_cast<std::size_t>(n), stream);
    DenseComplexMatrix P = perturb(build_toeplitz(spec), delta, Q);

    std::vector<PotentialProbe> out;
    out.reserve(probes.size());
    for (const auto& z : probes) {
        PotentialProbe p;
        p.z = z;
        double ld = lu_log_abs_det(P.shifted(z));
        if (!std::isfinite(ld)) throw OnSpectrum("potential_compare: probe hits an eigenvalue");
        p.u_xi_n = -ld / static_cast<double>(n);
        p.u_xi = log_potential_curve(spec.symbol(), z);
        p.phi = phi(spec, z);
        out.push_back(p);
    }
    return out;
}

std::vector<TailProbeReport> effective_tail_experiment(const OperatorSpec& spec, double delta,
                                                       const std::vector<Complex>& probes,
                                                       int trials, double epsilon0,
                                                       std::uint64_t master_seed, int threads,
                                                       double alpha_c) {
    const int n = spec.n();
    const double n3 = std::pow(static_cast<double>(n), 3.0);
    const double threshold = -std::pow(static_cast<double>(n), epsilon0);

    std::vector<TailProbeReport> reports;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
        const Complex z = probes[pi];
        TailProbeReport rep;
        rep.z = z;
        rep.alpha_z = alpha(spec, z);
        if (rep.alpha_z < 1.0 / (alpha_c * static_cast<double>(n)))
            throw PreconditionViolated(
                "effective_tail_experiment: alpha(z) >= 1/(C*N) fails at a probe");
        rep.delta_small_enough = delta <= rep.alpha_z / n3;
        rep.threshold = threshold;
        rep.trials = trials;
        rep.log_dets.assign(static_cast<std::size_t>(trials), 0.0);

        GrushinBlocks blocks0 = grushin_blocks(spec, z);
        parallel_for(trials, threads, [&](int t) {
            SeededStream stream(master_seed,
                                pi * static_cast<std::uint64_t>(trials) +
                                    static_cast<std::uint64_t>(t));
            DenseComplexMatrix Q = sample_gaussian_matrix(static_cast<std::size_t>(n), stream);
            PerturbedEffective pe = perturbed_effective_from_blocks(blocks0, Q, delta);
            rep.log_dets[static_cast<std::size_t>(t)] = lu_log_abs_det(pe.e_minus_plus_delta);
        });

        rep.hits = 0;
        for (double ld : rep.log_dets)
            if (2.0 * ld >= threshold) ++rep.hits;
        rep.frequency = trials > 0 ? static_cast<double>(rep.hits) / trials : 0.0;

        rep.hist_lo = *std::min_element(rep.log_dets.begin(), rep.log_dets.end());
        rep.hist_hi = *std::max_element(rep.log_dets.begin(), rep.log_dets.end());
        if (rep.hist_hi <= rep.hist_lo) rep.hist_hi = rep.hist_lo + 1.0;
        rep.histogram.assign(40, 0);
        for (double ld : rep.log_dets) {
            int b = static_cast<int>(40.0 * (ld - rep.hist_lo) / (rep.hist_hi - rep.hist_lo));
            rep.histogram[static_cast<std::size_t>(std::clamp(b, 0, 39))] += 1;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

PseudospectrumGrid pseudospectrum_grid(const OperatorSpec& spec, double x0, double x1, double y0,
                                       double y1, int nx, int ny, double delta,
                                       std::optional<std::uint64_t> seed, int threads) {
    if (nx < 1 || ny < 1 || nx > 512 || ny > 512)
        throw PreconditionViolated("pseudospectrum_grid: grid must be within 512 x 512");
    DenseComplexMatrix P = build_toeplitz(spec);
    if (delta != 0.0) {
        if (!seed.has_value())
            throw ConfigError("pseudospectrum_grid: perturbed grid needs a seed");
        SeededStream stream(*seed, 0);
        DenseComplexMatrix Q = sample_gaussian_matrix(P.rows(), stream);
        P = perturb(P, delta, Q);
    }

    PseudospectrumGrid grid;
    grid.x0 = x0;
    grid.x1 = x1;
    grid.y0 = y0;
    grid.y1 = y1;
    grid.nx = nx;
    grid.ny = ny;
    grid.n = spec.n();
    grid.delta = delta;
    grid.log10_smin.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny),
                           std::numeric_limits<double>::quiet_NaN());

    parallel_for(nx * ny, threads, [&](int idx) {
        int iy = idx / nx, ix = idx % nx;
        double x = nx == 1 ? x0 : x0 + (x1 - x0) * ix / (nx - 1);
        double y = ny == 1 ? y0 : y0 + (y1 - y0) * iy / (ny - 1);
        try {
            double s = smallest_singular_value(P.shifted(Complex(x, y)));
            grid.log10_smin[static_cast<std::size_t>(idx)] =
                s > 0.0 ? std::log10(s) : -std::numeric_limits<double>::infinity();
        } catch (const NoConvergence&) {
            // left as NaN: missing data, never fabricated
        }
    });
    return grid;
}

std::vector<SweepPoint> spacing_experiment(const LaurentSymbol& sym, Complex z0, double radius,
                                           const std::vector<int>& n_sweep) {
    std::vector<SweepPoint> out;
    for (int n : n_sweep) {
        OperatorSpec spec(sym, n);
        auto segments = eigenvalue_spacing_check(spec, z0, radius);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& seg : segments)
            if (seg.eigen_count >= 2) best = std::min(best, seg.gap_times_n);
        out.push_back({n, best});
    }
    return out;
}

std::vector<SweepPoint> resolvent_stability_experiment(const LaurentSymbol& sym, Complex z,
                                                       const std::vector<int>& n_sweep) {
    std::vector<SweepPoint> out;
    for (int n : n_sweep) {
        OperatorSpec spec(sym, n);
        out.push_back({n, smallest_singular_value(build_toeplitz(spec).shifted(z))});
    }
    return out;
}

QuasimodeDecay quasimode_decay_experiment(const LaurentSymbol& sym, Complex z,
                                          const std::vector<int>& n_sweep) {
    QuasimodeDecay out;
    std::vector<double> xs, ys;
    for (int n : n_sweep) {
        OperatorSpec spec(sym, n);
        Quasimode qm = build_quasimode(spec, z);
        out.residuals.push_back({n, qm.residual});
        xs.push_back(static_cast<double>(n));
        ys.push_back(std::log(qm.residual));
    }
    out.log_fit = fit_line(xs, ys);
    return out;
}

std::vector<int> theta_binning(const std::vector<EigenRecord>& eigens, int bins) {
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (const auto& e : eigens) {
        int b = static_cast<int>(std::floor(e.theta_star / kTwoPi * bins));
        counts[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))] += 1;
    }
    return counts;
}

}  // namespace toeplab
