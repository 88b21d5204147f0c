#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toeplab/domains.hpp"
#include "toeplab/grushin.hpp"
#include "toeplab/operators.hpp"
#include "toeplab/randmat.hpp"

namespace toeplab {

/// One Monte Carlo trial of the eigenvalue-count experiments.
struct TrialRecord {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    std::string symbol_id;  // canonical zeta_inverse form
    int n = 0;
    double delta = 0.0;
    std::string region;  // descriptor string
    int observed_count = 0;
    double predicted_count = 0.0;  // (N / 2 pi) * preimage arc measure
    double hs_norm = 0.0;          // ||Q||_HS of the sampled perturbation
    std::vector<double> log_det_eminusplus;  // log|det E_{-+}^delta| at probes
    double q50 = 0.0, q90 = 0.0, q99 = 0.0;  // eigenvalue distance quantiles
    int out_of_tube = -1;                    // tube trials only; -1 = n/a
    bool delta_window_ok = true;             // admissibility window check
    double runtime_ms = 0.0;                 // not part of the canonical record
};

/// Per-eigenvalue data kept alongside a trial for dumps and plots.
struct EigenRecord {
    Complex z;
    double dist = 0.0;
    double theta_star = 0.0;
};

struct WeylTrialResult {
    TrialRecord record;
    std::vector<EigenRecord> eigens;
};

struct PotentialProbe {
    Complex z;
    double u_xi_n = 0.0;  // -(1/N) log|det(P^delta - z)|
    double u_xi = 0.0;    // -(1/2pi) integral of log|z - f(theta)|
    double phi = 0.0;     // circulant weight
};

struct TailProbeReport {
    Complex z;
    double alpha_z = 0.0;
    double threshold = 0.0;  // -N^{eps0}
    bool delta_small_enough = false;  // delta <= alpha / N^3 (recorded, not enforced)
    int trials = 0;
    int hits = 0;  // log|det E_{-+}^delta|^2 >= threshold
    double frequency = 0.0;
    std::vector<double> log_dets;  // log|det E_{-+}^delta| per trial
    std::vector<int> histogram;    // 40 bins over [hist_lo, hist_hi]
    double hist_lo = 0.0, hist_hi = 0.0;
};

struct PseudospectrumGrid {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    int nx = 0, ny = 0;
    int n = 0;
    double delta = 0.0;
    std::vector<double> log10_smin;  // index = iy * nx + ix; NaN = missing
};

struct SweepPoint {
    int n = 0;
    double value = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

/// One Weyl-law trial: eigensolve of P_N + delta*Q, counts against the
/// predicted (N / 2 pi) arc measure, distance quantiles to the curve.
/// Optional probes: z values at which log|det E_{-+}^delta| is recorded.
/// epsilon0 drives the admissibility-window flag.
WeylTrialResult weyl_trial(const OperatorSpec& spec, double delta, const Region& region,
                           SeededStream stream, const CurveSampler& sampler,
                           double epsilon0 = 0.8,
                           const std::vector<Complex>& logdet_probes = {});

/// Weyl trial in the curve tube of radius tau = N^{-1+epsilon}; additionally
/// records the out-of-tube count.
WeylTrialResult thin_tube_trial(const OperatorSpec& spec, double delta, double epsilon,
                                SeededStream stream, const CurveSampler& sampler,
                                double epsilon0 = 0.8);

/// Run n_trials independent trials (trial_index = 0..n_trials-1) in parallel,
/// sorted by trial index. tube_epsilon switches to thin_tube_trial.
std::vector<WeylTrialResult> run_trials(const OperatorSpec& spec, double delta,
                                        const std::optional<Region>& region,
                                        std::optional<double> tube_epsilon,
                                        std::uint64_t master_seed, int n_trials, int threads = 0,
                                        double epsilon0 = 0.8);

/// Log-potential comparison at the probes: U_{xi_N} from one sampled trial,
/// U_xi by adaptive trapezoid quadrature (tolerance 1e-10), phi from the
/// circulant weight. Probes must stay off the curve. Throws OnSpectrum when a
/// probe hits an eigenvalue exactly.
std::vector<PotentialProbe> potential_compare(const OperatorSpec& spec, double delta,
                                              const std::vector<Complex>& probes,
                                              SeededStream stream);

/// Empirical tail of log|det E_{-+}^delta|^2 >= -N^{eps0} over Monte Carlo
/// trials, one report per probe. Enforces alpha(z) >= 1 / (alpha_c * N) and
/// records (without enforcing) the delta <= alpha / N^3 smallness flag.
std::vector<TailProbeReport> effective_tail_experiment(const OperatorSpec& spec, double delta,
                                                       const std::vector<Complex>& probes,
                                                       int trials, double epsilon0,
                                                       std::uint64_t master_seed, int threads = 0,
                                                       double alpha_c = 100.0);

/// log10 of s_min(P_N [+ delta Q] - z) over a rectangular grid. Nodes where
/// the iteration fails are NaN. Grid limited to 512 x 512.
PseudospectrumGrid pseudospectrum_grid(const OperatorSpec& spec, double x0, double x1, double y0,
                                       double y1, int nx, int ny, double delta = 0.0,
                                       std::optional<std::uint64_t> seed = std::nullopt,
                                       int threads = 0);

/// min over curve segments of (min gap * N~) for each N in the sweep.
std::vector<SweepPoint> spacing_experiment(const LaurentSymbol& sym, Complex z0, double radius,
                                           const std::vector<int>& n_sweep);

/// s_min(P_N - z) over the sweep (winding-zero stability check).
std::vector<SweepPoint> resolvent_stability_experiment(const LaurentSymbol& sym, Complex z,
                                                       const std::vector<int>& n_sweep);

/// Quasimode residuals over the sweep plus the fitted log-residual line.
struct QuasimodeDecay {
    std::vector<SweepPoint> residuals;
    LineFit log_fit;  // log(residual) vs N
};
QuasimodeDecay quasimode_decay_experiment(const LaurentSymbol& sym, Complex z,
                                          const std::vector<int>& n_sweep);

/// Bin eigenvalues by their curve parameter theta* into B equal bins.
std::vector<int> theta_binning(const std::vector<EigenRecord>& eigens, int bins);

/// Nearest-rank quantile of an unsorted sample.
double quantile(std::vector<double> values, double q);

}  // namespace toeplab
