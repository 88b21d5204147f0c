#pragma once

#include <string>
#include <vector>

#include "toeplab/experiments.hpp"

namespace toeplab {

inline constexpr int kTrialSchemaVersion = 1;

/// Eigenvalue dump: header `trial,re,im,dist_to_curve,theta_star`.
void write_eigen_csv(const std::string& path, const std::vector<WeylTrialResult>& trials);

/// JSON-lines, one record per trial, schema-versioned. Timing fields are
/// emitted only on request so identical (seed, config) runs stay
/// byte-identical.
void write_trials_jsonl(const std::string& path, const std::vector<WeylTrialResult>& trials,
                        bool emit_timings = false);
std::string trial_record_json(const TrialRecord& rec, bool emit_timings = false);

/// Grid of log10 s_min as a CSV matrix plus a JSON sidecar with the bbox and
/// run metadata (sidecar written to path + ".json").
void write_grid_csv(const std::string& path, const PseudospectrumGrid& grid,
                    const std::string& symbol_id);

/// SVG scatter of eigenvalues with the sampled symbol curve overlaid.
void write_svg_scatter(const std::string& path, const LaurentSymbol& sym,
                       const std::vector<EigenRecord>& eigens, int curve_samples = 2048);

/// Tail experiment reports as a JSON document.
void write_tail_json(const std::string& path, const std::vector<TailProbeReport>& reports,
                     double delta, std::uint64_t master_seed);

/// Potential probes as a JSON document.
void write_potential_json(const std::string& path, const std::vector<PotentialProbe>& probes);

}  // namespace toeplab
