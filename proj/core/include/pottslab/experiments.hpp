#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pottslab/checks.hpp"
#include "pottslab/params.hpp"

namespace pottslab {

enum class BoundaryStrategy { kAllOneColorPair, kRandomPair, kAdversarialSearch };

struct ExperimentConfig {
  PottsParams params;
  MixingMode mode = MixingMode::kWsm;
  std::vector<int> depths;          // ascending, nonempty
  BoundaryStrategy strategy = BoundaryStrategy::kAllOneColorPair;
  int instances_per_depth = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DepthPoint {
  int depth;
  double max_discrepancy;  // max over instances of max over colors
  int n_instances;
};

/// Decay of root-marginal discrepancies with boundary distance, plus a
/// geometric fit r of the tail (deepest half of the depth range; least squares
/// on log discrepancies). target_rate is the proven rate d/(d+1).
struct DecayReport {
  std::vector<DepthPoint> per_depth;
  double fitted_rate = 0.0;
  double fitted_c = 0.0;
  double target_rate = 0.0;
  bool degenerate_fit = false;      // zero discrepancy hit in the fit window
  bool rate_ok = false;             // fitted_rate <= target_rate + 0.01
  std::vector<int> anomalies;       // depths > 2 where monotone decay failed (complete trees)
};

/// Full-level boundary at each depth. The all-one-color-pair strategy runs on
/// the symmetric level iteration, so depth 40 at branching 29 is as cheap as a
/// single vector map; explicit-tree strategies are memory-guarded.
DecayReport run_wsm_experiment(const ExperimentConfig& cfg);

/// Mixed boundary: a shared partial coloring plus a disagreement set at
/// distance exactly t from the root, on random explicit trees.
DecayReport run_ssm_experiment(const ExperimentConfig& cfg);

struct TraceLevel {
  int depth;
  double mean_sq_dist;  // mean over instances/path vertices of ||X_u - Y_u||^2
  double max_sq_dist;
  long count;
};

/// ||X_u - Y_u||^2 along root-to-disagreement paths, one row per depth, with
/// the depth-averaged per-step ratio (geometric mean of level-to-level ratios).
struct ContractionTrace {
  std::vector<TraceLevel> levels;
  double step_ratio = 0.0;    // (D(0)/D(L))^{1/L} over the decaying range
  bool step_ratio_ok = false; // step_ratio <= d/(d+1) + 0.02
  bool all_zero = false;
};

ContractionTrace sqrt_ratio_contraction_trace(const ExperimentConfig& cfg);

/// Serialization used by the CLI and the acceptance suite; both are
/// byte-stable for a fixed config.
std::string decay_report_csv(const DecayReport& r);
std::string decay_report_json(const DecayReport& r, const ExperimentConfig& cfg,
                              bool probe_mode, bool threshold_extrapolated);

}  // namespace pottslab
