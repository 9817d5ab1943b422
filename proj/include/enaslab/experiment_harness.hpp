#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "enaslab/enas_core.hpp"

namespace enaslab {

/// Initialisation bound: a fixed s, or s = n/4 per problem size.
struct InitRule {
  enum class Kind { Fixed, QuarterN };
  Kind kind = Kind::QuarterN;
  int fixed = 0;

  static InitRule quarter_n() { return {Kind::QuarterN, 0}; }
  static InitRule fixed_at(int s) { return {Kind::Fixed, s}; }
  int resolve(int n) const { return kind == Kind::QuarterN ? n / 4 : fixed; }
};

struct SweepConfig {
  std::vector<int> n_values;
  std::vector<MutationMode> modes{MutationMode::OneBit, MutationMode::MultiBit};
  std::vector<Semantics> semantics{Semantics::Literal};
  std::int64_t trials = 10'000;
  InitRule s_rule = InitRule::quarter_n();
  std::uint64_t master_seed = 0;
  int workers = 1;
  std::int64_t max_generations = 10'000'000;
  bool strict_selection = false;
};

struct TrialRecord {
  std::int64_t trial;
  std::uint64_t seed;
  int n;
  MutationMode mode;
  Semantics semantics;
  std::int64_t generations;
  Architecture initial;
  Architecture final;
  bool hit_cap;
};

struct SweepCell {
  int n = 0;
  MutationMode mode = MutationMode::OneBit;
  Semantics semantics = Semantics::Literal;
  int s = 0;
  std::int64_t trials = 0;
  // Statistics of generations over uncapped trials.
  double mean = 0.0;
  double std = 0.0;
  double std_error = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::optional<double> theory_upper;  // 63n/4 for one-bit mutation
  std::int64_t capped_trials = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<TrialRecord> trials;  // cell order, then trial index
};

/// Seed of one trial; depends only on its coordinates.
std::uint64_t trial_seed(std::uint64_t master, int n, MutationMode mode, Semantics semantics,
                         std::int64_t trial);

void validate(const SweepConfig& cfg);

/// Cells are ordered by n, then mode (one-bit first), then semantics
/// (literal first). Output is independent of cfg.workers.
SweepResult run_sweep(const SweepConfig& cfg);

/// Aggregates one cell from its trial records (all with the same n, mode,
/// semantics).
SweepCell summarize_cell(int n, MutationMode mode, Semantics semantics, int s,
                         const std::vector<TrialRecord>& records);

enum class DriftPhase { Phase1, Phase2 };

const char* to_string(DriftPhase phase) noexcept;

/// Pooled one-step decrease of the phase distance of the parent:
/// Phase1 while i < b + c with d1 = (b + c) - i, Phase2 afterwards with
/// d2 = (a + b) - j. mean is NaN when samples == 0.
struct DriftRecord {
  DriftPhase phase;
  double mean_one_step_decrease;
  double std_error;
  std::int64_t samples;
  int max_abs_change;
};

/// Accumulates drift samples from recorded trajectories.
class DriftAccumulator {
 public:
  explicit DriftAccumulator(const UniformInstance& inst) : inst_(inst) {}
  void add(const std::vector<TrajectoryRecord>& trajectory);
  void merge(const DriftAccumulator& other);
  std::vector<DriftRecord> records() const;

 private:
  struct Moments {
    std::int64_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;
    int max_abs = 0;
  };
  UniformInstance inst_;
  std::array<Moments, 2> phases_{};
};

/// Runs `trials` trajectories with seeds derive_seed(cfg.seed, {t}).
/// Requires cfg.record_trajectory.
std::vector<DriftRecord> estimate_drift(const TrialConfig& cfg, std::int64_t trials,
                                        int workers = 1);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;  // NaN when degenerate
  bool degenerate;   // all means equal
};

/// Ordinary least squares of mean generations against n. Needs at least
/// three cells with one mode and one semantics and distinct n.
LinearFit fit_linear(const std::vector<SweepCell>& cells);

struct BoundCheck {
  int n;
  MutationMode mode;
  Semantics semantics;
  std::string check;  // "onebit_upper" or "multibit_lower"
  double statistic;   // mean + 3 SE or mean - 3 SE
  double bound;
  bool pass;
};

/// One-bit cells: mean + 3 SE <= 63n/4. Multi-bit cells: mean - 3 SE >= n/5.
std::vector<BoundCheck> check_bounds(const std::vector<SweepCell>& cells);

// Distribution checks for the random components.

struct OperatorCounts {
  std::array<std::int64_t, 12> counts{};
  std::int64_t total = 0;
};

OperatorCounts sample_operator_counts(std::int64_t draws, Rng& rng);

/// counts[k] for k = 1 .. counts.size() - 1; larger K lands in the last slot.
struct KCounts {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

KCounts sample_k_counts(MutationMode mode, std::int64_t draws, Rng& rng, int max_k = 12);

/// Exact law of Z0 = n_B + n_C under independent U{0..s} draws:
/// P(Z0 = z) = (min(z, 2s - z) + 1) / (s + 1)^2.
double z0_probability(int s, int z);

struct Z0Statistics {
  double mean;
  double tv_distance;
  std::int64_t samples;
};

Z0Statistics sample_z0_statistics(int s, std::int64_t samples, Rng& rng);

}  // namespace enaslab
