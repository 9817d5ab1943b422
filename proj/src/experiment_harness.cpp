#include "enaslab/experiment_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "enaslab/parallel.hpp"

namespace enaslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZ95 = 1.959963984540054;

struct CellKey {
  int n;
  MutationMode mode;
  Semantics semantics;
};

std::vector<CellKey> cell_keys(const SweepConfig& cfg) {
  const std::set<int> ns(cfg.n_values.begin(), cfg.n_values.end());
  const std::set<MutationMode> modes(cfg.modes.begin(), cfg.modes.end());
  const std::set<Semantics> semantics(cfg.semantics.begin(), cfg.semantics.end());
  std::vector<CellKey> keys;
  for (const int n : ns)
    for (const MutationMode mode : modes)
      for (const Semantics sem : semantics) keys.push_back({n, mode, sem});
  return keys;
}

}  // namespace

const char* to_string(DriftPhase phase) noexcept {
  return phase == DriftPhase::Phase1 ? "phase1" : "phase2";
}

std::uint64_t trial_seed(std::uint64_t master, int n, MutationMode mode, Semantics semantics,
                         std::int64_t trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(mode),
                              static_cast<std::uint64_t>(semantics),
                              static_cast<std::uint64_t>(trial)});
}

void validate(const SweepConfig& cfg) {
  if (cfg.n_values.empty()) throw std::invalid_argument("sweep needs at least one n");
  if (cfg.modes.empty()) throw std::invalid_argument("sweep needs at least one mode");
  if (cfg.semantics.empty()) throw std::invalid_argument("sweep needs at least one semantics");
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.max_generations < 1) throw std::invalid_argument("max_generations must be >= 1");
  if (cfg.s_rule.kind == InitRule::Kind::Fixed && cfg.s_rule.fixed < 0) {
    throw std::invalid_argument("initialisation bound s must be >= 0");
  }
  for (const int n : cfg.n_values) make_instance(n);
}


SweepCell summarize_cell(int n, MutationMode mode, Semantics semantics, int s,
                         const std::vector<TrialRecord>& records) {
  SweepCell cell;
  cell.n = n;
  cell.mode = mode;
  cell.semantics = semantics;
  cell.s = s;
  cell.trials = static_cast<std::int64_t>(records.size());
  if (mode == MutationMode::OneBit) cell.theory_upper = 63.0 * n / 4.0;

  // Welford running moments over uncapped trials, in trial order.
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const TrialRecord& r : records) {
    if (r.hit_cap) {
      ++cell.capped_trials;
      continue;
    }
    const auto g = static_cast<double>(r.generations);
    ++count;
    const double delta = g - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (g - mean);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  if (count == 0) {
    cell.mean = cell.std = cell.std_error = cell.ci95_low = cell.ci95_high = kNaN;
    cell.min = cell.max = kNaN;
    return cell;
  }
  cell.mean = mean;
  cell.std = count > 1 ? std::sqrt(m2 / static_cast<double>(count - 1)) : 0.0;
  cell.std_error = cell.std / std::sqrt(static_cast<double>(count));
  cell.ci95_low = mean - kZ95 * cell.std_error;
  cell.ci95_high = mean + kZ95 * cell.std_error;
  cell.min = lo;
  cell.max = hi;
  return cell;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const std::vector<CellKey> keys = cell_keys(cfg);
  const auto per_cell = static_cast<std::size_t>(cfg.trials);

  SweepResult result;
  result.trials.resize(keys.size() * per_cell);
  parallel_for(result.trials.size(), cfg.workers, [&](std::size_t index) {
    const CellKey& key = keys[index / per_cell];
    const auto trial = static_cast<std::int64_t>(index % per_cell);
    TrialConfig tc;
    tc.n = key.n;
    tc.s = cfg.s_rule.resolve(key.n);
    tc.mode = key.mode;
    tc.semantics = key.semantics;
    tc.seed = trial_seed(cfg.master_seed, key.n, key.mode, key.semantics, trial);
    tc.max_generations = cfg.max_generations;
    tc.strict_selection = cfg.strict_selection;
    const TrialResult r = run_trial(tc);
    result.trials[index] = {trial,     tc.seed,       key.n,   key.mode, key.semantics,
                            r.generations, r.initial, r.final, r.hit_cap};
  });

  for (std::size_t c = 0; c < keys.size(); ++c) {
    const auto first = result.trials.begin() + static_cast<std::ptrdiff_t>(c * per_cell);
    const std::vector<TrialRecord> records(first, first + static_cast<std::ptrdiff_t>(per_cell));
    result.cells.push_back(summarize_cell(keys[c].n, keys[c].mode, keys[c].semantics,
                                          cfg.s_rule.resolve(keys[c].n), records));
  }
  return result;
}

void DriftAccumulator::add(const std::vector<TrajectoryRecord>& trajectory) {
  const Levels target = optimal_levels(inst_);
  for (std::size_t t = 1; t < trajectory.size(); ++t) {
    const Levels before = trajectory[t - 1].levels;
    const Levels after = trajectory[t].levels;
    const bool phase1 = before.i < target.i;
    const int decrease = phase1 ? after.i - before.i : after.j - before.j;
    Moments& m = phases_[phase1 ? 0 : 1];
    ++m.count;
    m.sum += decrease;
    m.sum_sq += static_cast<double>(decrease) * decrease;
    m.max_abs = std::max(m.max_abs, std::abs(decrease));
  }
}

void DriftAccumulator::merge(const DriftAccumulator& other) {
  for (std::size_t p = 0; p < phases_.size(); ++p) {
    phases_[p].count += other.phases_[p].count;
    phases_[p].sum += other.phases_[p].sum;
    phases_[p].sum_sq += other.phases_[p].sum_sq;
    phases_[p].max_abs = std::max(phases_[p].max_abs, other.phases_[p].max_abs);
  }
}

std::vector<DriftRecord> DriftAccumulator::records() const {
  std::vector<DriftRecord> out;
  for (std::size_t p = 0; p < phases_.size(); ++p) {
    const Moments& m = phases_[p];
    const DriftPhase phase = p == 0 ? DriftPhase::Phase1 : DriftPhase::Phase2;
    if (m.count == 0) {
      out.push_back({phase, kNaN, kNaN, 0, 0});
      continue;
    }
    const auto k = static_cast<double>(m.count);
    const double mean = m.sum / k;
    const double var = m.count > 1 ? std::max(0.0, (m.sum_sq - k * mean * mean) / (k - 1)) : 0.0;
    out.push_back({phase, mean, std::sqrt(var / k), m.count, m.max_abs});
  }
  return out;
}

std::vector<DriftRecord> estimate_drift(const TrialConfig& cfg, std::int64_t trials,
                                        int workers) {
  if (!cfg.record_trajectory) {
    throw std::invalid_argument("estimate_drift requires record_trajectory");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  validate(cfg);
  const UniformInstance inst = make_instance(cfg.n);
  // One accumulator per trial keeps the merge order fixed.
  std::vector<DriftAccumulator> partial(static_cast<std::size_t>(trials), DriftAccumulator(inst));
  parallel_for(partial.size(), workers, [&](std::size_t t) {
    TrialConfig tc = cfg;
    tc.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(t)});
    const TrialResult r = run_trial(tc);
    partial[t].add(*r.trajectory);
  });
  DriftAccumulator total(inst);
  for (const DriftAccumulator& p : partial) total.merge(p);
  return total.records();
}

LinearFit fit_linear(const std::vector<SweepCell>& cells) {
  if (cells.size() < 3) throw std::invalid_argument("fit_linear needs at least 3 cells");
  std::set<int> ns;
  for (const SweepCell& cell : cells) {
    if (cell.mode != cells.front().mode || cell.semantics != cells.front().semantics) {
      throw std::invalid_argument("fit_linear needs cells of a single mode and semantics");
    }
    if (!ns.insert(cell.n).second) throw std::invalid_argument("fit_linear needs distinct n");
  }
  const auto count = static_cast<double>(cells.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const SweepCell& cell : cells) {
    mean_x += cell.n;
    mean_y += cell.mean;
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const SweepCell& cell : cells) {
    const double dx = cell.n - mean_x;
    const double dy = cell.mean - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = mean_y - slope * mean_x;
  if (syy == 0.0) return {slope, intercept, kNaN, true};
  return {slope, intercept, (sxy * sxy) / (sxx * syy), false};
}

std::vector<BoundCheck> check_bounds(const std::vector<SweepCell>& cells) {
  std::vector<BoundCheck> report;
  for (const SweepCell& cell : cells) {
    if (cell.mode == MutationMode::OneBit) {
      const double statistic = cell.mean + 3.0 * cell.std_error;
      const double bound = 63.0 * cell.n / 4.0;
      report.push_back({cell.n, cell.mode, cell.semantics, "onebit_upper", statistic, bound,
                        statistic <= bound});
    } else {
      const double statistic = cell.mean - 3.0 * cell.std_error;
      const double bound = cell.n / 5.0;
      report.push_back({cell.n, cell.mode, cell.semantics, "multibit_lower", statistic, bound,
                        statistic >= bound});
    }
  }
  return report;
}

OperatorCounts sample_operator_counts(std::int64_t draws, Rng& rng) {
  OperatorCounts out;
  for (std::int64_t d = 0; d < draws; ++d) ++out.counts[operator_index(sample_op(rng))];
  out.total = draws;
  return out;
}

KCounts sample_k_counts(MutationMode mode, std::int64_t draws, Rng& rng, int max_k) {
  KCounts out;
  out.counts.assign(static_cast<std::size_t>(max_k) + 1, 0);
  for (std::int64_t d = 0; d < draws; ++d) {
    const int k = std::min(sample_k(mode, rng), max_k);
    ++out.counts[static_cast<std::size_t>(k)];
  }
  out.total = draws;
  return out;
}

double z0_probability(int s, int z) {
  if (z < 0 || z > 2 * s) return 0.0;
  const double cells = static_cast<double>(s + 1) * (s + 1);
  return (std::min(z, 2 * s - z) + 1) / cells;
}

Z0Statistics sample_z0_statistics(int s, std::int64_t samples, Rng& rng) {
  std::vector<std::int64_t> histogram(static_cast<std::size_t>(2 * s) + 1, 0);
  double sum = 0.0;
  for (std::int64_t d = 0; d < samples; ++d) {
    const Architecture x = init_architecture(s, rng);
    const int z = x.n_b + x.n_c;
    ++histogram[static_cast<std::size_t>(z)];
    sum += z;
  }
  double tv = 0.0;
  for (int z = 0; z <= 2 * s; ++z) {
    const double empirical =
        static_cast<double>(histogram[static_cast<std::size_t>(z)]) / static_cast<double>(samples);
    tv += std::abs(empirical - z0_probability(s, z));
  }
  return {sum / static_cast<double>(samples), 0.5 * tv, samples};
}

}  // namespace enaslab
