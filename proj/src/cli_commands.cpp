#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "enaslab/block_network.hpp"
#include "enaslab/cli.hpp"

namespace enaslab::cli {

namespace {

namespace fs = std::filesystem;

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  }
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  const fs::path path = fs::path(dir) / name;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path.string() + "' for writing");
  file << content;
  file.flush();
  if (!file) throw IoError("failed writing '" + path.string() + "'");
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

nlohmann::ordered_json metadata() {
  nlohmann::ordered_json meta;
  meta["generated_at"] = timestamp_utc();
  meta["n_grid"] = "problem sizes restricted to multiples of 4 (n >= 8)";
  return meta;
}

nlohmann::ordered_json arch_json(const Architecture& x) {
  return {{"nA", x.n_a}, {"nB", x.n_b}, {"nC", x.n_c}};
}

TrialConfig single_trial_config(const ResolvedConfig& cfg) {
  if (cfg.n_values.size() != 1 || cfg.modes.size() != 1 || cfg.semantics.size() != 1) {
    throw UsageError("run needs exactly one n, one mode and one semantics");
  }
  TrialConfig tc;
  tc.n = cfg.n_values.front();
  tc.s = cfg.s.resolve(tc.n);
  tc.mode = cfg.modes.front();
  tc.semantics = cfg.semantics.front();
  tc.seed = cfg.seed;
  tc.max_generations = cfg.max_gens;
  tc.record_trajectory = cfg.trajectory;
  tc.strict_selection = cfg.strict_selection;
  return tc;
}

int run_single(const ResolvedConfig& cfg, std::ostream& out, std::ostream& log) {
  const TrialConfig tc = single_trial_config(cfg);
  const TrialResult r = run_trial(tc);
  const UniformInstance inst = make_instance(tc.n);

  nlohmann::ordered_json doc;
  doc["config"] = cfg.to_json();
  auto& result = doc["result"];
  result["generations"] = r.generations;
  result["hit_cap"] = r.hit_cap;
  result["initial"] = arch_json(r.initial);
  result["final"] = arch_json(r.final);
  const Levels final_levels = evaluate(r.final, inst, tc.semantics).levels;
  result["final_levels"] = {final_levels.i, final_levels.j};
  result["optimal"] = is_optimal(r.final, inst, tc.semantics);
  const std::string json_text = doc.dump(2) + "\n";

  if (!cfg.out.empty()) {
    ensure_directory(cfg.out);
    write_file(cfg.out, "config.json", cfg.to_json().dump(2) + "\n");
    write_file(cfg.out, "trial.json", json_text);
    if (r.trajectory) write_file(cfg.out, "trajectory.csv", trajectory_csv(*r.trajectory));
    log << "run: generations=" << r.generations << " hit_cap=" << r.hit_cap << '\n';
  } else if (r.trajectory) {
    out << trajectory_csv(*r.trajectory);
    log << json_text;
  } else {
    out << json_text;
  }
  return kSuccess;
}

int run_sweep_command(const ResolvedConfig& cfg, std::ostream& out, std::ostream& log) {
  const SweepConfig sweep = to_sweep_config(cfg);
  const std::string dir = cfg.out.empty() ? std::string("results") : cfg.out;
  ensure_directory(dir);
  const SweepResult result = run_sweep(sweep);

  nlohmann::ordered_json summary;
  summary["config"] = cfg.to_json();
  auto& cells = summary["cells"] = nlohmann::ordered_json::array();
  for (const SweepCell& cell : result.cells) cells.push_back(cell_json(cell));
  auto& bounds = summary["bound_checks"] = nlohmann::ordered_json::array();
  for (const BoundCheck& check : check_bounds(result.cells)) {
    bounds.push_back({{"n", check.n},
                      {"mode", to_string(check.mode)},
                      {"semantics", to_string(check.semantics)},
                      {"check", check.check},
                      {"statistic", check.statistic},
                      {"bound", check.bound},
                      {"pass", check.pass}});
  }
  auto& fits = summary["linear_fits"] = nlohmann::ordered_json::array();
  for (const MutationMode mode : cfg.modes) {
    for (const Semantics sem : cfg.semantics) {
      std::vector<SweepCell> group;
      for (const SweepCell& cell : result.cells) {
        if (cell.mode == mode && cell.semantics == sem) group.push_back(cell);
      }
      if (group.size() < 3) continue;
      const LinearFit fit = fit_linear(group);
      fits.push_back({{"mode", to_string(mode)},
                      {"semantics", to_string(sem)},
                      {"slope", fit.slope},
                      {"intercept", fit.intercept},
                      {"r_squared", fit.degenerate ? nlohmann::ordered_json() : nlohmann::ordered_json(fit.r_squared)},
                      {"degenerate", fit.degenerate}});
    }
  }
  summary["metadata"] = metadata();

  const std::string cell_text = cells_csv(result.cells);
  write_file(dir, "cells.csv", cell_text);
  write_file(dir, "trials.csv", trials_csv(result.trials));
  write_file(dir, "summary.json", summary.dump(2) + "\n");
  write_file(dir, "config.json", cfg.to_json().dump(2) + "\n");
  out << cell_text;
  std::int64_t capped = 0;
  for (const SweepCell& cell : result.cells) capped += cell.capped_trials;
  if (capped > 0) log << "warning: " << capped << " trial(s) hit the generation cap\n";
  log << "sweep: wrote " << dir << "/{cells.csv,trials.csv,summary.json,config.json}\n";
  return kSuccess;
}

int run_drift_command(const ResolvedConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<DriftRow> rows;
  for (const int n : cfg.n_values)
    for (const MutationMode mode : cfg.modes)
      for (const Semantics sem : cfg.semantics) {
        TrialConfig tc;
        tc.n = n;
        tc.s = cfg.s.resolve(n);
        tc.mode = mode;
        tc.semantics = sem;
        tc.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(mode),
                                         static_cast<std::uint64_t>(sem)});
        tc.max_generations = cfg.max_gens;
        tc.record_trajectory = true;
        tc.strict_selection = cfg.strict_selection;
        for (const DriftRecord& record : estimate_drift(tc, cfg.trials, cfg.workers)) {
          rows.push_back({n, mode, sem, record});
        }
      }
  const std::string text = drift_csv(rows);
  if (cfg.out.empty()) {
    out << text;
  } else {
    ensure_directory(cfg.out);
    write_file(cfg.out, "drift.csv", text);
    write_file(cfg.out, "config.json", cfg.to_json().dump(2) + "\n");
    log << "drift: wrote " << cfg.out << "/drift.csv\n";
  }
  return kSuccess;
}

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}
  void check(bool pass, const std::string& line) {
    out_ << (pass ? "PASS " : "FAIL ") << line << '\n';
    failures_ += pass ? 0 : 1;
  }
  int exit_code() const { return failures_ == 0 ? kSuccess : kValidation; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

int run_validate_fitness(const ResolvedConfig& cfg, std::ostream& out, std::ostream& log) {
  Report report(out);
  for (const int n : cfg.n_values) {
    const UniformInstance inst = make_instance(n);

    // Greedy placement against exhaustive enumeration.
    int mismatches = 0, cases = 0;
    for (int a = 0; a <= cfg.cap; ++a)
      for (int b = 0; b <= cfg.cap; ++b)
        for (int c = 0; c <= cfg.cap; ++c) {
          const Architecture x{a, b, c};
          const Levels greedy = allocation_levels(best_allocation_greedy(x, inst), inst);
          const Levels brute =
              allocation_levels(best_allocation_bruteforce(x, inst, cfg.cap), inst);
          ++cases;
          if (greedy != brute) {
            ++mismatches;
            log << "mismatch n=" << n << " x=(" << a << ',' << b << ',' << c << ")\n";
          }
        }
    report.check(mismatches == 0, "greedy-vs-bruteforce n=" + std::to_string(n) +
                                      " cases=" + std::to_string(cases) +
                                      " mismatches=" + std::to_string(mismatches));

    // Lexicographic level order equals the order of fitness values.
    const Levels top = optimal_levels(inst);
    std::vector<std::pair<Levels, double>> grid;
    for (int i = 0; i <= top.i; ++i)
      for (int j = 0; j <= top.j; ++j) grid.push_back({{i, j}, fitness_value({i, j}, inst)});
    bool ordered = true;
    for (std::size_t k = 1; k < grid.size(); ++k) ordered &= grid[k - 1].second < grid[k].second;
    report.check(ordered, "level-order-matches-value n=" + std::to_string(n));

    // Monte Carlo accuracy of the placed network against the closed form.
    std::vector<std::pair<std::string, Architecture>> archs{
        {"canonical-optimum", {inst.a(), inst.b(), inst.c()}},
        {"compensated-optimum", {inst.a() + 2, inst.b() - 2, inst.c() + 2}},
        {"empty", {0, 0, 0}}};
    Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(n)}));
    for (int t = 0; t < 20; ++t) {
      const Architecture x{static_cast<int>(rng.uniform_int(0, cfg.cap)),
                           static_cast<int>(rng.uniform_int(0, cfg.cap)),
                           static_cast<int>(rng.uniform_int(0, cfg.cap))};
      archs.push_back({"random-" + std::to_string(t), x});
    }
    for (std::size_t k = 0; k < archs.size(); ++k) {
      const auto& [name, x] = archs[k];
      const FitnessScore expected = placement_fitness(x, inst);
      const Classifier cl = build_network(best_allocation_greedy(x, inst), inst);
      const AccuracyEstimate mc = monte_carlo_accuracy(
          cl, cfg.samples, derive_seed(cfg.seed, {static_cast<std::uint64_t>(n), k, 1}),
          cfg.workers);
      const double deviation = std::abs(mc.estimate - expected.value);
      const bool exact_optimum = expected.levels == top;
      const bool pass = exact_optimum ? mc.correct == mc.samples
                                      : deviation <= 4.0 * mc.std_error + 1e-12;
      std::ostringstream line;
      line << "monte-carlo n=" << n << ' ' << name << " x=(" << x.n_a << ',' << x.n_b << ','
           << x.n_c << ") closed_form=" << format_double(expected.value)
           << " estimate=" << format_double(mc.estimate)
           << " se=" << format_double(mc.std_error);
      report.check(pass, line.str());
    }
  }
  return report.exit_code();
}

int run_validate_distributions(const ResolvedConfig& cfg, std::ostream& out, std::ostream&) {
  Report report(out);
  const auto draws = cfg.samples;
  const double total = static_cast<double>(draws);
  auto within = [&](double freq, double p, double sigmas) {
    return std::abs(freq - p) <= sigmas * std::sqrt(p * (1.0 - p) / total);
  };

  Rng op_rng(derive_seed(cfg.seed, {0x09}));
  const OperatorCounts ops = sample_operator_counts(draws, op_rng);
  auto freq = [&](std::initializer_list<int> indices) {
    std::int64_t c = 0;
    for (const int i : indices) c += ops.counts[static_cast<std::size_t>(i)];
    return static_cast<double>(c) / total;
  };
  for (int i = 0; i < 12; ++i) {
    const double p = i < 6 ? 1.0 / 9.0 : 1.0 / 18.0;
    const double f = freq({i});
    report.check(within(f, p, 3.0), "operator-" + std::to_string(i) + " freq=" +
                                        format_double(f) + " p=" + format_double(p));
  }
  const double add_bc = freq({1, 2});
  report.check(std::abs(add_bc - 2.0 / 9.0) <= 0.005, "add-B-or-C freq=" + format_double(add_bc));
  const double mod_a = freq({6, 7});
  report.check(std::abs(mod_a - 1.0 / 9.0) <= 0.005, "modify-A-to-BC freq=" + format_double(mod_a));
  const double mod_bc = freq({9});
  report.check(std::abs(mod_bc - 1.0 / 18.0) <= 0.005, "modify-B-to-C freq=" + format_double(mod_bc));

  Rng k_rng(derive_seed(cfg.seed, {0x0b}));
  const KCounts ks = sample_k_counts(MutationMode::MultiBit, draws, k_rng);
  double factorial = 1.0;
  for (int k = 1; k <= 6; ++k) {
    if (k > 1) factorial *= (k - 1);
    const double p = std::exp(-1.0) / factorial;
    const double f = static_cast<double>(ks.counts[static_cast<std::size_t>(k)]) / total;
    report.check(within(f, p, 3.0), "K=" + std::to_string(k) + " freq=" + format_double(f) +
                                        " p=" + format_double(p));
  }
  Rng one_rng(derive_seed(cfg.seed, {0x0c}));
  const KCounts one = sample_k_counts(MutationMode::OneBit, std::min<std::int64_t>(draws, 1000),
                                      one_rng);
  report.check(one.counts[1] == one.total, "onebit-K-always-1");

  for (const int n : cfg.n_values) {
    const int s = cfg.s.resolve(n);
    Rng z_rng(derive_seed(cfg.seed, {0x0d, static_cast<std::uint64_t>(s)}));
    const Z0Statistics z = sample_z0_statistics(s, draws, z_rng);
    report.check(std::abs(z.mean - s) <= 0.1 && z.tv_distance <= 0.005,
                 "z0 s=" + std::to_string(s) + " mean=" + format_double(z.mean) +
                     " tv=" + format_double(z.tv_distance));
  }
  return report.exit_code();
}

int run_discrepancy_scan(const ResolvedConfig& cfg, std::ostream& out, std::ostream& log) {
  std::vector<DiscrepancyRow> rows;
  for (const int n : cfg.n_values) {
    const UniformInstance inst = make_instance(n);
    const std::vector<DiscrepancyRow> found = discrepancy_scan(inst, cfg.cap);
    int optimal_only_under_placement = 0;
    for (const DiscrepancyRow& row : found) {
      if (row.placement.levels == optimal_levels(inst) &&
          row.literal.levels != optimal_levels(inst)) {
        ++optimal_only_under_placement;
      }
    }
    log << "discrepancy-scan n=" << n << " scanned=" << (cfg.cap + 1) * (cfg.cap + 1) * (cfg.cap + 1)
        << " differing=" << found.size()
        << " optimal_only_under_placement=" << optimal_only_under_placement << '\n';
    rows.insert(rows.end(), found.begin(), found.end());
  }
  const std::string text = discrepancy_csv(rows);
  if (cfg.out.empty()) {
    out << text;
  } else {
    ensure_directory(cfg.out);
    write_file(cfg.out, "discrepancies.csv", text);
    write_file(cfg.out, "config.json", cfg.to_json().dump(2) + "\n");
  }
  return kSuccess;
}

}  // namespace

int execute(const ResolvedConfig& cfg, std::ostream& out, std::ostream& log) {
  try {
    if (cfg.command == "run") return run_single(cfg, out, log);
    if (cfg.command == "sweep") return run_sweep_command(cfg, out, log);
    if (cfg.command == "drift") return run_drift_command(cfg, out, log);
    if (cfg.command == "validate-fitness") return run_validate_fitness(cfg, out, log);
    if (cfg.command == "validate-distributions") return run_validate_distributions(cfg, out, log);
    if (cfg.command == "discrepancy-scan") return run_discrepancy_scan(cfg, out, log);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::length_error& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace enaslab::cli
