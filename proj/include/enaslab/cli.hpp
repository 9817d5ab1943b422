#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "enaslab/enas_core.hpp"
#include "enaslab/experiment_harness.hpp"

namespace enaslab::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kValidation = 2, kIo = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

/// "16", "12..100:4" or "12,24,48".
std::vector<int> parse_n_spec(std::string_view text);
std::vector<MutationMode> parse_modes(std::string_view text);
/// "literal", "placement", "both" or a comma list.
std::vector<Semantics> parse_semantics(std::string_view text);
/// An integer or "quarter-n".
InitRule parse_init_rule(std::string_view text);

/// Flat `key = value` lines ('#' starts a comment) or a flat JSON object.
/// Keys are normalised to snake_case.
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::string& path);

struct ResolvedConfig {
  std::string command;
  std::vector<int> n_values{16};
  std::vector<MutationMode> modes{MutationMode::OneBit, MutationMode::MultiBit};
  std::vector<Semantics> semantics{Semantics::Literal};
  std::int64_t trials = 10'000;
  InitRule s = InitRule::quarter_n();
  std::uint64_t seed = 1;
  std::int64_t max_gens = 10'000'000;
  int workers = 1;
  std::string out;
  bool trajectory = false;
  bool strict_selection = false;
  int cap = 10;
  std::int64_t samples = 1'000'000;

  nlohmann::ordered_json to_json() const;
};

/// defaults < ENAS_LAB_WORKERS (workers only) < config file < flags.
ResolvedConfig resolve_config(const std::string& command, const KeyValues& file_values,
                              const KeyValues& flag_values,
                              std::optional<std::string> env_workers);

SweepConfig to_sweep_config(const ResolvedConfig& cfg);

// Serialisation. Column sets and orders are part of the interface.
std::string cells_csv(const std::vector<SweepCell>& cells);
std::string trials_csv(const std::vector<TrialRecord>& trials);
std::string trajectory_csv(const std::vector<TrajectoryRecord>& trajectory);

struct DriftRow {
  int n;
  MutationMode mode;
  Semantics semantics;
  DriftRecord record;
};
std::string drift_csv(const std::vector<DriftRow>& rows);

struct DiscrepancyRow {
  int n;
  Architecture x;
  FitnessScore literal;
  FitnessScore placement;
};
std::string discrepancy_csv(const std::vector<DiscrepancyRow>& rows);

nlohmann::ordered_json cell_json(const SweepCell& cell);

/// Every architecture in [0, cap]^3 whose literal and placement levels differ.
std::vector<DiscrepancyRow> discrepancy_scan(const UniformInstance& inst, int cap);

/// Executes a resolved command. Result files go to cfg.out when set,
/// otherwise to `out`. Human-readable progress and reports go to `log`.
/// Returns an ExitCode; throws UsageError or IoError.
int execute(const ResolvedConfig& cfg, std::ostream& out, std::ostream& log);

/// One-line machine-readable error record for standard error.
std::string error_line(std::string_view kind, std::string_view message);

}  // namespace enaslab::cli
