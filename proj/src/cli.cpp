#include "enaslab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace enaslab::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename Int>
Int parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  Int value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
  std::string v(trim(text));
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw UsageError("invalid " + std::string(what) + ": '" + v + "'");
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  for (char& ch : k) {
    ch = ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  if (k == "mode") return "modes";
  return k;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "command", "n",   "modes",     "semantics",        "trials", "s",      "seed",
      "max_gens", "workers", "out", "trajectory", "strict_selection", "cap", "samples"};
  return keys;
}

const std::set<std::string>& known_commands() {
  static const std::set<std::string> commands{
      "run", "sweep", "drift", "validate-fitness", "validate-distributions", "discrepancy-scan"};
  return commands;
}

std::string json_scalar_to_text(const nlohmann::json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number()) return value.dump();
  if (value.is_array()) {
    std::string joined;
    for (const auto& element : value) {
      if (!joined.empty()) joined += ',';
      joined += json_scalar_to_text(element, key);
    }
    return joined;
  }
  throw UsageError("config key '" + key + "' must be a scalar or an array of scalars");
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, end);
}

std::vector<int> parse_n_spec(std::string_view text) {
  text = trim(text);
  std::vector<int> values;
  if (const std::size_t dots = text.find(".."); dots != std::string_view::npos) {
    const std::string_view rest = text.substr(dots + 2);
    const std::size_t colon = rest.find(':');
    const int lo = parse_int<int>(text.substr(0, dots), "n range start");
    const int hi = parse_int<int>(rest.substr(0, colon), "n range end");
    const int step =
        colon == std::string_view::npos ? 4 : parse_int<int>(rest.substr(colon + 1), "n step");
    if (step < 1 || hi < lo) throw UsageError("invalid n range '" + std::string(text) + "'");
    for (int n = lo; n <= hi; n += step) values.push_back(n);
  } else {
    for (const std::string_view part : split(text, ',')) values.push_back(parse_int<int>(part, "n"));
  }
  for (const int n : values) {
    try {
      make_instance(n);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::vector<MutationMode> parse_modes(std::string_view text) {
  std::set<MutationMode> modes;
  for (const std::string_view part : split(text, ',')) {
    if (part == "onebit") modes.insert(MutationMode::OneBit);
    else if (part == "multibit") modes.insert(MutationMode::MultiBit);
    else throw UsageError("unknown mode '" + std::string(part) + "' (expected onebit|multibit)");
  }
  return {modes.begin(), modes.end()};
}

std::vector<Semantics> parse_semantics(std::string_view text) {
  std::set<Semantics> semantics;
  for (const std::string_view part : split(text, ',')) {
    if (part == "literal") semantics.insert(Semantics::Literal);
    else if (part == "placement") semantics.insert(Semantics::Placement);
    else if (part == "both") semantics.insert({Semantics::Literal, Semantics::Placement});
    else throw UsageError("unknown semantics '" + std::string(part) + "'");
  }
  return {semantics.begin(), semantics.end()};
}

InitRule parse_init_rule(std::string_view text) {
  text = trim(text);
  if (text == "quarter-n" || text == "quarter_n") return InitRule::quarter_n();
  const int s = parse_int<int>(text, "s");
  if (s < 0) throw UsageError("s must be >= 0");
  return InitRule::fixed_at(s);
}

KeyValues parse_config_text(std::string_view text) {
  KeyValues values;
  const std::string_view body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("malformed JSON config: ") + e.what());
    }
    for (const auto& [key, value] : doc.items()) {
      if (value.is_null()) continue;
      values[normalize_key(key)] = json_scalar_to_text(value, key);
    }
  } else {
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
      ++line_no;
      if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
        line = trim(line.substr(0, hash));
      }
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
      }
      values[normalize_key(line.substr(0, eq))] = std::string(trim(line.substr(eq + 1)));
    }
  }
  for (const auto& [key, value] : values) {
    if (!known_keys().contains(key)) throw UsageError("unknown config key '" + key + "'");
  }
  return values;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

ResolvedConfig resolve_config(const std::string& command, const KeyValues& file_values,
                              const KeyValues& flag_values,
                              std::optional<std::string> env_workers) {
  if (!known_commands().contains(command)) throw UsageError("unknown command '" + command + "'");
  ResolvedConfig cfg;
  cfg.command = command;
  if (command == "run") cfg.modes = {MutationMode::OneBit};
  cfg.workers = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (env_workers && !trim(*env_workers).empty()) {
    cfg.workers = parse_int<int>(*env_workers, "ENAS_LAB_WORKERS");
  }

  KeyValues merged = file_values;
  for (const auto& [key, value] : flag_values) merged[normalize_key(key)] = value;

  for (const auto& [key, value] : merged) {
    if (key == "command") continue;
    if (key == "n") cfg.n_values = parse_n_spec(value);
    else if (key == "modes") cfg.modes = parse_modes(value);
    else if (key == "semantics") cfg.semantics = parse_semantics(value);
    else if (key == "trials") cfg.trials = parse_int<std::int64_t>(value, "trials");
    else if (key == "s") cfg.s = parse_init_rule(value);
    else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(value, "seed");
    else if (key == "max_gens") cfg.max_gens = parse_int<std::int64_t>(value, "max-gens");
    else if (key == "workers") cfg.workers = parse_int<int>(value, "workers");
    else if (key == "out") cfg.out = value;
    else if (key == "trajectory") cfg.trajectory = parse_bool(value, "trajectory");
    else if (key == "strict_selection") cfg.strict_selection = parse_bool(value, "strict-selection");
    else if (key == "cap") cfg.cap = parse_int<int>(value, "cap");
    else if (key == "samples") cfg.samples = parse_int<std::int64_t>(value, "samples");
    else throw UsageError("unknown config key '" + key + "'");
  }

  if (cfg.trials < 1) throw UsageError("trials must be >= 1");
  if (cfg.max_gens < 1) throw UsageError("max-gens must be >= 1");
  if (cfg.workers < 1) throw UsageError("workers must be >= 1");
  if (cfg.cap < 0) throw UsageError("cap must be >= 0");
  if (cfg.samples < 1) throw UsageError("samples must be >= 1");
  return cfg;
}

nlohmann::ordered_json ResolvedConfig::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["n"] = n_values;
  auto& mode_list = j["modes"] = nlohmann::ordered_json::array();
  for (const MutationMode m : modes) mode_list.push_back(to_string(m));
  auto& semantics_list = j["semantics"] = nlohmann::ordered_json::array();
  for (const Semantics sem : semantics) semantics_list.push_back(to_string(sem));
  j["trials"] = trials;
  if (s.kind == InitRule::Kind::QuarterN) j["s"] = "quarter-n";
  else j["s"] = s.fixed;
  j["seed"] = seed;
  j["max_gens"] = max_gens;
  j["workers"] = workers;
  j["out"] = out;
  j["trajectory"] = trajectory;
  j["strict_selection"] = strict_selection;
  j["cap"] = cap;
  j["samples"] = samples;
  return j;
}

SweepConfig to_sweep_config(const ResolvedConfig& cfg) {
  SweepConfig sweep;
  sweep.n_values = cfg.n_values;
  sweep.modes = cfg.modes;
  sweep.semantics = cfg.semantics;
  sweep.trials = cfg.trials;
  sweep.s_rule = cfg.s;
  sweep.master_seed = cfg.seed;
  sweep.workers = cfg.workers;
  sweep.max_generations = cfg.max_gens;
  sweep.strict_selection = cfg.strict_selection;
  return sweep;
}

std::string cells_csv(const std::vector<SweepCell>& cells) {
  std::ostringstream out;
  out << "n,mode,semantics,trials,mean,std,se,ci95_lo,ci95_hi,min,max,theory_upper,capped\n";
  for (const SweepCell& c : cells) {
    out << c.n << ',' << to_string(c.mode) << ',' << to_string(c.semantics) << ',' << c.trials
        << ',' << format_double(c.mean) << ',' << format_double(c.std) << ','
        << format_double(c.std_error) << ',' << format_double(c.ci95_low) << ','
        << format_double(c.ci95_high) << ',' << format_double(c.min) << ','
        << format_double(c.max) << ','
        << (c.theory_upper ? format_double(*c.theory_upper) : std::string()) << ','
        << c.capped_trials << '\n';
  }
  return out.str();
}

std::string trials_csv(const std::vector<TrialRecord>& trials) {
  std::ostringstream out;
  out << "trial,seed,n,mode,semantics,generations,init_nA,init_nB,init_nC,final_nA,final_nB,"
         "final_nC,hit_cap\n";
  for (const TrialRecord& t : trials) {
    out << t.trial << ',' << t.seed << ',' << t.n << ',' << to_string(t.mode) << ','
        << to_string(t.semantics) << ',' << t.generations << ',' << t.initial.n_a << ','
        << t.initial.n_b << ',' << t.initial.n_c << ',' << t.final.n_a << ',' << t.final.n_b
        << ',' << t.final.n_c << ',' << (t.hit_cap ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const std::vector<TrajectoryRecord>& trajectory) {
  std::ostringstream out;
  out << "generation,nA,nB,nC,i,j,accepted,K\n";
  for (const TrajectoryRecord& r : trajectory) {
    out << r.generation << ',' << r.parent.n_a << ',' << r.parent.n_b << ',' << r.parent.n_c
        << ',' << r.levels.i << ',' << r.levels.j << ',' << (r.accepted ? 1 : 0) << ',' << r.k
        << '\n';
  }
  return out.str();
}

std::string drift_csv(const std::vector<DriftRow>& rows) {
  std::ostringstream out;
  out << "n,mode,semantics,phase,samples,mean_decrease,std_error,max_abs_change\n";
  for (const DriftRow& row : rows) {
    out << row.n << ',' << to_string(row.mode) << ',' << to_string(row.semantics) << ','
        << to_string(row.record.phase) << ',' << row.record.samples << ','
        << format_double(row.record.mean_one_step_decrease) << ','
        << format_double(row.record.std_error) << ',' << row.record.max_abs_change << '\n';
  }
  return out.str();
}

std::string discrepancy_csv(const std::vector<DiscrepancyRow>& rows) {
  std::ostringstream out;
  out << "n,nA,nB,nC,literal_i,literal_j,placement_i,placement_j,literal_value,placement_value\n";
  for (const DiscrepancyRow& row : rows) {
    out << row.n << ',' << row.x.n_a << ',' << row.x.n_b << ',' << row.x.n_c << ','
        << row.literal.levels.i << ',' << row.literal.levels.j << ','
        << row.placement.levels.i << ',' << row.placement.levels.j << ','
        << format_double(row.literal.value) << ',' << format_double(row.placement.value) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json cell_json(const SweepCell& c) {
  auto real = [](double v) -> nlohmann::ordered_json {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json();
  };
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["mode"] = to_string(c.mode);
  j["semantics"] = to_string(c.semantics);
  j["s"] = c.s;
  j["trials"] = c.trials;
  j["mean"] = real(c.mean);
  j["std"] = real(c.std);
  j["se"] = real(c.std_error);
  j["ci95_lo"] = real(c.ci95_low);
  j["ci95_hi"] = real(c.ci95_high);
  j["min"] = real(c.min);
  j["max"] = real(c.max);
  j["theory_upper"] = c.theory_upper ? real(*c.theory_upper) : nlohmann::ordered_json();
  j["capped"] = c.capped_trials;
  return j;
}

std::vector<DiscrepancyRow> discrepancy_scan(const UniformInstance& inst, int cap) {
  std::vector<DiscrepancyRow> rows;
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; b <= cap; ++b)
      for (int c = 0; c <= cap; ++c) {
        const Architecture x{a, b, c};
        const FitnessScore literal = literal_fitness(x, inst);
        const FitnessScore placement = placement_fitness(x, inst);
        if (literal.levels != placement.levels) rows.push_back({inst.n(), x, literal, placement});
      }
  return rows;
}

std::string error_line(std::string_view kind, std::string_view message) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  return j.dump();
}

}  // namespace enaslab::cli
