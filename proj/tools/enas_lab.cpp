// enas_lab: command-line driver for the (1+1)-ENAS simulation laboratory.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "enaslab/cli.hpp"

namespace {

struct OptionSpec {
  const char* names;
  const char* key;
  const char* help;
};

constexpr OptionSpec kValueOptions[] = {
    {"--n", "n", "problem size(s): <int>, <lo..hi:step> or comma list"},
    {"--modes,--mode", "modes", "onebit, multibit or both comma-separated"},
    {"--semantics", "semantics", "literal | placement | both"},
    {"--trials", "trials", "trials per cell (sweep, drift)"},
    {"--s", "s", "initialisation bound: <int> or quarter-n"},
    {"--seed", "seed", "master seed (u64)"},
    {"--max-gens", "max_gens", "generation cap per trial"},
    {"--workers", "workers", "worker threads (default: ENAS_LAB_WORKERS or hardware)"},
    {"--out", "out", "output directory"},
    {"--cap", "cap", "architecture range [0, cap]^3 for validate-fitness / discrepancy-scan"},
    {"--samples", "samples", "Monte Carlo / distribution sample count"},
};

constexpr OptionSpec kFlagOptions[] = {
    {"--trajectory", "trajectory", "record and emit the per-generation trajectory"},
    {"--strict-selection", "strict_selection", "accept only strictly better offspring"},
};

struct Subcommand {
  CLI::App* app;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace enaslab::cli;

  CLI::App app{"(1+1)-ENAS simulation laboratory on the UNIFORM problem"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"run", "run a single trial"},
      {"sweep", "run trials over (n, mode, semantics) cells"},
      {"drift", "estimate per-phase one-step drift"},
      {"validate-fitness", "check greedy vs brute force and Monte Carlo vs closed form"},
      {"validate-distributions", "check operator, K and initialisation distributions"},
      {"discrepancy-scan", "list architectures where literal and placement fitness differ"},
  };
  std::vector<Subcommand> subs(commands.size());
  for (std::size_t c = 0; c < commands.size(); ++c) {
    Subcommand& sub = subs[c];
    sub.app = app.add_subcommand(commands[c].first, commands[c].second);
    for (const OptionSpec& spec : kValueOptions) {
      sub.options[spec.key] = sub.app->add_option(spec.names, sub.values[spec.key], spec.help);
    }
    for (const OptionSpec& spec : kFlagOptions) {
      sub.options[spec.key] = sub.app->add_flag(spec.names, spec.help);
    }
    sub.app->add_option("--config", sub.config_path, "config file (key = value lines or JSON)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << error_line("usage", e.what()) << '\n';
    return kUsage;
  }

  for (Subcommand& sub : subs) {
    if (!sub.app->parsed()) continue;
    try {
      KeyValues flags;
      for (const auto& [key, option] : sub.options) {
        if (option->count() == 0) continue;
        flags[key] = option->get_expected() == 0 ? "true" : sub.values[key];
      }
      const KeyValues file = sub.config_path.empty() ? KeyValues{} : read_config_file(sub.config_path);
      std::optional<std::string> env_workers;
      if (const char* env = std::getenv("ENAS_LAB_WORKERS")) env_workers = env;
      const ResolvedConfig cfg = resolve_config(sub.app->get_name(), file, flags, env_workers);
      const int status = execute(cfg, std::cout, std::cerr);
      if (status == kValidation) std::cerr << error_line("validation", "one or more checks failed") << '\n';
      return status;
    } catch (const UsageError& e) {
      std::cerr << error_line("usage", e.what()) << '\n';
      return kUsage;
    } catch (const IoError& e) {
      std::cerr << error_line("io", e.what()) << '\n';
      return kIo;
    }
  }
  return kUsage;
}
