#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fhsrisk/fhs.hpp"
#include "fhsrisk/market_data.hpp"

// riskcli front end, usable in-process (tests drive run() directly).
namespace fhsrisk::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kFitFailure = 3,
  kMissingArtifacts = 4,
};

enum class Format { Text, Csv, Json };

struct AssetSpec {
  std::string id;
  std::filesystem::path path;  // resolved against the config directory
  CsvSchema schema;
};

struct RunConfig {
  std::vector<AssetSpec> assets;
  int lags = 12;
  fhs::RiskSpec risk;
  bool seed_in_file = false;
  Format format = Format::Text;
  std::filesystem::path output_dir;  // resolved; defaults to <config dir>/out
  std::string config_text;           // the file exactly as read
};

/// Reads and validates a JSON run configuration. Throws Io when the file is
/// unreadable and InvalidConfig on schema or value errors.
RunConfig load_config(const std::filesystem::path& path);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> horizon;
  std::optional<std::vector<double>> levels;
  std::optional<Format> format;
  std::optional<std::string> env_seed;  // RISKCLI_SEED, used when no other seed is given
};

/// Flags beat the file; the environment seed only fills a seed the file and
/// flags leave unset. Revalidates the risk spec.
void apply_overrides(RunConfig& config, const Overrides& overrides);

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_risk(const RunConfig& config, bool refit, std::ostream& out, std::ostream& err);
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `riskcli <command> --config <path> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fhsrisk::cli
