#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "milnor/report.hpp"

namespace milnor {

/// Bad flags, config files or directions (exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitHypothesis = 2, kExitExhausted = 3 };

struct RunConfig {
  std::string command;
  std::string germ;
  /// Empty means inferred from the germ.
  std::vector<std::string> variables;
  bool oracle = false;
  bool json = false;
  bool timing = false;
  bool no_cache = false;
  std::optional<RationalVector> direction;
  std::optional<int> k;
  /// Exponent for g+- = +-f - (sum x_i^2)^d in `chi`.
  std::optional<int> d;
  int cap = 64;
  OracleConfig oracle_cfg;
  std::optional<std::string> cache_dir;

  void validate() const;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"degree", "chi", "polar", "le-iomdine", "szafraniec"};
  return c;
}

/// Comma separated rationals, e.g. "1,2,-1/3".
RationalVector parse_direction(const std::string& text);

/// Apply `key = value` lines; '#' starts a comment. Keys are the OracleConfig
/// fields plus cap, cache_dir and direction.
void apply_config_text(const std::string& text, RunConfig& cfg);
void apply_config_file(const std::string& path, RunConfig& cfg);

std::uint64_t fnv1a(const std::string& bytes);

/// Everything that can change the result, serialized.
std::string cache_key_text(const RunConfig& cfg, const std::string& canonical_germ);

struct RunResult {
  int exit_code = 0;
  Json report;
};

/// Run one command without touching the cache. Library errors become error
/// reports with the matching exit code.
RunResult execute(const RunConfig& cfg);

/// Cache directory in effect: MILNOR_KIT_CACHE, then cfg.cache_dir.
std::optional<std::string> effective_cache_dir(const RunConfig& cfg);

/// execute() behind the on-disk cache.
RunResult execute_cached(const RunConfig& cfg);

/// Full front end: argument parsing, run, output. Returns the exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace milnor
