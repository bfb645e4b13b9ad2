#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "wdist/serialize.hpp"

namespace wdist::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kBudget = 3 };

enum class Format { Table, Json, Csv };
enum class Tier { Quick, Standard, Extended };

struct RunConfig {
  std::string command;
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::optional<std::string> modulus;
  std::string method;  // empty: command default
  std::string sweep = "gamma-delta";
  Format format = Format::Table;
  unsigned threads = 1;
  std::uint64_t max_table_bytes = std::uint64_t{1} << 30;
  Tier tier = Tier::Quick;
  bool no_cache = false;
  std::filesystem::path cache_dir;
};

/// Largest p^(3n) each verification tier accepts.
std::uint64_t tier_limit(Tier tier);

struct CommandResult {
  Json document;
  int exit_code = kOk;
};

CommandResult cmd_field_info(const RunConfig& cfg);
CommandResult cmd_rank_dist(const RunConfig& cfg);
CommandResult cmd_expsum_dist(const RunConfig& cfg);
CommandResult cmd_weights(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

std::string render(const std::string& command, const Json& document, Format format);

/// Parses argv, runs the command and writes to out/err. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wdist::cli
