#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "banarith/io.hpp"

namespace banarith::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCheckFailed = 3;  // corpus mismatch or failed acceptance criterion

struct JobSpec {
  std::string subcommand;                     // e.g. "padic divide"
  std::string input_text;                     // JSON document; empty means {}
  std::string output_path;                    // empty or "-": not written
  std::optional<long> truncation;             // overrides the subcommand's truncation field
  std::optional<std::uint64_t> seed;          // sampled suites only
  std::map<std::string, std::string> params;  // extra --key value flags merged into the document
  std::string format = "json";                // "json", or "text" for table-style subcommands
};

struct RunResult {
  int exit_code = kExitOk;
  std::string output;
};

/// Parses, validates against the subcommand schema, dispatches and serializes.
/// Output is byte-deterministic in (input, seed, truncation).
RunResult run(const JobSpec& job);

struct Context {
  std::optional<std::uint64_t> seed;
  std::string format = "json";
};

struct SubcommandInfo {
  std::string name;
  std::vector<std::string> operations;  // library operations reached from here
  std::vector<std::string> required;
  std::vector<std::string> optional;
  std::string truncation_field;  // empty: --truncation is rejected
  bool uses_seed = false;
  bool accepts_any_field = false;
  std::string summary;
};

const std::vector<SubcommandInfo>& registry();
const SubcommandInfo* find_subcommand(const std::string& name);

struct ReplayEntry {
  std::string name;
  bool passed = false;
  std::string reason;
};

struct ReplayReport {
  std::string directory;
  std::vector<ReplayEntry> entries;
  std::vector<std::string> warnings;
  bool passed() const;
};

/// Replays every <name>.input.json in `directory` and compares the output
/// byte for byte with <name>.expected.json.
ReplayReport corpus_replay(const std::string& directory);
io::Json to_json(const ReplayReport& r);

}  // namespace banarith::cli
