#pragma once

// Command implementations behind the `oddsctl` tool. Each command returns a
// JSON document (or text, for LP export) plus the process exit code, so the
// same code paths serve the binary and the tests.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "odds/io.hpp"

namespace odds::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kVerificationFailed = 2,
  kNumericalFailure = 3,
};

struct CommandResult {
  int exit_code = kSuccess;
  io::Json document;
  std::string text;  // used instead of document by export-lp
};

/// dp | simplex | odds-theorem | all
CommandResult solve(const io::InstanceDocument& doc, const std::string& method,
                    bool with_certificate = false);

/// Full certificate run; `solutions` are solution documents to audit
/// against the instance in addition to the built-in checks.
CommandResult verify(const io::InstanceDocument& doc, const std::vector<io::Json>& solutions = {});

struct SimulateOptions {
  std::string policy = "optimal";  // "optimal" or a path to a policy file
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool compare_exact = false;
};

CommandResult simulate(const io::InstanceDocument& doc, const SimulateOptions& opts);

/// formulation: ff | dual-p | dual-p1 | secretary-reduced; format: mps | lp-text.
CommandResult export_lp(const io::InstanceDocument& doc, const std::string& formulation,
                        const std::string& format);

struct GenOptions {
  std::optional<std::string> variant;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  std::optional<std::size_t> n;
  std::optional<std::string> p_list;
  bool secretary = false;
  std::optional<std::uint64_t> seed;
};

CommandResult gen(const GenOptions& opts);

/// True when the rewards equal the last-success rewards of p (within 1e-12
/// relative) or were generated from that variant.
bool has_last_success_rewards(const io::InstanceDocument& doc);

/// Parses argv-style arguments (without the program name), runs the
/// command and writes its output. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace odds::cli
