#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "f2dyn/gf2.hpp"
#include "f2dyn/pmaps.hpp"
#include "f2dyn/report.hpp"

namespace f2dyn {

enum class Subcommand { orbits, curve, conjugate, bluher, selftest };

std::string to_string(Subcommand cmd);

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitResource = 3 };

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown by parse_job_config for --help; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(const std::string& text) : std::runtime_error(text) {}
};

struct JobConfig {
  Subcommand command = Subcommand::orbits;
  int degree = 5;
  std::optional<Word> modulus;  // overrides the default modulus of `degree`
  MapKind kind = MapKind::theta;
  std::optional<std::string> a;  // "g^i", "0" or hex
  std::optional<std::string> b;
  int k = 2;
  OutputFormat format = OutputFormat::text;
  std::string cache_dir;  // empty: no cache
  int jobs = 1;

  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Arguments after the program name. Throws UsageError or HelpRequested.
JobConfig parse_job_config(const std::vector<std::string>& args);
/// Canonical argument list; parse_job_config(to_args(c)) == c.
std::vector<std::string> to_args(const JobConfig& config);

FieldPtr make_field(const JobConfig& config);
/// "g^i" (i may be negative), "0", or a hex encoding such as "0x1f".
FieldElement parse_element(const FieldPtr& field, const std::string& text);

struct RunResult {
  int exit_code = kExitOk;
  std::string out;  // the report, in the requested format
  std::string err;  // warnings and error messages
};

RunResult run(const JobConfig& config);

/// Full command-line entry point: parse, run, map exceptions to exit codes.
RunResult run_command_line(const std::vector<std::string>& args);

}  // namespace f2dyn
