#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parahoric/report.hpp"

namespace parahoric::cli {

enum ExitCode { kOk = 0, kUsage = 1, kMismatch = 2 };

/// Outputs of one command; |ok| is false when a verify command found a mismatch.
struct CommandResult {
  report::ReportEnvelope envelope;
  std::vector<std::string> text; // human-readable lines
  bool ok = true;
};

CommandResult cmd_rootsys(const std::string& type);
CommandResult cmd_parahoric(const std::string& type, const std::string& theta);
CommandResult cmd_levi(const std::string& type, const std::string& theta, std::int64_t p, bool rank_refinement);
CommandResult cmd_facets(const std::string& type);
CommandResult cmd_verify_sl3(std::int64_t p);
CommandResult cmd_verify_unitary(std::int64_t n, std::int64_t p);
CommandResult cmd_character(const std::string& type, const std::string& weight);
CommandResult cmd_jantzen(const std::string& type, const std::string& weight, std::int64_t p);

/// PARAHORIC_CACHE_DIR, else $XDG_CACHE_HOME/parahoric, else ~/.cache/parahoric.
std::optional<std::filesystem::path> default_cache_dir();

/// Full command line (args[0] is the program name).  Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace parahoric::cli
