#pragma once
// Command-line front end: count, rank, fit, synth, report, zeta.

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace zipfkit::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kDataError = 3,
  kNumericError = 4,
};

// Maps a library exception onto the exit-code contract.
int exit_code_for(const std::exception& e) noexcept;

// args[0] is the program name. Files named "-" read `in` / write `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

std::string version();

}  // namespace zipfkit::cli
