#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "parcoh/zlinalg.hpp"

namespace parcoh {

/// Exit codes of `parcoh`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitParseError = 2;

/// Runs the command line (args exclude the program name). Output is
/// deterministic for a given argument list.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestOptions {
  /// Applied to the computed Z_6 coboundary matrix before comparison; used to
  /// inject faults.
  std::function<void(IntegerMatrix&)> tamper_matrix;
  /// Skip the small-group oracle sweep.
  bool golden_only = false;
};

/// Embedded Z_6 golden suite plus the small-group oracle sweep. Prints one
/// line per check and the first diverging value; returns true on success.
bool selftest(std::ostream& out, const SelftestOptions& options = {});

}  // namespace parcoh
