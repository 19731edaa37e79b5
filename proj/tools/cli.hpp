#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace holant::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kRegion = 2,
  kUnsupported = 3,
  kGate = 4,
};

// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a, used for the default seed.
std::uint64_t fnv1a(const std::string& text);

}  // namespace holant::cli
