#pragma once

#include <iosfwd>

namespace reliaforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;

/// Entry point behind the `reliaforge` executable. Data goes to `out` and to
/// files under --out; diagnostics go to `err`.
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reliaforge
