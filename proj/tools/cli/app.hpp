#pragma once

#include <iosfwd>

namespace giantatom::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBreach = 3;

/// Parses the command line and runs one subcommand. Results go to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace giantatom::cli
