#pragma once

#include <iosfwd>

namespace qglab {

/// Command-line entry point. Subcommands: simulate, picard, norms, flux,
/// compare-mu, check-inequality. Returns 0 on success, 1 on usage or
/// validation errors, 2 on runtime failures (UnstableStep, NoContraction,
/// Violation, I/O).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qglab
