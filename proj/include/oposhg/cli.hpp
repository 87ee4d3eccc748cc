#pragma once

namespace oposhg {

/// Command-line front end. Subcommands: steady, classical, simulate, spectra,
/// epr, tripartite, scan-inject, reproduce-figure. Returns the process exit
/// code (0 on success; 2 config, 3 domain, 4 solver, 5 numerics).
int dispatch(int argc, const char* const* argv);

}  // namespace oposhg
