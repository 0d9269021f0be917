#pragma once

#include <iosfwd>

namespace spectra_svi::experiment {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalFailure = 2;
inline constexpr int kExitCheckFailure = 3;

/// Entry point of the `spectra-svi` executable. Subcommands: run, check, plot, demo.
int CliMain(int argc, char** argv);
int CliMain(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spectra_svi::experiment
