#pragma once

#include "dilatsim/config.hpp"

#include <iosfwd>

namespace dilatsim {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitInfeasible = 4;

// Each command validates its inputs, runs, writes its result files plus a
// run manifest (config echo, versions, wall time) into the configured
// output directory, and reports through the exit-code contract. Human
// output goes to `out`, diagnostics to `err`.
int cmd_map(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_qpe(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dilatsim
