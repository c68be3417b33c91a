#pragma once

#include <iosfwd>

#include "secrelay/config.hpp"

namespace secrelay {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitIo = 4;

// Subcommand bodies.  They throw config_error / infeasible_error /
// io_error; run_command maps those onto the exit-code contract.
int cmd_rates(const RunConfig& cfg, std::ostream& out);
int cmd_optimize(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_boundgap(const RunConfig& cfg, std::ostream& out);
int cmd_dof(const RunConfig& cfg, std::ostream& out);
int cmd_dmc(const RunConfig& cfg, std::ostream& out);

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

}  // namespace secrelay
