#pragma once

#include "config.hpp"

namespace shadowdyn::cli {

// Each command writes summary.json (config echo, status, results) plus its
// data files into cfg.out and returns the exit code: 0 pass, 2 verified
// failure. Usage errors surface as std::invalid_argument.
int cmd_shadow(const RunConfig& cfg);
int cmd_cantor(const RunConfig& cfg);
int cmd_chainrec(const RunConfig& cfg);
int cmd_sensitivity(const RunConfig& cfg);
int cmd_cwx(const RunConfig& cfg);
int cmd_refute(const RunConfig& cfg);

}  // namespace shadowdyn::cli
