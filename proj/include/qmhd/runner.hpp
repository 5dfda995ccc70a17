#pragma once

#include <string>

#include "qmhd/config.hpp"

namespace qmhd {

// Process exit codes for the command-line runner.
enum ExitCode {
    exit_ok = 0,
    exit_not_converged = 2,
    exit_blowup = 3,
    exit_config_error = 4,
    exit_io_error = 5,
};

// Runs one case end to end: marches to steady state, writes the field dump,
// the psi dump, the convergence history and a run summary into the output
// directory. Progress lines go to stderr every snapshot interval.
int run_case(const CaseConfig& cfg);

} // namespace qmhd
