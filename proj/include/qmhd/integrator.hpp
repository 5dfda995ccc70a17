#pragma once

#include <functional>
#include <string>

#include "qmhd/config.hpp"
#include "qmhd/field.hpp"
#include "qmhd/poisson.hpp"

namespace qmhd {

struct BlowupError : std::runtime_error {
    long step;
    int i, j;
    std::string field;
    BlowupError(long step_, int i_, int j_, const std::string& field_)
        : std::runtime_error("non-finite " + field_ + " at node (" + std::to_string(i_) +
                             "," + std::to_string(j_) + ") on step " + std::to_string(step_)),
          step(step_), i(i_), j(j_), field(field_) {}
};

// Initial data: u = 0, p = 0; T = 1-|z| (cylindrical) or the conduction
// profile 1-x (planar).
FlowState initial_state(const CaseConfig& cfg);

// One forward-Euler step:
//   solve the pressure Poisson problem from the current fields, refresh w
//   with the solved p, assemble tendencies, advance interior u and T, then
//   re-apply all boundary conditions. Throws BlowupError on non-finite
//   results, naming the first offending node.
struct StepDiag {
    PoissonReport poisson;
};
void step(FlowState& state, const CaseConfig& cfg, const PoissonSolver& solver,
          StepDiag* diag = nullptr);

// Grid-mean of per-node absolute velocity change summed over components:
//   (1/(N1*N2)) * sum_ij (|du1| + |du2|).
double steady_residual(const FlowState& prev, const FlowState& next);

struct HistorySample {
    long step;
    double residual;   // steady_residual of the step just taken
    double psi_min;
};

struct SteadyResult {
    FlowState state;
    long steps = 0;
    double residual = 0.0;   // final steady_residual
    bool converged = false;
    double wall_seconds = 0.0;
    std::vector<HistorySample> history;
};

// Marches until the velocity stops changing between consecutive time levels,
// steady_residual < eps_steady, or until max_steps. The threshold compares
// per-step change, so the stopping point depends on dt the same way the
// reference step counts do. The progress callback (if any) receives each
// history sample as it is recorded.
using ProgressFn = std::function<void(const HistorySample&)>;
SteadyResult run_to_steady(const CaseConfig& cfg, const ProgressFn& progress = {});

} // namespace qmhd
