#pragma once

#include <string>

#include "qmhd/config.hpp"
#include "qmhd/field.hpp"

namespace qmhd {

// Stream function of the solenoidal field u - w, reconstructed by
// trapezoidal line integration of the defining relations
//   cylindrical: u_z - w_z = (1/r) dpsi/dr   ->  psi = int_0^r r'(u_z-w_z) dr'
//   planar:      u_x - w_x = dpsi/dy         ->  psi = int_0^y (u_x-w_x) dy'
// with psi forced to 0 on the boundary. `path_gap` is the max-norm
// difference against the alternative integration path (a consistency
// diagnostic; O(h^2) on converged states).
struct PsiField {
    ScalarField psi;
    double min_value = 0.0;
    int min_i = 0, min_j = 0;
    double path_gap = 0.0;
};

PsiField stream_function(const FlowState& state, const VectorField& w);

// Minimum over interior nodes; ties broken by lowest (i, j) lexicographic.
struct Extremum {
    double value;
    int i, j;
};
Extremum psi_extremum(const ScalarField& psi);

// Number of strict local extrema of psi along a probe line (default: the
// vertical centerline for planar grids, the horizontal midline for
// cylindrical), ignoring extrema below 1% of max|psi|.
int count_vortices(const ScalarField& psi);

// Tab-separated dump, one row per node in j-major order, '#'-prefixed
// header naming the columns plus a comment block with the full config.
// Values are printed with %.17g so a re-parse is bitwise faithful.
void export_fields(const FlowState& state, const ScalarField& psi,
                   const CaseConfig& cfg, const std::string& path);

} // namespace qmhd
