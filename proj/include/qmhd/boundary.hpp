#pragma once

#include "qmhd/config.hpp"
#include "qmhd/field.hpp"

namespace qmhd {

// Prescribed normal derivative of pressure, one value per boundary node.
// Sides are indexed by the coordinate they bound: lo1/hi1 run over j,
// lo2/hi2 run over i.
struct NeumannData {
    std::vector<double> lo1, hi1, lo2, hi2;

    static NeumannData zero(const Grid& g) {
        NeumannData d;
        d.lo1.assign(g.n2, 0.0);
        d.hi1.assign(g.n2, 0.0);
        d.lo2.assign(g.n1, 0.0);
        d.hi2.assign(g.n1, 0.0);
        return d;
    }
};

// Temperature conditions:
//   cylindrical: dT/dr = 0 at the axis, T = 1-|z| on the free surface r=1,
//                T = 0 on the end walls z = +-1;
//   planar:      T = 1 at x=0, T = 0 at x=1, adiabatic at y = 0 and 1.
// Derivative conditions are enforced ghost-free by solving the one-sided
// second-order stencil for the boundary value.
void apply_temperature_bc(FlowState& state);

// Prescribed tangential shear du_t/dn = -(Ma/Pr) dT/dt^ along the free
// surface (cylindrical r=1, indexed by j; planar y=1, indexed by i), with
// the endpoints (wall corners) zeroed. This value enters the free-surface
// row's momentum balance as the surface stress flux.
std::vector<double> marangoni_shear(const FlowState& state, const PhysParams& phys);

// Velocity conditions:
//   axis r=0:        u_r = 0, du_z/dr = 0;
//   free surface:    normal velocity 0. The tangential component is not set
//                    here: its boundary row evolves through the half-cell
//                    momentum balance (see momentum_rhs) that carries the
//                    Marangoni shear as the prescribed surface stress.
//   rigid walls:     u = 0, applied last so shared corners end up at rest.
void apply_velocity_bc(FlowState& state, const PhysParams& phys);

// Pressure Neumann data: dp/dn = 0 on the axis, the free surface and the
// vertical walls; dp/dn = +-Gr*T on the gravity-normal walls.
NeumannData pressure_bc(const FlowState& state, const PhysParams& phys);

} // namespace qmhd
