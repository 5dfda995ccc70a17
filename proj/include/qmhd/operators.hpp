#pragma once

#include "qmhd/config.hpp"
#include "qmhd/field.hpp"

namespace qmhd {

// First derivative along a direction (0 -> r/x, 1 -> z/y): second-order
// central at interior nodes, second-order one-sided at boundary nodes.
ScalarField deriv1(const ScalarField& f, int direction);

// (1/r) d(r f)/dr with the axis limit 2*df/dr at r = 0. Cylindrical only.
ScalarField cyl_div_r(const ScalarField& f);

// Navier-Stokes shear stress components (dimensionless, unit viscosity).
struct StressComponents {
    ScalarField Pi_11, Pi_12, Pi_22;
    ScalarField Pi_phiphi;     // cylindrical only (empty grid otherwise)
    bool has_phiphi = false;
};
StressComponents ns_stress(const FlowState& state);

// Velocity/temperature tendencies. Interior nodes always; in addition the
// free-surface row of the tangential velocity carries its half-cell flux
// balance (the Marangoni shear is the prescribed surface stress), so the
// surface jet is advanced together with the interior and feels the same
// body forces. All other boundary rows stay zero (owned by the boundary
// module).
struct Tendency {
    ScalarField d_u1, d_u2;
    ScalarField d_T;
};

// Auxiliary field w = tau * (stationary momentum residual), node-level:
//   w1 = tau (u1 d1(u1) + u2 d2(u1) + d1(p) + Ha^2 u_perp-term)
//   w2 = tau (u1 d1(u2) + u2 d2(u2) + d2(p) - Gr T + Ha^2 u_perp-term)
// The Ha^2 term sits in the component perpendicular to the applied field.
VectorField compute_w(const FlowState& state, const PhysParams& phys, FieldVariant variant);

// Assembles every momentum term in conservative flux form: convection,
// pressure gradient, viscous stress divergence, the w-coupled diffusive
// fluxes, Lorentz damping -Ha^2(u_perp - w_perp) and buoyancy +Gr T, at
// interior nodes plus the free-surface tangential row (half-cell balance,
// surface fluxes: prescribed Marangoni shear, u.n = 0, w.n = 0). `w` must
// come from compute_w on the same state.
void momentum_rhs(const FlowState& state, const VectorField& w,
                  const PhysParams& phys, FieldVariant variant, Tendency& out);

// -div(u T) + div(w T) + (1/Pr) Laplacian(T) at interior nodes.
void energy_rhs(const FlowState& state, const VectorField& w,
                const PhysParams& phys, FieldVariant variant, Tendency& out);

// Right side of the pressure Poisson equation as a finite-volume density
// over every node (boundary nodes carry their half-cell balances, with the
// wall fluxes implied by u.n = 0 and w.n = 0):
//   (1/tau) div u - div G,  G = convective + Lorentz + buoyancy group.
ScalarField pressure_poisson_rhs(const FlowState& state, const PhysParams& phys,
                                 FieldVariant variant);

} // namespace qmhd
