#include "qmhd/boundary.hpp"

#include <cmath>

namespace qmhd {

void apply_temperature_bc(FlowState& state) {
    ScalarField& T = state.T;
    const Grid& g = T.grid;
    const int n1 = g.n1, n2 = g.n2;
    if (g.geometry == Geometry::CylindricalAxisym) {
        for (int j = 0; j < n2; ++j) {
            T(0, j) = (4 * T(1, j) - T(2, j)) / 3;      // dT/dr = 0 at the axis
            T(n1 - 1, j) = 1.0 - std::abs(g.x2(j));     // heated free surface
        }
        for (int i = 0; i < n1; ++i) {
            T(i, 0) = 0.0;                              // cold end walls own the corners
            T(i, n2 - 1) = 0.0;
        }
    } else {
        for (int i = 0; i < n1; ++i) {
            T(i, 0) = (4 * T(i, 1) - T(i, 2)) / 3;      // adiabatic bottom
            T(i, n2 - 1) = (4 * T(i, n2 - 2) - T(i, n2 - 3)) / 3;  // adiabatic top
        }
        for (int j = 0; j < n2; ++j) {
            T(0, j) = 1.0;                              // hot wall owns the corners
            T(n1 - 1, j) = 0.0;                         // cold wall
        }
    }
}

std::vector<double> marangoni_shear(const FlowState& state, const PhysParams& phys) {
    const Grid& g = state.grid();
    const double coef = -phys.Ma / phys.Pr;
    if (g.geometry == Geometry::CylindricalAxisym) {
        std::vector<double> s(g.n2, 0.0);
        const int i = g.n1 - 1;
        for (int j = 1; j + 1 < g.n2; ++j)
            s[j] = coef * (state.T(i, j + 1) - state.T(i, j - 1)) / (2 * g.h2);
        return s;
    }
    std::vector<double> s(g.n1, 0.0);
    const int j = g.n2 - 1;
    for (int i = 1; i + 1 < g.n1; ++i)
        s[i] = coef * (state.T(i + 1, j) - state.T(i - 1, j)) / (2 * g.h1);
    return s;
}

void apply_velocity_bc(FlowState& state, const PhysParams& phys) {
    (void)phys;
    ScalarField& u1 = state.u1;
    ScalarField& u2 = state.u2;
    const Grid& g = u1.grid;
    const int n1 = g.n1, n2 = g.n2;
    if (g.geometry == Geometry::CylindricalAxisym) {
        for (int j = 0; j < n2; ++j) {
            u1(0, j) = 0.0;                                 // axis
            u2(0, j) = (4 * u2(1, j) - u2(2, j)) / 3;       // du_z/dr = 0
            u1(n1 - 1, j) = 0.0;                            // free surface, normal
        }
        for (int i = 0; i < n1; ++i) {                      // rigid end walls last
            u1(i, 0) = u2(i, 0) = 0.0;
            u1(i, n2 - 1) = u2(i, n2 - 1) = 0.0;
        }
    } else {
        for (int i = 0; i < n1; ++i) {
            u2(i, n2 - 1) = 0.0;                            // free surface, normal
            u1(i, 0) = u2(i, 0) = 0.0;                      // rigid bottom
        }
        for (int j = 0; j < n2; ++j) {                      // rigid side walls last
            u1(0, j) = u2(0, j) = 0.0;
            u1(n1 - 1, j) = u2(n1 - 1, j) = 0.0;
        }
    }
}

NeumannData pressure_bc(const FlowState& state, const PhysParams& phys) {
    const Grid& g = state.grid();
    NeumannData d = NeumannData::zero(g);
    if (phys.Gr != 0.0) {
        // hydrostatic balance dp/dx2 = Gr*T on the walls normal to gravity,
        // expressed as outward-normal derivatives
        for (int i = 0; i < g.n1; ++i) {
            d.lo2[i] = -phys.Gr * state.T(i, 0);
            d.hi2[i] = phys.Gr * state.T(i, g.n2 - 1);
        }
    }
    return d;
}

} // namespace qmhd
