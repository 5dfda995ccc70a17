#pragma once

// Internal face-level assembly shared by the flux-form operators. Not part
// of the public API.
//
// All transported quantities live on half-integer nodes (cell faces): a face
// value is the average of the two adjacent nodes, the face-normal derivative
// is the compact two-point difference, and the face-tangential derivative is
// the average of the one-dimensional node derivatives. The stationary
// momentum group G and the auxiliary field w are evaluated directly on the
// faces; pairing the compact face pressure gradient inside w with the
// compact finite-volume Poisson matrix is what makes div(u - w) vanish at
// every cell once the pressure solve has converged.

#include <vector>

#include "qmhd/config.hpp"
#include "qmhd/field.hpp"
#include "qmhd/operators.hpp"

namespace qmhd::detail {

// Lorentz damping coefficients on (u1, u2): the induction-free force damps
// the velocity component perpendicular to the applied field.
inline void damping(FieldVariant v, double Ha, double& d1, double& d2) {
    d1 = d2 = 0.0;
    if (v == FieldVariant::Axial || v == FieldVariant::A) d1 = Ha * Ha;
    if (v == FieldVariant::B) d2 = Ha * Ha;
}

// Geometry factors of the node-centered finite-volume mesh.
//   a1(i+1/2): area weight of a direction-1 face (radius in the cylindrical
//              metric, 1 in the planar one);
//   m(i):      direction-1 moment of the cell around node i (r dr integral
//              over the cell in the cylindrical metric, plain width else);
//   d2(j):     direction-2 cell extent (h2, halved on the boundary rows).
struct Metric {
    int n1 = 0, n2 = 0;
    double h1 = 0, h2 = 0;
    bool cylindrical = false;
    std::vector<double> a1f;  // size n1-1, face weight between i and i+1
    std::vector<double> m;    // size n1
    std::vector<double> d2;   // size n2
    std::vector<double> r;    // size n1 (node radius; 0,1,... planar unused)

    explicit Metric(const Grid& g) {
        n1 = g.n1; n2 = g.n2; h1 = g.h1; h2 = g.h2;
        cylindrical = g.geometry == Geometry::CylindricalAxisym;
        a1f.resize(n1 - 1);
        m.resize(n1);
        d2.resize(n2, h2);
        d2.front() = d2.back() = h2 / 2;
        r.resize(n1);
        for (int i = 0; i < n1; ++i) r[i] = g.x1(i);
        if (cylindrical) {
            for (int i = 0; i + 1 < n1; ++i) a1f[i] = 0.5 * (r[i] + r[i + 1]);
            m[0] = h1 * h1 / 8;
            m[n1 - 1] = (h1 / 2) * (r[n1 - 1] - h1 / 4);
            for (int i = 1; i + 1 < n1; ++i) m[i] = r[i] * h1;
        } else {
            for (int i = 0; i + 1 < n1; ++i) a1f[i] = 1.0;
            m[0] = m[n1 - 1] = h1 / 2;
            for (int i = 1; i + 1 < n1; ++i) m[i] = h1;
        }
    }
    double vol(int i, int j) const { return m[i] * d2[j]; }
};

// One-dimensional node derivative along a direction (duplicated from the
// public deriv1 to keep this header self-contained for inlining).
void node_deriv(const ScalarField& f, int direction, std::vector<double>& out);

struct FaceWork {
    int n1 = 0, n2 = 0;
    double h1 = 0, h2 = 0;
    // direction-1 faces: (n1-1) x n2, index i + (n1-1)*j
    std::vector<double> u1F1, u2F1, TF1, du1n1, du2n1, du1t1, du2t1, G1F1, G2F1, w1F1, w2F1, dpn1;
    // direction-2 faces: n1 x (n2-1), index i + n1*j
    std::vector<double> u1F2, u2F2, TF2, du1n2, du2n2, du1t2, du2t2, G1F2, G2F2, w1F2, w2F2, dpn2;
    // node derivatives kept for tangential averaging and the node-level w
    std::vector<double> d1u1, d2u1, d1u2, d2u2, d1p, d2p;

    int idx1(int i, int j) const { return i + (n1 - 1) * j; }
    int idx2(int i, int j) const { return i + n1 * j; }

    // everything that does not involve the pressure
    void build_base(const FlowState& s, const PhysParams& phys, FieldVariant variant);
    // face w = tau * (G + face pressure gradient); call after the p solve
    void build_w(const ScalarField& p, double tau);
};

// Assembly kernels over a prepared FaceWork. The public operators wrap them
// with a locally built FaceWork; the time stepper shares one FaceWork across
// all three assemblies per step.
void assemble_momentum(const FlowState& s, const FaceWork& f, const Metric& met,
                       const PhysParams& phys, FieldVariant variant,
                       const VectorField& w, Tendency& out);
void assemble_energy(const FlowState& s, const FaceWork& f, const Metric& met,
                     const PhysParams& phys, Tendency& out);
// finite-volume divergence density of (u/tau - G) over every node, wall
// fluxes from the pressure Neumann data
void assemble_pressure_rhs(const FlowState& s, const FaceWork& f, const Metric& met,
                           const PhysParams& phys, ScalarField& out);

} // namespace qmhd::detail
