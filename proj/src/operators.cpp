#include "qmhd/operators.hpp"

#include <stdexcept>

#include "qmhd/boundary.hpp"
#include "face_work.hpp"

namespace qmhd {
namespace detail {

void node_deriv(const ScalarField& f, int direction, std::vector<double>& out) {
    const int n1 = f.n1(), n2 = f.n2();
    out.resize(static_cast<size_t>(n1) * n2);
    if (direction == 0) {
        const double c = 1.0 / (2 * f.grid.h1);
        for (int j = 0; j < n2; ++j) {
            double* o = out.data() + static_cast<size_t>(n1) * j;
            o[0] = (-3 * f(0, j) + 4 * f(1, j) - f(2, j)) * c;
            for (int i = 1; i + 1 < n1; ++i)
                o[i] = (f(i + 1, j) - f(i - 1, j)) * c;
            o[n1 - 1] = (3 * f(n1 - 1, j) - 4 * f(n1 - 2, j) + f(n1 - 3, j)) * c;
        }
    } else {
        const double c = 1.0 / (2 * f.grid.h2);
        for (int i = 0; i < n1; ++i) {
            out[i] = (-3 * f(i, 0) + 4 * f(i, 1) - f(i, 2)) * c;
            out[i + static_cast<size_t>(n1) * (n2 - 1)] =
                (3 * f(i, n2 - 1) - 4 * f(i, n2 - 2) + f(i, n2 - 3)) * c;
        }
        for (int j = 1; j + 1 < n2; ++j)
            for (int i = 0; i < n1; ++i)
                out[i + static_cast<size_t>(n1) * j] = (f(i, j + 1) - f(i, j - 1)) * c;
    }
}

void FaceWork::build_base(const FlowState& s, const PhysParams& phys, FieldVariant variant) {
    const Grid& g = s.grid();
    n1 = g.n1; n2 = g.n2; h1 = g.h1; h2 = g.h2;
    double d1, d2;
    damping(variant, phys.Ha, d1, d2);
    const double Gr = phys.Gr;

    node_deriv(s.u1, 0, d1u1);
    node_deriv(s.u1, 1, d2u1);
    node_deriv(s.u2, 0, d1u2);
    node_deriv(s.u2, 1, d2u2);

    const size_t m1 = static_cast<size_t>(n1 - 1) * n2;
    u1F1.resize(m1); u2F1.resize(m1); TF1.resize(m1);
    du1n1.resize(m1); du2n1.resize(m1); du1t1.resize(m1); du2t1.resize(m1);
    G1F1.resize(m1); G2F1.resize(m1);
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i + 1 < n1; ++i) {
            const int k = idx1(i, j);
            const size_t a = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;
            const size_t b = a + 1;
            u1F1[k] = 0.5 * (s.u1.v[a] + s.u1.v[b]);
            u2F1[k] = 0.5 * (s.u2.v[a] + s.u2.v[b]);
            TF1[k] = 0.5 * (s.T.v[a] + s.T.v[b]);
            du1n1[k] = (s.u1.v[b] - s.u1.v[a]) / h1;
            du2n1[k] = (s.u2.v[b] - s.u2.v[a]) / h1;
            du1t1[k] = 0.5 * (d2u1[a] + d2u1[b]);
            du2t1[k] = 0.5 * (d2u2[a] + d2u2[b]);
            G1F1[k] = u1F1[k] * du1n1[k] + u2F1[k] * du1t1[k] + d1 * u1F1[k];
            G2F1[k] = u1F1[k] * du2n1[k] + u2F1[k] * du2t1[k] + d2 * u2F1[k] - Gr * TF1[k];
        }

    const size_t m2 = static_cast<size_t>(n1) * (n2 - 1);
    u1F2.resize(m2); u2F2.resize(m2); TF2.resize(m2);
    du1n2.resize(m2); du2n2.resize(m2); du1t2.resize(m2); du2t2.resize(m2);
    G1F2.resize(m2); G2F2.resize(m2);
    for (int j = 0; j + 1 < n2; ++j)
        for (int i = 0; i < n1; ++i) {
            const int k = idx2(i, j);
            const size_t a = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;
            const size_t b = a + n1;
            u1F2[k] = 0.5 * (s.u1.v[a] + s.u1.v[b]);
            u2F2[k] = 0.5 * (s.u2.v[a] + s.u2.v[b]);
            TF2[k] = 0.5 * (s.T.v[a] + s.T.v[b]);
            du1n2[k] = (s.u1.v[b] - s.u1.v[a]) / h2;
            du2n2[k] = (s.u2.v[b] - s.u2.v[a]) / h2;
            du1t2[k] = 0.5 * (d1u1[a] + d1u1[b]);
            du2t2[k] = 0.5 * (d1u2[a] + d1u2[b]);
            G1F2[k] = u1F2[k] * du1t2[k] + u2F2[k] * du1n2[k] + d1 * u1F2[k];
            G2F2[k] = u1F2[k] * du2t2[k] + u2F2[k] * du2n2[k] + d2 * u2F2[k] - Gr * TF2[k];
        }
}

void FaceWork::build_w(const ScalarField& p, double tau) {
    node_deriv(p, 0, d1p);
    node_deriv(p, 1, d2p);
    w1F1.resize(G1F1.size()); w2F1.resize(G1F1.size()); dpn1.resize(G1F1.size());
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i + 1 < n1; ++i) {
            const int k = idx1(i, j);
            const size_t a = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;
            dpn1[k] = (p.v[a + 1] - p.v[a]) / h1;
            w1F1[k] = tau * (G1F1[k] + dpn1[k]);
            w2F1[k] = tau * (G2F1[k] + 0.5 * (d2p[a] + d2p[a + 1]));
        }
    w1F2.resize(G1F2.size()); w2F2.resize(G1F2.size()); dpn2.resize(G1F2.size());
    for (int j = 0; j + 1 < n2; ++j)
        for (int i = 0; i < n1; ++i) {
            const int k = idx2(i, j);
            const size_t a = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;
            dpn2[k] = (p.v[a + n1] - p.v[a]) / h2;
            w2F2[k] = tau * (G2F2[k] + dpn2[k]);
            w1F2[k] = tau * (G1F2[k] + 0.5 * (d1p[a] + d1p[a + n1]));
        }
}

namespace {

void ensure(ScalarField& f, const Grid& g) {
    if (!f.grid.same_shape(g))
        f = ScalarField(g);
    else
        f.fill(0.0);
}

} // namespace

void assemble_momentum(const FlowState& s, const FaceWork& f, const Metric& met,
                       const PhysParams& phys, FieldVariant variant,
                       const VectorField& w, Tendency& out) {
    const Grid& g = s.grid();
    const double Gr = phys.Gr;
    double damp1, damp2;
    damping(variant, phys.Ha, damp1, damp2);

    ensure(out.d_u1, g);
    ensure(out.d_u2, g);

    const int n1 = g.n1, n2 = g.n2;
    const double h1 = g.h1, h2 = g.h2;
    const bool cyl = g.geometry == Geometry::CylindricalAxisym;

    for (int j = 1; j + 1 < n2; ++j) {
        for (int i = 1; i + 1 < n1; ++i) {
            const int kE = f.idx1(i, j), kW = f.idx1(i - 1, j);
            const int kN = f.idx2(i, j), kS = f.idx2(i, j - 1);
            const double aE = met.a1f[i], aW = met.a1f[i - 1];
            const double im = 1.0 / met.m[i];
            const size_t a = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;

            const double conv1 =
                (aE * f.u1F1[kE] * f.u1F1[kE] - aW * f.u1F1[kW] * f.u1F1[kW]) * im +
                (f.u1F2[kN] * f.u2F2[kN] - f.u1F2[kS] * f.u2F2[kS]) / h2;
            const double conv2 =
                (aE * f.u2F1[kE] * f.u1F1[kE] - aW * f.u2F1[kW] * f.u1F1[kW]) * im +
                (f.u2F2[kN] * f.u2F2[kN] - f.u2F2[kS] * f.u2F2[kS]) / h2;

            // viscous stress divergence; compact normal gradients on faces
            const double Pi11E = 2 * f.du1n1[kE], Pi11W = 2 * f.du1n1[kW];
            const double Pi12E = f.du1t1[kE] + f.du2n1[kE], Pi12W = f.du1t1[kW] + f.du2n1[kW];
            const double Pi12N = f.du1n2[kN] + f.du2t2[kN], Pi12S = f.du1n2[kS] + f.du2t2[kS];
            const double Pi22N = 2 * f.du2n2[kN], Pi22S = 2 * f.du2n2[kS];
            double visc1 = (aE * Pi11E - aW * Pi11W) * im + (Pi12N - Pi12S) / h2;
            const double visc2 = (aE * Pi12E - aW * Pi12W) * im + (Pi22N - Pi22S) / h2;
            if (cyl) {
                const double r = met.r[i];
                visc1 -= 2 * s.u1.v[a] / (r * r);  // -Pi_phiphi / r
            }

            const double wf1 =
                2 * ((aE * f.u1F1[kE] * f.w1F1[kE] - aW * f.u1F1[kW] * f.w1F1[kW]) * im) +
                (f.u1F2[kN] * f.w2F2[kN] - f.u1F2[kS] * f.w2F2[kS]) / h2 +
                (f.u2F2[kN] * f.w1F2[kN] - f.u2F2[kS] * f.w1F2[kS]) / h2;
            const double wf2 =
                (aE * f.u2F1[kE] * f.w1F1[kE] - aW * f.u2F1[kW] * f.w1F1[kW]) * im +
                (aE * f.u1F1[kE] * f.w2F1[kE] - aW * f.u1F1[kW] * f.w2F1[kW]) * im +
                2 * ((f.u2F2[kN] * f.w2F2[kN] - f.u2F2[kS] * f.w2F2[kS]) / h2);

            out.d_u1.v[a] = -conv1 - f.d1p[a] + visc1 + wf1 -
                            damp1 * (s.u1.v[a] - w.c1.v[a]);
            out.d_u2.v[a] = -conv2 - f.d2p[a] + visc2 + wf2 -
                            damp2 * (s.u2.v[a] - w.c2.v[a]) + Gr * s.T.v[a];
        }
    }

    // Free-surface tangential row: half-cell flux balance. Through the
    // surface face the tangential momentum flux is the prescribed Marangoni
    // shear; the convective and w-coupled fluxes vanish there (u.n = 0,
    // w.n = 0 on a non-deformable surface).
    const std::vector<double> S = marangoni_shear(s, phys);
    if (!cyl) {
        const int jt = n2 - 1;
        const double half = h2 / 2;
        for (int i = 1; i + 1 < n1; ++i) {
            const int kE = f.idx1(i, jt), kW = f.idx1(i - 1, jt);
            const int kS = f.idx2(i, n2 - 2);
            const size_t a = static_cast<size_t>(i) + static_cast<size_t>(n1) * jt;

            const double Pi11E = 2 * f.du1n1[kE], Pi11W = 2 * f.du1n1[kW];
            const double Pi12S = f.du1n2[kS] + f.du2t2[kS];
            const double visc = (S[i] - Pi12S) / half + (Pi11E - Pi11W) / h1;
            const double conv =
                (f.u1F1[kE] * f.u1F1[kE] - f.u1F1[kW] * f.u1F1[kW]) / h1 +
                (0.0 - f.u1F2[kS] * f.u2F2[kS]) / half;
            const double wf =
                2 * ((f.u1F1[kE] * f.w1F1[kE] - f.u1F1[kW] * f.w1F1[kW]) / h1) +
                (0.0 - f.u1F2[kS] * f.w2F2[kS]) / half +
                (0.0 - f.u2F2[kS] * f.w1F2[kS]) / half;

            out.d_u1.v[a] = -conv - f.d1p[a] + visc + wf -
                            damp1 * (s.u1.v[a] - w.c1.v[a]);
        }
    } else {
        const int it = n1 - 1;
        const double ms = met.m[it];        // r-moment of the boundary half cell
        const double rf = met.a1f[it - 1];  // inner radial face radius
        for (int j = 1; j + 1 < n2; ++j) {
            const int kW = f.idx1(it - 1, j);
            const int kN = f.idx2(it, j), kS = f.idx2(it, j - 1);
            const size_t a = static_cast<size_t>(it) + static_cast<size_t>(n1) * j;

            const double Pi12W = f.du1t1[kW] + f.du2n1[kW];
            const double Pi22N = 2 * f.du2n2[kN], Pi22S = 2 * f.du2n2[kS];
            const double visc = (S[j] - rf * Pi12W) / ms + (Pi22N - Pi22S) / h2;
            const double conv =
                (0.0 - rf * f.u1F1[kW] * f.u2F1[kW]) / ms +
                (f.u2F2[kN] * f.u2F2[kN] - f.u2F2[kS] * f.u2F2[kS]) / h2;
            const double wf =
                (0.0 - rf * (f.u2F1[kW] * f.w1F1[kW] + f.u1F1[kW] * f.w2F1[kW])) / ms +
                2 * ((f.u2F2[kN] * f.w2F2[kN] - f.u2F2[kS] * f.w2F2[kS]) / h2);

            out.d_u2.v[a] = -conv - f.d2p[a] + visc + wf -
                            damp2 * (s.u2.v[a] - w.c2.v[a]) + Gr * s.T.v[a];
        }
    }
}

void assemble_energy(const FlowState& s, const FaceWork& f, const Metric& met,
                     const PhysParams& phys, Tendency& out) {
    const Grid& g = s.grid();
    ensure(out.d_T, g);

    const int n1 = g.n1, n2 = g.n2;
    const double h1 = g.h1, h2 = g.h2;
    const double iPr = 1.0 / phys.Pr;

    for (int j = 1; j + 1 < n2; ++j)
        for (int i = 1; i + 1 < n1; ++i) {
            const int kE = f.idx1(i, j), kW = f.idx1(i - 1, j);
            const int kN = f.idx2(i, j), kS = f.idx2(i, j - 1);
            const double aE = met.a1f[i], aW = met.a1f[i - 1];
            const double im = 1.0 / met.m[i];
            const size_t a = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;

            const double adv =
                (aE * f.u1F1[kE] * f.TF1[kE] - aW * f.u1F1[kW] * f.TF1[kW]) * im +
                (f.u2F2[kN] * f.TF2[kN] - f.u2F2[kS] * f.TF2[kS]) / h2;
            const double wadv =
                (aE * f.w1F1[kE] * f.TF1[kE] - aW * f.w1F1[kW] * f.TF1[kW]) * im +
                (f.w2F2[kN] * f.TF2[kN] - f.w2F2[kS] * f.TF2[kS]) / h2;
            const double lap =
                (aE * (s.T.v[a + 1] - s.T.v[a]) / h1 -
                 aW * (s.T.v[a] - s.T.v[a - 1]) / h1) * im +
                ((s.T.v[a + n1] - s.T.v[a]) / h2 -
                 (s.T.v[a] - s.T.v[a - n1]) / h2) / h2;

            out.d_T.v[a] = -adv + wadv + lap * iPr;
        }
}

void assemble_pressure_rhs(const FlowState& s, const FaceWork& f, const Metric& met,
                           const PhysParams& phys, ScalarField& out) {
    const double tau = effective_tau(phys);
    if (!(tau > 0))
        throw std::invalid_argument("pressure rhs: effective tau must be positive");

    const Grid& g = s.grid();
    const int n1 = g.n1, n2 = g.n2;
    ensure(out, g);

    // interior faces: F = u/tau - G, accumulated as outward fluxes
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i + 1 < n1; ++i) {
            const int k = f.idx1(i, j);
            const double flux = met.a1f[i] * (f.u1F1[k] / tau - f.G1F1[k]) * met.d2[j];
            out(i, j) += flux;
            out(i + 1, j) -= flux;
        }
    for (int j = 0; j + 1 < n2; ++j)
        for (int i = 0; i < n1; ++i) {
            const int k = f.idx2(i, j);
            const double flux = met.m[i] * (f.u2F2[k] / tau - f.G2F2[k]);
            out(i, j) += flux;
            out(i, j + 1) -= flux;
        }

    // wall faces: u.n = 0 and w.n = 0 make the outward flux equal the
    // prescribed normal pressure derivative
    const NeumannData bc = pressure_bc(s, phys);
    const bool cyl = g.geometry == Geometry::CylindricalAxisym;
    const double a_lo1 = cyl ? 0.0 : 1.0;  // the axis face has zero area
    const double a_hi1 = 1.0;              // r = 1 laterally, unit width planar
    for (int j = 0; j < n2; ++j) {
        out(0, j) += a_lo1 * bc.lo1[j] * met.d2[j];
        out(n1 - 1, j) += a_hi1 * bc.hi1[j] * met.d2[j];
    }
    for (int i = 0; i < n1; ++i) {
        out(i, 0) += bc.lo2[i] * met.m[i];
        out(i, n2 - 1) += bc.hi2[i] * met.m[i];
    }

    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i)
            out(i, j) /= met.vol(i, j);
}

} // namespace detail

using detail::FaceWork;
using detail::Metric;

ScalarField deriv1(const ScalarField& f, int direction) {
    if (direction != 0 && direction != 1)
        throw std::invalid_argument("deriv1: direction must be 0 or 1");
    ScalarField out(f.grid);
    detail::node_deriv(f, direction, out.v);
    return out;
}

ScalarField cyl_div_r(const ScalarField& f) {
    if (f.grid.geometry != Geometry::CylindricalAxisym)
        throw std::invalid_argument("cyl_div_r: cylindrical grid required");
    ScalarField rf(f.grid);
    for (int j = 0; j < f.n2(); ++j)
        for (int i = 0; i < f.n1(); ++i)
            rf(i, j) = f.grid.r(i) * f(i, j);
    ScalarField out = deriv1(rf, 0);
    ScalarField df = deriv1(f, 0);
    for (int j = 0; j < f.n2(); ++j) {
        out(0, j) = 2 * df(0, j);
        for (int i = 1; i < f.n1(); ++i)
            out(i, j) /= f.grid.r(i);
    }
    return out;
}

StressComponents ns_stress(const FlowState& state) {
    const Grid& g = state.grid();
    StressComponents s;
    s.Pi_11 = deriv1(state.u1, 0);
    s.Pi_22 = deriv1(state.u2, 1);
    s.Pi_12 = deriv1(state.u1, 1);
    ScalarField d1u2 = deriv1(state.u2, 0);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) {
            s.Pi_12(i, j) += d1u2(i, j);
            s.Pi_11(i, j) *= 2;
            s.Pi_22(i, j) *= 2;
        }
    if (g.geometry == Geometry::CylindricalAxisym) {
        s.has_phiphi = true;
        s.Pi_phiphi = ScalarField(g);
        for (int j = 0; j < g.n2; ++j) {
            s.Pi_phiphi(0, j) = s.Pi_11(0, j);  // limit 2 du_r/dr at the axis
            for (int i = 1; i < g.n1; ++i)
                s.Pi_phiphi(i, j) = 2 * state.u1(i, j) / g.r(i);
        }
    }
    return s;
}

VectorField compute_w(const FlowState& state, const PhysParams& phys, FieldVariant variant) {
    const Grid& g = state.grid();
    const double tau = effective_tau(phys);
    double d1, d2;
    detail::damping(variant, phys.Ha, d1, d2);
    ScalarField d1u1 = deriv1(state.u1, 0), d2u1 = deriv1(state.u1, 1);
    ScalarField d1u2 = deriv1(state.u2, 0), d2u2 = deriv1(state.u2, 1);
    ScalarField d1p = deriv1(state.p, 0), d2p = deriv1(state.p, 1);
    VectorField w(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) {
            w.c1(i, j) = tau * (state.u1(i, j) * d1u1(i, j) + state.u2(i, j) * d2u1(i, j) +
                                d1 * state.u1(i, j) + d1p(i, j));
            w.c2(i, j) = tau * (state.u1(i, j) * d1u2(i, j) + state.u2(i, j) * d2u2(i, j) +
                                d2 * state.u2(i, j) + d2p(i, j) - phys.Gr * state.T(i, j));
        }
    return w;
}

void momentum_rhs(const FlowState& state, const VectorField& w,
                  const PhysParams& phys, FieldVariant variant, Tendency& out) {
    const Metric met(state.grid());
    FaceWork f;
    f.build_base(state, phys, variant);
    f.build_w(state.p, effective_tau(phys));
    detail::assemble_momentum(state, f, met, phys, variant, w, out);
}

void energy_rhs(const FlowState& state, const VectorField& w,
                const PhysParams& phys, FieldVariant variant, Tendency& out) {
    (void)w;
    const Metric met(state.grid());
    FaceWork f;
    f.build_base(state, phys, variant);
    f.build_w(state.p, effective_tau(phys));
    detail::assemble_energy(state, f, met, phys, out);
}

ScalarField pressure_poisson_rhs(const FlowState& state, const PhysParams& phys,
                                 FieldVariant variant) {
    const Metric met(state.grid());
    FaceWork f;
    f.build_base(state, phys, variant);
    ScalarField out;
    detail::assemble_pressure_rhs(state, f, met, phys, out);
    return out;
}

} // namespace qmhd
