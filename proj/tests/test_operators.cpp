#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qmhd/config.hpp"
#include "qmhd/field.hpp"
#include "qmhd/operators.hpp"

using namespace qmhd;

namespace {

constexpr double kPi = 3.14159265358979323846;

ScalarField filled(const Grid& g, double (*fn)(double, double)) {
    ScalarField f(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            f(i, j) = fn(g.x1(i), g.x2(j));
    return f;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (size_t k = 0; k < a.v.size(); ++k)
        m = std::max(m, std::abs(a.v[k] - b.v[k]));
    return m;
}

}  // namespace

TEST_CASE("deriv1 is exact through quadratics, including the edges") {
    Grid g = Grid::make(Geometry::Planar, 13, 11);

    ScalarField c = filled(g, [](double, double) { return 4.25; });
    ScalarField dc = deriv1(c, 0);
    for (double v : dc.v) CHECK(v == 0.0);

    ScalarField lin = filled(g, [](double x, double y) { return 2 * x - 3 * y; });
    ScalarField dx = deriv1(lin, 0), dy = deriv1(lin, 1);
    for (double v : dx.v) CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
    for (double v : dy.v) CHECK(v == doctest::Approx(-3.0).epsilon(1e-13));

    ScalarField quad = filled(g, [](double x, double) { return x * x; });
    ScalarField dq = deriv1(quad, 0);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            CHECK(dq(i, j) == doctest::Approx(2 * g.x1(i)).epsilon(1e-12));

    CHECK_THROWS_AS(deriv1(c, 2), std::invalid_argument);
    CHECK_THROWS_AS(deriv1(c, -1), std::invalid_argument);
}

TEST_CASE("deriv1 converges at second order on a trigonometric field") {
    auto max_err = [](int n) {
        Grid g = Grid::make(Geometry::Planar, n, n);
        ScalarField f = filled(g, [](double x, double y) {
            return std::sin(2 * kPi * x) * std::cos(kPi * y);
        });
        ScalarField d = deriv1(f, 0);
        double e = 0.0;
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i) {
                const double exact = 2 * kPi * std::cos(2 * kPi * g.x1(i)) *
                                     std::cos(kPi * g.x2(j));
                e = std::max(e, std::abs(d(i, j) - exact));
            }
        return e;
    };
    const double e1 = max_err(21), e2 = max_err(41);  // h halves exactly
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.6);
}

TEST_CASE("cyl_div_r handles the axis limit and rejects planar grids") {
    Grid g = Grid::make(Geometry::CylindricalAxisym, 21, 9);

    ScalarField r = filled(g, [](double x, double) { return x; });
    ScalarField d = cyl_div_r(r);  // (1/r) d(r^2)/dr = 2 everywhere
    for (double v : d.v) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

    ScalarField one = filled(g, [](double, double) { return 1.0; });
    ScalarField d1 = cyl_div_r(one);  // (1/r) d(r)/dr = 1/r off the axis
    for (int j = 0; j < g.n2; ++j) {
        CHECK(d1(0, j) == doctest::Approx(0.0));  // axis limit 2*df/dr of a constant
        for (int i = 1; i < g.n1; ++i)
            CHECK(d1(i, j) == doctest::Approx(1.0 / g.r(i)).epsilon(1e-12));
    }

    ScalarField z(g);
    ScalarField dz = cyl_div_r(z);
    for (double v : dz.v) CHECK(v == 0.0);

    Grid sq = Grid::make(Geometry::Planar, 5, 5);
    ScalarField f(sq);
    CHECK_THROWS_AS(cyl_div_r(f), std::invalid_argument);
}

TEST_CASE("ns_stress components on simple cylindrical profiles") {
    Grid g = Grid::make(Geometry::CylindricalAxisym, 11, 13);
    FlowState s(g);

    SUBCASE("u_r = r gives Pi_rr = Pi_phiphi = 2") {
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                s.u1(i, j) = g.r(i);
        StressComponents st = ns_stress(s);
        CHECK(st.has_phiphi);
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i) {
                CHECK(st.Pi_11(i, j) == doctest::Approx(2.0).epsilon(1e-13));
                CHECK(st.Pi_phiphi(i, j) == doctest::Approx(2.0).epsilon(1e-13));
                CHECK(st.Pi_22(i, j) == doctest::Approx(0.0));
                CHECK(st.Pi_12(i, j) == doctest::Approx(0.0));
            }
    }

    SUBCASE("u_z = r gives Pi_rz = 1") {
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                s.u2(i, j) = g.r(i);
        StressComponents st = ns_stress(s);
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                CHECK(st.Pi_12(i, j) == doctest::Approx(1.0).epsilon(1e-13));
    }

    SUBCASE("u_r = r z mixes into Pi_rz = r") {
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                s.u1(i, j) = g.r(i) * g.x2(j);
        StressComponents st = ns_stress(s);
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                CHECK(st.Pi_12(i, j) == doctest::Approx(g.r(i)).epsilon(1e-12));
    }
}

TEST_CASE("ns_stress reports no azimuthal component on planar grids") {
    Grid g = Grid::make(Geometry::Planar, 9, 9);
    FlowState s(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) {
            s.u1(i, j) = g.x1(i) * g.x1(i);
            s.u2(i, j) = g.x2(j) * g.x2(j);
        }
    StressComponents st = ns_stress(s);
    CHECK_FALSE(st.has_phiphi);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) {
            CHECK(st.Pi_11(i, j) == doctest::Approx(4 * g.x1(i)).epsilon(1e-12));
            CHECK(st.Pi_22(i, j) == doctest::Approx(4 * g.x2(j)).epsilon(1e-12));
            CHECK(st.Pi_12(i, j) == doctest::Approx(0.0));
        }
}

TEST_CASE("compute_w vanishes on a quiescent state") {
    Grid g = Grid::make(Geometry::Planar, 8, 8);
    FlowState s(g);
    PhysParams ph;
    ph.Ha = 100;
    VectorField w = compute_w(s, ph, FieldVariant::A);
    for (double v : w.c1.v) CHECK(v == 0.0);
    for (double v : w.c2.v) CHECK(v == 0.0);
}

TEST_CASE("compute_w picks up the damping of the field-perpendicular component") {
    Grid g = Grid::make(Geometry::Planar, 10, 10);
    FlowState s(g);
    // exact binary constant: the one-sided edge derivatives cancel bitwise
    const double c = 0.015625;
    for (double& v : s.u1.v) v = c;
    PhysParams ph;
    ph.Ha = 50;
    ph.tau0 = 2e-5;
    const double tau = effective_tau(ph);

    VectorField wa = compute_w(s, ph, FieldVariant::A);  // vertical field damps u1
    for (double v : wa.c1.v)
        CHECK(v == doctest::Approx(tau * 2500 * c).epsilon(1e-13));
    for (double v : wa.c2.v) CHECK(v == 0.0);

    VectorField wb = compute_w(s, ph, FieldVariant::B);  // horizontal field damps u2
    for (double v : wb.c1.v) CHECK(v == 0.0);
    for (double v : wb.c2.v) CHECK(v == 0.0);
}

TEST_CASE("compute_w reproduces the advective residual and scales with tau") {
    Grid g = Grid::make(Geometry::CylindricalAxisym, 21, 11);
    FlowState s(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            s.u1(i, j) = g.r(i) * g.r(i);
    PhysParams ph;
    ph.tau0 = 2e-7;
    ph.Re_s = 1e7;
    const double tau = effective_tau(ph);

    VectorField w = compute_w(s, ph, FieldVariant::None);
    // u_r d(u_r)/dr = r^2 * 2r, exact for the second-order derivative
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) {
            const double r = g.r(i);
            CHECK(w.c1(i, j) ==
                  doctest::Approx(tau * 2 * r * r * r).epsilon(1e-11));
        }
    CHECK(w.c1(10, 5) == doctest::Approx(2 * tau * 0.125).epsilon(1e-12));

    PhysParams ph2 = ph;
    ph2.tau0 = 2 * ph.tau0;
    VectorField w2 = compute_w(s, ph2, FieldVariant::None);
    const double ratio = effective_tau(ph2) / tau;
    for (size_t k = 0; k < w.c1.v.size(); ++k)
        if (w.c1.v[k] != 0.0)
            CHECK(w2.c1.v[k] / w.c1.v[k] == doctest::Approx(ratio).epsilon(1e-13));
}

TEST_CASE("momentum tendency of a quiescent isothermal state is zero") {
    for (Geometry geo : {Geometry::Planar, Geometry::CylindricalAxisym}) {
        Grid g = Grid::make(geo, 9, 11);
        FlowState s(g);
        PhysParams ph;
        ph.Ha = 50;
        const FieldVariant var =
            geo == Geometry::Planar ? FieldVariant::A : FieldVariant::Axial;
        VectorField w = compute_w(s, ph, var);
        Tendency t;
        momentum_rhs(s, w, ph, var, t);
        for (double v : t.d_u1.v) CHECK(v == 0.0);
        for (double v : t.d_u2.v) CHECK(v == 0.0);
    }
}

TEST_CASE("buoyancy enters the vertical momentum tendency as Gr*T") {
    Grid g = Grid::make(Geometry::Planar, 11, 11);
    FlowState s(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            s.T(i, j) = g.x1(i) + 2 * g.x2(j);
    PhysParams ph;
    ph.Gr = 1000;
    ph.Ma = 0;  // keep the free-surface row force-free
    Tendency t;
    momentum_rhs(s, compute_w(s, ph, FieldVariant::None), ph, FieldVariant::None, t);
    for (int j = 1; j + 1 < g.n2; ++j)
        for (int i = 1; i + 1 < g.n1; ++i) {
            CHECK(t.d_u2(i, j) == doctest::Approx(1000 * s.T(i, j)).epsilon(1e-12));
            CHECK(t.d_u1(i, j) == doctest::Approx(0.0));
        }
    for (int i = 1; i + 1 < g.n1; ++i)
        CHECK(t.d_u1(i, g.n2 - 1) == doctest::Approx(0.0));  // surface row, Ma = 0
}

TEST_CASE("uniform velocity feels only the Lorentz damping") {
    Grid g = Grid::make(Geometry::Planar, 12, 12);
    FlowState s(g);
    const double c = 0.37;
    for (double& v : s.u1.v) v = c;
    PhysParams ph;
    ph.Ha = 50;
    ph.tau0 = 2e-5;
    const double tau = effective_tau(ph);
    const double expected = -2500 * c * (1 - tau * 2500);

    VectorField w = compute_w(s, ph, FieldVariant::A);
    Tendency t;
    momentum_rhs(s, w, ph, FieldVariant::A, t);
    for (int j = 1; j < g.n2; ++j)  // interior rows and the free-surface row
        for (int i = 1; i + 1 < g.n1; ++i) {
            CHECK(t.d_u1(i, j) == doctest::Approx(expected).epsilon(1e-12));
            if (j + 1 < g.n2) CHECK(t.d_u2(i, j) == doctest::Approx(0.0));
        }
    for (int i = 0; i < g.n1; ++i) CHECK(t.d_u1(i, 0) == 0.0);  // rigid rows stay zero
    for (int j = 0; j < g.n2; ++j) {
        CHECK(t.d_u1(0, j) == 0.0);
        CHECK(t.d_u1(g.n1 - 1, j) == 0.0);
    }
}

TEST_CASE("the Marangoni shear drives the free-surface row alone") {
    Grid g = Grid::make(Geometry::Planar, 12, 12);
    FlowState s(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            s.T(i, j) = 1.0 - g.x1(i);
    PhysParams ph;  // Ma = 1000, Pr = 0.018
    VectorField w = compute_w(s, ph, FieldVariant::None);
    Tendency t;
    momentum_rhs(s, w, ph, FieldVariant::None, t);

    const std::vector<double> S = marangoni_shear(s, ph);
    const double half = g.h2 / 2;
    const int jt = g.n2 - 1;
    for (int i = 1; i + 1 < g.n1; ++i) {
        CHECK(S[i] == doctest::Approx(1000.0 / 0.018).epsilon(1e-13));
        CHECK(t.d_u1(i, jt) == doctest::Approx(S[i] / half).epsilon(1e-12));
    }
    for (int j = 1; j + 1 < g.n2; ++j)
        for (int i = 1; i + 1 < g.n1; ++i) {
            CHECK(t.d_u1(i, j) == doctest::Approx(0.0));
            CHECK(t.d_u2(i, j) == doctest::Approx(0.0));
        }
}

TEST_CASE("energy tendency: conduction exactness and advection of a gradient") {
    SUBCASE("linear temperature diffuses to zero") {
        Grid g = Grid::make(Geometry::Planar, 10, 10);
        FlowState s(g);
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                s.T(i, j) = 1.0 - g.x1(i);
        PhysParams ph;
        Tendency t;
        energy_rhs(s, compute_w(s, ph, FieldVariant::None), ph, FieldVariant::None, t);
        for (int j = 1; j + 1 < g.n2; ++j)
            for (int i = 1; i + 1 < g.n1; ++i)
                CHECK(t.d_T(i, j) == doctest::Approx(0.0));
    }

    SUBCASE("quadratic temperature gives the exact Laplacian over Pr") {
        Grid g = Grid::make(Geometry::Planar, 10, 10);
        FlowState s(g);
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                s.T(i, j) = g.x2(j) * g.x2(j);
        PhysParams ph;  // Pr = 0.018
        Tendency t;
        energy_rhs(s, compute_w(s, ph, FieldVariant::None), ph, FieldVariant::None, t);
        for (int j = 1; j + 1 < g.n2; ++j)
            for (int i = 1; i + 1 < g.n1; ++i)
                CHECK(t.d_T(i, j) == doctest::Approx(2.0 / 0.018).epsilon(1e-12));
    }

    SUBCASE("uniform axial flow advects a linear profile at rate -1") {
        Grid g = Grid::make(Geometry::CylindricalAxisym, 9, 17);
        FlowState s(g);
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i) {
                s.u2(i, j) = 1.0;
                s.T(i, j) = g.x2(j);
            }
        PhysParams ph;
        Tendency t;
        energy_rhs(s, compute_w(s, ph, FieldVariant::None), ph, FieldVariant::None, t);
        for (int j = 1; j + 1 < g.n2; ++j)
            for (int i = 1; i + 1 < g.n1; ++i)
                CHECK(t.d_T(i, j) == doctest::Approx(-1.0).epsilon(1e-12));
    }
}

TEST_CASE("pressure source vanishes for quiescent isothermal fields") {
    for (Geometry geo : {Geometry::Planar, Geometry::CylindricalAxisym}) {
        Grid g = Grid::make(geo, 9, 11);
        FlowState s(g);
        PhysParams ph;
        ScalarField rhs = pressure_poisson_rhs(s, ph, FieldVariant::None);
        for (double v : rhs.v) CHECK(v == 0.0);
    }
}

TEST_CASE("a linear vertical temperature under buoyancy sources Gr everywhere") {
    Grid g = Grid::make(Geometry::CylindricalAxisym, 11, 15);
    FlowState s(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            s.T(i, j) = g.x2(j);
    PhysParams ph;
    ph.Gr = 1000;
    ScalarField rhs = pressure_poisson_rhs(s, ph, FieldVariant::None);
    // div G with G = -Gr T e_z balances the wall data at every cell,
    // boundary half-cells included
    for (double v : rhs.v) CHECK(v == doctest::Approx(1000.0).epsilon(1e-10));
}

TEST_CASE("pressure source agrees with an independent cell-balance assembly") {
    for (Geometry geo : {Geometry::Planar, Geometry::CylindricalAxisym}) {
        Grid g = Grid::make(geo, 12, 12);
        FlowState s(g);
        s.u1 = oracle::smooth_field(g, 11, 0.8);
        s.u2 = oracle::smooth_field(g, 22, 0.6);
        s.T = oracle::smooth_field(g, 33, 1.0);
        s.p = oracle::smooth_field(g, 44, 0.5);
        PhysParams ph;
        ph.Gr = 250;
        ph.Ha = 30;
        ph.tau0 = 1e-4;
        const FieldVariant var =
            geo == Geometry::Planar ? FieldVariant::B : FieldVariant::Axial;
        ScalarField got = pressure_poisson_rhs(s, ph, var);
        ScalarField want = oracle::pressure_rhs(s, ph, var);
        double scale = 0.0;
        for (double v : want.v) scale = std::max(scale, std::abs(v));
        CHECK(max_abs_diff(got, want) <= 1e-12 * scale);
    }
}

TEST_CASE("with tau and Ha off the assembly is plain Navier-Stokes") {
    for (Geometry geo : {Geometry::Planar, Geometry::CylindricalAxisym}) {
        Grid g = Grid::make(geo, 12, 14);
        FlowState s(g);
        s.u1 = oracle::smooth_field(g, 101, 0.9);
        s.u2 = oracle::smooth_field(g, 202, 0.7);
        s.T = oracle::smooth_field(g, 303, 1.0);
        s.p = oracle::smooth_field(g, 404, 0.4);
        PhysParams ph;
        ph.Gr = 500;
        ph.Ha = 0;
        ph.tau0 = 0;
        ph.Re_s = 1e30;  // effective tau ~ 1e-60: the w path contributes nothing

        VectorField w = compute_w(s, ph, FieldVariant::None);
        Tendency got;
        momentum_rhs(s, w, ph, FieldVariant::None, got);
        energy_rhs(s, w, ph, FieldVariant::None, got);

        Tendency want;
        oracle::ns_momentum(s, ph.Gr, ph.Ma, ph.Pr, want);
        oracle::ns_energy(s, ph.Pr, want);

        double scale1 = 0.0, scale2 = 0.0, scaleT = 0.0;
        for (double v : want.d_u1.v) scale1 = std::max(scale1, std::abs(v));
        for (double v : want.d_u2.v) scale2 = std::max(scale2, std::abs(v));
        for (double v : want.d_T.v) scaleT = std::max(scaleT, std::abs(v));
        CHECK(max_abs_diff(got.d_u1, want.d_u1) <= 1e-12 * scale1);
        CHECK(max_abs_diff(got.d_u2, want.d_u2) <= 1e-12 * scale2);
        CHECK(max_abs_diff(got.d_T, want.d_T) <= 1e-12 * scaleT);
    }
}

TEST_CASE("cylindrical assembly preserves mirror symmetry about z = 0") {
    Grid g = Grid::make(Geometry::CylindricalAxisym, 11, 21);
    FlowState s(g);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i) {
            const double r = g.r(i), z = g.x2(j);
            s.u1(i, j) = r * (1 - r) * z * z;            // even in z
            s.u2(i, j) = z * (1 - r * r);                // odd in z
            s.T(i, j) = (1 - std::abs(z)) * (1 + r * r); // even in z
            s.p(i, j) = r * r + z * z;                   // even in z
        }
    PhysParams ph;
    ph.Ha = 50;
    VectorField w = compute_w(s, ph, FieldVariant::Axial);
    Tendency t;
    momentum_rhs(s, w, ph, FieldVariant::Axial, t);
    energy_rhs(s, w, ph, FieldVariant::Axial, t);
    const int n2 = g.n2;
    for (int j = 1; j + 1 < n2; ++j)
        for (int i = 1; i + 1 < g.n1; ++i) {
            const int jm = n2 - 1 - j;
            CHECK(t.d_u1(i, j) == doctest::Approx(t.d_u1(i, jm)).epsilon(1e-11));
            CHECK(t.d_u2(i, j) == doctest::Approx(-t.d_u2(i, jm)).epsilon(1e-11));
            CHECK(t.d_T(i, j) == doctest::Approx(t.d_T(i, jm)).epsilon(1e-11));
        }
}
