#include "doctest.h"

#include <cmath>

#include "qmhd/field.hpp"

using namespace qmhd;

TEST_CASE("grid extents follow the geometry") {
    Grid cyl = Grid::make(Geometry::CylindricalAxisym, 82, 162);
    CHECK(cyl.lo1 == 0.0);
    CHECK(cyl.hi1 == 1.0);
    CHECK(cyl.lo2 == -1.0);
    CHECK(cyl.hi2 == 1.0);
    CHECK(cyl.h1 == doctest::Approx(1.0 / 81).epsilon(1e-15));
    CHECK(cyl.h2 == doctest::Approx(2.0 / 161).epsilon(1e-15));
    CHECK(cyl.count() == 82 * 162);

    Grid sq = Grid::make(Geometry::Planar, 42, 42);
    CHECK(sq.lo2 == 0.0);
    CHECK(sq.hi2 == 1.0);
    CHECK(sq.h1 == doctest::Approx(1.0 / 41).epsilon(1e-15));
}

TEST_CASE("grid node coordinates span the extents exactly") {
    Grid g = Grid::make(Geometry::CylindricalAxisym, 11, 21);
    CHECK(g.x1(0) == 0.0);
    CHECK(g.x1(10) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.x2(0) == -1.0);
    CHECK(g.x2(20) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.r(5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("grids with fewer than 3 nodes per direction are rejected") {
    CHECK_THROWS_AS(Grid::make(Geometry::Planar, 2, 10), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(Geometry::Planar, 10, 2), std::invalid_argument);
}

TEST_CASE("same_shape compares geometry and node counts") {
    Grid a = Grid::make(Geometry::Planar, 12, 14);
    Grid b = Grid::make(Geometry::Planar, 12, 14);
    Grid c = Grid::make(Geometry::Planar, 14, 12);
    Grid d = Grid::make(Geometry::CylindricalAxisym, 12, 14);
    CHECK(a.same_shape(b));
    CHECK_FALSE(a.same_shape(c));
    CHECK_FALSE(a.same_shape(d));
}

TEST_CASE("scalar field storage is first-direction major") {
    Grid g = Grid::make(Geometry::Planar, 5, 4);
    ScalarField f(g);
    f(3, 2) = 7.5;
    CHECK(f.v[3 + 5 * 2] == 7.5);
    const ScalarField& cf = f;
    CHECK(cf(3, 2) == 7.5);
    CHECK(f.n1() == 5);
    CHECK(f.n2() == 4);
}

TEST_CASE("scalar field fill and finiteness checks") {
    Grid g = Grid::make(Geometry::Planar, 4, 4);
    ScalarField f(g, 1.5);
    for (double x : f.v) CHECK(x == 1.5);
    f.fill(-2.0);
    CHECK(f(2, 3) == -2.0);
    CHECK(f.all_finite());
    CHECK(f.first_nonfinite() == std::pair<int, int>{-1, -1});

    f(1, 2) = std::nan("");
    CHECK_FALSE(f.all_finite());
    CHECK(f.first_nonfinite() == std::pair<int, int>{1, 2});
}

TEST_CASE("vector field and flow state share the grid shape") {
    Grid g = Grid::make(Geometry::CylindricalAxisym, 6, 8);
    VectorField v(g);
    CHECK(v.c1.grid.same_shape(g));
    CHECK(v.c2.v.size() == 48);

    FlowState s(g);
    CHECK(s.grid().same_shape(g));
    CHECK(s.u1.v.size() == 48);
    CHECK(s.p.v.size() == 48);
    CHECK(s.T.v.size() == 48);
    CHECK(s.time == 0.0);
    CHECK(s.step_count == 0);
}
