#pragma once

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qmhd {

enum class Geometry { CylindricalAxisym, Planar };

// Uniform node-centered mesh. Nodes include both boundaries, so the spacing
// is (hi - lo)/(n - 1). Extents are fixed by the geometry: the cylinder is
// r in [0,1], z in [-1,1]; the square cavity is [0,1] x [0,1].
struct Grid {
    Geometry geometry = Geometry::Planar;
    int n1 = 0, n2 = 0;
    double lo1 = 0, hi1 = 1, lo2 = 0, hi2 = 1;
    double h1 = 0, h2 = 0;

    static Grid make(Geometry g, int n1, int n2) {
        if (n1 < 3 || n2 < 3)
            throw std::invalid_argument("grid needs at least 3 nodes per direction");
        Grid grid;
        grid.geometry = g;
        grid.n1 = n1;
        grid.n2 = n2;
        if (g == Geometry::CylindricalAxisym) {
            grid.lo1 = 0; grid.hi1 = 1;
            grid.lo2 = -1; grid.hi2 = 1;
        } else {
            grid.lo1 = 0; grid.hi1 = 1;
            grid.lo2 = 0; grid.hi2 = 1;
        }
        grid.h1 = (grid.hi1 - grid.lo1) / (n1 - 1);
        grid.h2 = (grid.hi2 - grid.lo2) / (n2 - 1);
        return grid;
    }

    double x1(int i) const { return lo1 + i * h1; }
    double x2(int j) const { return lo2 + j * h2; }
    // radius of node i; only meaningful for the cylindrical metric
    double r(int i) const { return x1(i); }
    int count() const { return n1 * n2; }
    bool same_shape(const Grid& o) const {
        return geometry == o.geometry && n1 == o.n1 && n2 == o.n2;
    }
};

// Scalar field stored node-major in the first direction: index = i + n1*j.
struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double init = 0.0)
        : grid(g), v(static_cast<size_t>(g.count()), init) {}

    double& operator()(int i, int j) { return v[static_cast<size_t>(i) + static_cast<size_t>(grid.n1) * j]; }
    double operator()(int i, int j) const { return v[static_cast<size_t>(i) + static_cast<size_t>(grid.n1) * j]; }

    int n1() const { return grid.n1; }
    int n2() const { return grid.n2; }

    void fill(double c) { std::fill(v.begin(), v.end(), c); }

    bool all_finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }
    // first non-finite node, or {-1,-1}
    std::pair<int, int> first_nonfinite() const {
        for (int j = 0; j < grid.n2; ++j)
            for (int i = 0; i < grid.n1; ++i)
                if (!std::isfinite((*this)(i, j))) return {i, j};
        return {-1, -1};
    }
};

struct VectorField {
    ScalarField c1, c2;   // (u_r, u_z) or (u_x, u_y)

    VectorField() = default;
    explicit VectorField(const Grid& g) : c1(g), c2(g) {}
};

// Full prognostic state: velocity, pressure, temperature.
struct FlowState {
    ScalarField u1, u2, p, T;
    double time = 0.0;
    long step_count = 0;

    FlowState() = default;
    explicit FlowState(const Grid& g) : u1(g), u2(g), p(g), T(g) {}
    const Grid& grid() const { return u1.grid; }
};

} // namespace qmhd
