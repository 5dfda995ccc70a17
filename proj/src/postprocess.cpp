#include "qmhd/postprocess.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qmhd {

namespace {

void force_zero_boundary(ScalarField& f) {
    const int n1 = f.n1(), n2 = f.n2();
    for (int i = 0; i < n1; ++i) {
        f(i, 0) = 0.0;
        f(i, n2 - 1) = 0.0;
    }
    for (int j = 0; j < n2; ++j) {
        f(0, j) = 0.0;
        f(n1 - 1, j) = 0.0;
    }
}

} // namespace

PsiField stream_function(const FlowState& state, const VectorField& w) {
    const Grid& g = state.grid();
    const int n1 = g.n1, n2 = g.n2;

    ScalarField psi(g), alt(g);
    if (g.geometry == Geometry::CylindricalAxisym) {
        // psi(r,z) = int_0^r r' (u_z - w_z) dr'
        for (int j = 0; j < n2; ++j)
            for (int i = 1; i < n1; ++i) {
                const double fa = g.r(i - 1) * (state.u2(i - 1, j) - w.c2(i - 1, j));
                const double fb = g.r(i) * (state.u2(i, j) - w.c2(i, j));
                psi(i, j) = psi(i - 1, j) + 0.5 * g.h1 * (fa + fb);
            }
        // conjugate relation u_r - w_r = -(1/r) dpsi/dz, integrated from z = -1
        for (int j = 1; j < n2; ++j)
            for (int i = 0; i < n1; ++i) {
                const double fa = g.r(i) * (state.u1(i, j - 1) - w.c1(i, j - 1));
                const double fb = g.r(i) * (state.u1(i, j) - w.c1(i, j));
                alt(i, j) = alt(i, j - 1) - 0.5 * g.h2 * (fa + fb);
            }
    } else {
        // psi(x,y) = int_0^y (u_x - w_x) dy'
        for (int j = 1; j < n2; ++j)
            for (int i = 0; i < n1; ++i) {
                const double fa = state.u1(i, j - 1) - w.c1(i, j - 1);
                const double fb = state.u1(i, j) - w.c1(i, j);
                psi(i, j) = psi(i, j - 1) + 0.5 * g.h2 * (fa + fb);
            }
        // conjugate relation u_y - w_y = -dpsi/dx, integrated from x = 0
        for (int j = 0; j < n2; ++j)
            for (int i = 1; i < n1; ++i) {
                const double fa = state.u2(i - 1, j) - w.c2(i - 1, j);
                const double fb = state.u2(i, j) - w.c2(i, j);
                alt(i, j) = alt(i - 1, j) - 0.5 * g.h1 * (fa + fb);
            }
    }
    force_zero_boundary(psi);
    force_zero_boundary(alt);

    PsiField out;
    out.path_gap = 0.0;
    for (int j = 1; j + 1 < n2; ++j)
        for (int i = 1; i + 1 < n1; ++i) {
            const double d = std::abs(psi(i, j) - alt(i, j));
            if (d > out.path_gap) out.path_gap = d;
        }
    const Extremum m = psi_extremum(psi);
    out.min_value = m.value;
    out.min_i = m.i;
    out.min_j = m.j;
    out.psi = std::move(psi);
    return out;
}

Extremum psi_extremum(const ScalarField& psi) {
    const int n1 = psi.n1(), n2 = psi.n2();
    Extremum best{psi(1, 1), 1, 1};
    for (int i = 1; i + 1 < n1; ++i)
        for (int j = 1; j + 1 < n2; ++j)
            if (psi(i, j) < best.value) {
                best.value = psi(i, j);
                best.i = i;
                best.j = j;
            }
    return best;
}

int count_vortices(const ScalarField& psi) {
    const Grid& g = psi.grid;
    std::vector<double> line;
    if (g.geometry == Geometry::Planar) {
        const int i = g.n1 / 2;
        line.resize(g.n2);
        for (int j = 0; j < g.n2; ++j)
            line[j] = psi(i, j);
    } else {
        const int j = g.n2 / 2;
        line.resize(g.n1);
        for (int i = 0; i < g.n1; ++i)
            line[i] = psi(i, j);
    }
    double amax = 0.0;
    for (double v : psi.v)
        amax = std::max(amax, std::abs(v));
    const double floor = 0.01 * amax;

    int count = 0;
    for (size_t k = 1; k + 1 < line.size(); ++k) {
        const double dl = line[k] - line[k - 1];
        const double dr = line[k + 1] - line[k];
        if (dl * dr < 0.0 && std::abs(line[k]) >= floor)
            ++count;
    }
    return count;
}

void export_fields(const FlowState& state, const ScalarField& psi,
                   const CaseConfig& cfg, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp)
        throw std::runtime_error("export_fields: cannot open " + path);
    const Grid& g = state.grid();

    std::fputs("# case configuration:\n", fp);
    const std::string conf = serialize_config(cfg);
    size_t pos = 0;
    while (pos < conf.size()) {
        size_t end = conf.find('\n', pos);
        if (end == std::string::npos) end = conf.size();
        std::fprintf(fp, "#   %.*s\n", static_cast<int>(end - pos), conf.c_str() + pos);
        pos = end + 1;
    }
    std::fprintf(fp, "# time = %.17g, steps = %ld\n", state.time, state.step_count);
    std::fputs("# i\tj\tx1\tx2\tu1\tu2\tp\tT\tpsi\n", fp);
    for (int j = 0; j < g.n2; ++j)
        for (int i = 0; i < g.n1; ++i)
            std::fprintf(fp, "%d\t%d\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n",
                         i, j, g.x1(i), g.x2(j), state.u1(i, j), state.u2(i, j),
                         state.p(i, j), state.T(i, j), psi(i, j));
    if (std::fclose(fp) != 0)
        throw std::runtime_error("export_fields: write failed for " + path);
}

} // namespace qmhd
