#include "qmhd/integrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "qmhd/boundary.hpp"
#include "qmhd/operators.hpp"
#include "qmhd/postprocess.hpp"
#include "face_work.hpp"

namespace qmhd {

namespace {

void pin_location(const Grid& g, int& pi, int& pj) {
    if (g.geometry == Geometry::CylindricalAxisym) {
        pi = 0;             // the axis node nearest z = 0
        pj = g.n2 / 2;
    } else {
        pi = g.n1 / 2;      // the cavity center node
        pj = g.n2 / 2;
    }
}

// Per-thread scratch reused across steps; sized once per grid shape.
struct StepWork {
    bool ready = false;
    Grid shape;
    std::optional<detail::Metric> met;
    detail::FaceWork faces;
    VectorField w;
    Tendency tend;
    ScalarField rhs;

    void prepare(const Grid& g) {
        if (ready && shape.same_shape(g))
            return;
        shape = g;
        met.emplace(g);
        w = VectorField(g);
        ready = true;
    }
};

thread_local StepWork tl_work;

void check_finite(const FlowState& s, const char* name, const ScalarField& f) {
    if (!f.all_finite()) {
        auto [i, j] = f.first_nonfinite();
        throw BlowupError(s.step_count, i, j, name);
    }
}

} // namespace

FlowState initial_state(const CaseConfig& cfg) {
    const Grid g = Grid::make(cfg.geometry, cfg.n1, cfg.n2);
    FlowState s(g);
    if (cfg.geometry == Geometry::CylindricalAxisym) {
        for (int j = 0; j < g.n2; ++j) {
            const double v = 1.0 - std::abs(g.x2(j));
            for (int i = 0; i < g.n1; ++i)
                s.T(i, j) = v;
        }
    } else {
        for (int j = 0; j < g.n2; ++j)
            for (int i = 0; i < g.n1; ++i)
                s.T(i, j) = 1.0 - g.x1(i);
    }
    apply_temperature_bc(s);
    apply_velocity_bc(s, cfg.phys);
    return s;
}

void step(FlowState& state, const CaseConfig& cfg, const PoissonSolver& solver,
          StepDiag* diag) {
    const Grid& g = state.grid();
    if (!solver.grid().same_shape(g))
        throw std::invalid_argument("step: solver grid does not match the state");
    const PhysParams& ph = cfg.phys;
    if (ph.dt == 0.0) {
        state.step_count += 1;
        return;
    }

    StepWork& ws = tl_work;
    ws.prepare(g);
    const double tau = effective_tau(ph);

    ws.faces.build_base(state, ph, cfg.variant);
    detail::assemble_pressure_rhs(state, ws.faces, *ws.met, ph, ws.rhs);
    const NeumannData bc = pressure_bc(state, ph);
    int pi, pj;
    pin_location(g, pi, pj);
    const PoissonReport rep = solver.solve(state.p, ws.rhs, bc, pi, pj,
                                           ph.poisson_tol, ph.poisson_max_iter);
    if (diag)
        diag->poisson = rep;

    ws.faces.build_w(state.p, tau);

    // node-level w with the refreshed pressure, for the Lorentz difference
    double d1, d2;
    detail::damping(cfg.variant, ph.Ha, d1, d2);
    const size_t n = state.u1.v.size();
    for (size_t k = 0; k < n; ++k) {
        const double a = state.u1.v[k], b2 = state.u2.v[k];
        ws.w.c1.v[k] = tau * (a * ws.faces.d1u1[k] + b2 * ws.faces.d2u1[k] +
                              d1 * a + ws.faces.d1p[k]);
        ws.w.c2.v[k] = tau * (a * ws.faces.d1u2[k] + b2 * ws.faces.d2u2[k] +
                              d2 * b2 + ws.faces.d2p[k] - ph.Gr * state.T.v[k]);
    }

    detail::assemble_momentum(state, ws.faces, *ws.met, ph, cfg.variant, ws.w, ws.tend);
    detail::assemble_energy(state, ws.faces, *ws.met, ph, ws.tend);

    const double dt = ph.dt;
    for (size_t k = 0; k < n; ++k) {
        state.u1.v[k] += dt * ws.tend.d_u1.v[k];
        state.u2.v[k] += dt * ws.tend.d_u2.v[k];
        state.T.v[k] += dt * ws.tend.d_T.v[k];
    }

    apply_temperature_bc(state);
    apply_velocity_bc(state, ph);

    state.time += dt;
    state.step_count += 1;

    check_finite(state, "u1", state.u1);
    check_finite(state, "u2", state.u2);
    check_finite(state, "p", state.p);
    check_finite(state, "T", state.T);
}

double steady_residual(const FlowState& prev, const FlowState& next) {
    if (!prev.grid().same_shape(next.grid()))
        throw std::invalid_argument("steady_residual: grids differ");
    const size_t n = prev.u1.v.size();
    double sum = 0.0;
    for (size_t k = 0; k < n; ++k)
        sum += std::abs(next.u1.v[k] - prev.u1.v[k]) +
               std::abs(next.u2.v[k] - prev.u2.v[k]);
    return sum / static_cast<double>(n);
}

SteadyResult run_to_steady(const CaseConfig& cfg, const ProgressFn& progress) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    SteadyResult res;
    res.state = initial_state(cfg);
    FlowState& s = res.state;
    const Grid& g = s.grid();
    PoissonSolver solver(g, cfg.phys.sor_omega);

    const double eps = cfg.phys.eps_steady;
    // one sample per 1000 steps on production runs; short runs (small
    // max_steps) sample densely enough to stay informative
    long hist_every = cfg.max_steps / 10;
    hist_every = std::max(1L, std::min(1000L, hist_every));

    std::vector<double> pu1, pu2;
    double resid = std::numeric_limits<double>::infinity();
    long last_sample = -1;

    auto sample_now = [&]() {
        const VectorField w = compute_w(s, cfg.phys, cfg.variant);
        const PsiField psi = stream_function(s, w);
        HistorySample h{s.step_count, resid, psi.min_value};
        res.history.push_back(h);
        last_sample = s.step_count;
        if (progress)
            progress(h);
    };

    while (s.step_count < cfg.max_steps) {
        pu1 = s.u1.v;
        pu2 = s.u2.v;
        step(s, cfg, solver);

        double sum = 0.0;
        const size_t n = pu1.size();
        for (size_t k = 0; k < n; ++k)
            sum += std::abs(s.u1.v[k] - pu1[k]) + std::abs(s.u2.v[k] - pu2[k]);
        resid = sum / static_cast<double>(n);

        const bool done = resid < eps;
        if (done || s.step_count % hist_every == 0)
            sample_now();
        if (done) {
            res.converged = true;
            break;
        }
    }
    if (last_sample != s.step_count)
        sample_now();

    res.steps = s.step_count;
    res.residual = resid;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace qmhd
