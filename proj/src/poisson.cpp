#include "qmhd/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "face_work.hpp"

namespace qmhd {

namespace {

// One red-black relaxation pass on the flux-balance system
//   diag*x - sum_nb t*x_nb = b,
// i.e. x_k <- x_k + omega*((b_k + sum t*x_nb)/diag_k - x_k). `red_first`
// selects the color order; running the reverse order on the up-leg of a
// V-cycle keeps the cycle symmetric, which conjugate gradients requires.
void rb_sweep(const detail::MgLevel& L, std::vector<double>& x,
              const std::vector<double>& b, double omega, bool red_first) {
    const int n1 = L.n1, n2 = L.n2;
    for (int pass = 0; pass < 2; ++pass) {
        const int color = red_first ? pass : 1 - pass;
        for (int j = 0; j < n2; ++j) {
            const size_t row = static_cast<size_t>(n1) * j;
            for (int i = (color + j) & 1; i < n1; i += 2) {
                const size_t k = row + i;
                double s = b[k];
                if (i + 1 < n1) s += L.tE[k] * x[k + 1];
                if (i > 0) s += L.tW[k] * x[k - 1];
                if (j + 1 < n2) s += L.tN[k] * x[k + n1];
                if (j > 0) s += L.tS[k] * x[k - n1];
                x[k] += omega * (s * L.inv_diag[k] - x[k]);
            }
        }
    }
}

// q = A*x for the same system (A = diag - neighbor couplings).
void matvec(const detail::MgLevel& L, const std::vector<double>& x,
            std::vector<double>& q) {
    const int n1 = L.n1, n2 = L.n2;
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i) {
            const size_t k = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;
            double s = x[k] / L.inv_diag[k];
            if (i + 1 < n1) s -= L.tE[k] * x[k + 1];
            if (i > 0) s -= L.tW[k] * x[k - 1];
            if (j + 1 < n2) s -= L.tN[k] * x[k + n1];
            if (j > 0) s -= L.tS[k] * x[k - n1];
            q[k] = s;
        }
}

// Merge 2x2 blocks of cells of F into one cell of C. Couplings between
// blocks are the sums of the fine transmissibilities crossing the block
// interface; couplings internal to a block cancel out of the block's flux
// balance, so the coarse system is again of the same five-point form.
void coarsen(const detail::MgLevel& F, detail::MgLevel& C) {
    C.n1 = (F.n1 + 1) / 2;
    C.n2 = (F.n2 + 1) / 2;
    const size_t nc = static_cast<size_t>(C.n1) * C.n2;
    C.tE.assign(nc, 0.0);
    C.tW.assign(nc, 0.0);
    C.tN.assign(nc, 0.0);
    C.tS.assign(nc, 0.0);
    C.vol.assign(nc, 0.0);
    C.inv_diag.assign(nc, 0.0);
    C.x.assign(nc, 0.0);
    C.b.assign(nc, 0.0);
    C.r.assign(nc, 0.0);
    auto cidx = [&](int I, int J) { return static_cast<size_t>(I) + static_cast<size_t>(C.n1) * J; };
    for (int j = 0; j < F.n2; ++j)
        for (int i = 0; i < F.n1; ++i) {
            const size_t k = static_cast<size_t>(i) + static_cast<size_t>(F.n1) * j;
            const int I = i / 2, J = j / 2;
            C.vol[cidx(I, J)] += F.vol[k];
            if (i + 1 < F.n1 && (i + 1) / 2 != I) {
                C.tE[cidx(I, J)] += F.tE[k];
                C.tW[cidx(I + 1, J)] += F.tE[k];
            }
            if (j + 1 < F.n2 && (j + 1) / 2 != J) {
                C.tN[cidx(I, J)] += F.tN[k];
                C.tS[cidx(I, J + 1)] += F.tN[k];
            }
        }
    for (size_t k = 0; k < nc; ++k)
        C.inv_diag[k] = 1.0 / (C.tE[k] + C.tW[k] + C.tN[k] + C.tS[k]);
}

} // namespace

PoissonSolver::PoissonSolver(const Grid& grid, double omega)
    : grid_(grid), omega_(omega) {
    if (!(omega > 0 && omega < 2))
        throw std::invalid_argument("PoissonSolver: relaxation factor must be in (0, 2)");
    const detail::Metric met(grid);
    const int n1 = grid.n1, n2 = grid.n2;
    const size_t n = static_cast<size_t>(n1) * n2;
    tE_.assign(n, 0.0);
    tW_.assign(n, 0.0);
    tN_.assign(n, 0.0);
    tS_.assign(n, 0.0);
    vol_.assign(n, 0.0);
    inv_diag_.assign(n, 0.0);
    for (int j = 0; j < n2; ++j)
        for (int i = 0; i < n1; ++i) {
            const size_t k = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;
            if (i + 1 < n1) tE_[k] = met.a1f[i] * met.d2[j] / grid.h1;
            if (i > 0) tW_[k] = met.a1f[i - 1] * met.d2[j] / grid.h1;
            if (j + 1 < n2) tN_[k] = met.m[i] / grid.h2;
            if (j > 0) tS_[k] = met.m[i] / grid.h2;
            vol_[k] = met.vol(i, j);
            inv_diag_[k] = 1.0 / (tE_[k] + tW_[k] + tN_[k] + tS_[k]);
        }

    lv_.resize(1);
    lv_[0].n1 = n1;
    lv_[0].n2 = n2;
    lv_[0].tE = tE_;
    lv_[0].tW = tW_;
    lv_[0].tN = tN_;
    lv_[0].tS = tS_;
    lv_[0].inv_diag = inv_diag_;
    lv_[0].vol = vol_;
    lv_[0].x.assign(n, 0.0);
    lv_[0].b.assign(n, 0.0);
    lv_[0].r.assign(n, 0.0);
    while (static_cast<size_t>(lv_.back().n1) * lv_.back().n2 > 48) {
        detail::MgLevel next;
        coarsen(lv_.back(), next);
        lv_.push_back(std::move(next));
    }
}

void PoissonSolver::assemble_rhs(const ScalarField& rhs, const NeumannData& bc,
                                 std::vector<double>& b, double& shift) const {
    const int n1 = grid_.n1, n2 = grid_.n2;
    const detail::Metric met(grid_);
    b.resize(vol_.size());
    for (size_t k = 0; k < b.size(); ++k)
        b[k] = rhs.v[k] * vol_[k];
    // prescribed wall fluxes leave the balance of their boundary cells
    const bool cyl = grid_.geometry == Geometry::CylindricalAxisym;
    const double a_lo1 = cyl ? 0.0 : 1.0;
    for (int j = 0; j < n2; ++j) {
        b[static_cast<size_t>(n1) * j] -= a_lo1 * bc.lo1[j] * met.d2[j];
        b[static_cast<size_t>(n1) * j + n1 - 1] -= bc.hi1[j] * met.d2[j];
    }
    for (int i = 0; i < n1; ++i) {
        b[i] -= bc.lo2[i] * met.m[i];
        b[i + static_cast<size_t>(n1) * (n2 - 1)] -= bc.hi2[i] * met.m[i];
    }
    // project out the mean incompatibility of the singular Neumann system
    double bsum = 0.0, vsum = 0.0;
    for (size_t k = 0; k < b.size(); ++k) {
        bsum += b[k];
        vsum += vol_[k];
    }
    shift = bsum / vsum;
    for (size_t k = 0; k < b.size(); ++k)
        b[k] -= shift * vol_[k];
}

// Approximately solves A*x = b on level l into lv_[l].x. The coarsest level
// is relaxed to death and recentred (the all-Neumann system is singular; the
// recentring pins its free constant so corrections stay bounded).
void PoissonSolver::v_cycle(size_t l) const {
    detail::MgLevel& L = lv_[l];
    std::fill(L.x.begin(), L.x.end(), 0.0);
    if (l + 1 == lv_.size()) {
        for (int s = 0; s < 20; ++s) {
            rb_sweep(L, L.x, L.b, 1.0, true);
            rb_sweep(L, L.x, L.b, 1.0, false);
        }
        double xs = 0.0, vs = 0.0;
        for (size_t k = 0; k < L.x.size(); ++k) {
            xs += L.vol[k] * L.x[k];
            vs += L.vol[k];
        }
        const double mean = xs / vs;
        for (double& v : L.x)
            v -= mean;
        return;
    }
    rb_sweep(L, L.x, L.b, 1.0, true);
    matvec(L, L.x, L.r);
    for (size_t k = 0; k < L.r.size(); ++k)
        L.r[k] = L.b[k] - L.r[k];
    detail::MgLevel& C = lv_[l + 1];
    std::fill(C.b.begin(), C.b.end(), 0.0);
    for (int j = 0; j < L.n2; ++j)
        for (int i = 0; i < L.n1; ++i)
            C.b[static_cast<size_t>(i / 2) + static_cast<size_t>(C.n1) * (j / 2)] +=
                L.r[static_cast<size_t>(i) + static_cast<size_t>(L.n1) * j];
    v_cycle(l + 1);
    for (int j = 0; j < L.n2; ++j)
        for (int i = 0; i < L.n1; ++i)
            L.x[static_cast<size_t>(i) + static_cast<size_t>(L.n1) * j] +=
                C.x[static_cast<size_t>(i / 2) + static_cast<size_t>(C.n1) * (j / 2)];
    rb_sweep(L, L.x, L.b, 1.0, false);
}

PoissonReport PoissonSolver::solve(ScalarField& p, const ScalarField& rhs,
                                   const NeumannData& bc, int pin_i, int pin_j,
                                   double tol, long max_iter) const {
    if (!p.grid.same_shape(grid_) || !rhs.grid.same_shape(grid_))
        throw std::invalid_argument("PoissonSolver: field grid does not match the solver grid");
    if (pin_i < 0 || pin_i >= grid_.n1 || pin_j < 0 || pin_j >= grid_.n2)
        throw std::invalid_argument("PoissonSolver: pin outside the grid");
    const int n1 = grid_.n1, n2 = grid_.n2;
    const size_t n = vol_.size();
    if (max_iter <= 0)
        max_iter = 10L * n1 * n2;

    PoissonReport rep;
    std::vector<double> b;
    assemble_rhs(rhs, bc, b, rep.projection_shift);
    for (double& v : b)
        v = -v;  // flux-balance sign flipped so the system matrix is positive

    // Evaluates the residual together with the rounding floor the residual
    // evaluation itself admits: summing the flux balance loses ~eps per term,
    // so no iteration can push the computed residual reliably below that.
    // Optionally stores the raw residual vector for the gradient iteration.
    double floor = 0.0;
    auto residual = [&](std::vector<double>* out) {
        double rmax = 0.0, amax = 0.0;
        for (int j = 0; j < n2; ++j)
            for (int i = 0; i < n1; ++i) {
                const size_t k = static_cast<size_t>(i) + static_cast<size_t>(n1) * j;
                double s = b[k] - p.v[k] / inv_diag_[k];
                double a = std::abs(b[k]) + std::abs(p.v[k]) / inv_diag_[k];
                if (i + 1 < n1) { s += tE_[k] * p.v[k + 1]; a += tE_[k] * std::abs(p.v[k + 1]); }
                if (i > 0) { s += tW_[k] * p.v[k - 1]; a += tW_[k] * std::abs(p.v[k - 1]); }
                if (j + 1 < n2) { s += tN_[k] * p.v[k + n1]; a += tN_[k] * std::abs(p.v[k + n1]); }
                if (j > 0) { s += tS_[k] * p.v[k - n1]; a += tS_[k] * std::abs(p.v[k - n1]); }
                if (out) (*out)[k] = s;
                const double r = std::abs(s) / vol_[k];
                if (r > rmax) rmax = r;
                const double af = a / vol_[k];
                if (af > amax) amax = af;
            }
        floor = 8.0 * std::numeric_limits<double>::epsilon() * amax;
        return rmax;
    };

    // V-cycle-preconditioned conjugate gradients on grids with a hierarchy;
    // each iteration costs a few sweep-equivalents and the count to reach the
    // rounding floor stays flat as the grid is refined.
    if (lv_.size() > 1) {
        cg_z_.resize(n);
        cg_d_.resize(n);
        cg_q_.resize(n);
        std::vector<double>& r = cg_z_;  // residual; the cycle has its own scratch
        rep.residual = residual(&r);
        double rho_old = 0.0;
        bool first = true;
        while (rep.iterations + 3 <= max_iter) {
            if (rep.residual <= std::max(tol, floor))
                break;
            lv_[0].b = r;
            v_cycle(0);
            const std::vector<double>& z = lv_[0].x;
            double rho = 0.0;
            for (size_t k = 0; k < n; ++k)
                rho += r[k] * z[k];
            if (first) {
                cg_d_ = z;
            } else {
                const double beta = rho / rho_old;
                for (size_t k = 0; k < n; ++k)
                    cg_d_[k] = z[k] + beta * cg_d_[k];
            }
            first = false;
            matvec(lv_[0], cg_d_, cg_q_);
            double dq = 0.0;
            for (size_t k = 0; k < n; ++k)
                dq += cg_d_[k] * cg_q_[k];
            if (!(dq > 0.0))
                break;  // search direction exhausted; leave the rest to SOR
            const double alpha = rho / dq;
            for (size_t k = 0; k < n; ++k) {
                p.v[k] += alpha * cg_d_[k];
                r[k] -= alpha * cg_q_[k];
            }
            rho_old = rho;
            rep.iterations += 3;  // cycle + matvec, in sweep-equivalents
            if (rep.iterations % 96 == 0) {
                rep.residual = residual(&r);  // refresh drifted recurrence
            } else {
                double rmax = 0.0;
                for (size_t k = 0; k < n; ++k) {
                    const double rr = std::abs(r[k]) / vol_[k];
                    if (rr > rmax) rmax = rr;
                }
                rep.residual = rmax;
            }
        }
        rep.residual = residual(nullptr);
    }

    double best = lv_.size() > 1 ? rep.residual : residual(nullptr);
    rep.residual = best;
    int stall = 0;
    for (long it = rep.iterations; it < max_iter; ++it) {
        if (rep.residual <= std::max(tol, floor)) {
            rep.converged = true;
            break;
        }
        for (int color = 0; color < 2; ++color)
            for (int j = 0; j < n2; ++j) {
                const size_t row = static_cast<size_t>(n1) * j;
                for (int i = (color + j) & 1; i < n1; i += 2) {
                    const size_t k = row + i;
                    double s = b[k];
                    if (i + 1 < n1) s += tE_[k] * p.v[k + 1];
                    if (i > 0) s += tW_[k] * p.v[k - 1];
                    if (j + 1 < n2) s += tN_[k] * p.v[k + n1];
                    if (j > 0) s += tS_[k] * p.v[k - n1];
                    p.v[k] += omega_ * (s * inv_diag_[k] - p.v[k]);
                }
            }
        rep.iterations = it + 1;
        rep.residual = residual(nullptr);
        if (rep.residual < best * (1.0 - 1e-3)) {
            best = rep.residual;
            stall = 0;
        } else if (++stall >= 8) {
            break;  // progress exhausted by rounding
        }
    }
    if (rep.residual <= std::max(tol, floor))
        rep.converged = true;

    const double pv = p(pin_i, pin_j);
    for (double& x : p.v)
        x -= pv;
    return rep;
}

double residual_norm(const ScalarField& p, const ScalarField& rhs, const NeumannData& bc) {
    (void)bc;
    const Grid& g = p.grid;
    const detail::Metric met(g);
    double rmax = 0.0;
    for (int j = 1; j + 1 < g.n2; ++j)
        for (int i = 1; i + 1 < g.n1; ++i) {
            const double lap =
                (met.a1f[i] * (p(i + 1, j) - p(i, j)) / g.h1 -
                 met.a1f[i - 1] * (p(i, j) - p(i - 1, j)) / g.h1) / met.m[i] +
                (p(i, j + 1) - 2 * p(i, j) + p(i, j - 1)) / (g.h2 * g.h2);
            const double r = std::abs(lap - rhs(i, j));
            if (r > rmax) rmax = r;
        }
    return rmax;
}

} // namespace qmhd
