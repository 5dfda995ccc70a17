#pragma once

#include "qmhd/boundary.hpp"
#include "qmhd/field.hpp"

namespace qmhd {

struct PoissonReport {
    long iterations = 0;
    double residual = 0.0;
    bool converged = false;
    double projection_shift = 0.0;  // mean incompatibility removed from rhs
};

namespace detail {
// One grid level of the Neumann flux-balance system: per-node
// transmissibilities toward each neighbor, cell volumes, and scratch
// vectors for the solve. Coarse levels merge 2x2 blocks of cells; their
// couplings are the sums of the fine-face transmissibilities crossing the
// block boundary, which is again a flux balance on the merged cells.
struct MgLevel {
    int n1 = 0, n2 = 0;
    std::vector<double> tE, tW, tN, tS, inv_diag, vol;
    std::vector<double> x, b, r;  // scratch used during solve
};
} // namespace detail

// Finite-volume Neumann Poisson solver on the node-centered grid. Cells are
// the half/quarter control volumes around each node; in the cylindrical
// metric face weights carry r_{i+1/2} and the axis cell has volume h1^2/8
// per unit z. The singular (all-Neumann) system is made compatible by
// subtracting the volume-weighted mean of the assembled data, iterated
// without pinning, and shifted afterwards so p(pin) = 0 exactly.
//
// Iteration: red-black relaxation sweeps. On grids large enough to coarsen,
// the sweeps act as the smoother of a block-aggregated V-cycle driving a
// conjugate-gradient iteration, which keeps the sweep count per solve
// essentially independent of resolution; on tiny grids, and as a fallback
// when the accelerated path stalls, plain SOR sweeps with the configured
// relaxation factor are used directly.
class PoissonSolver {
public:
    explicit PoissonSolver(const Grid& grid, double omega = 1.7);

    // Solves Lap(p) = rhs with the prescribed boundary fluxes; `p` is used
    // as the starting guess (warm start across time steps). tol is an
    // absolute max-norm bound on the residual of the cell flux balances.
    // When tol lies below what double precision can express for the data at
    // hand, the stop point is the rounding floor of the residual evaluation
    // instead, and reaching it still counts as converged; a stall guard
    // breaks off iteration that has stopped making progress either way.
    // iterations reports fine-grid sweep-equivalents spent. Reentrant across
    // instances, but a single instance must not solve concurrently.
    PoissonReport solve(ScalarField& p, const ScalarField& rhs,
                        const NeumannData& bc, int pin_i, int pin_j,
                        double tol, long max_iter) const;

    const Grid& grid() const { return grid_; }
    double omega() const { return omega_; }

private:
    Grid grid_;
    double omega_;
    // per-node transmissibilities t*(p_nb - p0) and cell volumes
    std::vector<double> tE_, tW_, tN_, tS_, vol_, inv_diag_;
    mutable std::vector<detail::MgLevel> lv_;           // lv_[0] mirrors the arrays above
    mutable std::vector<double> cg_z_, cg_d_, cg_q_;    // conjugate-gradient scratch

    void assemble_rhs(const ScalarField& rhs, const NeumannData& bc,
                      std::vector<double>& b, double& shift) const;
    void v_cycle(size_t l) const;
    friend double residual_norm(const ScalarField&, const ScalarField&, const NeumannData&);
};

// max over interior nodes of |discrete Laplacian(p) - rhs| (cylindrical:
// (1/r) d(r dp/dr)/dr + d2p/dz2; planar: standard five-point).
double residual_norm(const ScalarField& p, const ScalarField& rhs, const NeumannData& bc);

} // namespace qmhd
