#pragma once
#include <vector>

#include "orbivol/diagram.hpp"
#include "orbivol/jknot.hpp"
#include "orbivol/potential.hpp"

namespace orbivol {

enum class SeedStrategy { regular, given };

struct SolverConfig {
    double tol = 1e-11;          // residual tolerance on exp(g) - target
    int max_iter = 60;           // Newton iterations per solve
    int continuation_steps = 64; // cone-angle steps from 0 to 2*pi/r
    SeedStrategy seed_strategy = SeedStrategy::regular;
    std::vector<cx> seed;        // segment values used when strategy = given
};

// Solve the hyperbolicity equations at the complete structure
// (exp(z_k dV/dz_k) = 1 for every k), returning z in the z1 = 1 gauge with
// max_k |exp(z_k dV/dz_k) - 1| <= cfg.tol.
//
// Seeding: the "regular" strategy starts from phases making each crossing's
// shape ratios near exp(i*pi/3) (breadth-first assignment), then falls back
// to 32 deterministic pseudo-random restarts; among converged nondegenerate
// candidates the maximal-volume one is returned.  The "given" strategy
// Newton-polishes cfg.seed.  A solution with volume <= 1e-9 carries a
// non-geometric-branch warning in .warning.
//
// Throws convergence_error if no seed converges, degenerate_error if the
// solution has a shape ratio in {0, 1}.
SegmentSolution solve_complete(const PotentialFunction& pf,
                               const KnotDiagram& diagram,
                               const SolverConfig& cfg);

// Continue the complete-structure solution along the cone angle from t = 0
// to t = 2*pi/r in cfg.continuation_steps equal steps (per-step adaptive
// halving, at most 8 halvings per incident), Newton-correcting
// exp(z_k dV/dz_k) = exp(+-i*t) at each step, sign by side type.
//
// Throws continuation_error carrying the last good t when the branch is
// lost or collapses to zero volume, i.e. when no hyperbolic cone structure
// exists at the target (e.g. the Euclidean degeneration of (J(2,-2), 3)).
SegmentSolution solve_orbifold(const PotentialFunction& pf,
                               const KnotDiagram& diagram, int r,
                               const SolverConfig& cfg);

}  // namespace orbivol
