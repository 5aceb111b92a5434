#pragma once
#include <optional>

#include "orbivol/diagram.hpp"
#include "orbivol/jknot.hpp"
#include "orbivol/potential.hpp"

namespace orbivol {

// Lattice modulus of the Chern-Simons part: pi^2/r for odd r, 2*pi^2/r for
// even r, pi^2 for the complete case (r = 0 sentinel).
double mu_of(int r);

struct OrbifoldInvariants {
    cx w_raw;                 // V(z) - sum_k (z_k dV/dz_k) log z_k
    double volume = 0.0;      // Im(w_raw)
    double cs_rep = 0.0;      // mod_reduce(-Re(w_raw), mu): in [0, mu)
    double modulus = 0.0;     // mu
    int r = 0;                // 0 = complete structure
    std::optional<cx> lambda;
    SegmentSolution z;
    double residual = 0.0;    // worst hyperbolicity-equation residual
};

// Evaluate the complex-volume formula at a solution of the hyperbolicity
// equations for cone order r (r = 0: complete).  Verifies the residual
// max_k |exp(z_k dV/dz_k) - exp(+-2*pi*i/r)| <= 1e-9 first and enforces the
// z1 = 1 gauge.
OrbifoldInvariants complex_volume(const PotentialFunction& pf,
                                  const KnotDiagram& diagram,
                                  const SegmentSolution& z, int r);

// Full closed-form pipeline for one orbifold: polynomial -> roots ->
// assembly -> geometric selection -> formula.
OrbifoldInvariants table1_row(const JKnotParams& p);

}  // namespace orbivol
