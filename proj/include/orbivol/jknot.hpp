#pragma once
#include <string>
#include <utility>
#include <vector>

#include "orbivol/complexfn.hpp"
#include "orbivol/poly.hpp"

namespace orbivol {

// 2x2 complex matrix with unit determinant (holonomy representative).
struct SL2 {
    cx a, b, c, d;
};

SL2 sl2_mul(const SL2& x, const SL2& y);
SL2 sl2_inv(const SL2& x);
SL2 sl2_pow(const SL2& x, int k);  // k >= 0, repeated multiplication

// Parameters of the double-twist orbifold O(J(2n,-2m), r).
// n = vertical full twists, m = horizontal full twists (both the halved,
// polynomial-index convention), r = cone order >= 3; r = 0 is the sentinel
// for the complete structure (meridian eigenvalue M = 1).
struct JKnotParams {
    int n = 1;
    int m = 1;
    int r = 0;
};

// The only non-hyperbolic combination in range is (n, m, r) = (1, 1, 3).
bool is_hyperbolic(const JKnotParams& p);
void require_hyperbolic(const JKnotParams& p);  // throws nonhyperbolic_error

// Meridian eigenvalue M = exp(i*pi/r); M = 1 when r = 0 (complete case).
cx meridian_of(int r);

// Recurrence sequences of the closed-form solution.  Doubled indices: with
// n' = 2n, m' = 2m, B/Bt/Q run 0..n'+2, P runs 0..n'+1, Bp/Pp run 0..m'+1,
// Bpt runs 0..m', Qp runs 0..m'+2.  Tilde variants use M -> 1/M.
struct SequenceBundle {
    std::vector<cx> B, Bt, P, Q, Bp, Bpt, Pp, Qp;
    cx W, Wt;  // B_{n'+1} - B_{n'-1} and its tilde variant
    cx M, sq;  // meridian and the chosen branch of sqrt(lambda)
};

// Segment values of a solution, z1 = 1 gauge when gauge_normalized.
struct SegmentSolution {
    std::vector<cx> z;
    bool gauge_normalized = true;
    std::string warning;  // non-geometric-branch warning from the solver
};

// The polynomial phi in x whose roots give the SL2 representations, at
// fixed meridian M(r):
//   phi = S_m(zp) + [-1 + x*S_{n-1}(v)*(S_n(v) + (1-v)S_{n-1}(v))] * S_{m-1}(zp)
// with v = x + M^2 + M^-2 and zp = 2 + (v-2)*x*S_{n-1}(v)^2.
PolyCx rm_polynomial(const JKnotParams& p);

// (S, T) = (rho(s), rho(t)): S = [[M,1],[0,1/M]],
// T = [[M,0],[2 - M^2 - M^-2 - x, 1/M]].
std::pair<SL2, SL2> holonomy_matrices(cx x, cx M);

// || S W^m - W^m T ||_max with W = (T^-1 S)^n (T S^-1)^n: near zero exactly
// when x gives a representation of the knot group.
double rep_residual(cx x, const JKnotParams& p);

// Build all recurrence sequences at the given sqrt(lambda) branch (+1 =
// principal).  z1, z2, z3 are free seed values for the inhomogeneous P/Q
// sequences (the solution set carries that gauge freedom).
SequenceBundle build_sequences(const JKnotParams& p, cx lam, int branch = +1);

// |phi(x) - (B'_{m'+1} + Bpt_{m'} * Bt_{n'-1})|, both sides evaluated in
// double-double precision; a consistency check, not a pipeline step.
double rm_equivalence_residual(const JKnotParams& p, cx x);

// Closed-form segment solution for the generated J-diagram at a root lam of
// rm_polynomial.  Computed in double-double precision internally; the four
// doubly-labeled segment identifications must agree to 1e-8 relative
// (throws inconsistency_error otherwise); degenerate ratios throw
// degenerate_error.  Output is rescaled to the z1 = 1 gauge.
SegmentSolution assemble_solution(const JKnotParams& p, cx lam, int branch = +1);

// Lambda recovered from the first four segment values:
// (M^2 z2 - z3)(z4 - M^2 z1) / (M^2 z2 z3).
cx lambda_from_solution(const SegmentSolution& z, cx M);

struct GeometricCandidate {
    cx root;
    bool assembled = false;
    double volume = 0.0;       // Im of the complex-volume formula value
    std::string note;          // why the candidate was rejected, or "ok"
};

struct GeometricResult {
    cx lam;
    SegmentSolution solution;
    std::vector<GeometricCandidate> candidates;
};

// Enumerate roots of rm_polynomial (double-double Aberth), assemble each,
// and select the maximal-volume nondegenerate solution satisfying the
// hyperbolicity equations to 1e-9.  Ties within 1e-9 prefer Im(lambda) > 0.
GeometricResult geometric_lambda(const JKnotParams& p);

// "J(2n,-2m)" label for reports.
std::string knot_label(const JKnotParams& p);

}  // namespace orbivol
