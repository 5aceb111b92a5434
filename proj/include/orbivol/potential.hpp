#pragma once
#include <vector>

#include "orbivol/complexfn.hpp"
#include "orbivol/diagram.hpp"

namespace orbivol {

// One signed dilogarithm term: sign * Li2(z_num / z_den).
struct DilogTerm {
    int sign;  // +1 or -1
    int num;   // segment id of the numerator
    int den;   // segment id of the denominator
};

// The potential function of a diagram: four terms per crossing.
struct PotentialFunction {
    std::vector<DilogTerm> terms;
    int num_segments = 0;
};

// Per crossing with slots (a, b, c, d):
//   +Li2(z_a/z_b) - Li2(z_c/z_b) + Li2(z_c/z_d) - Li2(z_a/z_d).
PotentialFunction build_potential(const KnotDiagram& d);

// V(z) = sum of the signed dilogarithms.  Throws degenerate_error if any
// term ratio lies within 1e-12 of {0, 1}.
cx eval_v(const PotentialFunction& pf, const std::vector<cx>& z);

// Component k of the logarithmic gradient z_k dV/dz_k, computed analytically:
// a term (s, i, j) contributes -s*log(1 - z_i/z_j) to component i and
// +s*log(1 - z_i/z_j) to component j.
std::vector<cx> eval_grad(const PotentialFunction& pf, const std::vector<cx>& z);

// w = V(z) - sum_k (z_k dV/dz_k) * log(z_k), with the principal log.
cx eval_w_raw(const PotentialFunction& pf, const std::vector<cx>& z);

}  // namespace orbivol
