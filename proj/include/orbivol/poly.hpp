#pragma once
#include <complex>
#include <vector>

#include "orbivol/complexfn.hpp"
#include "orbivol/errors.hpp"

namespace orbivol {

// Dense complex polynomial, coefficients in ascending degree order.
// Invariant: trailing zero coefficients trimmed; at least one coefficient.
struct PolyCx {
    std::vector<cx> coeffs;

    PolyCx() : coeffs{cx(0.0)} {}
    explicit PolyCx(std::vector<cx> c);

    int degree() const { return int(coeffs.size()) - 1; }
};

PolyCx poly_add(const PolyCx& a, const PolyCx& b);
PolyCx poly_mul(const PolyCx& a, const PolyCx& b);
cx poly_eval(const PolyCx& p, cx x);

// All deg(p) roots with multiplicity, found by simultaneous (Aberth-style)
// iteration carried out in double-double precision, returned in
// lexicographic (Re, Im) order.  Each returned root satisfies
// |p(root)| <= 1e-10 * max|coeff| * max(1, |root|)^deg.
// Throws domain_error on degree 0 and convergence_error (carrying the best
// iterate) if the iteration stalls or the residual contract fails.
std::vector<cx> roots_all(const PolyCx& p);

}  // namespace orbivol
