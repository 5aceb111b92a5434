#pragma once
#include <complex>

#include "orbivol/errors.hpp"

namespace orbivol {

using cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Principal-branch logarithm: Im(result) in (-pi, pi].  A real input is
// treated as lying on the upper side of the cut (negative reals map to
// log|z| + i*pi), which std::log already guarantees for +0.0 imaginary
// parts; -0.0 imaginary parts are normalized to +0.0 first.
cx principal_log(cx z);

// Principal dilogarithm Li2(z) = -int_0^z log(1-t)/t dt.
// Values on the cut [1, inf) are the limit from below, consistent with
// principal_log applied to 1-z.  Total on finite inputs.
cx li2(cx z);

// Rogers dilogarithm R(z) = log(z)log(1-z)/2 + Li2(z), extended:
// rogers_r(z, p, q) = R(z) + (pi*i/2)*(p*log(1-z) + q*log z) - pi^2/6.
cx rogers_r(cx z, int p, int q);

// Reduce x into [0, mu) modulo mu > 0.
double mod_reduce(double x, double mu);

// Distance between x and y modulo mu (smallest representative gap).
double mod_dist(double x, double y, double mu);

}  // namespace orbivol
