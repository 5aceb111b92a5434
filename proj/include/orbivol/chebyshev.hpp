#pragma once
#include "orbivol/poly.hpp"

namespace orbivol {

// Chebyshev-like family S_k: S_0 = 1, S_1 = xi, S_k = xi*S_{k-1} - S_{k-2};
// extended to negative indices by S_{-1} = 0 and S_k = -S_{-k-2} for k <= -2.
cx cheb_s(long k, cx xi);

// S_k(v(x)) as a polynomial in x, k >= -1.
PolyCx cheb_s_of_poly(long k, const PolyCx& v);

}  // namespace orbivol
