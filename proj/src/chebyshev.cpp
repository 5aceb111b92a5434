#include "orbivol/chebyshev.hpp"

#include "orbivol/detail/polyt.hpp"

namespace orbivol {

cx cheb_s(long k, cx xi) {
    if (k == -1) return cx(0.0);
    if (k <= -2) return -cheb_s(-k - 2, xi);
    if (k == 0) return cx(1.0);
    cx a(1.0), b = xi;
    for (long i = 2; i <= k; ++i) {
        cx nxt = xi * b - a;
        a = b;
        b = nxt;
    }
    return b;
}

PolyCx cheb_s_of_poly(long k, const PolyCx& v) {
    if (k < -1) throw domain_error("cheb_s_of_poly: k must be >= -1");
    return PolyCx(detail::cheb_poly(k, v.coeffs));
}

}  // namespace orbivol
