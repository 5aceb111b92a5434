#include "orbivol/dd.hpp"

namespace orbivol {

namespace {

// Taylor series on |x| <= 1.2, where terms decay below 1e-38 within ~20 terms.
dd cos_taylor(dd x) {
    dd x2 = x * x;
    dd term(1.0);
    dd sum(1.0);
    for (int k = 1; k < 40; ++k) {
        term = term * x2 / dd(double(2 * k - 1) * double(2 * k));
        if (k % 2 == 1) sum -= term; else sum += term;
        if (std::fabs(term.hi) < 1e-38) break;
    }
    return sum;
}

dd sin_taylor(dd x) {
    dd x2 = x * x;
    dd term = x;
    dd sum = x;
    for (int k = 1; k < 40; ++k) {
        term = term * x2 / dd(double(2 * k) * double(2 * k + 1));
        if (k % 2 == 1) sum -= term; else sum += term;
        if (std::fabs(term.hi) < 1e-38) break;
    }
    return sum;
}

}  // namespace

dd dd_cos(dd x) {
    if (std::fabs(x.hi) <= 1.2) return cos_taylor(x);
    dd h = x * dd(0.5);
    dd c = cos_taylor(h);
    return dd(2.0) * c * c - dd(1.0);
}

dd dd_sin(dd x) {
    if (std::fabs(x.hi) <= 1.2) return sin_taylor(x);
    dd h = x * dd(0.5);
    return dd(2.0) * sin_taylor(h) * cos_taylor(h);
}

}  // namespace orbivol
