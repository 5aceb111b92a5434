#pragma once
// Dense univariate polynomial primitives templated over the coefficient
// scalar, so the same code serves double-complex and double-double-complex.
// Coefficients are stored in ascending degree order.

#include <vector>

namespace orbivol::detail {

template <class T>
bool is_zero_coeff(const T& c) {
    return c == T(0.0);
}

template <class S>
void trim(std::vector<S>& c) {
    while (c.size() > 1 && is_zero_coeff(c.back())) c.pop_back();
}

template <class S>
std::vector<S> padd(const std::vector<S>& a, const std::vector<S>& b) {
    std::vector<S> c(std::max(a.size(), b.size()), S(0.0));
    for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    trim(c);
    return c;
}

template <class S>
std::vector<S> pmul(const std::vector<S>& a, const std::vector<S>& b) {
    std::vector<S> c(a.size() + b.size() - 1, S(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    trim(c);
    return c;
}

template <class S>
std::vector<S> pscale(const std::vector<S>& a, const S& s) {
    std::vector<S> c(a);
    for (auto& x : c) x *= s;
    trim(c);
    return c;
}

template <class S, class X>
X peval(const std::vector<S>& a, const X& x) {
    X r(0.0);
    for (size_t i = a.size(); i-- > 0;) r = r * x + X(a[i]);
    return r;
}

// S_k(v(x)) as a polynomial in x, for k >= -1, via the forward recurrence
// S_k = v*S_{k-1} - S_{k-2} with S_{-1} = 0, S_0 = 1.
template <class S>
std::vector<S> cheb_poly(long k, const std::vector<S>& v) {
    if (k == -1) return {S(0.0)};
    if (k == 0) return {S(1.0)};
    std::vector<S> pm1 = {S(1.0)};
    std::vector<S> p = v;
    for (long i = 2; i <= k; ++i) {
        auto nxt = padd(pmul(v, p), pscale(pm1, S(-1.0)));
        pm1 = std::move(p);
        p = std::move(nxt);
    }
    return p;
}

}  // namespace orbivol::detail
