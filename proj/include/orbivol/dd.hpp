#pragma once
// Double-double arithmetic (~32 significant digits): an unevaluated sum of
// two doubles.  Used internally where plain doubles lose too much ground:
// polynomial coefficient construction, simultaneous root refinement, and
// closed-form sequence assembly.  Algorithms are the classical
// error-free-transformation kind (Dekker/Knuth two_sum, FMA two_prod).

#include <cmath>

namespace orbivol {

struct dd {
    double hi = 0.0;
    double lo = 0.0;
    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
};

namespace ddops {

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return dd(s, b - (s - a));
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return dd(s, (a - (s - v)) + (b - v));
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return dd(p, std::fma(a, b, -p));
}

}  // namespace ddops

inline dd operator+(dd a, dd b) {
    dd s = ddops::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return ddops::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return dd(-a.hi, -a.lo); }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = ddops::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return ddops::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = ddops::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { a = a + b; return a; }
inline dd& operator-=(dd& a, dd b) { a = a - b; return a; }
inline dd& operator*=(dd& a, dd b) { a = a * b; return a; }
inline dd& operator/=(dd& a, dd b) { a = a / b; return a; }

inline bool operator<(dd a, dd b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(dd a, dd b) { return b < a; }
inline bool operator==(dd a, dd b) { return a.hi == b.hi && a.lo == b.lo; }

inline double to_double(dd a) { return a.hi + a.lo; }

inline dd dd_abs(dd a) { return (a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0)) ? -a : a; }

inline dd dd_sqrt(dd a) {
    if (a.hi == 0.0 && a.lo == 0.0) return dd(0.0);
    dd x(std::sqrt(a.hi));
    // One Newton step lifts the double seed to full dd precision.
    x = dd(0.5) * (x + a / x);
    return x;
}

// pi to double-double precision.
inline constexpr dd dd_pi() { return dd(3.141592653589793116e+00, 1.224646799147353207e-16); }

// cos/sin for |x| <= 2.3 (covers pi/r and 2*pi/r for r >= 3), via Taylor
// series after at most one half-angle reduction.
dd dd_cos(dd x);
dd dd_sin(dd x);

// ---- complex double-double ----

struct ddcx {
    dd re, im;
    constexpr ddcx() = default;
    constexpr ddcx(dd r) : re(r), im(0.0) {}
    constexpr ddcx(dd r, dd i) : re(r), im(i) {}
    constexpr ddcx(double r) : re(r), im(0.0) {}
    constexpr ddcx(double r, double i) : re(r), im(i) {}
};

inline ddcx operator+(ddcx a, ddcx b) { return ddcx(a.re + b.re, a.im + b.im); }
inline ddcx operator-(ddcx a, ddcx b) { return ddcx(a.re - b.re, a.im - b.im); }
inline ddcx operator-(ddcx a) { return ddcx(-a.re, -a.im); }
inline ddcx operator*(ddcx a, ddcx b) {
    return ddcx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline ddcx operator/(ddcx a, ddcx b) {
    dd den = b.re * b.re + b.im * b.im;
    return ddcx((a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den);
}
inline ddcx& operator+=(ddcx& a, ddcx b) { a = a + b; return a; }
inline ddcx& operator-=(ddcx& a, ddcx b) { a = a - b; return a; }
inline ddcx& operator*=(ddcx& a, ddcx b) { a = a * b; return a; }

inline bool operator==(ddcx a, ddcx b) { return a.re == b.re && a.im == b.im; }

inline ddcx conj(ddcx a) { return ddcx(a.re, -a.im); }
inline dd abs2(ddcx a) { return a.re * a.re + a.im * a.im; }
inline dd dd_abs(ddcx a) { return dd_sqrt(abs2(a)); }

// Principal complex square root.
inline ddcx dd_csqrt(ddcx z) {
    dd r = dd_abs(z);
    if (to_double(r) == 0.0) return ddcx(dd(0.0));
    if (!(z.re.hi < 0.0)) {
        dd w = dd_sqrt(dd(0.5) * (r + z.re));
        return ddcx(w, z.im / (dd(2.0) * w));
    }
    dd w = dd_sqrt(dd(0.5) * (r - z.re));
    if (z.im.hi < 0.0 || (z.im.hi == 0.0 && z.im.lo < 0.0)) w = -w;
    return ddcx(z.im / (dd(2.0) * w), w);
}

}  // namespace orbivol
