#include "orbivol/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "orbivol/detail/polyt.hpp"
#include "orbivol/detail/rootsdd.hpp"

namespace orbivol {

PolyCx::PolyCx(std::vector<cx> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) coeffs.push_back(cx(0.0));
    detail::trim(coeffs);
}

PolyCx poly_add(const PolyCx& a, const PolyCx& b) {
    return PolyCx(detail::padd(a.coeffs, b.coeffs));
}

PolyCx poly_mul(const PolyCx& a, const PolyCx& b) {
    return PolyCx(detail::pmul(a.coeffs, b.coeffs));
}

cx poly_eval(const PolyCx& p, cx x) { return detail::peval(p.coeffs, x); }

namespace detail {

AberthResult aberth_dd(const std::vector<ddcx>& coeffs_in, int max_iter, double tol) {
    std::vector<ddcx> co = coeffs_in;
    while (co.size() > 1 && to_double(dd_abs(co.back())) == 0.0) co.pop_back();

    // Factor out roots at zero.
    size_t nzero = 0;
    while (co.size() > 1 && to_double(dd_abs(co.front())) == 0.0) {
        co.erase(co.begin());
        ++nzero;
    }
    int deg = int(co.size()) - 1;

    AberthResult out;
    out.roots.assign(nzero, ddcx(dd(0.0)));
    if (deg < 1) {
        out.converged = true;
        return out;
    }

    std::vector<ddcx> dco(static_cast<size_t>(deg));
    for (int k = 1; k <= deg; ++k) dco[size_t(k - 1)] = co[size_t(k)] * ddcx(double(k));

    // Initial guesses: circle at 0.7 x Cauchy bound with a fixed irrational
    // (golden) angular offset; computed in double precision deliberately —
    // they are only starting points.
    double lead = to_double(dd_abs(co.back()));
    double maxratio = 0.0;
    for (int k = 0; k < deg; ++k)
        maxratio = std::max(maxratio, to_double(dd_abs(co[size_t(k)])) / lead);
    double R = 0.7 * (1.0 + maxratio);
    double gold = 2.0 * kPi * (std::sqrt(5.0) - 1.0) / 2.0;

    std::vector<ddcx> xs(static_cast<size_t>(deg));
    for (int k = 0; k < deg; ++k) {
        double th = gold + 2.0 * kPi * double(k) / double(deg);
        xs[size_t(k)] = ddcx(R * std::cos(th), R * std::sin(th));
    }

    auto pv = [](const std::vector<ddcx>& cs, ddcx x) {
        ddcx s(dd(0.0));
        for (size_t i = cs.size(); i-- > 0;) s = s * x + cs[i];
        return s;
    };

    bool converged = false;
    int it = 0;
    // Corrections bottom out at the double-double rounding floor (scale- and
    // degree-dependent, typically 1e-31..1e-25 relative); accept a plateau
    // once corrections are tiny and stop improving.  The caller re-verifies
    // every root against the residual contract.
    double best = std::numeric_limits<double>::infinity();
    int best_it = 0;
    for (; it < max_iter; ++it) {
        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            ddcx x = xs[size_t(i)];
            ddcx p = pv(co, x);
            if (to_double(dd_abs(p)) == 0.0) continue;
            ddcx dp = pv(dco, x);
            if (to_double(dd_abs(dp)) == 0.0) {
                xs[size_t(i)] = x + ddcx(0.001 * (1.0 + to_double(dd_abs(x))));
                worst = 1.0;
                continue;
            }
            ddcx newt = p / dp;
            ddcx ssum(dd(0.0));
            for (int j = 0; j < deg; ++j) {
                if (j == i) continue;
                ddcx d = x - xs[size_t(j)];
                if (to_double(dd_abs(d)) == 0.0) d = ddcx(1e-20);
                ssum += ddcx(dd(1.0)) / d;
            }
            ddcx corr = newt / (ddcx(dd(1.0)) - newt * ssum);
            xs[size_t(i)] = x - corr;
            double rel = to_double(dd_abs(corr)) / std::max(1.0, to_double(dd_abs(x)));
            worst = std::max(worst, rel);
        }
        if (worst < best / 1.5) {
            best = worst;
            best_it = it;
        }
        if (worst < tol || (worst <= 1e-18 && it - best_it >= 40)) {
            converged = true;
            ++it;
            break;
        }
    }

    out.roots.insert(out.roots.end(), xs.begin(), xs.end());
    out.iterations = it;
    out.converged = converged;
    return out;
}

}  // namespace detail

std::vector<cx> roots_all(const PolyCx& p) {
    if (p.degree() < 1)
        throw domain_error("roots_all: degree must be at least 1");

    std::vector<ddcx> co(p.coeffs.size());
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        co[i] = ddcx(p.coeffs[i].real(), p.coeffs[i].imag());

    auto res = detail::aberth_dd(co);
    std::vector<cx> roots(res.roots.size());
    for (size_t i = 0; i < roots.size(); ++i)
        roots[i] = cx(to_double(res.roots[i].re), to_double(res.roots[i].im));
    std::sort(roots.begin(), roots.end(), [](cx a, cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    if (!res.converged)
        throw convergence_error("roots_all: simultaneous iteration did not converge",
                                roots);

    // Residual contract on every root.
    double normp = 0.0;
    for (const auto& c : p.coeffs) normp = std::max(normp, std::abs(c));
    for (const auto& root : roots) {
        ddcx x(root.real(), root.imag());
        double resid = to_double(dd_abs(detail::peval(co, x)));
        double bound = 1e-10 * normp * std::pow(std::max(1.0, std::abs(root)),
                                                double(p.degree()));
        if (!(resid <= bound))
            throw convergence_error("roots_all: residual contract violated", roots);
    }
    return roots;
}

}  // namespace orbivol
