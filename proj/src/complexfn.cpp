#include "orbivol/complexfn.hpp"

#include <array>
#include <cmath>

namespace orbivol {

namespace {

// Bernoulli numbers B_k (B_1 = -1/2 convention) for the dilogarithm
// u-series; only even indices beyond B_1 are nonzero.
constexpr std::array<double, 44> kBernoulli = {
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
    0.0,
    8553103.0 / 6.0,
    0.0,
    -23749461029.0 / 870.0,
    0.0,
    8615841276005.0 / 14322.0,
    0.0,
    -7709321041217.0 / 510.0,
    0.0,
    2577687858367.0 / 6.0,
    0.0,
    -26315271553053477373.0 / 1919190.0,
    0.0,
    2929993913841559.0 / 6.0,
    0.0,
    -261082718496449122051.0 / 13530.0,
    0.0,
    1520097643918070802691.0 / 1806.0,
    0.0,
};

cx normalize_real_axis(cx z) {
    // Map -0.0 imaginary parts to +0.0 so cut values take the documented side.
    if (z.imag() == 0.0) return cx(z.real(), 0.0);
    return z;
}

cx li2_series(cx z) {
    cx s = 0.0;
    cx t = z;
    for (int k = 1; k < 200; ++k) {
        cx term = t / double(k * k);
        s += term;
        t *= z;
        if (std::abs(term) < 1e-18) break;
    }
    return s;
}

}  // namespace

cx principal_log(cx z) {
    z = normalize_real_axis(z);
    if (z == cx(0.0, 0.0)) throw domain_error("principal_log: zero argument");
    return std::log(z);
}

cx li2(cx z) {
    z = normalize_real_axis(z);
    if (z == cx(0.0, 0.0)) return cx(0.0, 0.0);
    if (z == cx(1.0, 0.0)) return cx(kPi * kPi / 6.0, 0.0);
    double az = std::abs(z);
    if (az <= 0.5) return li2_series(z);
    if (az > 1.0) {
        // Inversion: Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2.
        cx lz = principal_log(-z);
        return -li2(1.0 / z) - cx(kPi * kPi / 6.0, 0.0) - 0.5 * lz * lz;
    }
    cx w = normalize_real_axis(cx(1.0, 0.0) - z);
    if (std::abs(w) <= 0.5) {
        // Reflection: Li2(z) = pi^2/6 - log(z)log(1-z) - Li2(1-z).
        return cx(kPi * kPi / 6.0, 0.0) - principal_log(z) * principal_log(w) - li2(w);
    }
    // Annulus near |z| = 1: series in u = -log(1-z),
    // Li2(z) = sum_k B_k u^{k+1} / (k+1)!.
    cx u = -principal_log(w);
    cx s = 0.0;
    cx upow = u;
    double fact = 1.0;
    for (int k = 0; k < int(kBernoulli.size()); ++k) {
        fact *= double(k + 1);
        cx term = kBernoulli[size_t(k)] * upow / fact;
        s += term;
        upow *= u;
        // Odd-index Bernoulli numbers vanish beyond B_1, so convergence is
        // judged on even-index terms only.
        if (k > 3 && k % 2 == 0 && std::abs(term) < 1e-18) break;
    }
    return s;
}

cx rogers_r(cx z, int p, int q) {
    z = normalize_real_axis(z);
    if (z == cx(0.0, 0.0) || z == cx(1.0, 0.0))
        throw domain_error("rogers_r: argument must avoid {0, 1}");
    cx lz = principal_log(z);
    cx lw = principal_log(normalize_real_axis(cx(1.0, 0.0) - z));
    cx rogers = 0.5 * lz * lw + li2(z);
    cx half_pi_i(0.0, kPi / 2.0);
    return rogers + half_pi_i * (double(p) * lw + double(q) * lz) -
           cx(kPi * kPi / 6.0, 0.0);
}

double mod_reduce(double x, double mu) {
    if (!(mu > 0.0)) throw domain_error("mod_reduce: modulus must be positive");
    double y = std::fmod(x, mu);
    if (y < 0.0) y += mu;
    if (y >= mu) y -= mu;  // guards the x = -tiny rounding case
    return y;
}

double mod_dist(double x, double y, double mu) {
    double d = mod_reduce(x - y, mu);
    return std::min(d, mu - d);
}

}  // namespace orbivol
