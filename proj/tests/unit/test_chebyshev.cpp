#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "orbivol/chebyshev.hpp"
#include "orbivol/jknot.hpp"

using orbivol::cx;
using orbivol::kPi;
using orbivol::PolyCx;

namespace {

cx rand_disk(std::mt19937& eng, double rmax) {
    std::uniform_real_distribution<double> mag(0.0, rmax);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    return std::polar(mag(eng), ang(eng));
}

}  // namespace

TEST_SUITE("chebyshev") {

TEST_CASE("pinned values and negative-index reflection") {
    std::mt19937 eng(61001u);
    for (int i = 0; i < 20; ++i) {
        cx xi = rand_disk(eng, 3.0);
        CHECK(std::abs(orbivol::cheb_s(-1, xi)) == 0.0);
        CHECK(std::abs(orbivol::cheb_s(0, xi) - cx(1.0)) == 0.0);
        CHECK(std::abs(orbivol::cheb_s(1, xi) - xi) == 0.0);
        CHECK(std::abs(orbivol::cheb_s(2, xi) - (xi * xi - 1.0)) <= 1e-14 * (1.0 + std::norm(xi)));
        for (long k = 2; k <= 9; ++k) {
            cx neg = orbivol::cheb_s(-k, xi);
            cx pos = orbivol::cheb_s(k - 2, xi);
            CHECK(std::abs(neg + pos) <= 1e-12 * (1.0 + std::abs(pos)));
        }
    }
    CHECK(std::abs(orbivol::cheb_s(5, cx(2.0)) - cx(6.0)) <= 1e-12);
    for (long n = 0; n <= 12; ++n)  // S_n(2) = n + 1
        CHECK(std::abs(orbivol::cheb_s(n, cx(2.0)) - cx(double(n + 1))) <= 1e-10);
}

TEST_CASE("sine-ratio closed form on xi = 2 cos(theta)") {
    for (double theta = 0.1; theta < 3.05; theta += 0.17) {
        double s = std::sin(theta);
        for (long k = 0; k <= 30; ++k) {
            double expect = std::sin(double(k + 1) * theta) / s;
            cx got = orbivol::cheb_s(k, cx(2.0 * std::cos(theta)));
            CHECK(std::abs(got - cx(expect)) <= 1e-9 * (1.0 + std::abs(expect)));
        }
    }
}

TEST_CASE("norm identity S_n^2 - v S_n S_{n-1} + S_{n-1}^2 = 1") {
    std::mt19937 eng(61002u);
    for (int i = 0; i < 50; ++i) {
        cx v = rand_disk(eng, i < 40 ? 2.2 : 4.0);
        for (long n = 0; n <= 30; ++n) {
            cx sn = orbivol::cheb_s(n, v);
            cx sm = orbivol::cheb_s(n - 1, v);
            cx lhs = sn * sn - v * sn * sm + sm * sm;
            double scale = std::max(1.0, std::norm(sn));
            CHECK(std::abs(lhs - cx(1.0)) <= 1e-9 * scale);
        }
    }
}

TEST_CASE("matrix-power closed form vs repeated multiplication") {
    std::mt19937 eng(61003u);
    int checked = 0;
    while (checked < 100) {
        cx a = rand_disk(eng, 1.2);
        if (std::abs(a) < 0.3) continue;
        cx b = rand_disk(eng, 1.2), c = rand_disk(eng, 1.2);
        cx d = (1.0 + b * c) / a;  // det = 1
        ++checked;
        orbivol::SL2 V{a, b, c, d};
        cx xi = a + d;
        orbivol::SL2 P{1.0, 0.0, 0.0, 1.0};
        for (int k = 0; k <= 12; ++k) {
            cx sk = orbivol::cheb_s(k, xi);
            cx sk1 = orbivol::cheb_s(k - 1, xi);
            cx e11 = sk - d * sk1, e12 = b * sk1, e21 = c * sk1, e22 = sk - a * sk1;
            double scale = 1.0;
            for (cx t : {P.a, P.b, P.c, P.d}) scale = std::max(scale, std::abs(t));
            CHECK(std::abs(P.a - e11) <= 1e-9 * scale);
            CHECK(std::abs(P.b - e12) <= 1e-9 * scale);
            CHECK(std::abs(P.c - e21) <= 1e-9 * scale);
            CHECK(std::abs(P.d - e22) <= 1e-9 * scale);
            P = orbivol::sl2_mul(P, V);
        }
        // sl2_pow agrees with the explicit product loop.
        auto W = orbivol::sl2_pow(V, 7);
        orbivol::SL2 Q{1.0, 0.0, 0.0, 1.0};
        for (int k = 0; k < 7; ++k) Q = orbivol::sl2_mul(Q, V);
        CHECK(std::abs(W.a - Q.a) <= 1e-12 * (1.0 + std::abs(Q.a)));
        CHECK(std::abs(W.d - Q.d) <= 1e-12 * (1.0 + std::abs(Q.d)));
    }
}

TEST_CASE("polynomial composition agrees with scalar evaluation") {
    std::mt19937 eng(61004u);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<cx> vc{rand_disk(eng, 1.5), rand_disk(eng, 1.5), rand_disk(eng, 1.0)};
        PolyCx v(vc);
        for (long k = 0; k <= 8; ++k) {
            PolyCx sk = orbivol::cheb_s_of_poly(k, v);
            for (int i = 0; i < 5; ++i) {
                cx x = rand_disk(eng, 1.3);
                cx by_poly = orbivol::poly_eval(sk, x);
                cx by_scalar = orbivol::cheb_s(k, orbivol::poly_eval(v, x));
                CHECK(std::abs(by_poly - by_scalar) <= 1e-11 * (1.0 + std::abs(by_scalar)));
            }
        }
    }
}

TEST_CASE("polynomial composition: pinned low-order cases") {
    PolyCx v(std::vector<cx>{cx(0.7, -0.2), cx(2.0), cx(-1.0, 0.5)});
    auto s0 = orbivol::cheb_s_of_poly(0, v);
    CHECK(s0.degree() == 0);
    CHECK(s0.coeffs[0] == cx(1.0));
    auto s1 = orbivol::cheb_s_of_poly(1, v);
    REQUIRE(s1.degree() == v.degree());
    for (int i = 0; i <= v.degree(); ++i)
        CHECK(s1.coeffs[std::size_t(i)] == v.coeffs[std::size_t(i)]);
    // S_2(x + c) = (x + c)^2 - 1.
    cx c(0.4, 1.1);
    auto s2 = orbivol::cheb_s_of_poly(2, PolyCx(std::vector<cx>{c, cx(1.0)}));
    REQUIRE(s2.degree() == 2);
    CHECK(std::abs(s2.coeffs[0] - (c * c - 1.0)) <= 1e-15 * (1.0 + std::norm(c)));
    CHECK(std::abs(s2.coeffs[1] - 2.0 * c) <= 1e-15 * (1.0 + std::abs(c)));
    CHECK(std::abs(s2.coeffs[2] - cx(1.0)) <= 1e-15);
    // S_{-1} of a polynomial is the zero polynomial.
    auto sm1 = orbivol::cheb_s_of_poly(-1, v);
    CHECK(sm1.degree() == 0);
    CHECK(std::abs(sm1.coeffs[0]) == 0.0);
}

}  // TEST_SUITE
