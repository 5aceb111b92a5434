#include "orbivol/jknot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "orbivol/dd.hpp"
#include "orbivol/detail/polyt.hpp"
#include "orbivol/detail/rootsdd.hpp"
#include "orbivol/diagram.hpp"
#include "orbivol/potential.hpp"

namespace orbivol {

// ---------- small SL2 helpers ----------

SL2 sl2_mul(const SL2& x, const SL2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

SL2 sl2_inv(const SL2& x) { return {x.d, -x.b, -x.c, x.a}; }

SL2 sl2_pow(const SL2& x, int k) {
    SL2 r{cx(1.0), cx(0.0), cx(0.0), cx(1.0)};
    for (int i = 0; i < k; ++i) r = sl2_mul(r, x);
    return r;
}

// ---------- parameter validation ----------

bool is_hyperbolic(const JKnotParams& p) {
    if (p.n < 1 || p.m < 1) return false;
    if (p.r != 0 && p.r < 3) return false;
    return !(p.n == 1 && p.m == 1 && p.r == 3);
}

void require_hyperbolic(const JKnotParams& p) {
    if (p.n < 1 || p.m < 1)
        throw domain_error("jknot: twist parameters must be positive");
    if (p.r != 0 && p.r < 3)
        throw domain_error("jknot: cone order must be >= 3 (or 0 for complete)");
    if (!is_hyperbolic(p))
        throw nonhyperbolic_error("orbifold (" + std::to_string(2 * p.n) + "," +
                                  std::to_string(2 * p.m) + "," + std::to_string(p.r) +
                                  ") is not hyperbolic");
}

cx meridian_of(int r) {
    if (r == 0) return cx(1.0);
    return std::polar(1.0, kPi / double(r));
}

std::string knot_label(const JKnotParams& p) {
    return "J(" + std::to_string(2 * p.n) + ",-" + std::to_string(2 * p.m) + ")";
}

// ---------- scalar-generic cores ----------

namespace {

double absd(cx z) { return std::abs(z); }
double absd(ddcx z) { return to_double(dd_abs(z)); }

cx to_cx(cx z) { return z; }
cx to_cx(ddcx z) { return cx(to_double(z.re), to_double(z.im)); }

// Meridian data for both scalar types.
struct MeridianCx {
    cx M, M2, Mm2;
};
struct MeridianDd {
    ddcx M, M2, Mm2;
};

MeridianCx meridian_cx(int r) {
    cx M = meridian_of(r);
    cx M2 = M * M;
    return {M, M2, cx(1.0) / M2};
}

MeridianDd meridian_dd(int r) {
    if (r == 0) return {ddcx(1.0), ddcx(1.0), ddcx(1.0)};
    dd th = dd_pi() / dd(double(r));
    ddcx M(dd_cos(th), dd_sin(th));
    ddcx M2 = M * M;
    return {M, M2, conj(M2)};  // |M| = 1, so 1/M^2 = conj(M^2)
}

// phi as a polynomial in x over scalar S.
template <class S>
std::vector<S> rm_poly_core(int n, int m, S M2, S Mm2) {
    using namespace detail;
    std::vector<S> v = {M2 + Mm2, S(1.0)};            // v = x + M^2 + M^-2
    std::vector<S> x = {S(0.0), S(1.0)};
    auto Sn1 = cheb_poly(long(n - 1), v);
    auto Sn = cheb_poly(long(n), v);
    auto vm2 = padd(v, std::vector<S>{S(-2.0)});
    auto zp = padd(std::vector<S>{S(2.0)}, pmul(x, pmul(vm2, pmul(Sn1, Sn1))));
    auto one_minus_v = padd(std::vector<S>{S(1.0)}, pscale(v, S(-1.0)));
    auto bracket = padd(std::vector<S>{S(-1.0)},
                        pmul(x, pmul(Sn1, padd(Sn, pmul(one_minus_v, Sn1)))));
    return padd(cheb_poly(long(m), zp), pmul(bracket, cheb_poly(long(m - 1), zp)));
}

template <class S>
std::vector<S> run_rec(S f0, S f1, S codd, S ceven, S dodd, S deven, int N) {
    std::vector<S> F;
    F.reserve(size_t(N) + 1);
    F.push_back(f0);
    F.push_back(f1);
    for (int j = 1; j < N; ++j) {
        S cc = (j % 2 == 1) ? codd : ceven;
        S dc = (j % 2 == 1) ? dodd : deven;
        F.push_back(cc * F[size_t(j)] + dc * F[size_t(j) - 1]);
    }
    return F;
}

template <class S>
struct SeqCore {
    std::vector<S> B, Bt, P, Q, Bp, Bpt, Pp, Qp;
    S W, Wt;
};

// The two-phase recurrences with doubled indices np = 2n, mp = 2m.
template <class S>
SeqCore<S> build_seq_core(int np, int mp, S M2, S Mm2, S sq, S z1, S z2, S z3) {
    SeqCore<S> R;
    R.B = run_rec(S(0.0), S(1.0), sq, sq, M2, Mm2, np + 2);
    R.Bt = run_rec(S(0.0), S(1.0), sq, sq, Mm2, M2, np + 2);
    R.P = run_rec(z1 * (z2 - z3 / M2), sq * z2 * z3, sq, sq, M2, Mm2, np + 1);
    S Q1 = sq * z3;
    S Q2 = z2 - z3 / M2;
    S Q0 = (Q2 - sq * Q1) / M2;
    R.Q = run_rec(Q0, Q1, sq, sq, M2, Mm2, np + 2);
    R.W = R.B[size_t(np) + 1] - R.B[size_t(np) - 1];
    R.Wt = R.Bt[size_t(np) + 1] - R.Bt[size_t(np) - 1];
    R.Bp = run_rec(S(0.0), S(1.0), R.Wt, R.W, Mm2, M2, mp + 1);
    R.Bpt = run_rec(S(0.0), S(1.0), R.W, R.Wt, M2, Mm2, mp);
    R.Pp = run_rec(R.P[size_t(np)], R.P[0], R.Wt, R.W, Mm2, M2, mp + 1);
    S Qp1 = Q2;
    S Qp2 = R.Q[size_t(np) + 2];
    S Qp0 = M2 * (Qp2 - R.Wt * Qp1);
    R.Qp = run_rec(Qp0, Qp1, R.Wt, R.W, Mm2, M2, mp + 2);
    return R;
}

// Fixed gauge seeds for the inhomogeneous sequences (any nondegenerate
// values work; these keep all table-range assemblies well away from zeros).
template <class S>
void gauge_seeds(S& z1, S& z2, S& z3);

template <>
void gauge_seeds<cx>(cx& z1, cx& z2, cx& z3) {
    z1 = cx(1.0);
    z2 = 1.3 * std::polar(1.0, 0.7);
    z3 = 0.8 * std::polar(1.0, -0.4);
}

template <>
void gauge_seeds<ddcx>(ddcx& z1, ddcx& z2, ddcx& z3) {
    z1 = ddcx(1.0);
    z2 = ddcx(dd(1.3)) * ddcx(dd_cos(dd(0.7)), dd_sin(dd(0.7)));
    z3 = ddcx(dd(0.8)) * ddcx(dd_cos(dd(-0.4)), dd_sin(dd(-0.4)));
}

template <class S>
struct AssembledCore {
    std::vector<S> z;   // per segment, z1-normalized
    double chk_max;     // worst relative mismatch on the identified pairs
};

template <class S, class Sqrt>
AssembledCore<S> assemble_core(int n, int m, S M2, S Mm2, S lam, int branch,
                               Sqrt csqrt) {
    int np = 2 * n, mp = 2 * m;
    S z1, z2, z3;
    gauge_seeds<S>(z1, z2, z3);
    S sq = csqrt(lam);
    if (branch < 0) sq = -sq;
    auto C = build_seq_core<S>(np, mp, M2, Mm2, sq, z1, z2, z3);

    std::vector<S> zv(size_t(2 * np) + 3, S(0.0));
    for (int j = 1; j <= np + 1; ++j) {
        zv[size_t(2 * j) - 1] = C.P[size_t(j) - 1] / C.Q[size_t(j) + 1];
        zv[size_t(2 * j)] = C.P[size_t(j)] / C.Q[size_t(j)];
    }
    std::vector<S> zh(size_t(2 * mp) + 3, S(0.0));
    for (int j = 1; j <= mp + 1; ++j) {
        zh[size_t(2 * j) - 1] = C.Pp[size_t(j) - 1] / C.Qp[size_t(j) + 1];
        zh[size_t(2 * j)] = C.Pp[size_t(j)] / C.Qp[size_t(j)];
    }
    auto rdiff = [](S aa, S bb) {
        double num = absd(aa - bb);
        return num / std::max({1.0, absd(aa), absd(bb)});
    };
    double chk = 0.0;
    chk = std::max(chk, rdiff(zh[1], zv[size_t(2 * np) + 1]));
    chk = std::max(chk, rdiff(zh[2], zv[1]));
    chk = std::max(chk, rdiff(zh[size_t(2 * mp) + 1], zv[size_t(2 * np) + 2]));
    chk = std::max(chk, rdiff(zh[size_t(2 * mp) + 2], zv[2]));

    int Nv = 2 * np + 2;
    auto vid = [](int j) { return j - 1; };
    auto hid = [&](int j) {
        if (j == 1) return vid(2 * np + 1);
        if (j == 2) return vid(1);
        if (j == 2 * mp + 1) return vid(2 * np + 2);
        if (j == 2 * mp + 2) return vid(2);
        return Nv + (j - 3);
    };
    int nseg = Nv + 2 * mp - 2;
    std::vector<S> z(size_t(nseg), S(0.0));
    for (int j = 1; j <= 2 * np + 2; ++j) z[size_t(vid(j))] = zv[size_t(j)];
    for (int j = 1; j <= 2 * mp + 2; ++j) z[size_t(hid(j))] = zh[size_t(j)];
    S z1v = z[0];
    for (auto& x : z) x = x / z1v;
    return {std::move(z), chk};
}

double finite_check(const std::vector<cx>& z) {
    double minabs = std::numeric_limits<double>::infinity();
    for (const auto& x : z) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return 0.0;
        minabs = std::min(minabs, std::abs(x));
    }
    return minabs;
}

}  // namespace

// ---------- public operations ----------

PolyCx rm_polynomial(const JKnotParams& p) {
    if (p.n < 1 || p.m < 1)
        throw domain_error("rm_polynomial: twist parameters must be positive");
    if (p.r != 0 && p.r < 3)
        throw domain_error("rm_polynomial: cone order must be >= 3 (or 0)");
    auto mer = meridian_dd(p.r);
    auto co = rm_poly_core<ddcx>(p.n, p.m, mer.M2, mer.Mm2);
    std::vector<cx> out(co.size());
    for (size_t i = 0; i < co.size(); ++i) out[i] = to_cx(co[i]);
    return PolyCx(std::move(out));
}

std::pair<SL2, SL2> holonomy_matrices(cx x, cx M) {
    if (M == cx(0.0)) throw domain_error("holonomy_matrices: M must be nonzero");
    SL2 S{M, cx(1.0), cx(0.0), cx(1.0) / M};
    SL2 T{M, cx(0.0), cx(2.0) - M * M - cx(1.0) / (M * M) - x, cx(1.0) / M};
    return {S, T};
}

double rep_residual(cx x, const JKnotParams& p) {
    cx M = meridian_of(p.r);
    auto [S, T] = holonomy_matrices(x, M);
    SL2 W = sl2_mul(sl2_pow(sl2_mul(sl2_inv(T), S), p.n),
                    sl2_pow(sl2_mul(T, sl2_inv(S)), p.n));
    SL2 Wm = sl2_pow(W, p.m);
    SL2 L = sl2_mul(S, Wm);
    SL2 R = sl2_mul(Wm, T);
    double res = 0.0;
    res = std::max(res, std::abs(L.a - R.a));
    res = std::max(res, std::abs(L.b - R.b));
    res = std::max(res, std::abs(L.c - R.c));
    res = std::max(res, std::abs(L.d - R.d));
    return res;
}

SequenceBundle build_sequences(const JKnotParams& p, cx lam, int branch) {
    if (lam == cx(0.0)) throw domain_error("build_sequences: lambda must be nonzero");
    auto mer = meridian_cx(p.r);
    cx z1, z2, z3;
    gauge_seeds<cx>(z1, z2, z3);
    cx sq = std::sqrt(lam);
    if (branch < 0) sq = -sq;
    auto C = build_seq_core<cx>(2 * p.n, 2 * p.m, mer.M2, mer.Mm2, sq, z1, z2, z3);
    SequenceBundle out;
    out.B = std::move(C.B);
    out.Bt = std::move(C.Bt);
    out.P = std::move(C.P);
    out.Q = std::move(C.Q);
    out.Bp = std::move(C.Bp);
    out.Bpt = std::move(C.Bpt);
    out.Pp = std::move(C.Pp);
    out.Qp = std::move(C.Qp);
    out.W = C.W;
    out.Wt = C.Wt;
    out.M = mer.M;
    out.sq = sq;
    return out;
}

double rm_equivalence_residual(const JKnotParams& p, cx x) {
    int np = 2 * p.n, mp = 2 * p.m;
    auto mer = meridian_dd(p.r);
    ddcx lam(x.real(), x.imag());
    // B-type sequences do not involve the z seeds; use unit seeds.
    auto C = build_seq_core<ddcx>(np, mp, mer.M2, mer.Mm2, dd_csqrt(lam),
                                  ddcx(1.0), ddcx(1.0), ddcx(1.0));
    ddcx rhs = C.Bp[size_t(mp) + 1] + C.Bpt[size_t(mp)] * C.Bt[size_t(np) - 1];
    auto phi = rm_poly_core<ddcx>(p.n, p.m, mer.M2, mer.Mm2);
    ddcx lhs = detail::peval(phi, lam);
    return absd(lhs - rhs);
}

SegmentSolution assemble_solution(const JKnotParams& p, cx lam, int branch) {
    auto mer = meridian_dd(p.r);
    ddcx lam_dd(lam.real(), lam.imag());
    auto core = assemble_core<ddcx>(p.n, p.m, mer.M2, mer.Mm2, lam_dd, branch,
                                    [](ddcx v) { return dd_csqrt(v); });
    SegmentSolution sol;
    sol.z.resize(core.z.size());
    for (size_t i = 0; i < core.z.size(); ++i) sol.z[i] = to_cx(core.z[i]);
    sol.gauge_normalized = true;
    if (finite_check(sol.z) <= 0.0)
        throw degenerate_error("assemble_solution: vanishing denominator in P/Q ratios");
    if (core.chk_max > 1e-8) {
        std::ostringstream msg;
        msg << "assemble_solution: identified segments disagree (rel "
            << core.chk_max << "); wrong root or branch";
        throw inconsistency_error(msg.str());
    }
    return sol;
}

cx lambda_from_solution(const SegmentSolution& s, cx M) {
    if (s.z.size() < 4)
        throw domain_error("lambda_from_solution: need at least four segments");
    cx z1 = s.z[0], z2 = s.z[1], z3 = s.z[2], z4 = s.z[3];
    cx den = M * M * z2 * z3;
    if (std::abs(den) == 0.0)
        throw degenerate_error("lambda_from_solution: zero denominator");
    return (M * M * z2 - z3) * (z4 - M * M * z1) / den;
}

GeometricResult geometric_lambda(const JKnotParams& p) {
    require_hyperbolic(p);
    auto mer = meridian_dd(p.r);
    auto phi = rm_poly_core<ddcx>(p.n, p.m, mer.M2, mer.Mm2);
    auto ab = detail::aberth_dd(phi);
    if (!ab.converged)
        throw convergence_error("geometric_lambda: root iteration did not converge");

    // Deterministic order, then cluster-deduplicate at 1e-7.
    std::vector<ddcx> roots = ab.roots;
    std::sort(roots.begin(), roots.end(), [](ddcx a, ddcx b) {
        cx x = to_cx(a), y = to_cx(b);
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    std::vector<ddcx> uniq;
    for (const auto& root : roots) {
        bool dup = false;
        for (const auto& u : uniq)
            if (absd(root - u) < 1e-7) { dup = true; break; }
        if (!dup) uniq.push_back(root);
    }

    KnotDiagram diag = generate_j_diagram(p.n, p.m);
    PotentialFunction pf = build_potential(diag);
    cx E = (p.r == 0) ? cx(1.0) : std::polar(1.0, 2.0 * kPi / double(p.r));

    GeometricResult best;
    bool found = false;
    double best_vol = -std::numeric_limits<double>::infinity();

    for (const auto& root_dd : uniq) {
        GeometricCandidate cand;
        cand.root = to_cx(root_dd);
        std::string note;
        bool ok = false;
        SegmentSolution sol;
        for (int branch : {+1, -1}) {
            try {
                auto core = assemble_core<ddcx>(p.n, p.m, mer.M2, mer.Mm2, root_dd,
                                                branch,
                                                [](ddcx v) { return dd_csqrt(v); });
                if (core.chk_max > 1e-8) {
                    note = "identification mismatch";
                    continue;
                }
                SegmentSolution s;
                s.z.resize(core.z.size());
                for (size_t i = 0; i < core.z.size(); ++i) s.z[i] = to_cx(core.z[i]);
                if (finite_check(s.z) <= 0.0) {
                    note = "vanishing denominator";
                    continue;
                }
                auto g = eval_grad(pf, s.z);
                double res = 0.0;
                for (int k = 0; k < diag.num_segments; ++k) {
                    cx target = diag.side_types[size_t(k)] == SideType::TypeI
                                    ? E
                                    : cx(1.0) / E;
                    res = std::max(res, std::abs(std::exp(g[size_t(k)]) - target));
                }
                if (res > 1e-9) {
                    note = "hyperbolicity residual " + std::to_string(res);
                    continue;
                }
                sol = std::move(s);
                ok = true;
                break;
            } catch (const error& e) {
                note = e.what();
            }
        }
        if (!ok) {
            cand.note = note.empty() ? "rejected" : note;
            best.candidates.push_back(cand);
            continue;
        }
        cand.assembled = true;
        cand.volume = eval_w_raw(pf, sol.z).imag();
        cand.note = "ok";
        best.candidates.push_back(cand);

        bool better;
        if (!found) {
            better = true;
        } else if (cand.volume > best_vol + 1e-9) {
            better = true;
        } else if (cand.volume > best_vol - 1e-9) {
            // Volume tie: prefer the root with positive imaginary part.
            better = cand.root.imag() > 0.0 && best.lam.imag() <= 0.0;
        } else {
            better = false;
        }
        if (better) {
            best.lam = cand.root;
            best.solution = sol;
            best_vol = cand.volume;
            found = true;
        }
    }
    if (!found)
        throw no_geometric_solution_error(
            "geometric_lambda: no root yields a nondegenerate geometric solution");
    return best;
}

}  // namespace orbivol
