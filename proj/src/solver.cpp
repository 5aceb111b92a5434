#include "orbivol/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

namespace orbivol {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct GradJac {
    VectorXcd g;
    MatrixXcd J;
    bool ok = false;        // false: degenerate ratio encountered
    double max_log_rho = 0; // nondegeneracy diagnostic: max |log|ratio||
};

GradJac grad_and_jac(const PotentialFunction& pf, const VectorXcd& w) {
    int n = pf.num_segments;
    GradJac r;
    r.g = VectorXcd::Zero(n);
    r.J = MatrixXcd::Zero(n, n);
    for (const auto& t : pf.terms) {
        cx rho = std::exp(w[t.num] - w[t.den]);
        cx om = cx(1.0) - rho;
        if (!std::isfinite(rho.real()) || !std::isfinite(rho.imag()) ||
            std::abs(om) < 1e-300 || std::abs(rho) == 0.0)
            return r;  // ok stays false
        r.max_log_rho = std::max(r.max_log_rho, std::abs(std::log(std::abs(rho))));
        cx L = std::log(om);
        double s = double(t.sign);
        r.g[t.num] -= s * L;
        r.g[t.den] += s * L;
        cx q = s * rho / om;
        r.J(t.num, t.num) += q;
        r.J(t.num, t.den) -= q;
        r.J(t.den, t.num) -= q;
        r.J(t.den, t.den) += q;
    }
    r.ok = true;
    return r;
}

VectorXd sign_vector(const KnotDiagram& d) {
    // Re-derive the classification from the crossing incidence: validates
    // hand-built diagrams (throws structural_error / non_alternating_error
    // on broken input) before any numeric work starts.
    std::vector<SideType> types = classify_sides(d.crossings, d.num_segments);
    VectorXd sg(d.num_segments);
    for (int k = 0; k < d.num_segments; ++k)
        sg[k] = types[size_t(k)] == SideType::TypeI ? 1.0 : -1.0;
    return sg;
}

// Minimum-norm least-squares step for the gauge-reduced system
// (column of the pinned segment removed).
VectorXcd reduced_lstsq(const MatrixXcd& J, const VectorXcd& rhs) {
    int n = int(J.rows());
    MatrixXcd A = J.rightCols(n - 1);
    return A.completeOrthogonalDecomposition().solve(rhs);
}

void apply_step(VectorXcd& w, const VectorXcd& dw, double scale) {
    int n = int(w.size());
    w.tail(n - 1) += scale * dw;
}

// Least-squares step restricted to the free (unpinned) coordinates.
VectorXcd lstsq_cols(const MatrixXcd& J, const std::vector<int>& free_idx,
                     const VectorXcd& rhs) {
    MatrixXcd A(J.rows(), Eigen::Index(free_idx.size()));
    for (std::size_t i = 0; i < free_idx.size(); ++i) A.col(Eigen::Index(i)) = J.col(free_idx[i]);
    return A.completeOrthogonalDecomposition().solve(rhs);
}

void apply_free(VectorXcd& w, const std::vector<int>& free_idx, const VectorXcd& dw,
                double scale) {
    for (std::size_t i = 0; i < free_idx.size(); ++i)
        w[free_idx[i]] += scale * dw[Eigen::Index(i)];
}

// The hyperbolicity equations are invariant under a small group of segment
// rescalings (always the global scale, and for the double-twist diagrams two
// further directions), so the Jacobian at a solution has a kernel of that
// dimension.  Pin one coordinate per kernel direction; the continuation then
// follows a locally unique, drift-free curve.  Pins are chosen from the
// kernel basis by greedy row selection (best-conditioned transversal slice).
std::vector<int> choose_pins(const MatrixXcd& J) {
    int n = int(J.rows());
    Eigen::JacobiSVD<MatrixXcd> svd(J, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    double s0 = s[0];
    int k0 = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] < 1e-8 * s0) ++k0;
    std::vector<int> pins{0};
    if (k0 <= 1) return pins;

    MatrixXcd K = svd.matrixV().rightCols(k0);
    // Remove the global-scale direction (the all-ones vector).
    VectorXcd ones = VectorXcd::Constant(n, cx(1.0 / std::sqrt(double(n)), 0.0));
    MatrixXcd K2 = K - ones * (ones.adjoint() * K);
    Eigen::ColPivHouseholderQR<MatrixXcd> qr(K2);
    qr.setThreshold(1e-8);
    int rank = int(qr.rank());
    if (rank <= 0) return pins;
    MatrixXcd Q = qr.householderQ() * MatrixXcd::Identity(n, rank);

    // Greedy pivoting over candidate rows 1..n-1.
    MatrixXcd A = Q.bottomRows(n - 1);
    std::vector<int> rows(static_cast<size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i) rows[size_t(i)] = i + 1;
    for (int pick = 0; pick < rank; ++pick) {
        int best = -1;
        double best_norm = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            double nr = A.row(i).norm();
            if (nr > best_norm) {
                best_norm = nr;
                best = i;
            }
        }
        if (best < 0 || best_norm <= 0.0) break;
        pins.push_back(rows[size_t(best)]);
        Eigen::RowVectorXcd v = A.row(best) / best_norm;
        A -= (A * v.adjoint()) * v;
        A.row(best).setZero();
    }
    std::sort(pins.begin(), pins.end());
    return pins;
}

std::vector<int> free_of(const std::vector<int>& pins, int n) {
    std::vector<int> free_idx;
    free_idx.reserve(size_t(n));
    std::size_t p = 0;
    for (int k = 0; k < n; ++k) {
        if (p < pins.size() && pins[p] == k) {
            ++p;
            continue;
        }
        free_idx.push_back(k);
    }
    return free_idx;
}

struct NewtonOut {
    VectorXcd w;
    double res = std::numeric_limits<double>::infinity();
    bool ok = false;
};

// Newton on F = exp(g) - exp(i*t*sg); robust to the final target but blind
// to log-branch bookkeeping, so it is used at t = 0 and for endpoint polish.
NewtonOut newton_exp(const PotentialFunction& pf, const VectorXd& sg, VectorXcd w,
                     double t, double tol, int max_iter) {
    int n = pf.num_segments;
    VectorXcd tgt(n);
    for (int k = 0; k < n; ++k) tgt[k] = std::polar(1.0, t * sg[k]);
    NewtonOut out;
    for (int it = 0; it < max_iter; ++it) {
        auto gj = grad_and_jac(pf, w);
        if (!gj.ok) { out.w = w; return out; }
        VectorXcd F = gj.g.array().exp().matrix() - tgt;
        double nF = F.cwiseAbs().maxCoeff();
        if (nF <= tol) {
            out.w = w; out.res = nF; out.ok = true;
            return out;
        }
        MatrixXcd DF = gj.g.array().exp().matrix().asDiagonal() * gj.J;
        VectorXcd dw = reduced_lstsq(DF, -F);
        double ndw = dw.cwiseAbs().maxCoeff();
        if (ndw > 4.0) dw *= 4.0 / ndw;
        double base = F.norm();
        double lam = 1.0;
        bool stepped = false;
        for (int h = 0; h < 20; ++h) {
            VectorXcd w2 = w;
            apply_step(w2, dw, lam);
            auto gj2 = grad_and_jac(pf, w2);
            if (gj2.ok) {
                VectorXcd F2 = gj2.g.array().exp().matrix() - tgt;
                if (F2.allFinite() && F2.norm() < base) {
                    w = w2; stepped = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if (!stepped) { out.w = w; out.res = nF; return out; }
    }
    auto gj = grad_and_jac(pf, w);
    out.w = w;
    if (gj.ok) {
        VectorXcd F = gj.g.array().exp().matrix() - tgt;
        out.res = F.cwiseAbs().maxCoeff();
        out.ok = out.res <= tol;
    }
    return out;
}

// Newton on F = g - rhs where rhs fixes the log branch explicitly
// (rhs = i*t*sg + 2*pi*i*winding); used along the continuation path.
// Updates only the free (unpinned) coordinates.
NewtonOut newton_log(const PotentialFunction& pf, VectorXcd w, const VectorXcd& rhs,
                     const std::vector<int>& free_idx, double tol, int max_iter) {
    NewtonOut out;
    for (int it = 0; it < max_iter; ++it) {
        auto gj = grad_and_jac(pf, w);
        if (!gj.ok) { out.w = w; return out; }
        VectorXcd F = gj.g - rhs;
        double nF = F.cwiseAbs().maxCoeff();
        if (nF <= tol) {
            out.w = w; out.res = nF; out.ok = true;
            return out;
        }
        VectorXcd dw = lstsq_cols(gj.J, free_idx, -F);
        double ndw = dw.cwiseAbs().maxCoeff();
        if (ndw > 2.0) dw *= 2.0 / ndw;
        double base = F.norm();
        double lam = 1.0;
        bool stepped = false;
        for (int h = 0; h < 20; ++h) {
            VectorXcd w2 = w;
            apply_free(w2, free_idx, dw, lam);
            auto gj2 = grad_and_jac(pf, w2);
            if (gj2.ok) {
                VectorXcd F2 = gj2.g - rhs;
                if (F2.allFinite() && F2.norm() < base) {
                    w = w2; stepped = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if (!stepped) { out.w = w; out.res = nF; return out; }
    }
    auto gj = grad_and_jac(pf, w);
    out.w = w;
    if (gj.ok) {
        out.res = (gj.g - rhs).cwiseAbs().maxCoeff();
        out.ok = out.res <= tol;
    }
    return out;
}

// Residual of the cone-angle-t equations exp(g) = exp(i*t*sg) at w.
double exp_residual(const PotentialFunction& pf, const VectorXd& sg, const VectorXcd& w,
                    double t) {
    auto gj = grad_and_jac(pf, w);
    if (!gj.ok) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (int k = 0; k < gj.g.size(); ++k)
        worst = std::max(worst, std::abs(std::exp(gj.g[k]) - std::polar(1.0, t * sg[k])));
    return worst;
}

// Polish a near-solution at cone angle t.  The exponential-form Newton
// occasionally stalls a hair above tol on larger diagrams (its Jacobian
// picks up the kernel conditioning); when that happens and the point is
// already close, finish in the winding-snapped log form on the pinned
// coordinate slice.
NewtonOut polish_at(const PotentialFunction& pf, const VectorXd& sg, VectorXcd w0,
                    double t, const SolverConfig& cfg) {
    NewtonOut res = newton_exp(pf, sg, w0, t, cfg.tol, cfg.max_iter);
    if (res.ok) return res;
    auto gj = grad_and_jac(pf, res.w);
    if (!gj.ok) return res;
    if (exp_residual(pf, sg, res.w, t) > 1e-6) return res;
    int n = pf.num_segments;
    VectorXcd rhs(n);
    for (int k = 0; k < n; ++k) {
        double winding = std::round((gj.g[k].imag() - t * sg[k]) / (2.0 * kPi));
        rhs[k] = cx(0.0, t * sg[k] + 2.0 * kPi * winding);
    }
    auto free_idx = free_of(choose_pins(gj.J), n);
    NewtonOut fin = newton_log(pf, res.w, rhs, free_idx, 1e-13, cfg.max_iter);
    fin.res = exp_residual(pf, sg, fin.w, t);
    fin.ok = fin.res <= cfg.tol;
    return fin;
}

NewtonOut polish_complete(const PotentialFunction& pf, const VectorXd& sg, VectorXcd w0,
                          const SolverConfig& cfg) {
    return polish_at(pf, sg, std::move(w0), 0.0, cfg);
}

// Seed phases making each crossing's four shape ratios near exp(i*pi/3):
// breadth-first constraint propagation over the incidence graph, first
// assignment wins, plus a deterministic dephasing jitter.
VectorXcd regular_seed(const KnotDiagram& d, int variant) {
    int n = d.num_segments;
    if (variant == 0) {
        std::vector<double> theta(size_t(n), std::numeric_limits<double>::quiet_NaN());
        theta[0] = 0.0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : d.crossings) {
                auto [a, b, cc, dd] = c.slots;
                const std::array<std::array<int, 2>, 6> pairs = {
                    {{a, b}, {cc, b}, {cc, dd}, {a, dd}, {a, cc}, {b, dd}}};
                const std::array<double, 6> delta = {kPi / 3, kPi / 3, kPi / 3,
                                                     kPi / 3, 0.0, 0.0};
                for (int e = 0; e < 6; ++e) {
                    int x = pairs[size_t(e)][0], y = pairs[size_t(e)][1];
                    if (std::isnan(theta[size_t(x)]) && !std::isnan(theta[size_t(y)])) {
                        theta[size_t(x)] = theta[size_t(y)] + delta[size_t(e)];
                        changed = true;
                    }
                    if (std::isnan(theta[size_t(y)]) && !std::isnan(theta[size_t(x)])) {
                        theta[size_t(y)] = theta[size_t(x)] - delta[size_t(e)];
                        changed = true;
                    }
                }
            }
        }
        VectorXcd w(n);
        for (int k = 0; k < n; ++k) {
            double tk = std::isnan(theta[size_t(k)]) ? 0.0 : theta[size_t(k)];
            w[k] = cx(0.03 * std::cos(2.7 * k), tk + 0.03 * std::sin(1.9 * k));
        }
        return w;
    }
    std::mt19937 rng(uint32_t(12345 + variant));
    std::uniform_real_distribution<double> ur(-0.5, 0.5);
    std::uniform_real_distribution<double> ui(-0.9 * kPi, 0.9 * kPi);
    VectorXcd w(n);
    for (int k = 0; k < n; ++k) {
        double re = ur(rng);
        double im = ui(rng);
        w[k] = cx(re, im);
    }
    return w;
}

cx w_formula(const PotentialFunction& pf, const std::vector<cx>& z) {
    return eval_w_raw(pf, z);
}

std::vector<cx> z_of(const VectorXcd& w) {
    std::vector<cx> z(size_t(w.size()));
    for (int k = 0; k < w.size(); ++k) z[size_t(k)] = std::exp(w[k]);
    return z;
}

// Reject grossly degenerate branches: geometric solutions keep every shape
// ratio within a few e-folds of unit size.
bool nondegenerate(const PotentialFunction& pf, const VectorXcd& w) {
    auto gj = grad_and_jac(pf, w);
    return gj.ok && gj.max_log_rho <= 8.0;
}

SegmentSolution pack_solution(const VectorXcd& w) {
    SegmentSolution s;
    s.z = z_of(w);
    cx z1 = s.z[0];
    for (auto& x : s.z) x /= z1;
    s.gauge_normalized = true;
    return s;
}

VectorXcd seed_to_w(const std::vector<cx>& seed, int n) {
    if (int(seed.size()) != n)
        throw domain_error("solver: given seed has wrong segment count");
    VectorXcd w(n);
    for (int k = 0; k < n; ++k) {
        if (std::abs(seed[size_t(k)]) == 0.0)
            throw domain_error("solver: given seed contains a zero value");
        w[k] = std::log(seed[size_t(k)]);
    }
    w.array() -= w[0];
    return w;
}

VectorXcd solve_complete_w(const PotentialFunction& pf, const KnotDiagram& diagram,
                           const SolverConfig& cfg) {
    VectorXd sg = sign_vector(diagram);
    if (cfg.seed_strategy == SeedStrategy::given) {
        VectorXcd w0 = seed_to_w(cfg.seed, pf.num_segments);
        auto res = polish_complete(pf, sg, w0, cfg);
        if (!res.ok)
            throw convergence_error("solve_complete: given seed did not converge");
        if (!nondegenerate(pf, res.w))
            throw degenerate_error("solve_complete: converged to a degenerate branch");
        return res.w;
    }

    bool found = false;
    VectorXcd best_w;
    double best_vol = -std::numeric_limits<double>::infinity();
    for (int variant = 0; variant < 33; ++variant) {
        VectorXcd w0 = regular_seed(diagram, variant);
        w0.array() -= w0[0];
        auto res = polish_complete(pf, sg, w0, cfg);
        if (!res.ok) continue;
        if (!nondegenerate(pf, res.w)) continue;
        double vol = w_formula(pf, z_of(res.w)).imag();
        VectorXcd w = res.w;
        if (vol < -1e-9) {
            // Mirror branch: the conjugate solution carries positive volume.
            w = res.w.conjugate();
            auto res2 = polish_complete(pf, sg, w, cfg);
            if (!res2.ok || !nondegenerate(pf, res2.w)) continue;
            w = res2.w;
            vol = w_formula(pf, z_of(w)).imag();
        }
        if (!found || vol > best_vol + 1e-12) {
            best_w = w;
            best_vol = vol;
            found = true;
        }
    }
    if (!found)
        throw convergence_error(
            "solve_complete: no seed converged to a nondegenerate solution");
    return best_w;
}

}  // namespace

SegmentSolution solve_complete(const PotentialFunction& pf,
                               const KnotDiagram& diagram,
                               const SolverConfig& cfg) {
    if (pf.num_segments != diagram.num_segments)
        throw structural_error("solve_complete: potential/diagram mismatch");
    VectorXcd w = solve_complete_w(pf, diagram, cfg);
    SegmentSolution s = pack_solution(w);
    double vol = w_formula(pf, s.z).imag();
    if (vol <= 1e-9)
        s.warning = "volume <= 1e-9: solution may lie on a non-geometric branch";
    return s;
}

SegmentSolution solve_orbifold(const PotentialFunction& pf,
                               const KnotDiagram& diagram, int r,
                               const SolverConfig& cfg) {
    if (pf.num_segments != diagram.num_segments)
        throw structural_error("solve_orbifold: potential/diagram mismatch");
    if (r < 3) throw domain_error("solve_orbifold: cone order must be >= 3");

    VectorXcd w = solve_complete_w(pf, diagram, cfg);
    VectorXd sg = sign_vector(diagram);
    int n = pf.num_segments;

    double t_final = 2.0 * kPi / double(r);
    double t = 0.0;
    double dt0 = t_final / double(std::max(1, cfg.continuation_steps));
    double dt = dt0;
    // Floor on the adaptive step: guarantees the walk terminates (every
    // accepted step advances t by at least dt_min) instead of shrinking
    // forever against a cone-angle degeneration.
    const double dt_min = dt0 / 256.0;
    const double path_tol = 1e-13;

    {
        auto gj0 = grad_and_jac(pf, w);
        if (!gj0.ok)
            throw continuation_error("solve_orbifold: degenerate starting point", 0.0);
        std::vector<int> pins = choose_pins(gj0.J);
        std::vector<int> free_idx = free_of(pins, n);
        int repins = 0;

        while (t < t_final - 1e-15) {
            int halved = 0;
            for (;;) {
                double t_next = std::min(t + dt, t_final);
                // Tangent predictor, then re-snap the per-segment winding
                // integers at the predicted point so principal-log branch
                // crossings along the path stay accounted for.
                VectorXcd wp = w;
                VectorXcd gp;
                auto gj = grad_and_jac(pf, w);
                bool have_pred = false;
                if (gj.ok) {
                    VectorXcd rhs_t(n);
                    for (int k = 0; k < n; ++k) rhs_t[k] = cx(0.0, sg[k] * (t_next - t));
                    VectorXcd dwp = lstsq_cols(gj.J, free_idx, rhs_t);
                    VectorXcd wtry = w;
                    apply_free(wtry, free_idx, dwp, 1.0);
                    auto gjp = grad_and_jac(pf, wtry);
                    if (gjp.ok) {
                        wp = wtry;
                        gp = gjp.g;
                        have_pred = true;
                    }
                }
                if (!have_pred) {
                    if (!gj.ok)
                        throw continuation_error(
                            "solve_orbifold: degenerate point on the continuation path", t);
                    gp = gj.g;
                }
                VectorXcd rhs(n);
                for (int k = 0; k < n; ++k) {
                    double winding =
                        std::round((gp[k].imag() - t_next * sg[k]) / (2.0 * kPi));
                    rhs[k] = cx(0.0, t_next * sg[k] + 2.0 * kPi * winding);
                }
                auto step = newton_log(pf, wp, rhs, free_idx, path_tol, cfg.max_iter);
                if (step.ok) {
                    w = step.w;
                    t = t_next;
                    if (halved == 0) dt = std::min(dt * 2.0, dt0);
                    break;
                }
                ++halved;
                if (halved > 8) {
                    // The pinned slice may have folded even though the
                    // solution family continues: re-pin against the current
                    // kernel (deterministically rotated) and retry.
                    if (repins < 5) {
                        ++repins;
                        auto gjr = grad_and_jac(pf, w);
                        if (gjr.ok) {
                            pins = choose_pins(gjr.J);
                            for (std::size_t i = 1; i < pins.size(); ++i)
                                pins[i] = ((pins[i] - 1 + repins) % (n - 1)) + 1;
                            std::sort(pins.begin(), pins.end());
                            pins.erase(std::unique(pins.begin(), pins.end()), pins.end());
                            free_idx = free_of(pins, n);
                            halved = 0;
                            dt = dt0;
                            continue;
                        }
                    }
                    std::ostringstream msg;
                    msg << "solve_orbifold: continuation lost convergence at t = " << t
                        << " of " << t_final << " (cone angle degeneration?)";
                    throw continuation_error(msg.str(), t);
                }
                dt = std::max(dt * 0.5, dt_min);
            }
        }
    }

    // Endpoint polish and residual contract in the exponential form.
    auto fin = polish_at(pf, sg, w, t_final, cfg);
    if (!fin.ok)
        throw continuation_error("solve_orbifold: endpoint polish failed", t);
    if (!nondegenerate(pf, fin.w))
        throw continuation_error(
            "solve_orbifold: branch degenerated before the target cone angle", t);
    // A converged endpoint with collapsed volume is the Euclidean limit of
    // the family (e.g. the figure-eight orbifold at cone order 3), not a
    // hyperbolic cone structure.
    if (w_formula(pf, z_of(fin.w)).imag() <= 1e-9)
        throw continuation_error(
            "solve_orbifold: branch degenerated to zero volume at the target cone angle",
            t_final);
    return pack_solution(fin.w);
}

}  // namespace orbivol
