#include "orbivol/cvolume.hpp"

#include <cmath>
#include <sstream>

namespace orbivol {

double mu_of(int r) {
    if (r == 0) return kPi * kPi;
    if (r < 3) throw domain_error("mu_of: cone order must be >= 3 (or 0)");
    if (r % 2 == 1) return kPi * kPi / double(r);
    return 2.0 * kPi * kPi / double(r);
}

OrbifoldInvariants complex_volume(const PotentialFunction& pf,
                                  const KnotDiagram& diagram,
                                  const SegmentSolution& zin, int r) {
    if (int(zin.z.size()) != pf.num_segments ||
        pf.num_segments != diagram.num_segments)
        throw domain_error("complex_volume: segment count mismatch");
    if (r != 0 && r < 3) throw domain_error("complex_volume: invalid cone order");

    SegmentSolution z = zin;
    if (std::abs(z.z[0]) == 0.0)
        throw degenerate_error("complex_volume: z1 vanishes");
    if (z.z[0] != cx(1.0)) {
        cx z1 = z.z[0];
        for (auto& x : z.z) x /= z1;
        z.gauge_normalized = true;
    }

    cx E = (r == 0) ? cx(1.0) : std::polar(1.0, 2.0 * kPi / double(r));
    auto g = eval_grad(pf, z.z);
    double res = 0.0;
    for (int k = 0; k < diagram.num_segments; ++k) {
        cx target = diagram.side_types[size_t(k)] == SideType::TypeI ? E : cx(1.0) / E;
        res = std::max(res, std::abs(std::exp(g[size_t(k)]) - target));
    }
    if (res > 1e-9) {
        std::ostringstream msg;
        msg << "complex_volume: input does not satisfy the hyperbolicity "
               "equations (residual "
            << res << ")";
        throw precondition_error(msg.str());
    }

    OrbifoldInvariants out;
    out.r = r;
    out.residual = res;
    out.z = z;
    cx v = eval_v(pf, z.z);
    cx w = v;
    for (int k = 0; k < pf.num_segments; ++k)
        w -= g[size_t(k)] * principal_log(z.z[size_t(k)]);
    out.w_raw = w;
    out.volume = w.imag();
    out.modulus = mu_of(r);
    out.cs_rep = mod_reduce(-w.real(), out.modulus);
    return out;
}

OrbifoldInvariants table1_row(const JKnotParams& p) {
    require_hyperbolic(p);
    auto geo = geometric_lambda(p);
    KnotDiagram diag = generate_j_diagram(p.n, p.m);
    PotentialFunction pf = build_potential(diag);
    auto inv = complex_volume(pf, diag, geo.solution, p.r);
    inv.lambda = geo.lam;
    return inv;
}

}  // namespace orbivol
