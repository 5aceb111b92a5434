#include "orbivol/potential.hpp"

#include <cmath>
#include <string>

namespace orbivol {

namespace {

constexpr double kDegenTol = 1e-12;

cx term_ratio(const DilogTerm& t, const std::vector<cx>& z) {
    cx rho = z[size_t(t.num)] / z[size_t(t.den)];
    if (std::abs(rho) <= kDegenTol || std::abs(rho - cx(1.0)) <= kDegenTol)
        throw degenerate_error("potential: ratio z" + std::to_string(t.num + 1) +
                               "/z" + std::to_string(t.den + 1) +
                               " degenerate (within 1e-12 of {0,1})");
    return rho;
}

}  // namespace

PotentialFunction build_potential(const KnotDiagram& d) {
    PotentialFunction pf;
    pf.num_segments = d.num_segments;
    pf.terms.reserve(4 * d.crossings.size());
    for (const auto& c : d.crossings) {
        auto [a, b, cc, dd] = c.slots;
        pf.terms.push_back({+1, a, b});
        pf.terms.push_back({-1, cc, b});
        pf.terms.push_back({+1, cc, dd});
        pf.terms.push_back({-1, a, dd});
    }
    return pf;
}

cx eval_v(const PotentialFunction& pf, const std::vector<cx>& z) {
    cx v(0.0);
    for (const auto& t : pf.terms) v += double(t.sign) * li2(term_ratio(t, z));
    return v;
}

std::vector<cx> eval_grad(const PotentialFunction& pf, const std::vector<cx>& z) {
    std::vector<cx> g(size_t(pf.num_segments), cx(0.0));
    for (const auto& t : pf.terms) {
        cx L = principal_log(cx(1.0) - term_ratio(t, z));
        g[size_t(t.num)] -= double(t.sign) * L;
        g[size_t(t.den)] += double(t.sign) * L;
    }
    return g;
}

cx eval_w_raw(const PotentialFunction& pf, const std::vector<cx>& z) {
    cx w = eval_v(pf, z);
    auto g = eval_grad(pf, z);
    for (int k = 0; k < pf.num_segments; ++k)
        w -= g[size_t(k)] * principal_log(z[size_t(k)]);
    return w;
}

}  // namespace orbivol
