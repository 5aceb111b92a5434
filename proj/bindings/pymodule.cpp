// Python bindings for the orbivol core: scalar special functions, the
// closed-form double-twist pipeline, and the generic diagram solver.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbivol/chebyshev.hpp"
#include "orbivol/complexfn.hpp"
#include "orbivol/cvolume.hpp"
#include "orbivol/diagram.hpp"
#include "orbivol/errors.hpp"
#include "orbivol/jknot.hpp"
#include "orbivol/poly.hpp"
#include "orbivol/potential.hpp"
#include "orbivol/solver.hpp"
#include "orbivol/table1.hpp"

namespace py = pybind11;
using orbivol::cx;

namespace {

orbivol::JKnotParams params_of(int two_n, int two_m, int r) {
    if (two_n <= 0 || two_m <= 0 || two_n % 2 != 0 || two_m % 2 != 0)
        throw orbivol::domain_error("two_n and two_m must be positive even integers");
    if (r < 0) throw orbivol::domain_error("r must be >= 3, or 0 for the complete structure");
    return orbivol::JKnotParams{two_n / 2, two_m / 2, r};
}

py::dict invariants_dict(const orbivol::OrbifoldInvariants& inv, const std::string& knot,
                         const std::string& pipeline) {
    py::dict d;
    d["knot"] = knot;
    d["r"] = inv.r;
    d["w_raw"] = inv.w_raw;
    d["volume"] = inv.volume;
    d["cs_rep"] = inv.cs_rep;
    d["modulus"] = inv.modulus;
    d["residual"] = inv.residual;
    d["z"] = inv.z.z;
    d["pipeline"] = pipeline;
    if (inv.lambda)
        d["lambda"] = *inv.lambda;
    else
        d["lambda"] = py::none();
    if (!inv.z.warning.empty()) d["warning"] = inv.z.warning;
    return d;
}

orbivol::SolverConfig config_of(double tol, int max_iter, int steps,
                                const std::optional<std::vector<cx>>& seed) {
    orbivol::SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.continuation_steps = steps;
    if (seed) {
        cfg.seed_strategy = orbivol::SeedStrategy::given;
        cfg.seed = *seed;
    }
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_orbivol, m) {
    m.doc() = "complex volumes (vol + i cs) of hyperbolic alternating knot orbifolds";

    py::register_exception<orbivol::error>(m, "OrbivolError");

    // --- scalar special functions -----------------------------------------
    m.def("li2", &orbivol::li2, py::arg("z"), "analytically continued dilogarithm");
    m.def("principal_log", &orbivol::principal_log, py::arg("z"));
    m.def("rogers_r", &orbivol::rogers_r, py::arg("z"), py::arg("p"), py::arg("q"),
          "Rogers dilogarithm with log-branch corrections p, q (includes the -pi^2/6 shift)");
    m.def("mod_reduce", &orbivol::mod_reduce, py::arg("x"), py::arg("mu"),
          "canonical representative of x modulo mu in [0, mu)");
    m.def("mod_dist", &orbivol::mod_dist, py::arg("x"), py::arg("y"), py::arg("mu"),
          "distance between x and y modulo mu");
    m.def("mu_of", &orbivol::mu_of, py::arg("r"),
          "Chern-Simons modulus: pi^2/r (odd), 2 pi^2/r (even), pi^2 (r = 0, complete)");
    m.def("cheb_s", &orbivol::cheb_s, py::arg("k"), py::arg("xi"),
          "Chebyshev-like S_k: S_0 = 1, S_1 = xi, S_k = xi S_{k-1} - S_{k-2}");

    // --- polynomials -------------------------------------------------------
    m.def(
        "rm_polynomial",
        [](int two_n, int two_m, int r) {
            return orbivol::rm_polynomial(params_of(two_n, two_m, r)).coeffs;
        },
        py::arg("two_n"), py::arg("two_m"), py::arg("r"),
        "coefficients (ascending) of the representation polynomial at meridian exp(i pi/r)");
    m.def(
        "roots_all",
        [](const std::vector<cx>& coeffs) { return orbivol::roots_all(orbivol::PolyCx{coeffs}); },
        py::arg("coeffs"), "all complex roots (double-double Aberth iteration)");
    m.def(
        "rep_residual",
        [](cx x, int two_n, int two_m, int r) {
            return orbivol::rep_residual(x, params_of(two_n, two_m, r));
        },
        py::arg("x"), py::arg("two_n"), py::arg("two_m"), py::arg("r"),
        "|| S W^m - W^m T ||_max at trace-field parameter x");

    // --- diagrams ------------------------------------------------------------
    py::class_<orbivol::KnotDiagram>(m, "KnotDiagram")
        .def_property_readonly("num_segments",
                               [](const orbivol::KnotDiagram& d) { return d.num_segments; })
        .def_property_readonly(
            "num_crossings",
            [](const orbivol::KnotDiagram& d) { return d.crossings.size(); })
        .def("__str__", [](const orbivol::KnotDiagram& d) { return orbivol::emit(d); });
    m.def(
        "generate_j_diagram",
        [](int two_n, int two_m) {
            if (two_n <= 0 || two_m <= 0 || two_n % 2 != 0 || two_m % 2 != 0)
                throw orbivol::domain_error("two_n and two_m must be positive even integers");
            return orbivol::generate_j_diagram(two_n / 2, two_m / 2);
        },
        py::arg("two_n"), py::arg("two_m"),
        "standard alternating diagram of J(2n,-2m)");
    m.def("parse_pd", &orbivol::parse_pd, py::arg("text"),
          "parse planar-diagram text (one 'X a b c d' crossing per line)");
    m.def("emit_pd", &orbivol::emit, py::arg("diagram"), py::arg("start") = 0,
          "canonical PD serialization");
    m.def("diagram_isomorphic", &orbivol::diagram_isomorphic, py::arg("a"), py::arg("b"));

    // --- closed-form pipeline ----------------------------------------------
    m.def(
        "table1_row",
        [](int two_n, int two_m, int r) {
            auto p = params_of(two_n, two_m, r);
            auto inv = orbivol::table1_row(p);
            return invariants_dict(inv, orbivol::knot_label(p), "closed-form");
        },
        py::arg("two_n"), py::arg("two_m"), py::arg("r"),
        "full closed-form pipeline for O(J(2n,-2m), r)");
    m.def(
        "geometric_lambda",
        [](int two_n, int two_m, int r) {
            auto p = params_of(two_n, two_m, r);
            auto geo = orbivol::geometric_lambda(p);
            py::dict d;
            d["lambda"] = geo.lam;
            d["z"] = geo.solution.z;
            if (!geo.solution.warning.empty()) d["warning"] = geo.solution.warning;
            py::list cands;
            for (const auto& c : geo.candidates) {
                py::dict jc;
                jc["root"] = c.root;
                jc["assembled"] = c.assembled;
                jc["volume"] = c.volume;
                jc["note"] = c.note;
                cands.append(jc);
            }
            d["candidates"] = cands;
            return d;
        },
        py::arg("two_n"), py::arg("two_m"), py::arg("r"),
        "geometric trace-field root and assembled segment solution");

    // --- generic solver --------------------------------------------------
    m.def(
        "solve_complete",
        [](const orbivol::KnotDiagram& d, double tol, int max_iter,
           const std::optional<std::vector<cx>>& seed) {
            auto pf = orbivol::build_potential(d);
            auto z = orbivol::solve_complete(pf, d, config_of(tol, max_iter, 64, seed));
            auto inv = orbivol::complex_volume(pf, d, z, 0);
            return invariants_dict(inv, "diagram", "solver");
        },
        py::arg("diagram"), py::arg("tol") = 1e-11, py::arg("max_iter") = 60,
        py::arg("seed") = py::none(),
        "complete hyperbolic structure of an alternating diagram");
    m.def(
        "solve_orbifold",
        [](const orbivol::KnotDiagram& d, int r, double tol, int max_iter, int steps,
           const std::optional<std::vector<cx>>& seed) {
            if (r < 3) throw orbivol::domain_error("r must be >= 3");
            auto pf = orbivol::build_potential(d);
            auto z = orbivol::solve_orbifold(pf, d, r, config_of(tol, max_iter, steps, seed));
            auto inv = orbivol::complex_volume(pf, d, z, r);
            return invariants_dict(inv, "diagram", "solver");
        },
        py::arg("diagram"), py::arg("r"), py::arg("tol") = 1e-11, py::arg("max_iter") = 60,
        py::arg("steps") = 64, py::arg("seed") = py::none(),
        "cone-angle continuation from the complete structure to cone order r");
    m.def(
        "complex_volume",
        [](const orbivol::KnotDiagram& d, const std::vector<cx>& z, int r) {
            auto pf = orbivol::build_potential(d);
            orbivol::SegmentSolution sol;
            sol.z = z;
            auto inv = orbivol::complex_volume(pf, d, sol, r);
            return invariants_dict(inv, "diagram", "evaluation");
        },
        py::arg("diagram"), py::arg("z"), py::arg("r"),
        "evaluate the dilogarithm formula at a given hyperbolicity solution");

    // --- embedded reference table ----------------------------------------
    m.def("golden_rows", []() {
        py::list rows;
        for (const auto& g : orbivol::golden_rows()) {
            py::dict d;
            d["two_n"] = g.two_n;
            d["two_m"] = g.two_m;
            d["r"] = g.r;
            d["lambda"] = g.lambda;
            d["w"] = g.w;
            rows.append(d);
        }
        return rows;
    });
}
