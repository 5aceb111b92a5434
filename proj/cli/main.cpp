// orbivol command-line tool: closed-form double-twist orbifold volumes
// (jknot, table1) and the generic diagram solver (diagram).

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

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

namespace {

using orbivol::cx;
using nlohmann::json;

// Flat result record mirrored by the JSON schema (field names match).
struct ResultRecord {
    std::string knot;
    int two_n = 0;
    int two_m = 0;
    int r = 0;  // 0 encodes the complete structure (r = inf)
    std::optional<cx> lambda;
    cx w_raw;
    double volume = 0.0;
    double cs_rep = 0.0;
    double modulus = 0.0;
    double residual = 0.0;
    std::string pipeline;  // "closed-form" or "solver"
    std::string warning;
    std::optional<double> cs_normalized;
    std::optional<double> cs_normalized_modulus;
};

std::string fmt(double v, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string fmt_cx(cx z) {
    std::string s = fmt(z.real(), "%.10f");
    s += (z.imag() < 0 ? " - " : " + ");
    s += fmt(std::fabs(z.imag()), "%.10f");
    s += "i";
    return s;
}

// The external-comparison rescaling: take the canonical representative,
// divide by -2*pi^2, then reduce modulo 1/r.
void attach_normalized_cs(ResultRecord& rec) {
    if (rec.r < 3) throw orbivol::domain_error("--normalize cs requires a finite cone order");
    double p2 = orbivol::kPi * orbivol::kPi;
    rec.cs_normalized_modulus = 1.0 / rec.r;
    rec.cs_normalized = orbivol::mod_reduce(rec.cs_rep / (-2.0 * p2), 1.0 / rec.r);
}

ResultRecord record_of(const orbivol::OrbifoldInvariants& inv, std::string knot,
                       int two_n, int two_m, std::string pipeline) {
    ResultRecord rec;
    rec.knot = std::move(knot);
    rec.two_n = two_n;
    rec.two_m = two_m;
    rec.r = inv.r;
    rec.lambda = inv.lambda;
    rec.w_raw = inv.w_raw;
    rec.volume = inv.volume;
    rec.cs_rep = inv.cs_rep;
    rec.modulus = inv.modulus;
    rec.residual = inv.residual;
    rec.pipeline = std::move(pipeline);
    rec.warning = inv.z.warning;
    return rec;
}

json to_json(const ResultRecord& rec) {
    json j;
    j["knot"] = rec.knot;
    j["two_n"] = rec.two_n;
    j["two_m"] = rec.two_m;
    j["r"] = rec.r;
    if (rec.lambda) {
        j["lambda_re"] = rec.lambda->real();
        j["lambda_im"] = rec.lambda->imag();
    } else {
        j["lambda_re"] = nullptr;
        j["lambda_im"] = nullptr;
    }
    j["w_re"] = rec.w_raw.real();
    j["w_im"] = rec.w_raw.imag();
    j["volume"] = rec.volume;
    j["cs_rep"] = rec.cs_rep;
    j["modulus"] = rec.modulus;
    j["residual"] = rec.residual;
    j["pipeline"] = rec.pipeline;
    if (!rec.warning.empty()) j["warning"] = rec.warning;
    if (rec.cs_normalized) {
        j["cs_normalized"] = *rec.cs_normalized;
        j["cs_normalized_modulus"] = *rec.cs_normalized_modulus;
    }
    return j;
}

void print_human(std::ostream& os, const ResultRecord& rec) {
    os << "knot       " << rec.knot << "\n";
    os << "pipeline   " << rec.pipeline << "\n";
    os << "r          " << (rec.r == 0 ? std::string("inf (complete)") : std::to_string(rec.r))
       << "\n";
    if (rec.lambda) os << "lambda     " << fmt_cx(*rec.lambda) << "\n";
    os << "w_raw      " << fmt_cx(rec.w_raw) << "\n";
    os << "volume     " << fmt(rec.volume, "%.10f") << "\n";
    os << "cs_rep     " << fmt(rec.cs_rep, "%.10f") << "  (mod " << fmt(rec.modulus, "%.10f")
       << ")\n";
    if (rec.cs_normalized) {
        os << "cs/(-2pi^2) " << fmt(*rec.cs_normalized, "%.10f") << "  (mod "
           << fmt(*rec.cs_normalized_modulus, "%.10f") << ")\n";
    }
    os << "residual   " << fmt(rec.residual, "%.3g") << "\n";
    if (!rec.warning.empty()) os << "warning    " << rec.warning << "\n";
}

int thread_budget(std::size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("ORBIVOL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (n > jobs) n = static_cast<unsigned>(jobs ? jobs : 1);
    return static_cast<int>(n);
}

// ---------------------------------------------------------------- jknot ---

int cmd_jknot(int two_n, int two_m, int r, bool all_roots, bool as_json,
              bool normalize_cs) {
    orbivol::JKnotParams p{two_n / 2, two_m / 2, r};
    if (r < 3) {
        std::cerr << "error: non-hyperbolic parameters: cone order r must be >= 3\n";
        return 2;
    }
    try {
        orbivol::require_hyperbolic(p);
    } catch (const orbivol::nonhyperbolic_error& e) {
        std::cerr << "error: non-hyperbolic: " << e.what() << "\n";
        return 2;
    }
    try {
        auto geo = orbivol::geometric_lambda(p);
        auto diag = orbivol::generate_j_diagram(p.n, p.m);
        auto pf = orbivol::build_potential(diag);
        auto inv = orbivol::complex_volume(pf, diag, geo.solution, r);
        inv.lambda = geo.lam;
        ResultRecord rec = record_of(inv, orbivol::knot_label(p), two_n, two_m, "closed-form");
        if (normalize_cs) attach_normalized_cs(rec);
        if (as_json) {
            json j = to_json(rec);
            if (all_roots) {
                json cands = json::array();
                for (const auto& c : geo.candidates) {
                    json jc;
                    jc["root_re"] = c.root.real();
                    jc["root_im"] = c.root.imag();
                    jc["assembled"] = c.assembled;
                    jc["volume"] = c.volume;
                    jc["note"] = c.note;
                    jc["geometric"] = (std::abs(c.root - geo.lam) <=
                                       1e-14 * (1.0 + std::abs(geo.lam))) &&
                                      c.note == "ok";
                    cands.push_back(jc);
                }
                j["candidates"] = cands;
            }
            std::cout << j.dump(2) << "\n";
        } else {
            print_human(std::cout, rec);
            if (all_roots) {
                std::cout << "candidates (" << geo.candidates.size() << "):\n";
                for (const auto& c : geo.candidates) {
                    bool chosen = (std::abs(c.root - geo.lam) <=
                                   1e-14 * (1.0 + std::abs(geo.lam))) &&
                                  c.note == "ok";
                    std::cout << "  " << (chosen ? "*" : " ") << " root "
                              << fmt_cx(c.root) << "  volume "
                              << fmt(c.volume, "%.10f") << "  " << c.note << "\n";
                }
            }
        }
        return 0;
    } catch (const orbivol::nonhyperbolic_error& e) {
        std::cerr << "error: non-hyperbolic: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: numeric failure: " << e.what() << "\n";
        return 3;
    }
}

// --------------------------------------------------------------- table1 ---

struct RowOutput {
    ResultRecord rec;
    bool ok = false;          // computed without throwing
    bool match = true;        // agrees with the embedded reference values
    bool has_solver = false;  // crosscheck columns populated
    double solver_volume = 0.0;
    double solver_cs_rep = 0.0;
    bool solver_match = true;
    std::string message;  // failure description
};

RowOutput compute_row(const orbivol::GoldenRow& g, bool crosscheck,
                      const std::vector<cx>* complete_seed) {
    RowOutput out;
    orbivol::JKnotParams p{g.two_n / 2, g.two_m / 2, g.r};
    try {
        auto inv = orbivol::table1_row(p);
        out.rec = record_of(inv, orbivol::knot_label(p), g.two_n, g.two_m, "closed-form");
        out.ok = true;
        double mu = inv.modulus;
        double dvol = std::fabs(inv.volume - g.w.imag());
        double dcs = orbivol::mod_dist(inv.cs_rep, orbivol::mod_reduce(-g.w.real(), mu), mu);
        if (dvol > 1e-7 || dcs > 1e-7) {
            out.match = false;
            out.message = "reference mismatch: |dvol| = " + fmt(dvol, "%.3g") +
                          ", |dcs mod mu| = " + fmt(dcs, "%.3g");
        }
        if (crosscheck && g.two_n <= 6 && complete_seed != nullptr) {
            auto diag = orbivol::generate_j_diagram(p.n, p.m);
            auto pf = orbivol::build_potential(diag);
            orbivol::SolverConfig cfg;
            cfg.seed_strategy = orbivol::SeedStrategy::given;
            cfg.seed = *complete_seed;
            auto zsol = orbivol::solve_orbifold(pf, diag, g.r, cfg);
            auto inv2 = orbivol::complex_volume(pf, diag, zsol, g.r);
            out.has_solver = true;
            out.solver_volume = inv2.volume;
            out.solver_cs_rep = inv2.cs_rep;
            double svol = std::fabs(inv2.volume - inv.volume);
            double scs = orbivol::mod_dist(inv2.cs_rep, inv.cs_rep, mu);
            if (svol > 1e-6 || scs > 1e-6) {
                out.solver_match = false;
                out.message += std::string(out.message.empty() ? "" : "; ") +
                               "solver crosscheck mismatch: |dvol| = " + fmt(svol, "%.3g") +
                               ", |dcs mod mu| = " + fmt(scs, "%.3g");
            }
        }
    } catch (const std::exception& e) {
        out.ok = false;
        out.message = e.what();
    }
    return out;
}

int cmd_table1(const std::string& out_path, const std::string& format, bool crosscheck,
               bool normalize_cs) {
    const auto& rows = orbivol::golden_rows();

    // Complete-structure seeds (closed form at meridian 1), one per family
    // that the solver crosscheck covers; computed serially up front.
    std::map<std::pair<int, int>, std::vector<cx>> seeds;
    if (crosscheck) {
        for (const auto& g : rows) {
            auto key = std::make_pair(g.two_n, g.two_m);
            if (g.two_n > 6 || seeds.count(key)) continue;
            orbivol::JKnotParams pc{g.two_n / 2, g.two_m / 2, 0};
            seeds[key] = orbivol::geometric_lambda(pc).solution.z;
        }
    }

    std::vector<RowOutput> outputs(rows.size());
    std::atomic<std::size_t> next{0};
    int nthreads = thread_budget(rows.size());
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) break;
            const auto& g = rows[i];
            const std::vector<cx>* seed = nullptr;
            if (crosscheck && g.two_n <= 6) {
                auto it = seeds.find(std::make_pair(g.two_n, g.two_m));
                if (it != seeds.end()) seed = &it->second;
            }
            outputs[i] = compute_row(g, crosscheck, seed);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::ostringstream body;
    if (format == "csv") {
        body << "two_n,two_m,r,lambda_re,lambda_im,w_re,w_im,volume,cs_rep,modulus";
        if (normalize_cs) body << ",cs_normalized,normalized_modulus";
        if (crosscheck) body << ",solver_volume,solver_cs_rep";
        body << "\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& g = rows[i];
            auto& o = outputs[i];
            if (!o.ok) continue;  // failure reported on stderr below
            if (normalize_cs) attach_normalized_cs(o.rec);
            const auto& rec = o.rec;
            cx lam = rec.lambda.value_or(cx(0, 0));
            body << g.two_n << "," << g.two_m << "," << g.r << "," << fmt(lam.real()) << ","
                 << fmt(lam.imag()) << "," << fmt(rec.w_raw.real()) << ","
                 << fmt(rec.w_raw.imag()) << "," << fmt(rec.volume) << "," << fmt(rec.cs_rep)
                 << "," << fmt(rec.modulus);
            if (normalize_cs)
                body << "," << fmt(*rec.cs_normalized) << "," << fmt(*rec.cs_normalized_modulus);
            if (crosscheck) {
                if (o.has_solver)
                    body << "," << fmt(o.solver_volume) << "," << fmt(o.solver_cs_rep);
                else
                    body << ",,";
            }
            body << "\n";
        }
    } else {  // json
        json arr = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto& o = outputs[i];
            if (!o.ok) continue;
            if (normalize_cs) attach_normalized_cs(o.rec);
            json j = to_json(o.rec);
            if (crosscheck && o.has_solver) {
                j["solver_volume"] = o.solver_volume;
                j["solver_cs_rep"] = o.solver_cs_rep;
            }
            arr.push_back(j);
        }
        body << arr.dump(2) << "\n";
    }

    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 1;
        }
        f << body.str();
    }

    int failures = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& g = rows[i];
        const auto& o = outputs[i];
        if (o.ok && o.match && o.solver_match) continue;
        ++failures;
        std::cerr << "FAIL row (" << g.two_n << "," << g.two_m << "," << g.r
                  << "): " << o.message << "\n";
    }
    std::cerr << "table1: " << (rows.size() - failures) << "/" << rows.size()
              << " rows match the embedded reference values\n";
    return failures == 0 ? 0 : 1;
}

// -------------------------------------------------------------- diagram ---

int cmd_diagram(const std::string& pd_path, const std::string& r_text, double tol,
                int max_iter, int steps, const std::string& seed_strategy,
                const std::string& seed_file, bool as_json, bool normalize_cs) {
    int r = 0;
    if (r_text != "inf") {
        try {
            std::size_t pos = 0;
            r = std::stoi(r_text, &pos);
            if (pos != r_text.size()) throw std::invalid_argument(r_text);
        } catch (const std::exception&) {
            std::cerr << "error: --r expects an integer >= 3 or 'inf'\n";
            return 2;
        }
        if (r < 3) {
            std::cerr << "error: cone order must be >= 3 (or 'inf' for the complete structure)\n";
            return 2;
        }
    }

    std::ifstream f(pd_path);
    if (!f) {
        std::cerr << "error: cannot open PD file: " << pd_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << f.rdbuf();

    orbivol::SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.continuation_steps = steps;
    if (seed_strategy == "given") {
        cfg.seed_strategy = orbivol::SeedStrategy::given;
        std::ifstream sf(seed_file);
        if (seed_file.empty() || !sf) {
            std::cerr << "error: --seed-strategy given requires a readable --seed-file\n";
            return 2;
        }
        try {
            json js = json::parse(sf);
            for (const auto& item : js) {
                cfg.seed.emplace_back(item.at(0).get<double>(), item.at(1).get<double>());
            }
        } catch (const std::exception& e) {
            std::cerr << "error: cannot parse seed file: " << e.what() << "\n";
            return 2;
        }
    }

    try {
        auto diag = orbivol::parse_pd(buf.str());
        auto pf = orbivol::build_potential(diag);
        orbivol::SegmentSolution z =
            (r == 0) ? orbivol::solve_complete(pf, diag, cfg)
                     : orbivol::solve_orbifold(pf, diag, r, cfg);
        auto inv = orbivol::complex_volume(pf, diag, z, r);
        std::string label = std::filesystem::path(pd_path).stem().string();
        ResultRecord rec = record_of(inv, label, 0, 0, "solver");
        if (normalize_cs) attach_normalized_cs(rec);
        if (as_json)
            std::cout << to_json(rec).dump(2) << "\n";
        else
            print_human(std::cout, rec);
        return 0;
    } catch (const orbivol::parse_error& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
        return 2;
    } catch (const orbivol::structural_error& e) {
        std::cerr << "error: structural: " << e.what() << "\n";
        return 3;
    } catch (const orbivol::continuation_error& e) {
        std::cerr << "error: convergence: " << e.what() << "\n";
        return 4;
    } catch (const orbivol::convergence_error& e) {
        std::cerr << "error: convergence: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: numeric failure: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex volumes of hyperbolic alternating knot orbifolds"};
    app.require_subcommand(1);

    auto even_positive = CLI::Validator(
        [](std::string& s) -> std::string {
            long v = 0;
            try {
                v = std::stol(s);
            } catch (const std::exception&) {
                return "expected an integer";
            }
            if (v <= 0 || v % 2 != 0) return "expected a positive even integer";
            return {};
        },
        "EVEN_POSITIVE");

    // jknot
    int two_n = 0, two_m = 0, r = 0;
    bool all_roots = false, jknot_json = false;
    std::string jknot_normalize;
    auto* jk = app.add_subcommand("jknot", "closed-form J(2n,-2m) orbifold invariants");
    jk->add_option("--n", two_n, "number of vertical crossings (2n, even)")
        ->required()
        ->check(even_positive);
    jk->add_option("--m", two_m, "number of horizontal crossings (2m, even)")
        ->required()
        ->check(even_positive);
    jk->add_option("--r", r, "cone order (>= 3)")->required();
    jk->add_flag("--all-roots", all_roots, "list every representation-polynomial root candidate");
    jk->add_flag("--json", jknot_json, "emit the record as JSON");
    jk->add_option("--normalize", jknot_normalize,
                   "'cs': also report cs divided by -2*pi^2 modulo 1/r")
        ->check(CLI::IsMember({"cs"}));

    // table1
    std::string out_path, format = "csv", table_normalize;
    bool crosscheck = false;
    auto* tb = app.add_subcommand("table1", "batch harness over the embedded reference table");
    tb->add_option("--out", out_path, "write the table to this path instead of stdout");
    tb->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    tb->add_flag("--crosscheck", crosscheck,
                 "also run the generic solver where it applies (2n <= 6) and compare");
    tb->add_option("--normalize", table_normalize,
                   "'cs': add the cs/(-2*pi^2) mod 1/r columns")
        ->check(CLI::IsMember({"cs"}));

    // diagram
    std::string pd_path, r_text, seed_strategy = "regular", seed_file, diagram_normalize;
    double tol = 1e-11;
    int max_iter = 60, steps = 64;
    bool diagram_json = false;
    auto* dg = app.add_subcommand("diagram", "solve an alternating PD diagram");
    dg->add_option("--pd", pd_path, "planar-diagram file")->required();
    dg->add_option("--r", r_text, "cone order (>= 3) or 'inf' for the complete structure")
        ->required();
    dg->add_option("--tol", tol, "Newton residual tolerance");
    dg->add_option("--max-iter", max_iter, "Newton iteration cap per solve");
    dg->add_option("--steps", steps, "cone-angle continuation steps");
    dg->add_option("--seed-strategy", seed_strategy, "initial-guess strategy")
        ->check(CLI::IsMember({"regular", "given"}));
    dg->add_option("--seed-file", seed_file,
                   "JSON [[re,im],...] segment seed (with --seed-strategy given)");
    dg->add_flag("--json", diagram_json, "emit the record as JSON");
    dg->add_option("--normalize", diagram_normalize,
                   "'cs': also report cs divided by -2*pi^2 modulo 1/r")
        ->check(CLI::IsMember({"cs"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (jk->parsed())
            return cmd_jknot(two_n, two_m, r, all_roots, jknot_json, jknot_normalize == "cs");
        if (tb->parsed())
            return cmd_table1(out_path, format, crosscheck, table_normalize == "cs");
        if (dg->parsed())
            return cmd_diagram(pd_path, r_text, tol, max_iter, steps, seed_strategy, seed_file,
                               diagram_json, diagram_normalize == "cs");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
