#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "orbivol/complexfn.hpp"
#include "orbivol/cvolume.hpp"
#include "orbivol/table1.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("orbivol_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Run the CLI binary through the shell, capturing exit code and both streams.
// `env_prefix` may hold VAR=value assignments.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    ++counter;
    fs::path out_p = scratch_dir() / ("out_" + std::to_string(counter) + ".txt");
    fs::path err_p = scratch_dir() / ("err_" + std::to_string(counter) + ".txt");
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + ORBIVOL_CLI_PATH + " " +
                      args + " >" + out_p.string() + " 2>" + err_p.string();
    int rc = std::system(cmd.c_str());
    CliResult res;
    if (rc != -1 && WIFEXITED(rc)) res.code = WEXITSTATUS(rc);
    res.out = slurp(out_p);
    res.err = slurp(err_p);
    std::remove(out_p.string().c_str());
    std::remove(err_p.string().c_str());
    return res;
}

fs::path write_scratch(const std::string& name, const std::string& content) {
    fs::path p = scratch_dir() / name;
    std::ofstream f(p);
    f << content;
    return p;
}

const char* kFig8Pd =
    "X 6 2 7 1\n"
    "X 2 6 3 5\n"
    "X 8 3 1 4\n"
    "X 4 7 5 8\n";

// Passes incidence and handedness checks but arc 2 goes under at both ends.
const char* kFlippedTrefoilPd =
    "X 1 4 2 5\n"
    "X 3 6 4 1\n"
    "X 2 5 3 6\n";

const orbivol::GoldenRow& golden(int two_n, int two_m, int r) {
    for (const auto& g : orbivol::golden_rows())
        if (g.two_n == two_n && g.two_m == two_m && g.r == r) return g;
    FAIL("missing reference row");
    static orbivol::GoldenRow dummy;
    return dummy;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("jknot --json reproduces the reference row") {
    auto res = run_cli("jknot --n 2 --m 2 --r 6 --json");
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    CHECK(j.at("knot").get<std::string>() == "J(2,-2)");
    CHECK(j.at("two_n").get<int>() == 2);
    CHECK(j.at("two_m").get<int>() == 2);
    CHECK(j.at("r").get<int>() == 6);
    CHECK(j.at("pipeline").get<std::string>() == "closed-form");
    const auto& g = golden(2, 2, 6);
    double mu = j.at("modulus").get<double>();
    CHECK(std::fabs(j.at("volume").get<double>() - g.w.imag()) <= 1e-7);
    CHECK(orbivol::mod_dist(j.at("cs_rep").get<double>(),
                            orbivol::mod_reduce(-g.w.real(), mu), mu) <= 1e-7);
    CHECK(std::fabs(mu - orbivol::mu_of(6)) <= 1e-14);
    CHECK(j.at("residual").get<double>() <= 1e-9);
    CHECK(!j.at("lambda_re").is_null());
    // Round trip through the serializer.
    CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("jknot human output names the knot and pipeline") {
    auto res = run_cli("jknot --n 4 --m 2 --r 5");
    REQUIRE(res.code == 0);
    CHECK(res.out.find("J(4,-2)") != std::string::npos);
    CHECK(res.out.find("closed-form") != std::string::npos);
    CHECK(res.out.find("volume") != std::string::npos);
}

TEST_CASE("jknot rejects non-hyperbolic parameters with exit 2") {
    auto res = run_cli("jknot --n 2 --m 2 --r 3 --json");
    CHECK(res.code == 2);
    CHECK(res.err.find("non-hyperbolic") != std::string::npos);

    auto res2 = run_cli("jknot --n 2 --m 2 --r 2");
    CHECK(res2.code == 2);
    CHECK(res2.err.find("non-hyperbolic") != std::string::npos);
}

TEST_CASE("jknot rejects odd twist counts") {
    auto res = run_cli("jknot --n 3 --m 2 --r 5");
    CHECK(res.code != 0);
    CHECK(!res.err.empty());
}

TEST_CASE("jknot --all-roots lists candidates with one geometric pick") {
    auto res = run_cli("jknot --n 2 --m 2 --r 6 --all-roots --json");
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    REQUIRE(j.contains("candidates"));
    const auto& cands = j.at("candidates");
    CHECK(cands.size() >= 2);
    int geometric = 0;
    for (const auto& c : cands) {
        CHECK(c.contains("root_re"));
        CHECK(c.contains("note"));
        if (c.at("geometric").get<bool>()) ++geometric;
    }
    CHECK(geometric == 1);
}

TEST_CASE("jknot --normalize cs adds the rescaled representative") {
    auto res = run_cli("jknot --n 2 --m 2 --r 6 --normalize cs --json");
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    REQUIRE(j.contains("cs_normalized"));
    double cs = j.at("cs_rep").get<double>();
    double p2 = orbivol::kPi * orbivol::kPi;
    double expect = orbivol::mod_reduce(cs / (-2.0 * p2), 1.0 / 6.0);
    CHECK(std::fabs(j.at("cs_normalized").get<double>() - expect) <= 1e-12);
    CHECK(std::fabs(j.at("cs_normalized_modulus").get<double>() - 1.0 / 6.0) <= 1e-15);
}

TEST_CASE("table1 emits the full reference table deterministically") {
    auto res = run_cli("table1");
    REQUIRE(res.code == 0);
    CHECK(res.err.find("table1: 79/79 rows match") != std::string::npos);
    std::istringstream is(res.out);
    std::string header;
    std::getline(is, header);
    CHECK(header == "two_n,two_m,r,lambda_re,lambda_im,w_re,w_im,volume,cs_rep,modulus");
    CHECK(count_lines(res.out) == 80);

    auto res_t1 = run_cli("table1", "ORBIVOL_THREADS=1");
    auto res_t3 = run_cli("table1", "ORBIVOL_THREADS=3");
    CHECK(res_t1.code == 0);
    CHECK(res_t3.code == 0);
    CHECK(res.out == res_t1.out);
    CHECK(res.out == res_t3.out);
}

TEST_CASE("table1 --out writes the same bytes to a file") {
    fs::path out = scratch_dir() / "table1_out.csv";
    auto res = run_cli("table1 --out " + out.string());
    REQUIRE(res.code == 0);
    CHECK(res.out.empty());
    auto direct = run_cli("table1");
    CHECK(slurp(out) == direct.out);
    std::remove(out.string().c_str());
}

TEST_CASE("diagram solves the complete figure-eight") {
    fs::path pd = fs::path(ORBIVOL_SOURCE_DIR) / "data" / "figure_eight.pd";
    REQUIRE(fs::exists(pd));
    auto res = run_cli("diagram --pd " + pd.string() + " --r inf --json");
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    CHECK(j.at("pipeline").get<std::string>() == "solver");
    CHECK(j.at("r").get<int>() == 0);
    CHECK(j.at("lambda_re").is_null());
    CHECK(j.at("knot").get<std::string>() == "figure_eight");
    CHECK(std::fabs(j.at("volume").get<double>() - 2.0298832128) <= 1e-7);
}

TEST_CASE("diagram cone structure matches the closed form") {
    fs::path pd = write_scratch("fig8.pd", kFig8Pd);
    auto res = run_cli("diagram --pd " + pd.string() + " --r 6 --json");
    REQUIRE(res.code == 0);
    json j = json::parse(res.out);
    const auto& g = golden(2, 2, 6);
    double mu = j.at("modulus").get<double>();
    CHECK(std::fabs(j.at("volume").get<double>() - g.w.imag()) <= 1e-6);
    CHECK(orbivol::mod_dist(j.at("cs_rep").get<double>(),
                            orbivol::mod_reduce(-g.w.real(), mu), mu) <= 1e-6);
}

TEST_CASE("diagram error taxonomy maps to exit codes") {
    // Missing file -> 2.
    auto missing = run_cli("diagram --pd /nonexistent/knot.pd --r inf");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("cannot open") != std::string::npos);

    // Malformed PD line -> 2 with a parse message.
    fs::path bad = write_scratch("bad.pd", "X 1 2 3\n");
    auto parse = run_cli("diagram --pd " + bad.string() + " --r inf");
    CHECK(parse.code == 2);
    CHECK(parse.err.find("parse") != std::string::npos);

    // Non-alternating structure -> 3.
    fs::path flip = write_scratch("flip.pd", kFlippedTrefoilPd);
    auto structural = run_cli("diagram --pd " + flip.string() + " --r inf");
    CHECK(structural.code == 3);
    CHECK(structural.err.find("structural") != std::string::npos);

    // Hyperbolic Dehn filling fails at r = 3 on the figure eight -> 4.
    fs::path pd = write_scratch("fig8b.pd", kFig8Pd);
    auto lost = run_cli("diagram --pd " + pd.string() + " --r 3");
    CHECK(lost.code == 4);
    CHECK(lost.err.find("convergence") != std::string::npos);

    // Bad cone order text -> 2.
    auto badr = run_cli("diagram --pd " + pd.string() + " --r seven");
    CHECK(badr.code == 2);
}

}  // TEST_SUITE
