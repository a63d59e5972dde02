#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/ncqm_cli_stdout.txt";
    const std::string cmd = std::string(NCQM_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream is(out_path);
    std::stringstream ss;
    ss << is.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& body) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(body);
    std::string line;
    while (std::getline(ss, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("spectrum: reference row (0,0) shows the K2 ground energy") {
    const auto r = run_cli("spectrum --theta 0.2 --omega-l 1 --omega-r 0 --trunc 64 --levels 2");
    CHECK(r.exit_code == 0); // no dense column above N=32q
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0][0] == "n1");
    CHECK(rows[1][0] == "0");
    CHECK(rows[1][1] == "0");
    CHECK(std::stod(rows[1][2]) == doctest::Approx(0.9049875621120890).epsilon(1e-10));
}

TEST_CASE("spectrum: commutative limit rows approximate hbar wL (n1+n2+1)") {
    const auto r = run_cli("spectrum --theta 1e-6 --omega-l 1 --trunc 64 --levels 2");
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int n1 = std::stoi(rows[i][0]);
        const int n2 = std::stoi(rows[i][1]);
        CHECK(std::stod(rows[i][2]) == doctest::Approx(n1 + n2 + 1.0).epsilon(1e-5));
    }
}

TEST_CASE("spectrum at N=32 reports the truncation-limited dense deltas and exits 1") {
    const auto r = run_cli("spectrum --theta 0.2 --omega-l 1 --trunc 32 --levels 2");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL spectrum_formula_vs_dense_max_delta") != std::string::npos);
}

TEST_CASE("malformed config: negative theta exits 2 with a diagnostic") {
    const auto r = run_cli("spectrum --theta -0.5");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("config error") != std::string::npos);
}

TEST_CASE("unknown flag exits 2") {
    const auto r = run_cli("spectrum --no-such-flag 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("pzv oscillator: P(0,0) equals 1 - Gamma^2 and the dual routes agree") {
    const std::string out = "/tmp/ncqm_pzv_test.csv";
    const auto r = run_cli("pzv --model oscillator --theta 0.2 --omega-l 1 --trunc 64 "
                           "--grid-extent 0.5 --grid-step 0.5 --out " + out);
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    const double gamma = 0.8190024875775822;
    bool found_origin = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] == "0" && rows[i][1] == "0" && rows[i][2] == "0" && rows[i][3] == "0") {
            found_origin = true;
            CHECK(std::stod(rows[i][4]) == doctest::Approx(1.0 - gamma * gamma).epsilon(1e-10));
        }
        CHECK(std::stod(rows[i][6]) < 1e-8); // |Delta| column
    }
    CHECK(found_origin);
    std::remove(out.c_str());
}

TEST_CASE("pzv free: same (k,v), different z, identical P") {
    const std::string out = "/tmp/ncqm_pzv_free.csv";
    const auto r = run_cli("pzv --model free --k-re 1 --theta 0.2 --trunc 64 "
                           "--grid-extent 0.5 --grid-step 1.0 --out " + out);
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    // group by (v) and check P identical across z
    for (std::size_t i = 1; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[i][2] == rows[j][2] && rows[i][3] == rows[j][3])
                CHECK(std::stod(rows[i][4]) ==
                      doctest::Approx(std::stod(rows[j][4])).epsilon(1e-12));
    std::remove(out.c_str());
}

TEST_CASE("classical: V=0 drift is machine precision, exit 0") {
    const auto r = run_cli("classical --potential none --z0-re 0 --z0-im 0 --v0-re 1 --v0-im 0 "
                           "--t-end 2 --dt 1e-3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("e_local_drift=0") != std::string::npos);
}

TEST_CASE("classical: harmonic run exits 0 and writes the contract CSV") {
    const std::string out = "/tmp/ncqm_cls_test.csv";
    const auto r = run_cli("classical --potential harmonic:0.2 --t-end 2 --dt 1e-3 --out " + out);
    CHECK(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(!rows.empty());
    CHECK(rows[0] == std::vector<std::string>{"t", "re_z", "im_z", "re_v", "im_v", "e_local",
                                              "e_nonlocal", "l"});
    CHECK(rows.size() == 2002); // header + 2001 samples
    std::remove(out.c_str());
}

TEST_CASE("classical: anisotropic with --expect-l-drift exits 0 while reporting the drift") {
    const auto r = run_cli("classical --potential aniso:0.4,0.15 --t-end 2 --expect-l-drift");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("drift expected") != std::string::npos);
    // without the flag the same run fails on the L drift
    const auto r2 = run_cli("classical --potential aniso:0.4,0.15 --t-end 2");
    CHECK(r2.exit_code == 1);
}

TEST_CASE("classical: monomial potential syntax matches the named form") {
    const auto r1 = run_cli("classical --potential harmonic:0.3 --t-end 0.5");
    const auto r2 = run_cli("classical --potential \"0.3*z*zb\" --t-end 0.5");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r1.out == r2.out);
    const auto bad = run_cli("classical --potential \"0.3*q^2\" --t-end 0.5");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("checks: default N=64 run passes everything") {
    const auto r = run_cli("checks --trunc 64 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("PASS identity_resolution") != std::string::npos);
}

TEST_CASE("checks: N=8 restricts the identity check to n_check=1 and still passes") {
    const auto r = run_cli("checks --trunc 8 --seed 3");
    CHECK(r.exit_code == 0);
}

TEST_CASE("checks: fixed seed gives byte-identical reports") {
    const std::string o1 = "/tmp/ncqm_checks_1.json", o2 = "/tmp/ncqm_checks_2.json";
    const auto r1 = run_cli("checks --trunc 32 --seed 11 --format json --out " + o1);
    const auto r2 = run_cli("checks --trunc 32 --seed 11 --format json --out " + o2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(slurp(o1) == slurp(o2));
    CHECK(!slurp(o1).empty());
    std::remove(o1.c_str());
    std::remove(o2.c_str());
}

TEST_CASE("json output carries config, results and checks arrays") {
    const std::string out = "/tmp/ncqm_spec_test.json";
    run_cli("spectrum --trunc 16 --levels 2 --format json --out " + out);
    const std::string body = slurp(out);
    CHECK(body.find("\"config\"") != std::string::npos);
    CHECK(body.find("\"results\"") != std::string::npos);
    CHECK(body.find("\"checks\"") != std::string::npos);
    CHECK(body.find("\"theta\"") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("config file supplies defaults, flags win") {
    const std::string cfg = "/tmp/ncqm_test_config.ini";
    {
        std::ofstream os(cfg);
        os << "[spectrum]\ntrunc=16\ntheta=0.3\n";
    }
    const auto r1 = run_cli("spectrum --config " + cfg + " --levels 1");
    CHECK(r1.exit_code == 1); // dense column present at N=16, truncation-limited
    // flag overrides the config's trunc: no dense column above 32 -> exit 0
    const auto r2 = run_cli("spectrum --config " + cfg + " --trunc 64 --levels 1");
    CHECK(r2.exit_code == 0);
    std::remove(cfg.c_str());
}

} // TEST_SUITE
