#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wavetail/report.hpp"
#include "wavetail/scenario.hpp"

using namespace wavetail;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(WAVETAIL_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("scenario term grammar") {
    Scenario sc = parse_scenario("sigma = 0.5\nterm = dphi^3\n");
    ProblemSpec sp = sc.problem();
    REQUIRE(sp.terms.size() == 1);
    CHECK(sp.terms[0].factors == 3);
    CHECK(sp.terms[0].derivs == 3);
    CHECK(sp.terms[0].tangential == 0);
    CHECK(!sp.has_background);

    sc = parse_scenario("sigma = 0.5\na_V = 1\nterm = -2.5 phi^2 dbar\n");
    sp = sc.problem();
    CHECK(sc.terms[0].coeff == -2.5);
    CHECK(sp.terms[0].factors == 3);
    CHECK(sp.terms[0].derivs == 1);
    CHECK(sp.terms[0].tangential == 1);
    CHECK(sp.has_background);

    sc = parse_scenario("sigma = 0.5\nterm = 1.0 dt(phi^2 dphi)\n");
    sp = sc.problem();
    CHECK(sp.terms[0].total_derivative);
    CHECK(sp.terms[0].dt_structured);
    CHECK(sp.terms[0].factors == 3);
    CHECK(sp.terms[0].derivs == 1);
}

TEST_CASE("scenario validation failures carry context") {
    // sigma too small for the phi^2 dphi shape
    CHECK_THROWS_WITH_AS(parse_scenario("sigma = 0.2\nterm = phi^2 dphi\n"),
                         doctest::Contains("1/4"), Error);
    // malformed line reports its number
    CHECK_THROWS_WITH_AS(parse_scenario("sigma = 0.5\nnonsense\n"), doctest::Contains("line 2"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_scenario("sigma = 0.5\nterm = bogus^2\n"),
                         doctest::Contains("unknown factor"), Error);
    CHECK_THROWS_AS(parse_scenario("sigma = 0.5\nterm = dt(phi dphi dphi)\n"), Error);
    CHECK_THROWS_AS(parse_scenario("unknown_key = 3\n"), Error);
    try {
        parse_scenario("sigma = 0.2\nterm = phi^2 dphi\n");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::ValidationError);
    }
}

TEST_CASE("scenario hash is stable and content-sensitive") {
    Scenario a = parse_scenario("sigma = 0.5\nterm = dphi^3\n");
    Scenario b = parse_scenario("# comment\nsigma = 0.5\n\nterm = dphi^3\n");
    Scenario c = parse_scenario("sigma = 0.75\nterm = dphi^3\n");
    CHECK(a.hash() == b.hash());  // normalization strips comments and blanks
    CHECK(a.hash() != c.hash());
}

TEST_CASE("format_double and atomic writes") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1e-12) == "1e-12");
    fs::path dir = fs::temp_directory_path() / "wavetail_test_io";
    fs::create_directories(dir);
    write_file_atomic((dir / "x.txt").string(), "hello\n");
    CHECK(slurp(dir / "x.txt") == "hello\n");
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes and determinism") {
    fs::path dir = fs::temp_directory_path() / "wavetail_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string scen = std::string(WAVETAIL_SCENARIO_DIR) + "/mink_dtphi3.scn";

    // predict-only has no simulation cost and succeeds
    CHECK(run_cli("predict --scenario " + scen + " --out " + (dir / "p").string()) == 0);
    CHECK(fs::exists(dir / "p" / "trace_interior.txt"));
    CHECK(fs::exists(dir / "p" / "prediction.txt"));

    // the null-form preset's prediction ends at <v>^-1 <u>^-1
    std::string null_scen = std::string(WAVETAIL_SCENARIO_DIR) + "/null_form.scn";
    CHECK(run_cli("predict --scenario " + null_scen + " --out " + (dir / "n").string()) == 0);
    std::string pred = slurp(dir / "n" / "prediction.txt");
    CHECK(pred.find("closed_form (0,1,1;global)") != std::string::npos);

    // missing scenario file: configuration error, no partial outputs
    CHECK(run_cli("predict --scenario /nonexistent.scn --out " + (dir / "m").string()) == 2);
    CHECK(!fs::exists(dir / "m" / "prediction.txt"));

    // malformed scenario: configuration error
    std::ofstream(dir / "bad.scn") << "sigma = 0.5\nwhat\n";
    CHECK(run_cli("predict --scenario " + (dir / "bad.scn").string()) == 2);

    // a quick simulate writes checkpoints and is byte-identical across runs
    std::string overrides = " --tmax 16 --rmax 24 --dr 0.0625";
    CHECK(run_cli("simulate --scenario " + scen + overrides + " --out " + (dir / "s1").string()) == 0);
    CHECK(run_cli("simulate --scenario " + scen + overrides + " --out " + (dir / "s2").string()) == 0);
    CHECK(slurp(dir / "s1" / "probes.csv") == slurp(dir / "s2" / "probes.csv"));
    CHECK(slurp(dir / "s1" / "energy.csv") == slurp(dir / "s2" / "energy.csv"));
    CHECK(!slurp(dir / "s1" / "probes.csv").empty());

    // verify with an absurd tolerance fails the check: exit code 1
    CHECK(run_cli("verify --scenario " + scen + " --tmax 256 --rmax 270" +
                  " --tol-nonlinear 0.000001 --out " + (dir / "v").string()) == 1);
    CHECK(fs::exists(dir / "v" / "verdict.csv"));
    std::string verdict = slurp(dir / "v" / "verdict.csv");
    CHECK(verdict.find("fail") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("checkpoint round trip") {
    Scenario sc = parse_scenario(
        "sigma = 0.5\nepsilon = 0.01\nr0 = 2\nwidth = 1\ndr = 0.125\nr_max = 12\nt_max = 4\ncfl = "
        "1.0\n");
    FieldHistory h = run_scenario(sc);
    fs::path dir = fs::temp_directory_path() / "wavetail_ckpt_test";
    fs::create_directories(dir);
    std::string path = (dir / "c.bin").string();
    save_checkpoint(path, h);
    FieldHistory g = load_checkpoint(path);
    CHECK(g.scenario_hash == h.scenario_hash);
    CHECK(g.n_slices() == h.n_slices());
    CHECK(g.n_r() == h.n_r());
    CHECK(g.psi[2][10] == h.psi[2][10]);
    CHECK(g.dtpsi[1][7] == h.dtpsi[1][7]);
    fs::remove_all(dir);
}
