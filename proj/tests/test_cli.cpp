#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "one21/cli.hpp"

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = one21::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("capacity subcommand prints the flow optimum as JSON") {
    const CliRun r = run_cli({"capacity", "--gamma", "1e6", "--alpha", "2", "--dist", "100", "--relay",
                              "10,0", "--relay", "90,0"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["capacity_bits"].get<double>() == doctest::Approx(10.349845192618).epsilon(1e-10));
    CHECK(j["n_relays"] == 2);
    CHECK(j["formulation"] == "flow");
    CHECK(j["links"].size() == 7);
}

TEST_CASE("capacity handles malformed relay coordinates as a usage error") {
    const CliRun r = run_cli({"capacity", "--relay", "10;0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--relay") != std::string::npos);
}

TEST_CASE("optimal subcommand reports cstar and the eps topology") {
    const CliRun r = run_cli({"optimal", "--gamma", "1e6", "--alpha", "2", "--dist", "100"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["cstar_bits"].get<double>() == doctest::Approx(13.2877123795494).epsilon(1e-12));
    CHECK(j["eps_topology_capacity_bits"].get<double>() < j["cstar_bits"].get<double>());
    CHECK(j["eps_topology_capacity_bits"].get<double>() ==
          doctest::Approx(j["closed_form_bits"].get<double>()).epsilon(1e-10));
    CHECK(j["hypothesis_s_gt_3a"] == true);
}

TEST_CASE("dump-lp flag writes the program to stderr") {
    const CliRun r = run_cli({"capacity", "--dist", "100", "--dump-lp"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("maximize") != std::string::npos);
    CHECK(r.err.find("lam(0->1)") != std::string::npos);
}

TEST_CASE("verify suites pass under the worked parameters") {
    for (const std::string suite :
         {"duality", "lemma1", "lemma2", "lemma3", "category1", "kkt", "theorem"}) {
        const CliRun r = run_cli({"verify", "--suite", suite, "--gamma", "1e6", "--alpha", "2", "--dist",
                                  "100"});
        CHECK(r.code == 0);
        CHECK(r.out.find("[FAIL]") == std::string::npos);
        CHECK(r.out.find(": PASS") != std::string::npos);
    }
}

TEST_CASE("verify exit code reflects a failing suite") {
    // s = 4 < 3^a here, so the placement conclusion genuinely fails
    const CliRun r = run_cli({"verify", "--suite", "theorem", "--gamma", "1e6", "--alpha", "2", "--dist",
                              "500"});
    CHECK(r.code == 1);
    CHECK(r.out.find("[FAIL]") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"capacity", "--no-such-flag"}).code == 2);
    CHECK(run_cli({"verify"}).code == 2);                       // --suite required
    CHECK(run_cli({"verify", "--suite", "bogus"}).code == 2);   // not in the allowed set
}

TEST_CASE("help exits 0 and documents defaults") {
    const CliRun top = run_cli({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("capacity") != std::string::npos);
    const CliRun sub = run_cli({"monte-carlo", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--seed") != std::string::npos);
    CHECK(sub.out.find("1e+07") != std::string::npos);  // monte-carlo default gamma
}

TEST_CASE("identical argv produces byte-identical stdout") {
    const std::vector<std::string> args{"capacity", "--dist", "100", "--relay", "20,15", "--relay",
                                        "75,-20"};
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const std::vector<std::string> verify_args{"verify", "--suite", "lemma1", "--dist", "100"};
    const CliRun va = run_cli(verify_args);
    const CliRun vb = run_cli(verify_args);
    CHECK(va.code == 0);
    CHECK(va.out == vb.out);
}

TEST_CASE("sweep subcommand writes files and echoes the summary") {
    const auto dir = std::filesystem::temp_directory_path() / "one21_cli_out";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "sb").string();
    const CliRun r = run_cli({"sweep-beta", "--dist", "100", "--grid", "5", "--beta-min", "0.1",
                              "--beta-max", "0.4", "--out", prefix});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(prefix + ".csv"));
    CHECK(std::filesystem::exists(prefix + ".json"));
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["sweep"] == "beta");
    CHECK(j["points"] == 5);
}
