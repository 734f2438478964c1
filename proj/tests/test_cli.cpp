#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mums/cli.hpp"
#include "support.hpp"

using mums::cli::run_command;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_model(const std::string& name, const std::string& body) {
    const std::string path = std::string(MUMS_TEST_BINARY_DIR) + "/" + name;
    std::ofstream(path) << body;
    return path;
}

}  // namespace

TEST_CASE("validate passes on the generic univariate instance") {
    const auto r = run({"validate", testing::data_path("univariate.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS, max discrepancy") != std::string::npos);
}

TEST_CASE("validate with a Monte Carlo band") {
    const auto r = run({"validate", testing::data_path("two_controls.json"), "--mc-runs", "5000", "--seed", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("within 4 standard errors") != std::string::npos);
}

TEST_CASE("solve emits the solution and a report") {
    const auto r = run({"solve", testing::data_path("univariate.json"), "--timing"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["tool"]["version"] == mums::cli::kVersion);
    CHECK(std::abs(j["solution"]["q"].get<double>() - (1.34 - std::sqrt(1.34 * 1.34 - 1.6))) < 1e-12);
    CHECK(j["report"]["max_restriction_residual"].get<double>() <= 1e-8);
    CHECK(j["report"].contains("timing_ms"));
    CHECK(j["report"]["root_selection"]["steps"] == 64);
}

TEST_CASE("example nk-habits reports the PDV coefficient") {
    const auto r = run({"example", "nk-habits"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["derived_stats"]["pdv_coefficient"].get<double>() - 5.34) <= 0.01);
    CHECK(j["derived_stats"]["shift_ratio_reference"].get<double>() == 1.1);
}

TEST_CASE("example nk-habits writes its files") {
    const std::string dir = std::string(MUMS_TEST_BINARY_DIR) + "/nk_out";
    const auto r = run({"example", "nk-habits", "--h", "0.5", "--out-dir", dir});
    REQUIRE(r.code == 0);
    for (const char* f : {"nk_solution.json", "nk_derived_stats.json", "nk_irf.csv", "nk_loci.csv"}) {
        CHECK_FALSE(testing::slurp(dir + "/" + f).empty());
    }
    CHECK(testing::slurp(dir + "/nk_loci.csv").rfind("panel,locus,y,pi\n", 0) == 0);
    const auto j = nlohmann::json::parse(testing::slurp(dir + "/nk_solution.json"));
    CHECK(j["params"]["h"] == 0.5);
}

TEST_CASE("irf with q = 0 is geometric in p") {
    const auto r = run({"irf", testing::data_path("static.json"), "--horizon", "10"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,exogenous,state,y");
    std::vector<double> y;
    while (std::getline(in, line)) y.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    REQUIRE(y.size() == 11);
    for (std::size_t n = 1; n < y.size(); ++n) CHECK(y[n] / y[n - 1] == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("pdv and cumsum") {
    auto r = run({"pdv", testing::data_path("static.json"), "--beta", "0.9"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["pdv"]["y"].get<double>() == doctest::Approx(1.0 / 0.65));
    r = run({"cumsum", testing::data_path("static.json")});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["cumsum"]["y"].get<double>() == doctest::Approx(1.0 / 0.65 / 0.3));
    CHECK(run({"pdv", testing::data_path("static.json"), "--beta", "1.5"}).code == 2);
}

TEST_CASE("simulate is deterministic and writes the ensemble CSV") {
    const std::vector<std::string> args{"simulate", testing::data_path("univariate.json"), "--runs", "3000",
                                        "--seed", "9", "--horizon", "12"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("n,mean,stderr\n", 0) == 0);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"solve", testing::data_path("univariate.json"), "--nope"}).code == 2);
    CHECK(run({"solve", testing::data_path("missing_p.json")}).code == 2);
    CHECK(run({"solve", testing::data_path("p_one.json")}).code == 2);
    CHECK(run({"solve", "/nonexistent/model.json"}).code == 2);
    CHECK(run({"solve", testing::data_path("univariate.json"), "--shock", "0"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    auto body = testing::slurp(testing::data_path("univariate.json"));
    auto complex = body;
    complex.replace(complex.find("[[0.5]]"), 7, "[[0.9]]");
    complex.replace(complex.find("[0.2]"), 5, "[0.5]");
    complex.replace(complex.find("[0.3]"), 5, "[0.5]");
    complex.replace(complex.find("0.8"), 3, "0.95");
    const auto r = run({"solve", write_model("complex.json", complex)});
    CHECK(r.code == 1);
    CHECK(r.err.find("complex") != std::string::npos);

    auto negative = body;
    negative.replace(negative.find("\"rho\": 0.8"), 10, "\"rho\": -0.5");
    negative.replace(negative.find("[0.3]"), 5, "[0.0]");
    const auto path = write_model("negative_q.json", negative);
    const auto s = run({"solve", path});
    CHECK(s.code == 0);
    CHECK(s.err.find("warning") != std::string::npos);
    CHECK(run({"simulate", path, "--runs", "10", "--seed", "1"}).code == 1);
}

TEST_CASE("figure1 CSV") {
    const auto r = run({"figure1", "--seed", "5", "--horizon", "10"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("panel,n,mean,stderr,reference\n", 0) == 0);
    CHECK(r.out.find("J=50000,0,") != std::string::npos);
}
