#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "siegel/config.hpp"
#include "siegel/errors.hpp"

using namespace siegel;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config() {
    return json{
        {"n", 3},
        {"seed", 5},
        {"sampler", {{"kind", "goldstein-mayer"}, {"p", 1009}}},
        {"functions",
         json::array({{{"type", "ball"}, {"radius", 2.0}},
                      {{"type", "odd-shell"}, {"inner", 0.5}, {"outer", 2.0}}})},
        {"samples", 1500},
        {"fiber_samples", 1500},
        {"checks", json::array({"mvt", "odd-null"})},
        {"output_dir", "."},
    };
}

// run_experiment prints one line per check; keep test output clean.
int run_quiet(const ExperimentConfig& config) {
    std::ostringstream sink;
    std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
    int rc = -1;
    try {
        rc = run_experiment(config);
    } catch (...) {
        std::cout.rdbuf(old);
        throw;
    }
    std::cout.rdbuf(old);
    return rc;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& leaf) {
    const fs::path dir = fs::temp_directory_path() / "siegel-config-tests" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("config parses every field") {
    json j = base_config();
    j["bias_p"] = 2003;
    j["points"] = json::array({{1.0, 0.0, 0.0}});
    j["checks"].push_back("inversion");
    j["workers"] = 2;
    j["allow_tiny"] = true;
    j["z_max"] = 5.0;
    j["rel_tol"] = 0.03;
    const ExperimentConfig c = ExperimentConfig::from_json(j);
    CHECK(c.n == 3);
    CHECK(c.seed == 5);
    CHECK(c.sampler.kind == SamplerSpec::Kind::GoldsteinMayer);
    CHECK(c.sampler.p == 1009);
    CHECK(c.bias_p == 2003);
    CHECK(c.functions.size() == 2);
    CHECK(c.samples == 1500);
    CHECK(c.fiber_samples == 1500);
    CHECK(c.checks == std::vector<std::string>{"mvt", "odd-null", "inversion"});
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0](0) == 1.0);
    CHECK(c.workers == 2);
    CHECK(c.allow_tiny);
    CHECK(c.z_max == 5.0);
    CHECK(c.rel_tol == 0.03);
}

TEST_CASE("radii are shorthand for first-axis points") {
    json j = base_config();
    j["checks"] = json::array({"mvt", "inversion"});
    j["radii"] = json::array({1.0, 3.0});
    const ExperimentConfig c = ExperimentConfig::from_json(j);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0].size() == 3);
    CHECK(c.points[0](0) == 1.0);
    CHECK(c.points[0](1) == 0.0);
    CHECK(c.points[1](0) == 3.0);
}

TEST_CASE("config rejects malformed input") {
    SUBCASE("unknown key") {
        json j = base_config();
        j["sample"] = 100;
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("function and functions together") {
        json j = base_config();
        j["function"] = {{"type", "ball"}, {"radius", 1.0}};
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("points and radii together") {
        json j = base_config();
        j["checks"] = json::array({"mvt", "inversion"});
        j["points"] = json::array({{1.0, 0.0, 0.0}});
        j["radii"] = json::array({1.0});
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("non-integer n") {
        json j = base_config();
        j["n"] = 3.5;
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("string sample count") {
        json j = base_config();
        j["samples"] = "many";
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("unknown check name") {
        json j = base_config();
        j["checks"] = json::array({"mvt", "rodgers"});
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("bad sampler kind") {
        json j = base_config();
        j["sampler"] = {{"kind", "haar"}};
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
}

TEST_CASE("config validation enforces check prerequisites") {
    SUBCASE("second-moment checks need n >= 3") {
        json j = base_config();
        j["n"] = 2;
        j["sampler"] = {{"kind", "exact-X2"}};
        j["functions"] = json::array({{{"type", "ball"}, {"radius", 1.0}}});
        j["checks"] = json::array({"rogers"});
        CHECK_THROWS_WITH_AS(ExperimentConfig::from_json(j),
                             doctest::Contains("n = 2"), ConfigError);
    }
    SUBCASE("inversion needs points") {
        json j = base_config();
        j["checks"] = json::array({"inversion"});
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("inversion points must avoid discontinuity radii") {
        json j = base_config();
        j["checks"] = json::array({"mvt", "inversion"});
        j["radii"] = json::array({2.01}); // within 0.05 of the ball boundary
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("odd-null needs an odd function") {
        json j = base_config();
        j["functions"] = json::array({{{"type", "ball"}, {"radius", 2.0}}});
        j["checks"] = json::array({"odd-null"});
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("mean-value checks need a nonzero even function") {
        json j = base_config();
        j["functions"] = json::array(
            {{{"type", "odd-shell"}, {"inner", 0.5}, {"outer", 2.0}}});
        j["checks"] = json::array({"mvt"});
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("gm-bias needs the goldstein-mayer sampler") {
        json j = base_config();
        j["n"] = 2;
        j["sampler"] = {{"kind", "exact-X2"}};
        j["functions"] = json::array({{{"type", "ball"}, {"radius", 1.0}}});
        j["checks"] = json::array({"gm-bias"});
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("gm-bias needs a prime comparison modulus") {
        json j = base_config();
        j["checks"] = json::array({"mvt", "gm-bias"});
        j["bias_p"] = 1000; // composite
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("point dimension must match n") {
        json j = base_config();
        j["checks"] = json::array({"mvt", "inversion"});
        j["points"] = json::array({{1.0, 0.0}});
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
    }
    SUBCASE("small budgets need allow_tiny") {
        json j = base_config();
        j["samples"] = 500;
        CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);
        j["allow_tiny"] = true;
        CHECK_NOTHROW(ExperimentConfig::from_json(j));
    }
}

TEST_CASE("experiments write matching reports and profiles") {
    json j = base_config();
    j["checks"] = json::array({"mvt", "odd-null", "inversion"});
    j["radii"] = json::array({1.0});
    const fs::path dir = fresh_dir("w1");
    j["output_dir"] = dir.string();
    const ExperimentConfig c = ExperimentConfig::from_json(j);
    CHECK(run_quiet(c) == 0);

    const json reports = json::parse(slurp(dir / "reports.json"));
    REQUIRE(reports.is_array());
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].at("name") == "mvt");
    CHECK(reports[1].at("name") == "odd-null");
    CHECK(reports[2].at("name") == "inversion(r=1)");
    for (const json& r : reports) CHECK(r.at("passed").get<bool>());

    // profile.csv carries the inversion rows, value-identical with the JSON
    const std::string csv = slurp(dir / "profile.csv");
    const json& inv = reports[2];
    const std::string expected_row =
        "1," + format_double(inv.at("estimate").at("mean").get<double>()) +
        "," + format_double(inv.at("estimate").at("stderr").get<double>()) +
        "," + format_double(inv.at("target").get<double>()) + "\n";
    CHECK(csv == "radius,estimate,stderr,target\n" + expected_row);
}

TEST_CASE("experiment outputs are byte-identical across worker counts") {
    json j = base_config();
    j["checks"] = json::array({"mvt", "inversion"});
    j["radii"] = json::array({1.0});
    const fs::path d1 = fresh_dir("det1");
    const fs::path d3 = fresh_dir("det3");

    j["output_dir"] = d1.string();
    j["workers"] = 1;
    CHECK(run_quiet(ExperimentConfig::from_json(j)) == 0);

    j["output_dir"] = d3.string();
    j["workers"] = 3;
    CHECK(run_quiet(ExperimentConfig::from_json(j)) == 0);

    CHECK(slurp(d1 / "reports.json") == slurp(d3 / "reports.json"));
    CHECK(slurp(d1 / "profile.csv") == slurp(d3 / "profile.csv"));
}

TEST_CASE("failed checks surface through the exit code") {
    json j = base_config();
    j["checks"] = json::array({"mvt"});
    j["z_max"] = 1e-9; // no finite sample lands this close
    j["output_dir"] = fresh_dir("fail").string();
    CHECK(run_quiet(ExperimentConfig::from_json(j)) == 2);
}

TEST_CASE("known checks cover the canonical eight") {
    const auto& table = known_checks();
    REQUIRE(table.size() == 8);
    CHECK(table.front().first == "mvt");
    for (const auto& [name, description] : table) {
        CHECK(!name.empty());
        CHECK(!description.empty());
    }
}
