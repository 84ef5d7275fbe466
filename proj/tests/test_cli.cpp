#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "lptile/json_io.hpp"

using namespace lptile;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "lptile_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("matrix strings") {
    CHECK(cli::parse_matrix("1,2;0,5") == std::vector<std::vector<long long>>{{1, 2}, {0, 5}});
    CHECK(cli::parse_matrix(" 3, -8 ; 0 ,3") == std::vector<std::vector<long long>>{{3, -8}, {0, 3}});
    CHECK_THROWS_AS(cli::parse_matrix("1,2;0"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_matrix("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_matrix("a,b"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_matrix(""), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_matrix("1,2;"), std::invalid_argument);
}

TEST_CASE("ball and difference set") {
    const auto r = run({"ball", "--n", "2", "--p", "2", "--s", "1"});
    REQUIRE(r.code == cli::kExitOk);
    const auto doc = Json::parse(r.out);
    CHECK(doc["size"] == 5);
    CHECK(doc["points"].size() == 5);
    const auto d = Json::parse(run({"ball", "--n", "2", "--p", "2", "--s", "1", "--diff"}).out);
    CHECK(d["points"].size() == 13);
    CHECK(run({"ball", "--n", "2", "--p", "zero", "--s", "1"}).code == cli::kExitUsage);
}

TEST_CASE("verify") {
    const auto ok = run({"verify", "--basis", "1,5;3,2", "--p", "2", "--s", "4"});
    REQUIRE(ok.code == cli::kExitOk);
    CHECK(Json::parse(ok.out)["status"] == "PERFECT");
    const auto no = Json::parse(run({"verify", "--basis", "1,0;0,5", "--p", "2", "--s", "1"}).out);
    CHECK(no["status"] == "NOT_PERFECT");
    CHECK(no["failed_condition"] == "packing");
    const auto bad = run({"verify", "--basis", "1,2;x,5", "--p", "2", "--s", "1"});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.err.find("malformed basis") != std::string::npos);
    const auto singular = run({"verify", "--basis", "1,2;2,4", "--p", "2", "--s", "1"});
    CHECK(singular.code == cli::kExitUsage);
    CHECK(singular.err.find("rank-deficient") != std::string::npos);
    const auto unreachable = run({"verify", "--basis", "1,2;0,5", "--p", "2", "--s", "3"});
    CHECK(unreachable.code == cli::kExitUsage);
}

TEST_CASE("distances and codes") {
    const auto d = Json::parse(run({"distances", "--p", "2", "--n", "2", "--limit", "10"}).out);
    CHECK(d["achievable"] == Json::array({0, 1, 2, 4, 5, 8, 9, 10}));
    const auto c = run({"code", "--q", "13", "--n", "2", "--gen", "1,5", "--p", "2", "--check-perfect", "--s", "4"});
    REQUIRE(c.code == cli::kExitOk);
    const auto doc = Json::parse(c.out);
    CHECK(doc["packing_radius"] == 4);
    CHECK(doc["check"]["perfect"] == true);
    CHECK(doc["transfer"]["verdict"] == "radius and perfection transfer");
    CHECK(run({"code", "--q", "13", "--n", "2", "--gen", "1,5,1", "--p", "2"}).code == cli::kExitUsage);
}

TEST_CASE("search writes JSON lines and a separate manifest") {
    const auto out = scratch("search.jsonl");
    const auto manifest = scratch("manifest.json");
    const auto r = run({"search", "--n", "2", "--p", "2", "--s-max", "10", "--out", out.string(), "--manifest",
                        manifest.string()});
    REQUIRE(r.code == cli::kExitOk);
    std::istringstream lines(slurp(out));
    std::string line;
    std::vector<std::int64_t> found;
    while (std::getline(lines, line)) {
        const auto doc = Json::parse(line);
        CHECK_FALSE(doc.contains("seconds"));
        if (doc["status"] == "found") found.push_back(doc["s"].get<std::int64_t>());
    }
    CHECK(found == std::vector<std::int64_t>{1, 2, 4, 8});
    const auto m = Json::parse(slurp(manifest));
    CHECK(m.contains("wall_seconds"));
    CHECK(m["parameters"]["s-max"] == "10");

    CHECK(run({"search", "--n", "3", "--p", "2", "--s-max", "10", "--budget", "5"}).code == cli::kExitInconclusive);
}

TEST_CASE("bounds") {
    const auto table = Json::parse(run({"bounds", "--p", "2", "--table1"}).out);
    REQUIRE(table.size() == 8);
    CHECK(table[0]["threshold"] == 838);
    const auto csv = run({"bounds", "--p", "2", "--table1", "--format", "csv"}).out;
    CHECK(csv.rfind("n,bound_squared,threshold\n", 0) == 0);
    const auto surv = Json::parse(run({"bounds", "--p", "2", "--survivors", "--n", "3"}).out);
    CHECK(surv["survivors"].back() == 91);

    const auto custom = scratch("densities.json");
    std::ofstream(custom) << R"([{"n": 2, "p": 2, "density": 0.5}])";
    const auto alt = run({"bounds", "--p", "2", "--survivors", "--n", "2", "--density-file", custom.string()});
    REQUIRE(alt.code == cli::kExitOk);
    CHECK(Json::parse(alt.out)["density"] == 0.5);
    const auto missing = run({"bounds", "--p", "2", "--survivors", "--n", "3", "--density-file", custom.string()});
    CHECK(missing.code == cli::kExitUsage);
    CHECK(missing.err.find("missing density entry") != std::string::npos);

    ::setenv("LPTILE_DENSITY_FILE", custom.string().c_str(), 1);
    CHECK(Json::parse(run({"bounds", "--p", "2", "--survivors", "--n", "2"}).out)["density"] == 0.5);
    ::unsetenv("LPTILE_DENSITY_FILE");
}

TEST_CASE("tile-region and render") {
    const auto tiling = scratch("tiling.json");
    REQUIRE(run({"tile-region", "--n", "2", "--p", "2", "--r", "2", "--extent", "6", "--out", tiling.string()}).code ==
            cli::kExitOk);
    const auto doc = Json::parse(slurp(tiling));
    CHECK(doc["status"] == "completed");
    const auto svg = run({"render", "--input", tiling.string()});
    REQUIRE(svg.code == cli::kExitOk);
    CHECK(svg.out.rfind("<svg", 0) == 0);
    CHECK(svg.out.find("<circle") != std::string::npos);

    const auto refuted = Json::parse(run({"tile-region", "--n", "2", "--p", "2", "--r", "3", "--extent", "12"}).out);
    CHECK(refuted["status"] == "impossible");

    const auto stream = scratch("stream.jsonl");
    run({"search", "--n", "2", "--p", "2", "--s-max", "8", "--out", stream.string()});
    const auto drawn = run({"render", "--input", stream.string(), "--s", "8", "--svg", scratch("s8.svg").string()});
    CHECK(drawn.code == cli::kExitOk);
    CHECK(slurp(scratch("s8.svg")).find("</svg>") != std::string::npos);
    CHECK(run({"render", "--input", stream.string(), "--s", "5"}).code == cli::kExitUsage);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"search", "--n", "2"}).code == cli::kExitUsage);
    const auto help = run({"--help"});
    CHECK(help.code == cli::kExitOk);
    CHECK(help.out.find("search") != std::string::npos);
}
