#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using namespace disctest;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScenarios = DISCTEST_SCENARIOS;
const fs::path kScratch = fs::path(DISCTEST_SCRATCH) / "cli";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "disctest");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string scenario(const char* name) { return (kScenarios / name).string(); }

std::string scratch(const char* name)
{
    const fs::path p = kScratch / name;
    fs::remove_all(p);
    return p.string();
}

json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return json::parse(in);
}

std::string without_timestamp(const fs::path& p)
{
    json j = read_json(p);
    j.erase("generated_at");
    return j.dump();
}

std::string write_config(const char* name, const json& j)
{
    fs::create_directories(kScratch);
    const fs::path p = kScratch / name;
    std::ofstream(p) << j.dump();
    return p.string();
}

} // namespace

TEST_CASE("complex literals and grid specs")
{
    CHECK(cli::parse_complex("2") == Complex{2.0, 0.0});
    CHECK(cli::parse_complex("-1.5i") == Complex{0.0, -1.5});
    CHECK(cli::parse_complex("0.3+0.7i") == Complex{0.3, 0.7});
    CHECK(cli::parse_complex("1e-3-2i") == Complex{1e-3, -2.0});
    CHECK(cli::parse_complex("2e+1+i") == Complex{20.0, 1.0});
    CHECK(cli::parse_complex("-i") == Complex{0.0, -1.0});
    CHECK_THROWS((void)cli::parse_complex("abc"));

    const auto g = cli::parse_zeta_grid("2, 1@0.5, inf, ring:3:4");
    REQUIRE(g.size() == 7);
    CHECK(*g[0] == Complex{2.0});
    CHECK(std::abs(*g[1] - std::polar(1.0, 0.5)) < 1e-16);
    CHECK_FALSE(g[2]);
    for (std::size_t k = 3; k < 7; ++k)
        CHECK(std::abs(std::abs(*g[k]) - 3.0) < 1e-15);
    CHECK(std::abs(*g[3] - std::polar(3.0, kPi / 4.0)) < 1e-15);
    CHECK_THROWS((void)cli::parse_zeta_grid("ring:3"));
    CHECK_THROWS((void)cli::parse_zeta_grid("1,,2"));

    CHECK(cli::fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(cli::fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("moment-test command")
{
    const auto holo = run({"moment-test", "--config", scenario("holo_poly.json"), "--out", scratch("holo")});
    CHECK(holo.code == cli::exit_pass);

    const std::string out = scratch("zbar1");
    const auto bar = run({"moment-test", "--config", scenario("zbar1.json"), "--out", out});
    CHECK(bar.code == cli::exit_failed);
    const json r = read_json(fs::path(out) / "moment_test.json");
    const auto m0 = r["report"]["moments"][0];
    CHECK(std::abs(m0[0].get<double>()) < 1e-12);
    CHECK(std::abs(m0[1].get<double>() - kTwoPi) < 1e-12);
    // the report carries the effective configuration
    CHECK(r["config"]["quadrature"]["nodes"] == 512);
    CHECK(r["config"]["function"] == "zbar1");
    CHECK(r["config"].contains("seed"));

    CHECK(run({"moment-test", "--config", (kScratch / "missing.json").string()}).code == cli::exit_error);
    const auto not_object = run({"moment-test", "--config", write_config("array.json", json::array()), "--out", scratch("arr")});
    CHECK(not_object.code == cli::exit_error);
    std::ofstream(kScratch / "broken.json") << "{\"function\": ";
    const auto broken = run({"moment-test", "--config", (kScratch / "broken.json").string(), "--out", scratch("broken")});
    CHECK(broken.code == cli::exit_error);
    CHECK(broken.err.find("malformed JSON") != std::string::npos);

    CHECK(run({"moment-test"}).code == cli::exit_error);
    CHECK(run({"frobnicate"}).code == cli::exit_error);
    CHECK(run({"moment-test", "--config", scenario("zbar1.json"), "--nodes", "0", "--out", scratch("zero")}).code ==
          cli::exit_error);
    CHECK(run({"moment-test", "--config", scenario("zbar1.json"), "--line", "5,5;1,0", "--out", scratch("miss")}).code ==
          cli::exit_error);
}

TEST_CASE("runs are reproducible and seeds are honoured")
{
    const std::string a = scratch("rep_a");
    const std::string b = scratch("rep_b");
    REQUIRE(run({"moment-test", "--config", scenario("holo_poly.json"), "--out", a}).code == cli::exit_pass);
    REQUIRE(run({"moment-test", "--config", scenario("holo_poly.json"), "--out", a}).code == cli::exit_pass);
    const std::string first = without_timestamp(fs::path(a) / "moment_test.json");
    REQUIRE(run({"moment-test", "--config", scenario("holo_poly.json"), "--out", a}).code == cli::exit_pass);
    CHECK(without_timestamp(fs::path(a) / "moment_test.json") == first);

    REQUIRE(run({"moment-test", "--config", scenario("holo_poly.json"), "--out", b, "--seed", "7"}).code ==
            cli::exit_pass);
    const json seeded = read_json(fs::path(b) / "moment_test.json");
    CHECK(seeded["config"]["seed"] == 7);
    CHECK(seeded["report"]["disc"] != read_json(fs::path(a) / "moment_test.json")["report"]["disc"]);
}

TEST_CASE("verify-theorem1 command")
{
    const std::string out = scratch("cex");
    const auto cex = run({"verify-theorem1", "--config", scenario("counterexample.json"), "--out", out});
    CHECK(cex.code == cli::exit_pass);
    const json v = read_json(fs::path(out) / "verdict.json");
    CHECK(v["outcome"] == "pass");
    CHECK(v["stages"].size() == 4);
    for (const char* f : {"moments_a.csv", "moments_b.csv", "moments_p.csv", "decay.csv", "reconstruction.csv"}) {
        std::ifstream in(fs::path(out) / f);
        std::string header;
        std::getline(in, header);
        CHECK(header.rfind("# {", 0) == 0);
    }

    const auto secant = run({"verify-theorem1", "--config", scenario("secant.json"), "--out", scratch("secant")});
    CHECK(secant.code == cli::exit_error);
    CHECK(secant.err.find("not tangent") != std::string::npos);

    CHECK(run({"verify-theorem1", "--config", scenario("zbar1.json"), "--out", scratch("zbar")}).code ==
          cli::exit_hypothesis);

    const std::string rot = scratch("rotated");
    CHECK(run({"verify-theorem1", "--config", scenario("rotated.json"), "--out", rot}).code == cli::exit_pass);
    CHECK(read_json(fs::path(rot) / "verdict.json").contains("globevnik"));
}

TEST_CASE("decay-table command")
{
    const std::string out = scratch("decay");
    const auto r = run({"decay-table", "--config", scenario("decay.json"), "--out", out, "--grid", "2,4,6,8,inf"});
    CHECK(r.code == cli::exit_pass);
    std::ifstream in(fs::path(out) / "decay.csv");
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line))
        rows.push_back(line);
    REQUIRE(rows.size() == 7);
    CHECK(rows[1].rfind("zeta_re,", 0) == 0);
    CHECK(rows[6].find("skipped") != std::string::npos);

    const std::string zero = write_config("zero.json", {{"function", "zero"}, {"grid", {{"zeta", "1,2i,3"}}}});
    const std::string zout = scratch("decay_zero");
    CHECK(run({"decay-table", "--config", zero, "--out", zout}).code == cli::exit_pass);
    std::ifstream zin(fs::path(zout) / "decay.csv");
    std::getline(zin, line);
    std::getline(zin, line);
    int n = 0;
    while (std::getline(zin, line)) {
        std::stringstream s(line);
        std::string cell;
        for (int k = 0; k < 4; ++k)
            std::getline(s, cell, ',');
        CHECK(std::stod(cell) == 0.0);
        ++n;
    }
    CHECK(n == 3);
}

TEST_CASE("quadric command")
{
    const std::string out = scratch("quadric");
    const auto r = run({"quadric", "--config", scenario("quadric.json"), "--out", out});
    CHECK(r.code == cli::exit_pass);
    const json q = read_json(fs::path(out) / "quadric.json")["pairs"];
    REQUIRE(q.size() == 5);
    CHECK(q[0]["double_root"] == true);
    CHECK(q[0]["tangent"] == true);
    REQUIRE(q[0]["points"].size() == 1);
    CHECK(std::abs(q[0]["points"][0]["zeta"][0].get<double>() + 1.0) < 1e-12);
    CHECK(std::abs(q[0]["points"][0]["eta"][0].get<double>() + 1.0) < 1e-12);
    CHECK(q[0]["points"][0]["in_T"] == true);

    REQUIRE(q[1]["points"].size() == 1);
    CHECK(std::abs(q[1]["points"][0]["zeta"][0].get<double>() - (-7.0 + std::sqrt(45.0)) / 2.0) < 1e-12);
    CHECK(std::abs(q[1]["points"][0]["eta"][0].get<double>() - (-7.0 - std::sqrt(45.0)) / 2.0) < 1e-12);

    CHECK(q[2]["points"].empty());
    CHECK(q[2]["regime"] == "disjoint: R1 + R2 < 1");
    CHECK(q[3]["regime"] == "inner: R1 - 1 > R2");
    for (const auto& p : q[4]["points"]) {
        CHECK(p["on_diagonal"] == true);
        CHECK_FALSE(p.contains("in_T"));
    }

    const std::string out2 = scratch("q2");
    const auto concentric = run({"quadric", "--config", scenario("quadric.json"), "--pair", "0,1,0,2", "--out", out2});
    CHECK(concentric.code == cli::exit_error);
    const json e = read_json(fs::path(out2) / "quadric.json")["pairs"][0];
    CHECK(e["error"]["kind"] == "precondition");
    CHECK(e["error"]["message"].get<std::string>().find("concentric") != std::string::npos);
}
