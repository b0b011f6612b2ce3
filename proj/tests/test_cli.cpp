#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "tsurf/json_io.hpp"

using namespace tsurf;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "tsurf");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string tmp(const std::string& name)
{
    fs::path d = fs::temp_directory_path() / "tsurf_cli_test";
    fs::create_directories(d);
    return (d / name).string();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("build writes a surface with metadata")
{
    const auto path = tmp("w32.json");
    auto r = run({"build", "wiman", "--g", "3", "--k", "2", "-o", path});
    REQUIRE(r.code == 0);
    auto j = Json::parse(slurp(path));
    CHECK(j["metadata"]["genus"] == 3);
    CHECK(j["order"] == 14);
}

TEST_CASE("cylinders report exact and numeric moduli")
{
    const auto path = tmp("w32c.json");
    REQUIRE(run({"build", "wiman", "--g", "3", "--k", "2", "-o", path}).code == 0);
    auto r = run({"cylinders", path, "--dir", "0,1"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["status"] == "ok");
    REQUIRE(!j["cylinders"].empty());
    for (const auto& c : j["cylinders"]) {
        CHECK(c["modulus"].contains("exact"));
        CHECK(c["modulus"]["double"].get<double>() > 0);
    }
}

TEST_CASE("rm-check")
{
    auto r = run({"rm-check", "--g", "3", "--k", "2"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["verdict"] == "violated");
    CHECK(j["witness"]["i"] == 1);
    CHECK(j["witness"]["j"] == 3);
    CHECK(std::abs(j["area_double"].get<double>() - 7 * std::sin(4 * 3.14159265358979323846 / 7)) < 1e-12);
    CHECK(j["trace_field"]["degree"] == 3);
    CHECK(j["trace_field"]["min_poly"].size() == 4);
    auto p = Json::parse(run({"rm-check", "--g", "3", "--k", "3"}).out);
    CHECK(p["verdict"] == "preserved_consistent");
    CHECK(p["witness"].is_null());
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"build", "wiman", "--g", "3"}).code == 1);
    CHECK(run({"build", "wiman", "--g", "3", "--k", "5"}).code == 1);
    CHECK(run({"cylinders", tmp("missing.json"), "--dir", "0,1"}).code == 1);
    const auto torus = tmp("torus.json");
    REQUIRE(run({"build", "origami", "--right", "0", "--top", "0", "-o", torus}).code == 0);
    auto bad = run({"cylinders", torus, "--dir", "1,x"});
    CHECK(bad.code == 1);
    CHECK(!bad.err.empty());
    CHECK(run({"cylinders", torus, "--dir", "0,0"}).code == 1);
    auto irr = run({"cylinders", torus, "--dir", "1,cos2pi(1/5)", "--cap", "300"});
    CHECK(irr.code == 2);
    CHECK(Json::parse(irr.out)["status"] != "ok");
    CHECK(run({"--help"}).code == 0);

    const auto broken = tmp("broken.json");
    std::ofstream(broken) << R"({"order": 4, "polygons": [{"id": "Q", "vertices": [
        {"order": 1, "coeffs": ["0"]}, {"order": 1, "coeffs": ["1"]},
        {"order": 4, "coeffs": ["1", "1"]}, {"order": 4, "coeffs": ["0", "1"]}]}],
        "gluing": [[["Q", 3], ["Q", 2]], [["Q", 0], ["Q", 1]]]})";
    auto v = run({"validate", broken});
    CHECK(v.code == 2);
    auto vj = Json::parse(v.out);
    CHECK(vj["ok"] == false);
    CHECK(vj["issues"][0]["code"] == "GluingMismatch");
    CHECK(run({"invariants", broken}).code == 2);
    CHECK(run({"validate", torus}).code == 0);

    const auto garbage = tmp("garbage.json");
    std::ofstream(garbage) << "{not json";
    CHECK(run({"invariants", garbage}).code == 2);
}

TEST_CASE("surface JSON round-trips bit-exactly")
{
    for (auto args : std::vector<std::vector<std::string>>{{"build", "wiman", "--g", "4", "--k", "3"},
                                                          {"build", "2ngon", "--n", "7"},
                                                          {"build", "double-ngon", "--n", "5"},
                                                          {"build", "origami", "--right", "1,0,2", "--top", "2,1,0"},
                                                          {"build", "billiard", "--g", "2", "--k", "1", "--half"}}) {
        auto r = run(args);
        REQUIRE(r.code == 0);
        auto j = Json::parse(r.out);
        auto s = TranslationSurface::make(surface_from_json(j));
        CHECK(surface_to_json(s).dump(2) + "\n" == r.out);
        const auto path = tmp("rt.json");
        save_text(path, r.out);
        auto again = run({"act", path, "--matrix", "1,0,0,1"});
        REQUIRE(again.code == 0);
        CHECK(again.out == r.out);
    }
}

TEST_CASE("outputs are deterministic")
{
    const auto path = tmp("d5.json");
    REQUIRE(run({"build", "2ngon", "--n", "5", "-o", path}).code == 0);
    for (auto args : std::vector<std::vector<std::string>>{{"invariants", path},
                                                          {"saddles", path, "--bound", "2"},
                                                          {"veech", "symmetries", path},
                                                          {"veech", "parabolic", path, "--dir", "0,1"},
                                                          {"trace-field", path},
                                                          {"homology", "basis", path},
                                                          {"homology", "action", path},
                                                          {"periods", path},
                                                          {"render", path, "--dir", "0,1"}}) {
        auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("veech and homology subcommands")
{
    const auto path = tmp("p5.json");
    REQUIRE(run({"build", "2ngon", "--n", "5", "-o", path}).code == 0);
    auto p = Json::parse(run({"veech", "parabolic", path, "--dir", "0,1"}).out);
    CHECK(p["status"] == "ok");
    CHECK(std::abs(p["matrix"]["double"][1][0].get<double>() + 2 / std::tan(3.14159265358979323846 / 10)) < 1e-12);
    auto g = Json::parse(run({"veech", "generators", "--g", "2"}).out);
    CHECK(g["kinds"]["G1"] == "parabolic");
    CHECK(g["kinds"]["G1*G2^-1"] == "hyperbolic");
    auto tf = Json::parse(run({"trace-field", path}).out);
    CHECK(tf["degree"] == 2);
    CHECK(tf["description"] == "Q(cos(2pi/5))");
    auto cr = Json::parse(run({"cross-ratio-field", path, "--bound", "2"}).out);
    CHECK(cr["degree"].get<int>() >= 1);
    auto sp = Json::parse(run({"homology", "spectra", path}).out);
    bool hyperbolic = false;
    for (const auto& a : sp["actions"]) {
        CHECK(a["symplectic"] == true);
        CHECK(a["spectrum"]["palindromic"] == true);
        if (a["kind"] == "hyperbolic") {
            hyperbolic = true;
            CHECK(a["spectrum"]["leading_simple"] == true);
            CHECK(a["spectrum"]["leading_dominant"] == true);
        }
    }
    CHECK(hyperbolic);
    auto pm = Json::parse(run({"period-matrix", "--g", "2", "--bits", "128"}).out);
    CHECK(pm["symmetric"] == true);
    CHECK(pm["im_positive_definite"] == true);
}

TEST_CASE("SVG rendering")
{
    const auto torus = tmp("t.json");
    REQUIRE(run({"build", "origami", "--right", "0", "--top", "0", "-o", torus}).code == 0);
    auto t = run({"render", torus});
    REQUIRE(t.code == 0);
    CHECK(std::regex_search(t.out, std::regex("<svg[^>]*width=\"840.000\"")));
    std::size_t polys = 0;
    for (auto pos = t.out.find("<polygon"); pos != std::string::npos; pos = t.out.find("<polygon", pos + 1))
        ++polys;
    CHECK(polys == 1);

    const auto s9 = tmp("s9.json");
    REQUIRE(run({"build", "2ngon", "--n", "9", "-o", s9}).code == 0);
    const auto svg = tmp("s9.svg");
    REQUIRE(run({"render", s9, "--dir", "0,1", "--svg", svg}).code == 0);
    const std::string text = slurp(svg);
    std::set<std::string> bands;
    std::regex cls("class=\"(cyl[0-9]+)\"");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), cls); it != std::sregex_iterator(); ++it)
        bands.insert((*it)[1]);
    CHECK(bands.size() == 5);

    const auto d5 = tmp("dd5.json");
    REQUIRE(run({"build", "double-ngon", "--n", "5", "-o", d5}).code == 0);
    auto r = run({"render", d5, "--dir", "0,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("<circle") != std::string::npos);
    CHECK(run({"render", d5, "--svg", "/nonexistent-dir/x.svg"}).code == 1);
}
