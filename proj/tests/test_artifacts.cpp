#include <cstdint>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "wigsim/artifacts.hpp"
#include "wigsim/errors.hpp"

#include <json.hpp>

using namespace wigsim;

namespace {

WignerGrid tiny_grid() {
    WignerGrid g;
    g.x = {-1.0, 0.5};
    g.p = {0.0, 2.0};
    g.c = {0.5, -0.25, 0.1, 0.125};
    return g;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / "wigsim_artifacts_test";
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("artifacts") {

TEST_CASE("wigner csv prints the pinned header and shortest exact doubles") {
    std::string csv = wigner_csv(tiny_grid());
    CHECK(csv ==
          "x_over_dx0,p_over_dp0,contrast\n"
          "-1,0,0.5\n"
          "-1,2,-0.25\n"
          "0.5,0,0.10000000000000001\n"
          "0.5,2,0.125\n");
}

TEST_CASE("wigner csv round-trips bit-exactly through a file") {
    TempDir tmp;
    WignerGrid g;
    for (int i = 0; i < 7; ++i) g.x.push_back(-3.0 + i * 0.917);
    for (int i = 0; i < 5; ++i) g.p.push_back(-2.0 + i * 1.111);
    for (size_t i = 0; i < g.x.size() * g.p.size(); ++i)
        g.c.push_back(std::cos(0.37 * static_cast<double>(i) + 0.123) * 0.999);
    std::string csv = wigner_csv(g);
    write_file(tmp.file("w.csv"), csv);

    WignerGrid back = read_wigner_csv(tmp.file("w.csv"));
    REQUIRE(back.x.size() == g.x.size());
    REQUIRE(back.p.size() == g.p.size());
    for (size_t i = 0; i < g.x.size(); ++i) CHECK(back.x[i] == g.x[i]);
    for (size_t i = 0; i < g.p.size(); ++i) CHECK(back.p[i] == g.p[i]);
    for (size_t i = 0; i < g.c.size(); ++i) CHECK(back.c[i] == g.c[i]);
    CHECK(wigner_csv(back) == csv);
}

TEST_CASE("csv reader rejects malformed files") {
    TempDir tmp;
    write_file(tmp.file("h.csv"), "x,p,c\n0,0,1\n");
    CHECK_THROWS_AS(read_wigner_csv(tmp.file("h.csv")), ConfigError);
    write_file(tmp.file("r.csv"), "x_over_dx0,p_over_dp0,contrast\n0,0,1\n0,1,1\n1,0,1\n");
    CHECK_THROWS_AS(read_wigner_csv(tmp.file("r.csv")), ConfigError);
    write_file(tmp.file("n.csv"), "x_over_dx0,p_over_dp0,contrast\n0,zero,1\n");
    CHECK_THROWS_AS(read_wigner_csv(tmp.file("n.csv")), ConfigError);
    write_file(tmp.file("e.csv"), "x_over_dx0,p_over_dp0,contrast\n");
    CHECK_THROWS_AS(read_wigner_csv(tmp.file("e.csv")), ConfigError);
    CHECK_THROWS_AS(read_wigner_csv(tmp.file("missing.csv")), ConfigError);
}

TEST_CASE("table csv joins headers and rejects ragged rows") {
    std::string csv = table_csv({"n", "e"}, {{0.0, 0.5}, {1.0, 1.5}});
    CHECK(csv == "n,e\n0,0.5\n1,1.5\n");
    CHECK_THROWS_AS(table_csv({"n", "e"}, {{1.0}}), ConfigError);
}

TEST_CASE("fnv1a matches the reference vectors") {
    CHECK(fnv1a("") == UINT64_C(0xcbf29ce484222325));
    CHECK(fnv1a("a") == UINT64_C(0xaf63dc4c8601ec8c));
    CHECK(fnv1a("foobar") == UINT64_C(0x85944171f73967e8));
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("pgm encodes big-endian rows with p descending") {
    WignerGrid g = tiny_grid();  // c: (x=-1,p=0)=0.5 (x=-1,p=2)=-0.25 (0.5,0)=0.1 (0.5,2)=0.125
    std::string sidecar;
    std::string pgm = wigner_pgm(g, &sidecar);

    std::string header = "P5\n2 2\n65535\n";
    REQUIRE(pgm.size() == header.size() + 8);
    CHECK(pgm.substr(0, header.size()) == header);
    auto code = [&](int i) {
        size_t off = header.size() + 2 * static_cast<size_t>(i);
        return (static_cast<unsigned>(static_cast<unsigned char>(pgm[off])) << 8) |
               static_cast<unsigned>(static_cast<unsigned char>(pgm[off + 1]));
    };
    // Row 1 is p = 2: values -0.25 (min -> 0) and 0.125; row 2 is p = 0.
    CHECK(code(0) == 0);
    CHECK(code(1) == static_cast<unsigned>(std::lround((0.125 + 0.25) / 0.75 * 65535.0)));
    CHECK(code(2) == 65535);
    CHECK(code(3) == static_cast<unsigned>(std::lround((0.1 + 0.25) / 0.75 * 65535.0)));

    auto j = nlohmann::json::parse(sidecar);
    CHECK(j["min"].get<double>() == -0.25);
    CHECK(j["max"].get<double>() == 0.5);
    CHECK(j["nx"].get<int>() == 2);
    CHECK(j["np"].get<int>() == 2);

    WignerGrid flat = tiny_grid();
    flat.c = {0.7, 0.7, 0.7, 0.7};
    std::string flat_pgm = wigner_pgm(flat, nullptr);
    for (size_t i = header.size(); i < flat_pgm.size(); ++i) CHECK(flat_pgm[i] == '\0');
}

TEST_CASE("run record serializes config order, results and artifacts") {
    RunRecord rec;
    rec.subcommand = "wigner-scan";
    rec.code_version = "abc1234";
    rec.config_echo = {{"trap.model", "lattice"}, {"grid.points", "512"}};
    rec.t_hold = 1.5;
    rec.t_hold_us = 61.0;
    rec.phi0 = -2.25;
    rec.max_leakage = 0.01;
    rec.failures = {"point (3,4): contrast out of range"};
    rec.artifacts = {{"wigner.csv", "85944171f73967e8"}};
    rec.wall_ms = 12.5;

    std::string text = run_record_json(rec);
    auto j = nlohmann::json::parse(text);
    CHECK(j["subcommand"] == "wigner-scan");
    CHECK(j["code_version"] == "abc1234");
    CHECK(j["config"]["trap.model"] == "lattice");
    CHECK(j["config"]["grid.points"] == "512");
    CHECK(j["results"]["t_hold_internal"].get<double>() == 1.5);
    CHECK(j["results"]["phi0_rad"].get<double>() == -2.25);
    CHECK(j["failures"].size() == 1);
    CHECK(j["artifacts"][0]["name"] == "wigner.csv");
    CHECK(j["artifacts"][0]["fnv1a"] == "85944171f73967e8");
    CHECK(text.find("\"trap.model\"") < text.find("\"grid.points\""));

    RunRecord bare;
    bare.subcommand = "spectrum";
    auto jb = nlohmann::json::parse(run_record_json(bare));
    CHECK(jb["results"]["t_hold_internal"].is_null());
    CHECK(jb["failures"].empty());
}

TEST_CASE("verify_artifacts flags corruption and absence") {
    TempDir tmp;
    write_file(tmp.file("a.csv"), "x_over_dx0,p_over_dp0,contrast\n0,0,1\n");
    write_file(tmp.file("b.csv"), "x_over_dx0,p_over_dp0,contrast\n0,0,-1\n");
    RunRecord rec;
    rec.artifacts = {{"a.csv", fnv1a_hex(read_file(tmp.file("a.csv")))},
                     {"b.csv", fnv1a_hex(read_file(tmp.file("b.csv")))}};
    CHECK(verify_artifacts(rec, tmp.path.string()).empty());

    write_file(tmp.file("b.csv"), "x_over_dx0,p_over_dp0,contrast\n0,0,-0.5\n");
    auto bad = verify_artifacts(rec, tmp.path.string());
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("b.csv") != std::string::npos);

    std::filesystem::remove(tmp.file("a.csv"));
    bad = verify_artifacts(rec, tmp.path.string());
    REQUIRE(bad.size() == 2);
    CHECK(bad[0].find("missing") != std::string::npos);
}

}  // TEST_SUITE
