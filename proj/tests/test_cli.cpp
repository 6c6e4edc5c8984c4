#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "../tools/commands.hpp"

using namespace hypgrpd;
using cli::RunConfig;
using cli::run_command;

namespace {

RunConfig make(const std::string& cmd,
               std::initializer_list<std::pair<std::string, std::string>> opts = {}) {
    RunConfig cfg;
    cfg.command = cmd;
    for (auto& [k, v] : opts) cfg.opt[k] = v;
    return cfg;
}

json report_of(const cli::RunResult& r) { return json::parse(r.text); }

// every temp file this suite writes gets a unique name under /tmp
std::string temp_file(const std::string& stem, const std::string& content) {
    std::string path = "/tmp/hypgrpd_cli_" + stem;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path;
}

}  // namespace

TEST_CASE("documented example reports") {
    // the doubling ball of radius 6 is a tree: delta comes out exactly zero
    auto r = run_command(make("delta", {{"preset", "doubling"}, {"radius", "6"}}));
    REQUIRE(r.code == 0);
    auto j = report_of(r);
    CHECK(j["schema"] == "hypgrpd/1");
    CHECK(j["command"] == "delta");
    CHECK(j["four_point_delta"] == 0);
    CHECK(j["inputs"]["preset"] == "doubling");
    CHECK(j.contains("input_hash"));
    CHECK(j.contains("seed"));

    r = run_command(make("dual-sft", {{"prohibited", "12"}}));
    REQUIRE(r.code == 0);
    j = report_of(r);
    CHECK(j["prohibited"] == json::array({"21"}));
    CHECK(j["alphabet"] == json::array({"1", "2"}));

    r = run_command(make("nucleus", {{"preset", "adding-machine"}}));
    REQUIRE(r.code == 0);
    j = report_of(r);
    CHECK(j["contracting"] == true);
    CHECK(j["size"] == 3);
    CHECK(j["elements"] == json::array({"1", "t", "t^-1"}));
}

TEST_CASE("identical configs produce identical bytes") {
    std::vector<RunConfig> runs = {
        make("delta", {{"preset", "doubling"}, {"radius", "5"}}),
        make("thin-delta", {{"preset", "dyadic-affine"}, {"radius", "3"}, {"seed", "7"}}),
        make("criterion", {{"preset", "dyadic-affine"}, {"radius", "6"}}),
        make("nucleus", {{"preset", "basilica"}}),
        make("cayley", {{"preset", "golden-rotation"}, {"radius", "4"}}),
        make("duality-witness", {{"preset", "golden-mean"}, {"horizon", "8"}}),
        make("vershik", {{"preset", "golden"}, {"path", "111"}, {"steps", "5"}}),
        make("tile-lengths", {{"preset", "golden"}}),
    };
    for (auto& cfg : runs) {
        auto a = run_command(cfg);
        auto b = run_command(cfg);
        INFO(cfg.command);
        CHECK(a.code == b.code);
        CHECK(a.text == b.text);
        CHECK_FALSE(a.text.empty());
        CHECK(a.text.back() == '\n');
    }
}

TEST_CASE("violations exit with code 1") {
    // welding these two points creates the prohibited word across the seam
    auto r = run_command(make("splice-check", {{"prohibited", "123"},
                                               {"alphabet", "123"},
                                               {"x", "2(3)|23(1)"},
                                               {"y", "2(1)|2(1)"}}));
    REQUIRE(r.code == 1);
    auto j = report_of(r);
    CHECK(j["error"]["type"] == "violation");

    // the reverse order welds nothing
    r = run_command(make("splice-check", {{"prohibited", "123"},
                                          {"alphabet", "123"},
                                          {"x", "2(1)|2(1)"},
                                          {"y", "2(3)|23(1)"}}));
    CHECK(r.code == 0);

    // a graph whose directed paths separate: the criterion reports it
    CocycleGraph v;
    int levels = 8;
    for (int i = 0; i < levels; ++i) v.g.add_vertex("a" + std::to_string(i));
    for (int i = 0; i < levels; ++i) v.g.add_vertex("b" + std::to_string(i));
    for (int i = 0; i + 1 < levels; ++i) {
        v.g.add_edge(i, i + 1);
        v.g.add_edge(levels + i, levels + i + 1);
    }
    v.g.add_edge(levels - 1, 2 * levels - 1);
    v.lambda.assign(static_cast<size_t>(2 * levels), 0);
    for (int i = 0; i < levels; ++i) {
        v.lambda[static_cast<size_t>(i)] = i;
        v.lambda[static_cast<size_t>(levels + i)] = i;
    }
    v.finish();
    v.truncated[0] = true;
    v.truncated[static_cast<size_t>(levels)] = true;
    auto path = temp_file("diverging.json", dump_json(v.to_json()));
    r = run_command(make("criterion", {{"graph", path}, {"delta1", "1"}, {"m", "2"}}));
    REQUIRE(r.code == 1);
    j = report_of(r);
    CHECK(j["ok"] == false);
    CHECK(j["depth_profile"].size() == 7);
    CHECK(j["depth_profile"][0] == 6);
    CHECK(j.contains("detail"));
    std::remove(path.c_str());
}

TEST_CASE("bad inputs exit with code 2") {
    auto r = run_command(make("no-such-command"));
    REQUIRE(r.code == 2);
    auto j = report_of(r);
    CHECK(j["error"]["type"] == "input");
    CHECK(j["error"]["message"].get<std::string>().find("no-such-command") != std::string::npos);

    CHECK(run_command(make("delta", {{"preset", "doubling"}, {"radius", "abc"}})).code == 2);
    CHECK(run_command(make("delta", {})).code == 2);
    CHECK(run_command(make("fried", {{"preset", "golden-mean"}})).code == 2);
    CHECK(run_command(make("logscale-delta", {{"in", "/tmp/hypgrpd_no_such_file.json"}})).code == 2);
    CHECK(run_command(make("cayley", {{"preset", "mystery"}})).code == 2);
    CHECK(run_command(make("vershik", {{"preset", "golden"}, {"path", "13"}})).code == 2);

    auto broken = temp_file("broken.json", "{ not json");
    CHECK(run_command(make("logscale-delta", {{"in", broken}})).code == 2);
    std::remove(broken.c_str());
}

TEST_CASE("exhausted budgets exit with code 3") {
    auto r = run_command(
        make("substitution", {{"preset", "golden"}, {"tile", "A"}, {"iterations", "40"}, {"budget", "1000"}}));
    REQUIRE(r.code == 3);
    CHECK(report_of(r)["error"]["type"] == "budget");

    r = run_command(make("schreier", {{"preset", "basilica"}, {"level", "30"}}));
    CHECK(r.code == 3);
}

TEST_CASE("dot output for graph commands") {
    for (auto cfg : {make("cayley", {{"preset", "doubling"}, {"radius", "3"}, {"format", "dot"}}),
                     make("schreier", {{"preset", "basilica"}, {"level", "3"}, {"format", "dot"}}),
                     make("gamma-graph", {{"preset", "adding-machine"}, {"max-len", "3"}, {"format", "dot"}}),
                     make("limit-space", {{"preset", "adding-machine"}, {"level", "3"}, {"format", "dot"}})}) {
        auto r = run_command(cfg);
        INFO(cfg.command);
        REQUIRE(r.code == 0);
        CHECK(r.text.rfind("digraph", 0) == 0);
        CHECK(r.text.find("->") != std::string::npos);
        CHECK(r.text.find("label=") != std::string::npos);
        CHECK_THROWS(json::parse(r.text));  // dot, not json
    }
}

TEST_CASE("file inputs feed the content hash") {
    std::string sft = R"({"alphabet": ["0", "1"], "prohibited": ["11"]})";
    auto p1 = temp_file("gm1.json", sft);
    auto r1 = run_command(make("fried", {{"sft", p1}, {"x", "(0)|(0)"}, {"y", "(0)|0(10)"}, {"horizon", "32"}}));
    REQUIRE(r1.code == 0);
    auto j1 = report_of(r1);
    CHECK(j1["scale"] == 1);
    CHECK(j1["saturated"] == false);

    // same parsed content, different bytes: the input hash must move
    auto p2 = temp_file("gm2.json", sft + "\n ");
    auto r2 = run_command(make("fried", {{"sft", p2}, {"x", "(0)|(0)"}, {"y", "(0)|0(10)"}, {"horizon", "32"}}));
    REQUIRE(r2.code == 0);
    auto j2 = report_of(r2);
    CHECK(j2["scale"] == j1["scale"]);
    CHECK(j1["input_hash"] != j2["input_hash"]);
    std::remove(p1.c_str());
    std::remove(p2.c_str());

    // adic diagrams accept an explicit fiber order
    std::string adic = R"({"vertices": ["A", "B"],
                           "edges": [["A","A"],["A","A"],["B","A"],["A","B"],["B","B"]],
                           "fiber_order": {"A": [3, 2, 1]}})";
    auto p3 = temp_file("adic.json", adic);
    auto r3 = run_command(make("vershik", {{"adic", p3}, {"path", "3"}, {"steps", "1"}}));
    REQUIRE(r3.code == 0);
    auto j3 = report_of(r3);
    CHECK(j3["wrapped"] == false);
    CHECK(j3["path"] == json::array({2}));
    std::remove(p3.c_str());
}

TEST_CASE("reports carry horizons and truncation flags") {
    auto r = run_command(make("fried", {{"preset", "golden-mean"}, {"x", "(0)|(0)"}, {"y", "(0)|(0)"}}));
    REQUIRE(r.code == 0);
    auto j = report_of(r);
    CHECK(j["horizon"] == 32);
    CHECK(j["saturated"] == true);

    r = run_command(make("boundary-scale",
                         {{"preset", "doubling"}, {"radius", "4"}, {"ray1", "(0):0"}, {"ray2", "(0):0"}}));
    REQUIRE(r.code == 0);
    j = report_of(r);
    CHECK(j.contains("truncated"));

    r = run_command(make("criterion", {{"preset", "doubling"}, {"radius", "6"}}));
    REQUIRE(r.code == 0);
    j = report_of(r);
    CHECK(j["ok"] == true);
    CHECK(j["horizon"] == 10);
    CHECK(j.contains("rho0"));
    CHECK(j.contains("k_m"));
    CHECK(j.contains("depth_profile"));
}
