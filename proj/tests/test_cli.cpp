#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "prime_moduli/cli.hpp"
#include "prime_moduli/element_io.hpp"

#include "fixtures.hpp"
#include "ring_fixtures.hpp"

using namespace prime_moduli;

namespace {

struct CliResult {
    int exit_code;
    std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("exit-code contract: 0 success, 1 invalid input, 2 cap exhaustion") {
    CHECK(run_cli({"graphs", "--g", "2", "--n", "0", "--no-redundant"}).exit_code == 0);
    CHECK(run_cli({"graphs", "--g", "0", "--n", "0"}).exit_code == 1);
    CHECK(run_cli({"colimit", "--g", "1", "--n", "0"}).exit_code == 1);
    CHECK(run_cli({"graphs", "--g", "3", "--n", "2", "--iso-cap", "5"}).exit_code == 2);
    CHECK(run_cli({"conf", "--d", "3", "--variant", "bogus"}).exit_code == 1);
    CHECK(run_cli({"invariants", "--graph", "theta", "--group", "huh"}).exit_code == 1);
}

TEST_CASE("identical invocations produce byte-identical output") {
    std::vector<std::vector<std::string>> invocations = {
        {"graphs", "--g", "2", "--n", "0", "--json"},
        {"colimit", "--g", "2", "--n", "0", "--max-degree", "12", "--format", "json"},
        {"hgamma", "--graph", "rose2", "--betti", "8", "--json"},
        {"invariants", "--graph", "theta", "--group", "c2xc2", "--max-degree", "9", "--json"},
        {"betti", "--conf", "4", "--variant", "so4", "--max-degree", "12", "--json"},
    };
    for (const auto& args : invocations) {
        CliResult a = run_cli(args);
        CliResult b = run_cli(args);
        REQUIRE(a.exit_code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("colimit JSON carries the documented schema") {
    CliResult r = run_cli({"colimit", "--g", "2", "--n", "0", "--max-degree", "16", "--json"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.contains("betti"));
    REQUIRE(j.contains("lim1_zero"));
    REQUIRE(j.contains("pi_star_iso"));
    REQUIRE(j.contains("relations_checked"));
    CHECK(j["lim1_zero"].get<bool>());
    CHECK(j["pi_star_iso"].get<bool>());
    CHECK(j["betti"]["0"].get<long>() == 1);
    CHECK(j["betti"]["4"].get<long>() == 2);
    CHECK(j["betti"]["8"].get<long>() == 3);
    for (const auto& rel : j["relations_checked"])
        CHECK(rel["holds"].get<bool>());
}

TEST_CASE("genus-3 colimit is flagged as an E2 page only") {
    CliResult r = run_cli({"colimit", "--g", "3", "--n", "0", "--max-degree", "2", "--json"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j.contains("e2"));
    CHECK(j["higher_differentials"].get<std::string>() == "not computed");
    CHECK(j["e2"]["0"]["0"].get<long>() == 1);
}

TEST_CASE("betti subcommand serves both configuration and graph rings") {
    CliResult conf = run_cli({"betti", "--conf", "3", "--variant", "so4", "--max-degree", "12"});
    REQUIRE(conf.exit_code == 0);
    /* 1,0,1,0,... at even degrees */
    CHECK(conf.out.find("0 1") != std::string::npos);
    CHECK(conf.out.find("2 1") != std::string::npos);
    CliResult graph = run_cli({"betti", "--graph", "theta", "--max-degree", "8", "--json"});
    REQUIRE(graph.exit_code == 0);
    json j = json::parse(graph.out);
    CHECK(j["betti"]["0"].get<long>() == 1);
    CHECK(j["betti"]["2"].get<long>() == 2);
    CHECK(run_cli({"betti", "--conf", "3", "--graph", "theta"}).exit_code == 1);
}

TEST_CASE("hgamma JSON serialises provenance and delta") {
    CliResult r = run_cli({"hgamma", "--graph", "theta", "--betti", "8", "--json"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["presentation"]["even_gens"].size() == 2);
    CHECK(j["presentation"]["even_gens"][0]["triple"].size() == 3);
    REQUIRE(j["presentation"]["odd_gens"].size() == 2);
    CHECK(j["presentation"]["odd_gens"][0]["cycle"].size() == 2);
    CHECK(j["presentation"].contains("delta"));
    /* round-trip the delta element through the documented encoding */
    auto ring = build_ring(builtin_theta());
    RingElement delta = element_from_json(ring.pres, j["presentation"]["delta"]);
    CHECK(delta == ring.delta());
}

TEST_CASE("element text encoding round-trips") {
    auto ring = build_ring(builtin_rose2());
    RingElement e = pm_ring_fixtures::nu2(ring).plus(
        pm_ring_fixtures::alpha1(ring).scaled(Rat(-7, 3)));
    auto j = element_to_json(e);
    RingElement back = element_from_json(ring.pres, j);
    CHECK(back == e);
    CHECK_THROWS_AS(element_from_json(ring.pres, {{"nope^2", "1"}}), invalid_input);
    CHECK_THROWS_AS(element_from_json(ring.pres, {{"b1^2", "1"}}), invalid_input);
}

TEST_CASE("verify suite passes and the fault hook flips one anchor") {
    CliResult ok = run_cli({"verify", "--max-degree", "8"});
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("FAIL") == std::string::npos);
    CliResult bad =
        run_cli({"verify", "--max-degree", "8", "--inject-fault", "u2-betti-table"});
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("FAIL u2-betti-table") != std::string::npos);
}

TEST_CASE("factor file drives the n > 0 colimit") {
    std::string path = "/tmp/pm_factors_test.json";
    {
        std::ofstream f(path);
        f << R"({"1": {"0": 1, "3": 1}, "2": {"0": 1}})";
    }
    CliResult r = run_cli({"colimit", "--g", "0", "--n", "2", "--max-degree", "6", "--factors",
                           path, "--json"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    /* Lambda(b1) x (1 + t^3): ranks 1,0,0,2,0,0,1 */
    CHECK(j["e2"]["0"]["0"].get<long>() == 1);
    CHECK(j["e2"]["0"]["3"].get<long>() == 2);
    CHECK(j["e2"]["0"]["6"].get<long>() == 1);
}
