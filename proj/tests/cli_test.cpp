// End-to-end checks of the command-line tool against the bundled fixtures.
#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "icbound/rational.hpp"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ICBOUND_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string fixture(const std::string& name) {
    return std::string(ICBOUND_DATA) + "/" + name;
}

}  // namespace

TEST_CASE("minrank subcommand") {
    RunResult r = run("minrank --field 2 " + fixture("fano.json") + " --distribution");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["value"] == 4);
    CHECK(j["distribution"]["4"] == 1);
    CHECK(j["distribution"]["5"] == 238);
    CHECK(j["distribution"]["6"] == 6575);
    CHECK(j["distribution"]["7"] == 9570);

    RunResult e = run("minrank --field 2 " + fixture("empty.json"));
    auto je = nlohmann::json::parse(e.out);
    CHECK(je["value"] == 3);
}

TEST_CASE("bounds subcommand") {
    RunResult r = run("bounds " + fixture("fig4.json") + " --params phi_p,phi_p_f");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["phi_p"] == "3");
    CHECK(j["phi_p_f"] == "5/2");

    RunResult all = run("bounds " + fixture("remark_comp1.json") + " --all");
    auto ja = nlohmann::json::parse(all.out);
    CHECK(ja["phi_p"] == "2");
    CHECK(ja["phi_p_l"] == "3");
    CHECK(ja["phi"] == "3");

    // rationals round-trip through the JSON strings
    CHECK(icbound::rat_to_string(icbound::rat_from_string("5/2")) == "5/2");
}

TEST_CASE("kappa subcommand") {
    RunResult r = run("kappa " + fixture("remark_comp.json"));
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.out)["value"] == 1);
}

TEST_CASE("design subcommands") {
    RunResult plane = run("design --plane 2");
    REQUIRE(plane.exit_code == 0);
    auto j = nlohmann::json::parse(plane.out);
    CHECK(j["v"] == 7);
    CHECK(j["blocks"].size() == 7);

    RunResult db = run("design-bound " + fixture("fano.json") + " " +
                       fixture("fano_plane.json") + " --p 2");
    REQUIRE(db.exit_code == 0);
    auto jb = nlohmann::json::parse(db.out);
    CHECK(jb["bound"] == 4);
    CHECK(jb["coincides"] == true);

    RunResult sec = run("secrecy " + fixture("fano.json") + " --p 2");
    CHECK(nlohmann::json::parse(sec.out)["pass"] == true);

    RunResult adv = run("adversary " + fixture("fano.json") + " --xa 1 --p 2");
    CHECK(nlohmann::json::parse(adv.out)["safe"] == true);
}

TEST_CASE("simulate subcommand is seeded and reproducible") {
    std::string args = "simulate " + fixture("fig4.json") +
                       " --scheme multicast --fractional --trials 25 --seed 99";
    RunResult a = run(args), b = run(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);  // byte identical
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["failures"] == 0);
    CHECK(j["rate"] == "5/2");
    CHECK(j["value"] == "5/2");
}

TEST_CASE("bounds output is byte-identical across runs") {
    std::string args = "bounds " + fixture("gf4_remark.json") + " --params phi,phi_l";
    RunResult a = run(args), b = run(args);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["phi_l"] == "2");
}

TEST_CASE("reduce subcommand") {
    RunResult r = run("reduce " + fixture("fig4.json") + " --field 5");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["minrank_is_n_minus_1"] == false);
    CHECK(j["certificate_rank"] == 2);
}

TEST_CASE("table rendering") {
    RunResult r = run("bounds " + fixture("remark_comp.json") +
                      " --params phi,phi_p --format table");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("parameter") != std::string::npos);
    CHECK(r.out.find("phi") != std::string::npos);
    // smaller bounds print first (Fig-5 order): phi precedes phi_p
    CHECK(r.out.find("phi") < r.out.find("phi_p"));
}

TEST_CASE("exit codes") {
    CHECK(run("nonsense-subcommand").exit_code == 2);
    CHECK(run("minrank").exit_code == 2);                       // missing input
    CHECK(run("minrank /no/such/file.json").exit_code == 1);    // computational error
    CHECK(run("minrank --field 4 " + fixture("fano.json")).exit_code == 1);  // 4 not prime
}
