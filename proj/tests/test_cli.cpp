#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

using Catch::Matchers::ContainsSubstring;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(BSIG_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) {
    return std::string(BSIG_DATA_DIR) + "/" + name;
}

}

TEST_CASE("analyze reports classification, periods and limits") {
    RunResult r = run("analyze " + data("per518.dsig"));
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("classification: periodic, prime_period: 2"));
    CHECK_THAT(r.out, ContainsSubstring("periods: multiples of 2"));
    CHECK_THAT(r.out, ContainsSubstring("limits: all"));

    RunResult e = run("analyze " + data("exa1.rsig"));
    CHECK(e.code == 0);
    CHECK_THAT(e.out, ContainsSubstring("classification: periodic, prime_period: 5"));
    CHECK_THAT(e.out, ContainsSubstring("window: [-2, 0)"));

    RunResult h = run("analyze " + data("heaviside.rsig"));
    CHECK(h.code == 0);
    CHECK_THAT(h.out, ContainsSubstring("classification: eventually_constant"));
    CHECK_THAT(h.out, ContainsSubstring("limits: from 0"));
}

TEST_CASE("analyze emits machine-readable json on request") {
    RunResult r = run("analyze " + data("per518.dsig") + " --format json");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["domain"] == "discrete");
    CHECK(j["classification"] == "periodic");
    CHECK(j["prime_period"] == "2");
    CHECK(j["points"].size() == 2);
}

TEST_CASE("point reports describe one value of the signal") {
    RunResult r = run("point " + data("per518.dsig") + " --mu 1");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("point 1:"));
    CHECK_THAT(r.out, ContainsSubstring("periodic_point: yes"));
    CHECK_THAT(r.out, ContainsSubstring("instants at prime limit: -1"));

    RunResult c = run("point " + data("ch2.dsig") + " --mu 11");
    CHECK(c.code == 0);
    CHECK_THAT(c.out, ContainsSubstring("periodic_point: no"));
    CHECK_THAT(c.out, ContainsSubstring("prime_period: 2"));
}

TEST_CASE("embed writes the grid image of a discrete signal") {
    RunResult r = run("embed " + data("per518.dsig") + " --t0 0 --h 1");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "rsignal n=1\ninitial: 1\ntransient:\ntail: anchor=-1 period=2 pattern: 0:1 1:0\n");
}

TEST_CASE("sample reads a real signal back onto a grid") {
    RunResult r = run("sample " + data("heaviside.rsig") + " --t0 0 --h 1");
    CHECK(r.code == 0);
    CHECK(r.out == "dsignal n=1\nprefix: 0\ncycle: 1\n");

    RunResult bad = run("sample " + data("ch5s1.rsig") + " --t0 1/2 --h 1");
    CHECK(bad.code == 1);
    CHECK_THAT(bad.out, ContainsSubstring("falls inside a grid cell"));

    RunResult forced = run("sample " + data("ch5s1.rsig") + " --t0 1/2 --h 1 --no-phase-check");
    CHECK(forced.code == 0);
    CHECK_THAT(forced.out, ContainsSubstring("dsignal n=1"));
}

TEST_CASE("perturb applies edit scripts and rejects wrong-domain edits") {
    RunResult r = run("perturb " + data("per518.dsig") + " --script 'set k=0 v=1'");
    CHECK(r.code == 0);
    CHECK(r.out == "dsignal n=1\nprefix: 1 1\ncycle: 1 0\n");

    RunResult shift = run("perturb " + data("ch5s1.rsig") + " --script 'shift-t0 1/2'");
    CHECK(shift.code == 0);
    CHECK_THAT(shift.out, ContainsSubstring("rsignal n=1"));

    RunResult wrong = run("perturb " + data("per518.dsig") + " --script 'set-interval [0,1) v=1'");
    CHECK(wrong.code == 1);
    CHECK_THAT(wrong.out, ContainsSubstring("apply to real signals"));

    RunResult unknown = run("perturb " + data("per518.dsig") + " --script 'zap k=1'");
    CHECK(unknown.code == 2);
    CHECK_THAT(unknown.out, ContainsSubstring("unknown edit 'zap'"));
}

TEST_CASE("flow runs an asynchronous trajectory to its closed form") {
    RunResult r = run("flow " + data("preface.flow"));
    CHECK(r.code == 0);
    CHECK(r.out == "dsignal n=2\nprefix: 00\ncycle: 11 10\n");

    RunResult a = run("flow " + data("preface01.flow") + " --analyze");
    CHECK(a.code == 0);
    CHECK_THAT(a.out, ContainsSubstring("classification: eventually_constant"));
}

TEST_CASE("check cross-validates the engine against literal window checks") {
    RunResult r = run("check " + data("per518.dsig") + " --horizon 40");
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("characterizations agree: yes"));
    CHECK_THAT(r.out, ContainsSubstring("oracle agreement: yes"));

    RunResult e = run("check " + data("ch5s1.rsig") + " --T 2 --T 4 --horizon 30");
    CHECK(e.code == 0);
    CHECK_THAT(e.out, ContainsSubstring("oracle agreement: yes"));

    RunResult j = run("check " + data("the24.dsig") + " --horizon 40 --format json");
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["characterizations_agree"] == true);
    CHECK(parsed["oracle_agreement"] == true);
    CHECK(parsed["rows"].size() > 10);
}

TEST_CASE("usage problems exit with code two") {
    CHECK(run("").code == 2);
    CHECK(run("analyze " + data("missing.dsig")).code == 2);

    RunResult wrong_kind = run("analyze " + data("preface.flow"));
    CHECK(wrong_kind.code == 2);
    CHECK_THAT(wrong_kind.out, ContainsSubstring("is not a dsignal or rsignal file"));

    RunResult bad_mu = run("point " + data("per518.dsig") + " --mu 2");
    CHECK(bad_mu.code == 2);
    CHECK_THAT(bad_mu.out, ContainsSubstring("--mu"));

    RunResult no_horizon = run("check " + data("per518.dsig") + " --p-bound 4");
    CHECK(no_horizon.code == 2);

    RunResult no_T = run("check " + data("ch5s1.rsig") + " --horizon 30");
    CHECK(no_T.code == 2);
    CHECK_THAT(no_T.out, ContainsSubstring("--T is required"));
}

TEST_CASE("domain errors exit with code one") {
    RunResult r = run("embed " + data("per518.dsig") + " --h 0");
    CHECK(r.code == 1);

    RunResult horizon = run("check " + data("per518.dsig") + " --horizon 3");
    CHECK(horizon.code == 1);
    CHECK_THAT(horizon.out, ContainsSubstring("horizon"));
}
