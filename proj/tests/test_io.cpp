#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <bsig/io.hpp>

using bsig::DiscreteSignal;
using bsig::ParseError;
using bsig::Point;
using bsig::Rat;
using bsig::RealSignal;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(BSIG_DATA_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}

TEST_CASE("signal files parse and survive a text round trip") {
    for (const char* name : {"per518.dsig", "exa17.dsig", "ch2.dsig", "grid67.dsig",
                             "grid67b.dsig", "the24.dsig", "const.dsig"}) {
        CAPTURE(name);
        std::string text = slurp(name);
        CHECK(bsig::file_kind(text) == "dsignal");
        DiscreteSignal sig = bsig::parse_dsignal(text);
        CHECK(bsig::d_equal(bsig::parse_dsignal(bsig::to_text(sig)), sig));
    }
    for (const char* name : {"heaviside.rsig", "ch5s1.rsig", "ch5s4.rsig", "exa14x.rsig",
                             "exa14y.rsig", "exa15x.rsig", "exa15y.rsig", "exa1.rsig",
                             "ch6s10.rsig", "per520.rsig"}) {
        CAPTURE(name);
        std::string text = slurp(name);
        CHECK(bsig::file_kind(text) == "rsignal");
        RealSignal sig = bsig::parse_rsignal(text);
        CHECK(bsig::r_equal(bsig::parse_rsignal(bsig::to_text(sig)), sig));
    }
    for (const char* name : {"preface.flow", "preface01.flow"}) {
        CAPTURE(name);
        std::string text = slurp(name);
        CHECK(bsig::file_kind(text) == "flow");
        bsig::FlowSpec spec = bsig::parse_flow(text);
        CHECK(spec.phi.width == 2);
        CHECK(spec.init == Point(2, 0));
    }
}

TEST_CASE("parsed fields match the written signal") {
    DiscreteSignal d = bsig::parse_dsignal(slurp("the24.dsig"));
    CHECK(d.width == 1);
    CHECK(d.prefix == std::vector<Point>{Point(1, 0), Point(1, 0)});
    CHECK(d.cycle == std::vector<Point>{Point(1, 0), Point(1, 0), Point(1, 1)});

    RealSignal r = bsig::parse_rsignal(slurp("ch5s1.rsig"));
    CHECK(r.width == 1);
    CHECK(r.initial == Point(1, 1));
    REQUIRE(r.transient.size() == 1);
    CHECK(r.transient[0].first == Rat(0));
    CHECK(r.transient[0].second == Point(1, 0));
    REQUIRE(r.tail.has_value());
    CHECK(r.tail->anchor == Rat(2));
    CHECK(r.tail->period == Rat(2));
    REQUIRE(r.tail->pattern.size() == 2);
    CHECK(r.tail->pattern[1].off == Rat(1));

    CHECK(bsig::to_text(d) == "dsignal n=1\nprefix: 0 0\ncycle: 0 0 1\n");
    CHECK(bsig::to_text(r) ==
          "rsignal n=1\ninitial: 1\ntransient: 0:0\ntail: anchor=2 period=2 pattern: 0:0 1:1\n");
}

TEST_CASE("comments and blank lines are skipped but keep their line numbers") {
    std::string text = "# a square wave\n\ndsignal n=1  # header\ncycle: 1 0\n";
    DiscreteSignal sig = bsig::parse_dsignal(text);
    CHECK(sig.cycle.size() == 2);

    std::string bad = "# comment\ndsignal n=1\n\ncycle: 1 2\n";
    CHECK_THROWS_MATCHES(bsig::parse_dsignal(bad), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("line 4")));
}

TEST_CASE("malformed signal files name the offending line") {
    CHECK_THROWS_MATCHES(bsig::parse_dsignal(""), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("empty input")));
    CHECK_THROWS_MATCHES(
        bsig::parse_dsignal("dsignal m=1\ncycle: 1\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("expected 'dsignal n=<width>'")));
    CHECK_THROWS_MATCHES(bsig::parse_dsignal("dsignal n=65\ncycle: 1\n"), ParseError,
                         Catch::Matchers::MessageMatches(ContainsSubstring("width out of range")));
    CHECK_THROWS_MATCHES(
        bsig::parse_dsignal("dsignal n=1\nprefix: 0\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("nonempty 'cycle:'")));
    CHECK_THROWS_MATCHES(
        bsig::parse_dsignal("dsignal n=2\ncycle: 01 1\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("line 2: value '1' should have 2 bits")));
    CHECK_THROWS_MATCHES(
        bsig::parse_dsignal("dsignal n=1\nloop: 1\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("expected 'prefix:' or 'cycle:'")));

    CHECK_THROWS_MATCHES(
        bsig::parse_rsignal("rsignal n=1\ntransient: 0:1\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("needs an 'initial:'")));
    CHECK_THROWS_MATCHES(
        bsig::parse_rsignal("rsignal n=1\ninitial: 0\ntail: period=2 pattern: 0:1\n"), ParseError,
        Catch::Matchers::MessageMatches(
            ContainsSubstring("line 3: tail needs anchor=, period= and a pattern")));
    CHECK_THROWS_MATCHES(
        bsig::parse_rsignal("rsignal n=1\ninitial: 0\ntail: anchor=0 period=2 junk pattern: 0:1\n"),
        ParseError, Catch::Matchers::MessageMatches(ContainsSubstring("unexpected token 'junk'")));
    CHECK_THROWS_MATCHES(
        bsig::parse_rsignal("rsignal n=1\ninitial: 0\ntransient: 1:1 1:0\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("transient")));
    CHECK_THROWS_MATCHES(
        bsig::parse_rsignal("rsignal n=1\ninitial: 0\ntransient: 0x1\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("expected <time>:<bits>")));

    CHECK_THROWS_MATCHES(
        bsig::parse_dwindow("dwindow n=1\nstart: 0\nvalues: 1 0\nend: 3\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("end does not match")));
    CHECK_THROWS_MATCHES(
        bsig::parse_dwindow("dwindow n=1\nvalues: 1 0\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("needs a 'start:'")));
    CHECK_THROWS_MATCHES(
        bsig::parse_rwindow("rwindow n=1\nstart: 0\nend: 2\npieces: 1:1\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("first piece must start the window")));

    CHECK_THROWS_MATCHES(
        bsig::parse_flow("flow\nalpha: cycle= 1\ninit: 0\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("needs a 'phi:'")));
    CHECK_THROWS_MATCHES(
        bsig::parse_flow("flow\nphi: x1\ninit: 0\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("needs an 'alpha:'")));
    CHECK_THROWS_MATCHES(
        bsig::parse_flow("flow\nphi: x1\nalpha: cycle= 11\ninit: 0\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("alpha width does not match phi")));
    CHECK_THROWS_MATCHES(
        bsig::parse_flow("flow\nphi: x1 ; x2\nalpha: cycle= 11\ninit: 0\n"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("init width does not match phi")));
}

TEST_CASE("a phi file without the flow header is still a flow spec") {
    std::string text = "phi: !x1 ; x1\nalpha: cycle= 11\ninit: 00\n";
    CHECK(bsig::file_kind(text) == "phi");
    bsig::FlowSpec spec = bsig::parse_flow(text);
    CHECK(spec.phi.width == 2);
}

TEST_CASE("edit scripts parse every command form and reject unknown ones") {
    bsig::EditScript s = bsig::parse_edit_script(
        "set k=4 v=1; set-progression k0=1 d=6 v=01\nset-interval [2,7/2) v=1; "
        "set-train a=2 b=3 step=9/2 v=10; shift-t0 -1/2");
    REQUIRE(s.singles.size() == 1);
    CHECK(s.singles[0].k == 4);
    CHECK(s.singles[0].v == Point(1, 1));
    REQUIRE(s.progs.size() == 1);
    CHECK(s.progs[0].k0 == 1);
    CHECK(s.progs[0].d == 6);
    CHECK(s.progs[0].v == Point(2, 1));
    REQUIRE(s.intervals.size() == 1);
    CHECK(s.intervals[0].a == Rat(2));
    CHECK(s.intervals[0].b == Rat(7, 2));
    REQUIRE(s.trains.size() == 1);
    CHECK(s.trains[0].step == Rat(9, 2));
    CHECK(s.trains[0].v == Point(2, 2));
    REQUIRE(s.shifts.size() == 1);
    CHECK(s.shifts[0] == Rat(-1, 2));

    CHECK_THROWS_MATCHES(
        bsig::parse_edit_script("frobnicate k=1"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("unknown edit 'frobnicate'")));
    CHECK_THROWS_MATCHES(
        bsig::parse_edit_script("set k=1"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("wrong number of arguments")));
    CHECK_THROWS_MATCHES(
        bsig::parse_edit_script("set-interval 2,3 v=1"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("expected [<t>,<t>)")));
    CHECK_THROWS_MATCHES(
        bsig::parse_edit_script("set j=1 v=1"), ParseError,
        Catch::Matchers::MessageMatches(ContainsSubstring("expected k=<...>")));

    DiscreteSignal d = bsig::parse_dsignal(slurp("per518.dsig"));
    RealSignal r = bsig::parse_rsignal(slurp("ch5s1.rsig"));
    CHECK_THROWS_AS(bsig::apply_script(d, bsig::parse_edit_script("set-interval [0,1) v=1")),
                    bsig::DomainError);
    CHECK_THROWS_AS(bsig::apply_script(r, bsig::parse_edit_script("set k=1 v=1")),
                    bsig::DomainError);
    CHECK(bsig::d_equal(bsig::apply_script(d, bsig::parse_edit_script("set k=1 v=0")),
                        bsig::d_edit(d, {{1, Point(1, 0)}}, {})));
    CHECK(bsig::r_equal(bsig::apply_script(r, bsig::parse_edit_script("shift-t0 1/2")),
                        bsig::shift_initial_time(r, Rat(1, 2))));
}

TEST_CASE("set renderings spell out their closed forms") {
    CHECK(bsig::render(bsig::PeriodSet::empty()) == "none");
    CHECK(bsig::render(bsig::PeriodSet::all()) == "all");
    CHECK(bsig::render(bsig::PeriodSet::multiples(3ll)) == "multiples of 3");
    CHECK(bsig::render(bsig::PeriodSet::multiples(Rat(7, 2))) == "multiples of 7/2");
    CHECK(bsig::render(bsig::LimitSet::empty()) == "none");
    CHECK(bsig::render(bsig::LimitSet::all()) == "all");
    CHECK(bsig::render(bsig::LimitSet::from(4)) == "from 4");
    CHECK(bsig::render(bsig::LimitSet::from(Rat(-7, 2))) == "from -7/2");
    CHECK(bsig::render(bsig::RInterval{Rat(1), Rat(5, 2)}) == "[1, 5/2)");

    bsig::EvPeriodicIntSet is;
    CHECK(bsig::render(is) == "empty");
    is.exceptional = {1, 3};
    is.anchor = 5;
    is.period = 2;
    is.residues = {0};
    CHECK(bsig::render(is) == "instants 1 3 then from 5 every 2 at 0");

    bsig::EvPeriodicIntervalSet ivs;
    CHECK(bsig::render(ivs) == "empty");
    ivs.all = true;
    CHECK(bsig::render(ivs) == "all times");
    ivs.all = false;
    ivs.initial_ray = Rat(0);
    ivs.transient_intervals = {{Rat(1), Rat(2)}};
    bsig::IntervalTail tl;
    tl.anchor = Rat(3);
    tl.period = Rat(2);
    tl.pattern = {{Rat(3), Rat(4)}};
    ivs.tail = tl;
    CHECK(bsig::render(ivs) == "(-inf, 0) [1, 2) then from 3 every 2: [3, 4)");
}

TEST_CASE("the full text report for a square wave is stable") {
    bsig::DSignalAnalysis an = bsig::analyze_signal_d(bsig::parse_dsignal(slurp("per518.dsig")));
    CHECK(bsig::render_text(an) ==
          "classification: periodic, prime_period: 2\n"
          "periods: multiples of 2\n"
          "limits: all\n"
          "point 0:\n"
          "  support: from -1 every 2 at 1\n"
          "  periods: multiples of 2\n"
          "  limits: all\n"
          "  periodic_point: yes\n"
          "  prime_period: 2\n"
          "  instants at prime limit: 0\n"
          "point 1:\n"
          "  support: from -1 every 2 at 0\n"
          "  periods: multiples of 2\n"
          "  limits: all\n"
          "  periodic_point: yes\n"
          "  prime_period: 2\n"
          "  instants at prime limit: -1\n");
}

TEST_CASE("json reports keep a fixed key order and typed fields") {
    nlohmann::ordered_json j =
        bsig::to_json(bsig::analyze_signal_d(bsig::parse_dsignal(slurp("per518.dsig"))));
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"domain", "classification", "prime_period", "periods",
                                           "limits", "points"});
    CHECK(j["domain"] == "discrete");
    CHECK(j["classification"] == "periodic");
    CHECK(j["prime_period"] == "2");
    REQUIRE(j["points"].size() == 2);
    CHECK(j["points"][0]["value"] == "0");
    CHECK(j["points"][0]["periodic_point"] == true);
    CHECK(j["points"][0]["instants_at_prime_limit"] == nlohmann::ordered_json::array({0}));

    nlohmann::ordered_json jr =
        bsig::to_json(bsig::analyze_signal_r(bsig::parse_rsignal(slurp("exa1.rsig"))));
    CHECK(jr["domain"] == "real");
    CHECK(jr["classification"] == "periodic");
    CHECK(jr["prime_period"] == "5");
    CHECK(jr["window"] == "[-2, 0)");
    CHECK(jr["points"][1]["intervals_at_prime_limit"].is_array());
}
