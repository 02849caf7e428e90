#include <catch2/catch_amalgamated.hpp>

#include <bsig/analysis.hpp>

using bsig::Classification;
using bsig::DiscreteSignal;
using bsig::LimitSet;
using bsig::PeriodSet;
using bsig::Point;

namespace {

Point p1(int b) { return Point(1, (uint64_t)b); }

DiscreteSignal lasso(std::vector<int> prefix, std::vector<int> cycle) {
    std::vector<Point> pre, cyc;
    for (int b : prefix) pre.push_back(p1(b));
    for (int b : cycle) cyc.push_back(p1(b));
    return bsig::make_dsignal(1, pre, cyc);
}

DiscreteSignal lasso2(std::vector<const char*> prefix, std::vector<const char*> cycle) {
    std::vector<Point> pre, cyc;
    for (auto s : prefix) pre.push_back(bsig::parse_point(s));
    for (auto s : cycle) cyc.push_back(bsig::parse_point(s));
    return bsig::make_dsignal(2, pre, cyc);
}

}

TEST_CASE("alternating signal is periodic with prime period two") {
    DiscreteSignal s = lasso({}, {1, 0});
    auto a = bsig::analyze_signal_d(s);
    CHECK(a.classification == Classification::periodic);
    CHECK(a.periods == PeriodSet::multiples(2ll));
    CHECK(a.limits == LimitSet::all());
    auto& pa = a.per_point.at(p1(1));
    CHECK(pa.periods == PeriodSet::multiples(2ll));
    CHECK(pa.limits == LimitSet::all());
    CHECK(pa.prime_period == 2);
    CHECK(pa.is_periodic_point);
    CHECK(pa.instants == std::vector<long long>{-1});
}

TEST_CASE("a signal that settles has prime period one and a limit") {
    DiscreteSignal s = lasso({0}, {1});
    auto a = bsig::analyze_signal_d(s);
    CHECK(a.classification == Classification::eventually_constant);
    CHECK(a.periods == PeriodSet::multiples(1ll));
    CHECK(a.limits == LimitSet::from(0ll));

    auto& one = a.per_point.at(p1(1));
    CHECK(one.periods == PeriodSet::multiples(1ll));
    CHECK(one.limits == LimitSet::from(0ll));
    CHECK_FALSE(one.is_periodic_point);

    auto& zero = a.per_point.at(p1(0));
    CHECK(zero.periods == PeriodSet::empty());
    CHECK(zero.limits == LimitSet::empty());
    CHECK_FALSE(zero.prime_period.has_value());
}

TEST_CASE("transient then alternating pairs") {
    DiscreteSignal s = lasso2({"00", "00"}, {"11", "00"});
    auto a = bsig::analyze_signal_d(s);
    CHECK(a.classification == Classification::eventually_periodic);
    CHECK(a.periods == PeriodSet::multiples(2ll));
    CHECK(a.limits == LimitSet::from(0ll));
    auto& ones = a.per_point.at(bsig::parse_point("11"));
    CHECK(ones.periods == PeriodSet::multiples(2ll));
    CHECK(ones.limits == LimitSet::from(0ll));
    CHECK(ones.prime_period == 2);
    CHECK_FALSE(ones.is_periodic_point);
}

TEST_CASE("sparse recurring value keeps its own limit") {
    DiscreteSignal s = lasso({0, 0}, {0, 0, 1});
    auto a = bsig::analyze_point_d(s, p1(1));
    CHECK(a.periods == PeriodSet::multiples(3ll));
    CHECK(a.limits == LimitSet::from(1ll));
    CHECK(a.prime_period == 3);
    CHECK(a.instants == std::vector<long long>{3});
    CHECK_FALSE(a.is_periodic_point);

    auto z = bsig::analyze_point_d(s, p1(0));
    CHECK(z.periods == PeriodSet::multiples(3ll));
    CHECK(z.limits == LimitSet::from(1ll));
    CHECK(z.prime_period == 3);

    auto sig = bsig::analyze_signal_d(s);
    CHECK(sig.periods == PeriodSet::multiples(3ll));
    CHECK(sig.limits == LimitSet::from(1ll));
}

TEST_CASE("querying a value outside the orbit is rejected") {
    DiscreteSignal s = lasso({}, {0});
    CHECK_THROWS_AS(bsig::analyze_point_d(s, p1(1)), bsig::NotInOrbit);
    auto a = bsig::analyze_signal_d(s);
    CHECK(a.classification == Classification::constant);
    CHECK(a.periods == PeriodSet::multiples(1ll));
    CHECK(a.limits == LimitSet::all());
}

TEST_CASE("constancy classification") {
    CHECK(bsig::classify_constancy(lasso({}, {0})) == bsig::ConstancyClass::constant);
    CHECK(bsig::classify_constancy(lasso({0}, {1})) ==
          bsig::ConstancyClass::eventually_constant);
    CHECK(bsig::classify_constancy(lasso({}, {1, 0})) == bsig::ConstancyClass::neither);
}

TEST_CASE("support decomposition round-trips through recomposition") {
    DiscreteSignal s = lasso({0, 0}, {0, 0, 1});
    auto a = bsig::analyze_point_d(s, p1(1));
    auto d = bsig::decompose_support(a);
    CHECK(d.anchor == 1);
    CHECK(d.period == 3);
    CHECK(d.instants == std::vector<long long>{3});
    auto back = bsig::recompose_support(d);
    for (long long k = -1; k < 30; ++k)
        CHECK(back.member(k) == a.support.member(k));

    auto shifted = bsig::decompose_support(a, 5ll);
    CHECK(shifted.anchor == 5);
    CHECK(shifted.instants == std::vector<long long>{6});

    CHECK_THROWS_AS(bsig::decompose_support(a, 0ll), bsig::WindowError);
    auto empty = bsig::analyze_point_d(lasso({1}, {0}), p1(1));
    CHECK_THROWS_AS(bsig::decompose_support(empty), bsig::NotEventuallyPeriodic);
}

TEST_CASE("windows past the limit always meet an eventually periodic support") {
    DiscreteSignal s = lasso({0, 0}, {0, 0, 1});
    auto a = bsig::analyze_point_d(s, p1(1));
    for (long long start : {1ll, 2ll, 3ll, 7ll, 20ll})
        CHECK(bsig::accessibility_check(a, start));
    CHECK_THROWS_AS(bsig::accessibility_check(a, 0ll), bsig::WindowError);

    auto sig = bsig::analyze_signal_d(s);
    CHECK(bsig::accessibility_check(sig, 1ll));
    CHECK_THROWS_AS(bsig::accessibility_check(sig, 0ll), bsig::WindowError);
}

TEST_CASE("point primes compose into the signal prime") {
    DiscreteSignal s = lasso2({}, {"01", "00", "10", "00"});
    auto r = bsig::hypothesis_p_report(s);
    CHECK(r.signal_prime == PeriodSet::multiples(4ll));
    CHECK(r.point_primes.at(bsig::parse_point("01")) == PeriodSet::multiples(4ll));
    CHECK(r.point_primes.at(bsig::parse_point("10")) == PeriodSet::multiples(4ll));
    CHECK(r.point_primes.at(bsig::parse_point("00")) == PeriodSet::multiples(2ll));
    CHECK(r.lcm_relation_holds);

    CHECK(bsig::hypothesis_p_report(lasso({0, 0}, {0, 0, 1})).lcm_relation_holds);
    CHECK(bsig::hypothesis_p_report(lasso({}, {0})).lcm_relation_holds);
}
