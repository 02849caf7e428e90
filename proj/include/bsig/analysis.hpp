#pragma once

#include <map>
#include <numeric>
#include <optional>

#include "dsignal.hpp"
#include "rsignal.hpp"

namespace bsig {

// Set of valid periods of a point or signal.
struct PeriodSet {
    enum Kind { empty_set, all_positive, multiples_int, multiples_rat } kind = empty_set;
    long long p = 0;  // multiples_int: {p, 2p, 3p, ...}
    Rat T;            // multiples_rat: {T, 2T, 3T, ...}

    static PeriodSet empty() { return {}; }
    static PeriodSet all() { return {all_positive, 0, Rat(0)}; }
    static PeriodSet multiples(long long prime) { return {multiples_int, prime, Rat(0)}; }
    static PeriodSet multiples(const Rat& prime) { return {multiples_rat, 0, prime}; }

    bool contains(long long q) const {
        if (q < 1) return false;
        switch (kind) {
            case empty_set: return false;
            case all_positive: return true;
            case multiples_int: return q % p == 0;
            case multiples_rat: {
                Rat r = Rat(q) / T;
                return r.den == 1 && r.num >= 1;
            }
        }
        return false;
    }
    bool contains(const Rat& q) const {
        if (!(Rat(0) < q)) return false;
        switch (kind) {
            case empty_set: return false;
            case all_positive: return true;
            case multiples_int: return q.den == 1 && q.num % p == 0;
            case multiples_rat: {
                Rat r = q / T;
                return r.den == 1 && r.num >= 1;
            }
        }
        return false;
    }
    bool operator==(const PeriodSet& o) const {
        if (kind != o.kind) return false;
        if (kind == multiples_int) return p == o.p;
        if (kind == multiples_rat) return T == o.T;
        return true;
    }
};

// Set of valid limits of periodicity.
struct LimitSet {
    enum Kind { empty_set, from_int, from_rat, all_times } kind = empty_set;
    long long k = 0;  // from_int: {k, k+1, ...}
    Rat t;            // from_rat: [t, oo)

    static LimitSet empty() { return {}; }
    static LimitSet all() { return {all_times, 0, Rat(0)}; }
    static LimitSet from(long long k0) {
        if (k0 <= -1) return all();
        return {from_int, k0, Rat(0)};
    }
    static LimitSet from(const Rat& t0) { return {from_rat, 0, t0}; }

    bool contains(long long q) const {
        switch (kind) {
            case empty_set: return false;
            case all_times: return q >= -1;
            case from_int: return q >= k;
            case from_rat: return !(Rat(q) < t);
        }
        return false;
    }
    bool contains(const Rat& q) const {
        switch (kind) {
            case empty_set: return false;
            case all_times: return true;
            case from_int: return !(q < Rat(k));
            case from_rat: return !(q < t);
        }
        return false;
    }
    bool operator==(const LimitSet& o) const {
        if (kind != o.kind) return false;
        if (kind == from_int) return k == o.k;
        if (kind == from_rat) return t == o.t;
        return true;
    }
};

enum class Classification { constant, eventually_constant, periodic, eventually_periodic };

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::constant: return "constant";
        case Classification::eventually_constant: return "eventually_constant";
        case Classification::periodic: return "periodic";
        case Classification::eventually_periodic: return "eventually_periodic";
    }
    return "";
}

struct DPointAnalysis {
    Point mu;
    EvPeriodicIntSet support;
    PeriodSet periods;
    LimitSet limits;
    std::optional<long long> prime_period;
    bool is_periodic_point = false;
    std::vector<long long> instants;  // support within [limit, limit + prime)
};

struct RPointAnalysis {
    Point mu;
    EvPeriodicIntervalSet support;
    PeriodSet periods;
    LimitSet limits;
    std::optional<Rat> prime_period;
    bool is_periodic_point = false;
    std::vector<RInterval> intervals;  // support within [limit, limit + prime)
};

struct DSignalAnalysis {
    Classification classification = Classification::constant;
    PeriodSet periods;
    LimitSet limits;
    std::map<Point, DPointAnalysis> per_point;
};

struct RSignalAnalysis {
    Classification classification = Classification::constant;
    PeriodSet periods;
    LimitSet limits;
    std::optional<RInterval> window;  // admissible initial-time limits, when periodic
    std::map<Point, RPointAnalysis> per_point;
};

inline DPointAnalysis analyze_point_d(const DiscreteSignal& raw, const Point& mu) {
    DiscreteSignal sig = d_canonicalize(raw);
    if (mu.width != sig.width)
        throw WidthError("point width " + std::to_string(mu.width) +
                         " does not match signal width " + std::to_string(sig.width));
    DPointAnalysis a;
    a.mu = mu;
    a.support = d_support_set(sig, mu);
    bool in_orbit = !a.support.residues.empty() || !a.support.exceptional.empty();
    if (!in_orbit)
        throw NotInOrbit("value " + to_string(mu) + " never occurs in the signal");
    if (a.support.residues.empty()) {
        a.periods = PeriodSet::empty();
        a.limits = LimitSet::empty();
        return a;
    }

    long long L = (long long)sig.cycle.size();
    long long A = sig.anchor();
    std::vector<char> res(L, 0);
    for (long long r : a.support.residues) res[r] = 1;
    long long prime = L;
    for (long long d = 1; d < L; ++d) {
        if (L % d != 0) continue;
        bool inv = true;
        for (long long i = 0; i < L && inv; ++i)
            inv = res[i] == res[(i + d) % L];
        if (inv) { prime = d; break; }
    }

    // Backward scan into the prefix: the least limit does not depend on which
    // period is used, so the prime-period extension decides it.
    auto ext_has = [&](long long k) {
        long long r = (k - A) % prime;
        if (r < 0) r += prime;
        return res[r] != 0;
    };
    long long kp = -1;
    for (long long k = A - 1; k >= -1; --k) {
        bool actual = sig.prefix[k + 1] == mu;
        if (actual != ext_has(k)) { kp = k + 1; break; }
    }

    a.periods = PeriodSet::multiples(prime);
    a.prime_period = prime;
    a.limits = LimitSet::from(kp);
    a.is_periodic_point = kp <= -1;
    for (long long k = kp; k < kp + prime; ++k)
        if (d_value_at(sig, k) == mu) a.instants.push_back(k);
    return a;
}

namespace detail {

// Width-1 indicator signal of "x(t) == mu".
inline RealSignal indicator(const RealSignal& sig, const Point& mu) {
    auto bit = [&](const Point& v) { return Point(1, v == mu ? 1 : 0); };
    std::vector<std::pair<Rat, Point>> transient;
    for (const auto& [time, val] : sig.transient) transient.push_back({time, bit(val)});
    std::optional<Tail> tail;
    if (sig.tail) {
        Tail t;
        t.anchor = sig.tail->anchor;
        t.period = sig.tail->period;
        for (const TailSeg& seg : sig.tail->pattern) t.pattern.push_back({seg.off, bit(seg.value)});
        tail = std::move(t);
    }
    return make_rsignal(1, bit(sig.initial), std::move(transient), std::move(tail));
}

}

inline RPointAnalysis analyze_point_r(const RealSignal& raw, const Point& mu) {
    RealSignal sig = r_canonicalize(raw);
    if (mu.width != sig.width)
        throw WidthError("point width " + std::to_string(mu.width) +
                         " does not match signal width " + std::to_string(sig.width));
    RPointAnalysis a;
    a.mu = mu;
    a.support = r_support_set(sig, mu);
    if (a.support.empty_set())
        throw NotInOrbit("value " + to_string(mu) + " never occurs in the signal");

    auto first = r_first_change(sig);
    if (!first) {
        // Constant signal; mu is its value.
        a.periods = PeriodSet::all();
        a.limits = LimitSet::all();
        a.is_periodic_point = true;
        return a;
    }
    Rat t0 = *first;

    RealSignal ind = detail::indicator(sig, mu);
    if (!ind.tail) {
        Point final_ind = ind.transient.empty() ? ind.initial : ind.transient.back().second;
        if (final_ind.bits == 0) {
            // mu occurs, but not recurrently.
            a.periods = PeriodSet::empty();
            a.limits = LimitSet::empty();
            return a;
        }
        // Eventually constant at mu: every positive period works, and the
        // least limit is the time the signal settles, whatever the period.
        a.periods = PeriodSet::all();
        a.limits = ind.transient.empty() ? LimitSet::all()
                                         : LimitSet::from(ind.transient.back().first);
        a.is_periodic_point = ind.transient.empty();
        if (!ind.transient.empty()) {
            Rat tf = ind.transient.back().first;
            a.intervals.push_back({tf, tf + Rat(1)});
        }
        return a;
    }

    Rat prime = ind.tail->period;
    Rat limit = detail::mismatch_sup(ind);
    a.prime_period = prime;
    a.periods = PeriodSet::multiples(prime);
    a.limits = LimitSet::from(limit);
    a.is_periodic_point = limit < t0;
    a.intervals = detail::value_runs_on(ind, Point(1, 1), limit, limit + prime);
    return a;
}

inline DSignalAnalysis analyze_signal_d(const DiscreteSignal& raw) {
    DiscreteSignal sig = d_canonicalize(raw);
    DSignalAnalysis a;
    long long L = (long long)sig.cycle.size();
    long long kp = sig.prefix.empty() ? -1 : sig.anchor();
    a.periods = PeriodSet::multiples(L);
    a.limits = LimitSet::from(kp);
    if (L == 1)
        a.classification = sig.prefix.empty() ? Classification::constant
                                              : Classification::eventually_constant;
    else
        a.classification = sig.prefix.empty() ? Classification::periodic
                                              : Classification::eventually_periodic;
    DSummary s = d_summarize(sig);
    for (const Point& mu : s.orbit) a.per_point.emplace(mu, analyze_point_d(sig, mu));
    return a;
}

inline RSignalAnalysis analyze_signal_r(const RealSignal& raw) {
    RealSignal sig = r_canonicalize(raw);
    RSignalAnalysis a;
    auto first = r_first_change(sig);
    if (!first) {
        a.classification = Classification::constant;
        a.periods = PeriodSet::all();
        a.limits = LimitSet::all();
        a.per_point.emplace(sig.initial, analyze_point_r(sig, sig.initial));
        return a;
    }
    Rat t0 = *first;
    if (!sig.tail) {
        a.classification = Classification::eventually_constant;
        a.periods = PeriodSet::all();
        a.limits = LimitSet::from(sig.transient.back().first);
    } else {
        Rat prime = sig.tail->period;
        Rat limit = detail::mismatch_sup(sig);
        a.periods = PeriodSet::multiples(prime);
        a.limits = LimitSet::from(limit);
        if (limit < t0) {
            a.classification = Classification::periodic;
            a.window = RInterval{limit, t0};
        } else {
            a.classification = Classification::eventually_periodic;
        }
    }
    RSummary s = r_summarize(sig);
    for (const Point& mu : s.orbit) a.per_point.emplace(mu, analyze_point_r(sig, mu));
    return a;
}

enum class ConstancyClass { constant, eventually_constant, neither };

inline const char* to_string(ConstancyClass c) {
    switch (c) {
        case ConstancyClass::constant: return "constant";
        case ConstancyClass::eventually_constant: return "eventually_constant";
        case ConstancyClass::neither: return "neither";
    }
    return "";
}

inline ConstancyClass classify_constancy(const DiscreteSignal& sig) {
    DSummary s = d_summarize(sig);
    if (s.orbit.size() == 1) return ConstancyClass::constant;
    if (s.omega.size() == 1) return ConstancyClass::eventually_constant;
    return ConstancyClass::neither;
}

inline ConstancyClass classify_constancy(const RealSignal& sig) {
    RSummary s = r_summarize(sig);
    if (s.orbit.size() == 1) return ConstancyClass::constant;
    if (s.omega.size() == 1) return ConstancyClass::eventually_constant;
    return ConstancyClass::neither;
}

inline std::optional<RInterval> periodicity_window_point(const RealSignal& raw, const Point& mu) {
    RealSignal sig = r_canonicalize(raw);
    auto first = r_first_change(sig);
    if (!first)
        throw ConstantSignal("periodicity window undefined: every initial time is admissible");
    RPointAnalysis a = analyze_point_r(sig, mu);
    if (!a.is_periodic_point) return std::nullopt;
    Rat limit = a.limits.kind == LimitSet::from_rat ? a.limits.t : Rat(0);
    if (a.limits.kind == LimitSet::all_times) return std::nullopt;
    return RInterval{limit, *first};
}

struct DSupportDecomposition {
    long long anchor = 0;
    long long period = 1;
    std::vector<long long> instants;  // within [anchor, anchor + period)
};

struct RSupportDecomposition {
    Rat anchor;
    Rat period;
    std::vector<RInterval> intervals;  // within [anchor, anchor + period)
};

inline DSupportDecomposition decompose_support(const DPointAnalysis& a,
                                               std::optional<long long> anchor = std::nullopt) {
    if (a.periods.kind == PeriodSet::empty_set)
        throw NotEventuallyPeriodic("the point has no periods; nothing to decompose");
    DSupportDecomposition d;
    long long limit = a.limits.kind == LimitSet::from_int ? a.limits.k : -1;
    d.anchor = anchor.value_or(limit);
    if (!a.limits.contains(d.anchor))
        throw WindowError("decomposition anchor " + std::to_string(d.anchor) +
                          " lies before the limit of periodicity");
    d.period = a.prime_period.value_or(1);
    for (long long k = d.anchor; k < d.anchor + d.period; ++k)
        if (a.support.member(k)) d.instants.push_back(k);
    return d;
}

inline EvPeriodicIntSet recompose_support(const DSupportDecomposition& d) {
    EvPeriodicIntSet s;
    s.anchor = d.anchor;
    s.period = d.period;
    for (long long k : d.instants) {
        if (k < d.anchor || k >= d.anchor + d.period)
            throw DomainError("decomposition instant outside its window");
        s.residues.push_back(k - d.anchor);
    }
    std::sort(s.residues.begin(), s.residues.end());
    s.residues.erase(std::unique(s.residues.begin(), s.residues.end()), s.residues.end());
    return s;
}

inline RSupportDecomposition decompose_support(const RPointAnalysis& a,
                                               std::optional<Rat> anchor = std::nullopt) {
    if (a.periods.kind == PeriodSet::empty_set)
        throw NotEventuallyPeriodic("the point has no periods; nothing to decompose");
    RSupportDecomposition d;
    Rat limit = a.limits.kind == LimitSet::from_rat ? a.limits.t : Rat(0);
    d.anchor = anchor.value_or(limit);
    if (!a.limits.contains(d.anchor))
        throw WindowError("decomposition anchor " + to_string(d.anchor) +
                          " lies before the limit of periodicity");
    d.period = a.prime_period.value_or(Rat(1));
    Rat end = d.anchor + d.period;
    // Clip the support to [anchor, anchor + period) by membership at segment cuts.
    std::vector<Rat> cuts;
    cuts.push_back(d.anchor);
    auto add_cut = [&](const Rat& c) {
        if (d.anchor < c && c < end) cuts.push_back(c);
    };
    if (a.support.initial_ray) add_cut(*a.support.initial_ray);
    for (const RInterval& iv : a.support.transient_intervals) {
        add_cut(iv.a);
        add_cut(iv.b);
    }
    if (a.support.tail) {
        Rat base = a.support.tail->anchor;
        const Rat& T = a.support.tail->period;
        long long k0 = ((d.anchor - base) / T).floor() - 1;
        for (long long k = k0;; ++k) {
            Rat shift = Rat(k) * T;
            if (!(base + shift < end)) break;
            for (const RInterval& iv : a.support.tail->pattern) {
                add_cut(iv.a + shift);
                add_cut(iv.b + shift);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (size_t i = 0; i < cuts.size(); ++i) {
        if (!a.support.member(cuts[i])) continue;
        Rat b = i + 1 < cuts.size() ? cuts[i + 1] : end;
        if (!d.intervals.empty() && d.intervals.back().b == cuts[i])
            d.intervals.back().b = b;
        else
            d.intervals.push_back({cuts[i], b});
    }
    return d;
}

inline EvPeriodicIntervalSet recompose_support(const RSupportDecomposition& d) {
    EvPeriodicIntervalSet s;
    IntervalTail tl;
    tl.anchor = d.anchor;
    tl.period = d.period;
    for (const RInterval& iv : d.intervals) {
        if (iv.a < d.anchor || d.anchor + d.period < iv.b || !(iv.a < iv.b))
            throw DomainError("decomposition interval outside its window");
        tl.pattern.push_back(iv);
    }
    s.tail = std::move(tl);
    return s;
}

struct HypothesisPReport {
    std::map<Point, PeriodSet> point_primes;
    PeriodSet signal_prime;
    bool lcm_relation_holds = false;
};

inline HypothesisPReport hypothesis_p_report(const DiscreteSignal& sig) {
    DSignalAnalysis a = analyze_signal_d(sig);
    HypothesisPReport r;
    std::vector<long long> primes;
    for (const auto& [mu, pa] : a.per_point) {
        if (pa.periods.kind == PeriodSet::empty_set) continue;
        r.point_primes.emplace(mu, pa.periods);
        primes.push_back(*pa.prime_period);
    }
    r.signal_prime = a.periods;
    long long sp = a.periods.p;
    long long l = 1;
    for (long long q : primes) l = std::lcm(l, q);
    long long g = 0;
    for (long long q : primes) g = std::gcd(g, sp / q);
    r.lcm_relation_holds = l == sp && g == 1;
    for (long long q : primes)
        r.lcm_relation_holds = r.lcm_relation_holds && sp % q == 0;
    return r;
}

inline HypothesisPReport hypothesis_p_report(const RealSignal& sig) {
    RSignalAnalysis a = analyze_signal_r(sig);
    HypothesisPReport r;
    std::vector<Rat> primes;
    bool any_all = false;
    for (const auto& [mu, pa] : a.per_point) {
        if (pa.periods.kind == PeriodSet::empty_set) continue;
        r.point_primes.emplace(mu, pa.periods);
        if (pa.periods.kind == PeriodSet::all_positive) any_all = true;
        else primes.push_back(*pa.prime_period);
    }
    r.signal_prime = a.periods;
    if (a.periods.kind == PeriodSet::all_positive) {
        // Eventually constant: the single recurrent value admits every period.
        r.lcm_relation_holds = true;
        return r;
    }
    if (any_all) {
        r.lcm_relation_holds = false;
        return r;
    }
    Rat sp = a.periods.T;
    Rat l = primes.empty() ? sp : primes[0];
    for (const Rat& q : primes) l = rat_lcm(l, q);
    long long g = 0;
    bool divides = true;
    for (const Rat& q : primes) {
        Rat n = sp / q;
        if (n.den != 1) { divides = false; break; }
        g = std::gcd(g, n.num);
    }
    r.lcm_relation_holds = divides && l == sp && g == 1;
    return r;
}

namespace detail {

inline bool int_set_meets(const EvPeriodicIntSet& s, long long a, long long b) {
    for (long long k = a; k < b; ++k)
        if (s.member(k)) return true;
    return false;
}

inline bool interval_set_meets(const EvPeriodicIntervalSet& s, const Rat& a, const Rat& b) {
    if (s.all) return true;
    if (s.initial_ray && a < *s.initial_ray) return true;
    for (const RInterval& iv : s.transient_intervals)
        if ((iv.a < b) && (a < iv.b)) return true;
    if (s.tail && !s.tail->pattern.empty()) {
        Rat lo = s.tail->anchor < a ? a : s.tail->anchor;
        if (lo < b) {
            if (!(b - lo < s.tail->period)) return true;
            Rat tau = s.tail->anchor + rat_mod(lo - s.tail->anchor, s.tail->period);
            Rat span = b - lo;
            Rat top = s.tail->anchor + s.tail->period;
            Rat hi1 = tau + span;
            for (const RInterval& iv : s.tail->pattern) {
                if ((iv.a < (hi1 < top ? hi1 : top)) && (tau < iv.b)) return true;
                if (top < hi1) {
                    Rat hi2 = s.tail->anchor + (hi1 - top);
                    if ((iv.a < hi2) && (s.tail->anchor < iv.b)) return true;
                }
            }
        }
    }
    return false;
}

}

inline bool accessibility_check(const DPointAnalysis& a, long long window_start) {
    if (a.periods.kind == PeriodSet::empty_set)
        throw NotEventuallyPeriodic("the point has no periods");
    if (!a.limits.contains(window_start))
        throw WindowError("window start " + std::to_string(window_start) +
                          " lies before the limit of periodicity");
    return detail::int_set_meets(a.support, window_start, window_start + *a.prime_period);
}

inline bool accessibility_check(const RPointAnalysis& a, const Rat& window_start) {
    if (a.periods.kind == PeriodSet::empty_set)
        throw NotEventuallyPeriodic("the point has no periods");
    if (!a.limits.contains(window_start))
        throw WindowError("window start " + to_string(window_start) +
                          " lies before the limit of periodicity");
    Rat len = a.periods.kind == PeriodSet::all_positive ? Rat(1) : *a.prime_period;
    return detail::interval_set_meets(a.support, window_start, window_start + len);
}

inline bool accessibility_check(const DSignalAnalysis& a, long long window_start) {
    if (!a.limits.contains(window_start))
        throw WindowError("window start " + std::to_string(window_start) +
                          " lies before the limit of periodicity");
    long long len = a.periods.p;
    for (const auto& [mu, pa] : a.per_point) {
        if (pa.periods.kind == PeriodSet::empty_set) continue;
        if (!detail::int_set_meets(pa.support, window_start, window_start + len))
            return false;
    }
    return true;
}

inline bool accessibility_check(const RSignalAnalysis& a, const Rat& window_start) {
    if (!a.limits.contains(window_start))
        throw WindowError("window start " + to_string(window_start) +
                          " lies before the limit of periodicity");
    Rat len = a.periods.kind == PeriodSet::all_positive ? Rat(1) : a.periods.T;
    for (const auto& [mu, pa] : a.per_point) {
        if (pa.periods.kind == PeriodSet::empty_set) continue;
        if (!detail::interval_set_meets(pa.support, window_start, window_start + len))
            return false;
    }
    return true;
}

}
