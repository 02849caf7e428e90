#pragma once

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "point.hpp"
#include "rat.hpp"

namespace bsig {

struct TailSeg {
    Rat off;
    Point value;
};

// Periodic tail: on [anchor + k*period + off_i, anchor + k*period + off_{i+1})
// the value is pattern[i].value, for every k >= 0.
struct Tail {
    Rat anchor;
    Rat period;
    std::vector<TailSeg> pattern;  // offsets strictly increasing, pattern[0].off == 0
};

// Right-continuous step function R -> B^n: `initial` on (-inf, t0) where t0 is
// the first breakpoint, then the transient values, then the optional tail.
struct RealSignal {
    int width = 1;
    Point initial;
    std::vector<std::pair<Rat, Point>> transient;  // strictly increasing times
    std::optional<Tail> tail;
};

inline RealSignal r_canonicalize(RealSignal sig);

inline RealSignal make_rsignal(int width, Point initial,
                               std::vector<std::pair<Rat, Point>> transient,
                               std::optional<Tail> tail) {
    if (initial.width != width)
        throw WidthError("initial value width does not match signal width");
    for (size_t i = 0; i < transient.size(); ++i) {
        if (transient[i].second.width != width)
            throw WidthError("transient value width does not match signal width");
        if (i > 0 && !(transient[i - 1].first < transient[i].first))
            throw DomainError("transient times must be strictly increasing");
    }
    if (tail) {
        if (!(Rat(0) < tail->period))
            throw DomainError("tail period must be positive");
        if (tail->pattern.empty())
            throw DomainError("tail pattern must be nonempty");
        if (!(tail->pattern[0].off == Rat(0)))
            throw DomainError("first tail pattern offset must be 0");
        for (size_t i = 0; i < tail->pattern.size(); ++i) {
            if (tail->pattern[i].value.width != width)
                throw WidthError("tail value width does not match signal width");
            if (!(tail->pattern[i].off < tail->period))
                throw DomainError("tail pattern offset not below the period");
            if (i > 0 && !(tail->pattern[i - 1].off < tail->pattern[i].off))
                throw DomainError("tail pattern offsets must be strictly increasing");
        }
        if (!transient.empty() && tail->anchor < transient.back().first)
            throw DomainError("tail anchor lies before the last transient time");
    }
    RealSignal sig;
    sig.width = width;
    sig.initial = initial;
    sig.transient = std::move(transient);
    sig.tail = std::move(tail);
    return r_canonicalize(std::move(sig));
}

inline Point r_value_at(const RealSignal& sig, const Rat& t) {
    if (sig.tail && !(t < sig.tail->anchor)) {
        Rat off = rat_mod(t - sig.tail->anchor, sig.tail->period);
        const auto& pat = sig.tail->pattern;
        size_t i = pat.size() - 1;
        while (pat[i].off > off) --i;
        return pat[i].value;
    }
    Point v = sig.initial;
    for (const auto& [time, val] : sig.transient) {
        if (time > t) break;
        v = val;
    }
    return v;
}

// Value of the left limit x(t-0).
inline Point r_left_at(const RealSignal& sig, const Rat& t) {
    if (sig.tail && sig.tail->anchor < t) {
        Rat off = rat_mod(t - sig.tail->anchor, sig.tail->period);
        const auto& pat = sig.tail->pattern;
        if (off == Rat(0)) return pat.back().value;
        size_t i = pat.size() - 1;
        while (!(pat[i].off < off)) --i;
        return pat[i].value;
    }
    Point v = sig.initial;
    for (const auto& [time, val] : sig.transient) {
        if (!(time < t)) break;
        v = val;
    }
    return v;
}

inline std::pair<Point, Point> r_limits(const RealSignal& sig, const Rat& t) {
    return {r_left_at(sig, t), r_value_at(sig, t)};
}

// All change points (x(t-0) != x(t)) in [lo, hi), ascending.
inline std::vector<Rat> r_change_points_in(const RealSignal& sig, const Rat& lo,
                                           const Rat& hi) {
    std::vector<Rat> cand;
    for (const auto& [time, val] : sig.transient)
        if (!(time < lo) && time < hi) cand.push_back(time);
    if (sig.tail) {
        const Rat& A = sig.tail->anchor;
        const Rat& T = sig.tail->period;
        long long kfirst = ((lo - A) / T).floor();
        if (kfirst < 0) kfirst = 0;
        for (long long k = kfirst;; ++k) {
            Rat base = A + Rat(k) * T;
            if (!(base < hi)) break;
            for (const TailSeg& seg : sig.tail->pattern) {
                Rat t = base + seg.off;
                if (!(t < lo) && t < hi) cand.push_back(t);
            }
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<Rat> out;
    for (const Rat& t : cand)
        if (!(r_left_at(sig, t) == r_value_at(sig, t))) out.push_back(t);
    return out;
}

// First change point of the signal, absent when constant.
inline std::optional<Rat> r_first_change(const RealSignal& sig) {
    if (!sig.transient.empty()) {
        Point v = sig.initial;
        for (const auto& [time, val] : sig.transient)
            if (!(val == v)) return time; else v = val;
    }
    if (sig.tail) {
        auto ch = r_change_points_in(sig, sig.tail->anchor,
                                     sig.tail->anchor + sig.tail->period);
        if (!ch.empty()) return ch.front();
        ch = r_change_points_in(sig, sig.tail->anchor + sig.tail->period,
                                sig.tail->anchor + Rat(2) * sig.tail->period);
        if (!ch.empty()) return ch.front();
    }
    return std::nullopt;
}

namespace detail {

// Periodic extension of the tail to the whole line.
inline Point tail_extension_value(const Tail& tail, const Rat& t) {
    Rat off = rat_mod(t - tail.anchor, tail.period);
    size_t i = tail.pattern.size() - 1;
    while (tail.pattern[i].off > off) --i;
    return tail.pattern[i].value;
}

// sup{t : x(t) != ext(t)} where ext is the periodic extension of sig's tail.
// Finite whenever the tail pattern is not a single value.
inline Rat mismatch_sup(const RealSignal& sig) {
    const Tail& tail = *sig.tail;
    const Rat& T = tail.period;
    Rat floor_time = sig.transient.empty() ? tail.anchor : sig.transient.front().first;
    long long guard = (((tail.anchor - floor_time) / T).floor()) + 4;
    for (long long j = 0; j < guard; ++j) {
        Rat hi = tail.anchor - Rat(j) * T;
        Rat lo = hi - T;
        std::vector<Rat> cuts;
        cuts.push_back(lo);
        for (const auto& [time, val] : sig.transient)
            if (lo < time && time < hi) cuts.push_back(time);
        for (const TailSeg& seg : tail.pattern) {
            Rat t = lo + seg.off;
            if (lo < t && t < hi) cuts.push_back(t);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t i = cuts.size(); i-- > 0;) {
            Rat a = cuts[i];
            Rat b = i + 1 < cuts.size() ? cuts[i + 1] : hi;
            if (!(r_value_at(sig, a) == tail_extension_value(tail, a)))
                return b;
        }
    }
    assert(!"non-constant tail extension must mismatch the initial ray");
    return tail.anchor;
}

}

inline RealSignal r_canonicalize(RealSignal sig) {
    if (sig.tail) {
        auto& tr = sig.transient;
        tr.erase(std::remove_if(tr.begin(), tr.end(),
                                [&](const auto& e) { return !(e.first < sig.tail->anchor); }),
                 tr.end());
    }
    {
        std::vector<std::pair<Rat, Point>> kept;
        Point prev = sig.initial;
        for (auto& e : sig.transient) {
            if (!(e.second == prev)) {
                prev = e.second;
                kept.push_back(std::move(e));
            }
        }
        sig.transient = std::move(kept);
    }
    if (!sig.tail) return sig;

    {
        bool all_equal = true;
        for (const TailSeg& seg : sig.tail->pattern)
            all_equal = all_equal && seg.value == sig.tail->pattern[0].value;
        if (all_equal) {
            Point v = sig.tail->pattern[0].value;
            Point prev = sig.transient.empty() ? sig.initial : sig.transient.back().second;
            if (!(v == prev)) sig.transient.push_back({sig.tail->anchor, v});
            sig.tail.reset();
            return sig;
        }
    }

    {
        // Minimal rotation period of the pattern viewed as a circle subset.
        auto& tail = *sig.tail;
        long long n = (long long)tail.pattern.size();
        for (long long m = n; m >= 2; --m) {
            if (n % m != 0) continue;
            Rat Tq = tail.period / Rat(m);
            bool inv = true;
            for (const TailSeg& seg : tail.pattern) {
                Rat shifted = rat_mod(seg.off + Tq, tail.period);
                bool found = false;
                for (const TailSeg& other : tail.pattern)
                    if (other.off == shifted && other.value == seg.value) { found = true; break; }
                if (!found) { inv = false; break; }
            }
            if (inv) {
                std::vector<TailSeg> reduced;
                for (const TailSeg& seg : tail.pattern)
                    if (seg.off < Tq) reduced.push_back(seg);
                tail.pattern = std::move(reduced);
                tail.period = Tq;
                break;
            }
        }
    }

    const Rat T = sig.tail->period;
    Rat limit = detail::mismatch_sup(sig);
    // The anchor is the least a >= limit where the periodic extension changes
    // value, i.e. the first change point of the signal at or after limit + T,
    // pulled back one period.
    auto changes = r_change_points_in(sig, limit + T, limit + Rat(2) * T);
    assert(!changes.empty());
    Rat anchor = changes.front() - T;

    RealSignal out;
    out.width = sig.width;
    out.initial = sig.initial;
    Rat lo = anchor;
    if (sig.tail->anchor < lo) lo = sig.tail->anchor;
    if (!sig.transient.empty() && sig.transient.front().first < lo)
        lo = sig.transient.front().first;
    for (const Rat& c : r_change_points_in(sig, lo, anchor))
        out.transient.push_back({c, r_value_at(sig, c)});
    Tail tail;
    tail.anchor = anchor;
    tail.period = T;
    tail.pattern.push_back({Rat(0), r_value_at(sig, anchor)});
    for (const Rat& c : r_change_points_in(sig, anchor, anchor + T))
        if (anchor < c) tail.pattern.push_back({c - anchor, r_value_at(sig, c)});
    out.tail = std::move(tail);
    return out;
}

inline bool r_equal(const RealSignal& a, const RealSignal& b) {
    RealSignal ca = r_canonicalize(a), cb = r_canonicalize(b);
    if (ca.width != cb.width || !(ca.initial == cb.initial)) return false;
    if (ca.transient != cb.transient) return false;
    if (ca.tail.has_value() != cb.tail.has_value()) return false;
    if (!ca.tail) return true;
    if (!(ca.tail->anchor == cb.tail->anchor) || !(ca.tail->period == cb.tail->period))
        return false;
    if (ca.tail->pattern.size() != cb.tail->pattern.size()) return false;
    for (size_t i = 0; i < ca.tail->pattern.size(); ++i)
        if (!(ca.tail->pattern[i].off == cb.tail->pattern[i].off) ||
            !(ca.tail->pattern[i].value == cb.tail->pattern[i].value))
            return false;
    return true;
}

// sigma^{t'}: result(t) = sig(t) for t >= t' and sig(t'-0) below.
inline RealSignal r_forget(const RealSignal& sig, const Rat& tp) {
    RealSignal c = r_canonicalize(sig);
    Point init = r_left_at(c, tp);
    std::vector<std::pair<Rat, Point>> transient;
    transient.push_back({tp, r_value_at(c, tp)});
    if (c.tail && !(tp < c.tail->anchor)) {
        Rat steps = (tp - c.tail->anchor) / c.tail->period;
        Rat a2 = c.tail->anchor + Rat(steps.ceil()) * c.tail->period;
        for (const Rat& ch : r_change_points_in(c, tp, a2))
            if (tp < ch) transient.push_back({ch, r_value_at(c, ch)});
        Tail tail = *c.tail;
        tail.anchor = a2;
        return make_rsignal(c.width, init, std::move(transient), std::move(tail));
    }
    for (const auto& [time, val] : c.transient)
        if (tp < time) transient.push_back({time, val});
    return make_rsignal(c.width, init, std::move(transient), c.tail);
}

struct InitialTimeSetR {
    bool all = false;
    Rat t0;
};

struct FinalTimeSetR {
    enum Kind { empty, ray, all } kind = empty;
    Rat t0;
};

struct RSummary {
    std::set<Point> orbit;
    std::set<Point> omega;
    std::optional<Rat> omega_horizon;  // absent: recurrent values occur on every ray
    Point initial_value;
    InitialTimeSetR initial_time_set;
    std::optional<Point> final_value;
    FinalTimeSetR final_time_set;
};

// Bounded-region value segments of a canonical signal on [lo, hi).
inline std::vector<std::pair<Rat, Point>> r_segments_on(const RealSignal& sig,
                                                        const Rat& lo, const Rat& hi) {
    std::vector<std::pair<Rat, Point>> segs;
    segs.push_back({lo, r_value_at(sig, lo)});
    for (const Rat& c : r_change_points_in(sig, lo, hi))
        if (lo < c) segs.push_back({c, r_value_at(sig, c)});
    return segs;
}

inline RSummary r_summarize(const RealSignal& raw) {
    RealSignal sig = r_canonicalize(raw);
    RSummary s;
    s.initial_value = sig.initial;
    s.orbit.insert(sig.initial);
    for (const auto& [time, val] : sig.transient) s.orbit.insert(val);
    if (sig.tail) {
        for (const TailSeg& seg : sig.tail->pattern) {
            s.orbit.insert(seg.value);
            s.omega.insert(seg.value);
        }
    } else {
        s.omega.insert(sig.transient.empty() ? sig.initial : sig.transient.back().second);
    }

    auto first = r_first_change(sig);
    if (!first) {
        s.initial_time_set = {true, Rat(0)};
    } else {
        s.initial_time_set = {false, *first};
    }

    if (!sig.tail) {
        s.final_value = sig.transient.empty() ? sig.initial : sig.transient.back().second;
        if (sig.transient.empty())
            s.final_time_set = {FinalTimeSetR::all, Rat(0)};
        else
            s.final_time_set = {FinalTimeSetR::ray, sig.transient.back().first};
    } else {
        s.final_time_set = {FinalTimeSetR::empty, Rat(0)};
    }

    if (sig.transient.empty() && !sig.tail) {
        s.omega_horizon = std::nullopt;
        return s;
    }
    // Walk the value timeline downward from the start of the recurrent zone,
    // extending the horizon across every segment whose value recurs.
    Rat horizon = sig.tail ? sig.tail->anchor : sig.transient.back().first;
    bool all_recurrent = true;
    for (size_t i = sig.transient.size(); i-- > 0;) {
        if (!(sig.transient[i].first < horizon)) continue;
        if (!s.omega.count(sig.transient[i].second)) {
            all_recurrent = false;
            break;
        }
        horizon = sig.transient[i].first;
    }
    if (all_recurrent && s.omega.count(sig.initial))
        s.omega_horizon = std::nullopt;
    else
        s.omega_horizon = horizon;
    return s;
}

struct RInterval {
    Rat a, b;  // [a, b)
};

struct IntervalTail {
    Rat anchor;
    Rat period;
    std::vector<RInterval> pattern;  // disjoint, within [anchor, anchor + period]
};

struct EvPeriodicIntervalSet {
    bool all = false;
    std::optional<Rat> initial_ray;  // (-inf, t0)
    std::vector<RInterval> transient_intervals;
    std::optional<IntervalTail> tail;

    bool member(const Rat& t) const {
        if (all) return true;
        if (initial_ray && t < *initial_ray) return true;
        for (const RInterval& iv : transient_intervals)
            if (!(t < iv.a) && t < iv.b) return true;
        if (tail && !(t < tail->anchor)) {
            Rat tau = tail->anchor + rat_mod(t - tail->anchor, tail->period);
            for (const RInterval& iv : tail->pattern)
                if (!(tau < iv.a) && tau < iv.b) return true;
        }
        return false;
    }

    bool empty_set() const {
        return !all && !initial_ray && transient_intervals.empty() &&
               (!tail || tail->pattern.empty());
    }
};

namespace detail {

// mu-runs of the signal within [lo, hi), cut at the window edges.
inline std::vector<RInterval> value_runs_on(const RealSignal& sig, const Point& mu,
                                            const Rat& lo, const Rat& hi) {
    std::vector<RInterval> runs;
    auto segs = r_segments_on(sig, lo, hi);
    for (size_t i = 0; i < segs.size(); ++i) {
        if (!(segs[i].second == mu)) continue;
        Rat a = segs[i].first;
        Rat b = i + 1 < segs.size() ? segs[i + 1].first : hi;
        if (!runs.empty() && runs.back().b == a)
            runs.back().b = b;
        else
            runs.push_back({a, b});
    }
    return runs;
}

}

inline EvPeriodicIntervalSet r_support_set(const RealSignal& raw, const Point& mu) {
    RealSignal sig = r_canonicalize(raw);
    if (mu.width != sig.width)
        throw WidthError("support query width " + std::to_string(mu.width) +
                         " does not match signal width " + std::to_string(sig.width));
    EvPeriodicIntervalSet out;
    auto first = r_first_change(sig);
    if (!first) {
        if (mu == sig.initial) out.all = true;
        return out;
    }
    Rat t0 = *first;
    if (mu == sig.initial) out.initial_ray = t0;

    if (!sig.tail) {
        Rat last = sig.transient.back().first;
        out.transient_intervals = detail::value_runs_on(sig, mu, t0, last);
        if (mu == sig.transient.back().second) {
            IntervalTail tl;
            tl.anchor = last;
            tl.period = Rat(1);
            tl.pattern.push_back({last, last + Rat(1)});
            out.tail = std::move(tl);
        }
        return out;
    }

    const Rat T = sig.tail->period;
    Rat A = sig.tail->anchor;
    if (mu == sig.initial && A < t0) {
        // The periodic zone starts inside the initial ray; anchor the support
        // tail at t0 so it stays disjoint from the ray.
        A = t0;
    }
    if (t0 < A)
        out.transient_intervals = detail::value_runs_on(sig, mu, t0, A);
    IntervalTail tl;
    tl.anchor = A;
    tl.period = T;
    tl.pattern = detail::value_runs_on(sig, mu, A, A + T);
    if (!tl.pattern.empty()) out.tail = std::move(tl);
    return out;
}

}
