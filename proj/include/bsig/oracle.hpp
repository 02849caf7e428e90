#pragma once

#include "analysis.hpp"

#include <string>
#include <vector>

namespace bsig {

// Explicit finite unrolling of a discrete signal on [start, start + values).
struct DWindow {
    int width = 1;
    long long start = -1;
    std::vector<Point> values;

    long long end() const { return start + (long long)values.size(); }
    const Point& at(long long k) const {
        assert(k >= start && k < end());
        return values[(size_t)(k - start)];
    }
};

inline DWindow make_dwindow(int width, long long start, std::vector<Point> values) {
    if (values.empty()) throw DomainError("window needs at least one value");
    for (const Point& p : values)
        if (p.width != width) throw WidthError(width, p.width);
    return {width, start, std::move(values)};
}

// Explicit finite unrolling of a real signal on [start, end): piecewise
// constant, value pieces[i].second on [t_i, t_{i+1}).
struct RWindow {
    int width = 1;
    Rat start, end;
    std::vector<std::pair<Rat, Point>> pieces;

    const Point& at(const Rat& t) const {
        assert(!(t < start) && t < end);
        size_t i = pieces.size() - 1;
        while (pieces[i].first > t) --i;
        return pieces[i].second;
    }
};

inline RWindow make_rwindow(int width, Rat start, Rat end,
                            std::vector<std::pair<Rat, Point>> pieces) {
    if (pieces.empty()) throw DomainError("window needs at least one piece");
    if (!(pieces.front().first == start))
        throw DomainError("first piece must start the window");
    for (size_t i = 0; i + 1 < pieces.size(); ++i)
        if (!(pieces[i].first < pieces[i + 1].first))
            throw DomainError("piece times must increase");
    if (!(pieces.back().first < end)) throw DomainError("window end precedes its last piece");
    for (const auto& [t, p] : pieces)
        if (p.width != width) throw WidthError(width, p.width);
    return {width, std::move(start), std::move(end), std::move(pieces)};
}

inline DWindow d_unroll(const DiscreteSignal& raw, long long end) {
    DiscreteSignal sig = d_canonicalize(raw);
    std::vector<Point> values;
    for (long long k = -1; k < end; ++k) values.push_back(d_value_at(sig, k));
    return make_dwindow(sig.width, -1, std::move(values));
}

inline RWindow r_unroll(const RealSignal& raw, const Rat& lo, const Rat& hi) {
    RealSignal sig = r_canonicalize(raw);
    return make_rwindow(sig.width, lo, hi, r_segments_on(sig, lo, hi));
}

// Literal eventually-periodic-point condition on the window: occurrences of mu
// from kp on are nonempty and closed under steps of p within [kp, end).
inline bool brute_point_check(const DWindow& w, const Point& mu, long long p, long long kp) {
    if (p < 1) throw DomainError("period must be positive");
    if (mu.width != w.width) throw WidthError(w.width, mu.width);
    if (kp < w.start || w.end() < kp + 3 * p + 1)
        throw HorizonError("window must cover the limit plus three periods");
    bool nonempty = false;
    for (long long k = kp; k < w.end(); ++k) {
        if (!(w.at(k) == mu)) continue;
        nonempty = true;
        for (long long m = k - p; m >= kp; m -= p)
            if (!(w.at(m) == mu)) return false;
        for (long long m = k + p; m < w.end(); m += p)
            if (!(w.at(m) == mu)) return false;
    }
    return nonempty;
}

// Literal eventually-periodic-signal condition: values repeat at distance p
// from kp on, within the window.
inline bool brute_signal_check(const DWindow& w, long long p, long long kp) {
    if (p < 1) throw DomainError("period must be positive");
    if (kp < w.start || w.end() < kp + 3 * p + 1)
        throw HorizonError("window must cover the limit plus three periods");
    for (long long k = kp; k + p < w.end(); ++k)
        if (!(w.at(k) == w.at(k + p))) return false;
    return true;
}

namespace detail {

// Times in [lo, hi) where any windowed condition involving shifts by T can
// change truth value, together with midpoints between neighbors.
inline std::vector<Rat> sample_times(const RWindow& w, const Rat& T, const Rat& lo,
                                     const Rat& hi) {
    std::vector<Rat> cuts;
    cuts.push_back(w.start);
    cuts.push_back(lo);
    for (const auto& [t, v] : w.pieces) cuts.push_back(t);
    cuts.push_back(w.end);
    std::vector<Rat> crit;
    for (const Rat& c : cuts) {
        long long zlo = ((lo - c) / T).ceil();
        for (long long z = zlo;; ++z) {
            Rat t = c + Rat(z) * T;
            if (!(t < hi)) break;
            if (!(t < lo)) crit.push_back(t);
        }
    }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    std::vector<Rat> samples = crit;
    for (size_t i = 0; i + 1 < crit.size(); ++i)
        samples.push_back((crit[i] + crit[i + 1]) / Rat(2));
    std::sort(samples.begin(), samples.end());
    return samples;
}

}

inline bool brute_point_check(const RWindow& w, const Point& mu, const Rat& T, const Rat& tp) {
    if (!(Rat(0) < T)) throw DomainError("period must be positive");
    if (mu.width != w.width) throw WidthError(w.width, mu.width);
    if (tp < w.start || w.end < tp + Rat(3) * T)
        throw HorizonError("window must cover the limit plus three periods");
    bool nonempty = false;
    for (const Rat& s : detail::sample_times(w, T, tp, w.end)) {
        if (!(w.at(s) == mu)) continue;
        nonempty = true;
        for (Rat m = s - T; !(m < tp); m = m - T)
            if (!(w.at(m) == mu)) return false;
        for (Rat m = s + T; m < w.end; m = m + T)
            if (!(w.at(m) == mu)) return false;
    }
    return nonempty;
}

inline bool brute_signal_check(const RWindow& w, const Rat& T, const Rat& tp) {
    if (!(Rat(0) < T)) throw DomainError("period must be positive");
    if (tp < w.start || w.end < tp + Rat(3) * T)
        throw HorizonError("window must cover the limit plus three periods");
    for (const Rat& s : detail::sample_times(w, T, tp, w.end - T))
        if (!(w.at(s) == w.at(s + T))) return false;
    return true;
}

struct AgreeReport {
    bool ok = true;
    std::vector<std::string> mismatches;

    void note(bool engine, bool brute, const std::string& what) {
        if (engine == brute) return;
        ok = false;
        mismatches.push_back(what + ": engine says " + (engine ? "yes" : "no") +
                             ", window says " + (brute ? "yes" : "no"));
    }
};

// Engine verdicts against windowed literal checks, every candidate period,
// point and signal level, eventual and strict. The window must extend at
// least one cycle plus three candidate periods past the canonical anchor.
inline AgreeReport agree(const DiscreteSignal& raw, long long window_len, long long p_bound) {
    DiscreteSignal sig = d_canonicalize(raw);
    DWindow w = d_unroll(sig, window_len);
    DSignalAnalysis an = analyze_signal_d(sig);
    AgreeReport rep;
    for (long long p = 1; p <= p_bound; ++p) {
        std::string tag = " p=" + std::to_string(p);
        rep.note(an.periods.contains(p), brute_signal_check(w, p, sig.anchor()),
                 "signal eventual periodicity" + tag);
        rep.note(an.periods.contains(p) && an.limits.kind == LimitSet::all_times,
                 brute_signal_check(w, p, -1), "signal periodicity" + tag);
        for (const auto& [mu, pa] : an.per_point) {
            std::string ptag = "point " + to_string(mu) + tag;
            rep.note(pa.periods.contains(p), brute_point_check(w, mu, p, sig.anchor()),
                     "eventual periodicity of " + ptag);
            rep.note(pa.periods.contains(p) && pa.is_periodic_point,
                     brute_point_check(w, mu, p, -1), "periodicity of " + ptag);
        }
    }
    return rep;
}

inline AgreeReport agree(const RealSignal& raw, const Rat& window_end,
                         const std::vector<Rat>& T_candidates) {
    RealSignal sig = r_canonicalize(raw);
    Rat settle = sig.tail ? sig.tail->anchor
                          : (sig.transient.empty() ? Rat(0) : sig.transient.back().first);
    auto fc = r_first_change(sig);
    Rat t0 = fc ? *fc : Rat(0);
    Rat maxT(1);
    for (const Rat& T : T_candidates)
        if (maxT < T) maxT = T;
    Rat lo = t0 - maxT - Rat(2);
    RWindow w = r_unroll(sig, lo, window_end);
    RSignalAnalysis an = analyze_signal_r(sig);
    AgreeReport rep;
    for (const Rat& T : T_candidates) {
        if (!(Rat(0) < T)) continue;
        std::string tag = " T=" + to_string(T);
        // The easiest admissible initial time sits just below the first change.
        Rat tp_initial = (lo + t0) / Rat(2);
        for (const Rat& s : detail::sample_times(w, T, lo, t0))
            if (s < t0) tp_initial = (s + t0) / Rat(2);
        bool sig_periodic = an.classification == Classification::constant ||
                            an.classification == Classification::periodic;
        rep.note(an.periods.contains(T), brute_signal_check(w, T, settle),
                 "signal eventual periodicity" + tag);
        rep.note(an.periods.contains(T) && sig_periodic,
                 brute_signal_check(w, T, fc ? tp_initial : settle),
                 "signal periodicity" + tag);
        for (const auto& [mu, pa] : an.per_point) {
            std::string ptag = "point " + to_string(mu) + tag;
            rep.note(pa.periods.contains(T), brute_point_check(w, mu, T, settle),
                     "eventual periodicity of " + ptag);
            rep.note(pa.periods.contains(T) && pa.is_periodic_point,
                     brute_point_check(w, mu, T, fc ? tp_initial : settle),
                     "periodicity of " + ptag);
        }
    }
    return rep;
}

}
