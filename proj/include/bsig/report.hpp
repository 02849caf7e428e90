#pragma once

#include <set>
#include <string>

#include "analysis.hpp"

namespace bsig {

struct CheckRow {
    std::string group;
    std::string candidate;  // "p=4" / "T=3/2", empty for candidate-free rows
    bool expected = false;
    bool actual = false;
    bool agree = false;
};

struct CharacterizationReport {
    std::string header;
    std::vector<CheckRow> rows;
    bool all_agree = true;
};

namespace detail {

inline void push_row(CharacterizationReport& rep, std::string group, std::string candidate,
                     bool expected, bool actual) {
    CheckRow row{std::move(group), std::move(candidate), expected, actual, expected == actual};
    rep.all_agree = rep.all_agree && row.agree;
    rep.rows.push_back(std::move(row));
}

}

// Evaluates every characterization group by direct bounded-quantifier checking
// on the values, then compares with the analysis engine's classification.
// Universal quantifiers over periods run over p = 1..p_bound only, and
// existential start points are searched below horizon - 2*p_bound, so a row
// asserts "true for all tested", never "true for all".
inline CharacterizationReport characterization_report(const DiscreteSignal& raw,
                                                      long long p_bound, long long horizon) {
    DiscreteSignal sig = d_canonicalize(raw);
    if (p_bound < 1) throw DomainError("period bound must be positive");
    long long L = (long long)sig.cycle.size();
    long long A = sig.anchor();
    long long need = A + 2 * std::max(p_bound, L);
    if (horizon < need)
        throw HorizonError("horizon " + std::to_string(horizon) + " does not cover two periods past the settled zone; need at least " + std::to_string(need));
    const long long H = horizon;
    const long long K = H - 2 * p_bound;

    auto val = [&](const DiscreteSignal& s, long long k) { return d_value_at(s, k); };
    auto val_per = [&](const DiscreteSignal& s, long long kp, long long p) {
        for (long long k = kp; k + p <= H; ++k)
            if (!(val(s, k) == val(s, k + p))) return false;
        return true;
    };
    auto closure = [&](const DiscreteSignal& s, long long kp, long long p, const Point& mu) {
        for (long long k = kp; k <= H; ++k) {
            if (!(val(s, k) == mu)) continue;
            if (k + p <= H && !(val(s, k + p) == mu)) return false;
            if (k - p >= kp && !(val(s, k - p) == mu)) return false;
        }
        return true;
    };

    std::set<Point> orbit, omega;
    for (long long k = -1; k <= H; ++k) orbit.insert(val(sig, k));
    for (long long k = K; k <= H; ++k) omega.insert(val(sig, k));
    std::vector<DiscreteSignal> shifted = {sig, d_forget(sig, 1), d_forget(sig, 2)};

    DSignalAnalysis engine = analyze_signal_d(sig);
    bool exp_const = engine.classification == Classification::constant;
    bool exp_ev_const = exp_const || engine.classification == Classification::eventually_constant;

    CharacterizationReport rep;
    rep.header = "bounded characterization check: p in 1.." + std::to_string(p_bound) +
                 ", start points searched in -1.." + std::to_string(K) +
                 ", values read up to " + std::to_string(H) +
                 "; every verdict means true for all tested, not true for all";

    {
        bool g1 = true;
        for (long long k = -1; k <= H; ++k) g1 = g1 && val(sig, k) == val(sig, -1);
        detail::push_row(rep, "constancy: single value everywhere", "", exp_const, g1);
    }
    {
        bool g2 = true, g3 = true, g4 = true;
        for (long long p = 1; p <= p_bound; ++p) {
            for (const DiscreteSignal& s : shifted) {
                for (const Point& mu : orbit) g2 = g2 && closure(s, -1, p, mu);
                g4 = g4 && val_per(s, -1, p);
            }
            bool any = false;
            for (const Point& mu : orbit) any = any || closure(sig, -1, p, mu);
            g3 = g3 && any;
        }
        detail::push_row(rep, "constancy: support closure at every value and shift", "", exp_const, g2);
        detail::push_row(rep, "constancy: support closure at some value", "", exp_const, g3);
        detail::push_row(rep, "constancy: value periodicity from the start", "", exp_const, g4);
    }
    {
        Point last = val(sig, H);
        bool g1 = true;
        for (long long k = K; k <= H; ++k) g1 = g1 && val(sig, k) == last;
        detail::push_row(rep, "eventual constancy: settles on one value", "", exp_ev_const, g1);
    }
    {
        bool g2 = true, g3 = true, g4 = true;
        for (long long p = 1; p <= p_bound; ++p) {
            for (const Point& mu : orbit) g2 = g2 && closure(sig, K, p, mu);
            bool any = false, any_shift = false;
            for (const Point& mu : orbit) {
                bool occurs = false;
                for (long long k = K; k <= H && !occurs; ++k) occurs = val(sig, k) == mu;
                any = any || (occurs && closure(sig, K, p, mu));
            }
            g3 = g3 && any;
            for (const DiscreteSignal& s : shifted) {
                bool a = false;
                for (const Point& mu : orbit) {
                    bool occurs = false;
                    for (long long k = K; k <= H && !occurs; ++k) occurs = val(s, k) == mu;
                    a = a || (occurs && closure(s, K, p, mu));
                }
                any_shift = any_shift || a;
                g4 = g4 && a;
            }
            (void)any_shift;
        }
        detail::push_row(rep, "eventual constancy: every value eventually shift-closed", "", exp_ev_const, g2);
        detail::push_row(rep, "eventual constancy: some recurring value shift-closed", "", exp_ev_const, g3);
        detail::push_row(rep, "eventual constancy: shift-closed value after forgetting", "", exp_ev_const, g4);
    }
    for (long long p = 1; p <= p_bound; ++p) {
        std::string cand = "p=" + std::to_string(p);
        bool exp_ep = engine.periods.contains(p);
        bool exp_p = engine.limits.kind == LimitSet::all_times && exp_ep;
        bool ep1 = true;
        for (const Point& mu : omega) ep1 = ep1 && closure(sig, K, p, mu);
        detail::push_row(rep, "eventual periodicity: recurring values shift-closed", cand, exp_ep, ep1);
        detail::push_row(rep, "eventual periodicity: values repeat from some start", cand, exp_ep,
                         val_per(sig, K, p));
        bool p1 = true;
        for (const DiscreteSignal& s : shifted)
            for (const Point& mu : orbit) p1 = p1 && closure(s, -1, p, mu);
        detail::push_row(rep, "periodicity: all supports shift-closed from the start", cand, exp_p, p1);
        bool p2 = true;
        for (const DiscreteSignal& s : shifted) p2 = p2 && val_per(s, -1, p);
        detail::push_row(rep, "periodicity: values repeat from the start", cand, exp_p, p2);
    }
    {
        bool lhs = true;
        for (long long p = 1; p <= p_bound; ++p) lhs = lhs && val_per(sig, K, p);
        bool rhs = false;
        for (long long kp = -1; kp <= K && !rhs; ++kp) {
            bool all = true;
            for (long long p = 1; p <= p_bound && all; ++p) all = val_per(sig, kp, p);
            rhs = all;
        }
        detail::push_row(rep, "quantifier swap: per-period starts vs one shared start", "", lhs, rhs);
    }
    return rep;
}

namespace detail {

struct RGrid {
    const RealSignal* sig;
    Rat H;
    std::vector<Rat> changes;  // all change points up to H
};

inline RGrid r_grid(const RealSignal& sig, const Rat& H) {
    RGrid g{&sig, H, {}};
    Rat lo = sig.tail ? sig.tail->anchor : Rat(0);
    if (!sig.transient.empty() && sig.transient.front().first < lo) lo = sig.transient.front().first;
    g.changes = r_change_points_in(sig, lo - Rat(1), H);
    return g;
}

inline bool r_val_per(const RGrid& g, const Rat& a, const Rat& T) {
    std::vector<Rat> grid = {a};
    for (const Rat& c : g.changes) {
        if (a < c && !(g.H - T < c)) grid.push_back(c);
        Rat cm = c - T;
        if (a < cm && !(g.H - T < cm)) grid.push_back(cm);
    }
    for (const Rat& c : grid)
        if (!(r_value_at(*g.sig, c) == r_value_at(*g.sig, c + T))) return false;
    return true;
}

inline bool r_closure(const RGrid& g, const Rat& a, const Rat& T, const Point& mu) {
    std::vector<Rat> grid = {a, a + T, g.H - T};
    for (const Rat& c : g.changes)
        for (const Rat& d : {c, c - T, c + T})
            if (a < d && d < g.H) grid.push_back(d);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    for (const Rat& c : grid) {
        if (c < a || g.H < c) continue;
        if (!(r_value_at(*g.sig, c) == mu)) continue;
        if (!(c < a + T) && !(r_value_at(*g.sig, c - T) == mu)) return false;
        if (!(g.H - T < c) && !(r_value_at(*g.sig, c + T) == mu)) return false;
    }
    return true;
}

// exists t' in I^x with the property from t': the from-t0 check plus the
// left-limit condition just below t0 + T.
inline bool r_val_per_from_initial(const RGrid& g, const Rat& t0, const Rat& T) {
    return r_val_per(g, t0, T) && r_left_at(*g.sig, t0 + T) == g.sig->initial;
}

inline bool r_closure_from_initial(const RGrid& g, const Rat& t0, const Rat& T, const Point& mu) {
    if (!r_closure(g, t0, T, mu)) return false;
    Point boundary = r_left_at(*g.sig, t0 + T);
    if (mu == g.sig->initial) return boundary == mu;
    return !(boundary == mu);
}

}

inline CharacterizationReport characterization_report(const RealSignal& raw,
                                                      const std::vector<Rat>& T_candidates,
                                                      const Rat& horizon) {
    RealSignal sig = r_canonicalize(raw);
    if (T_candidates.empty()) throw DomainError("no candidate periods given");
    Rat maxT = T_candidates[0];
    for (const Rat& T : T_candidates) {
        if (!(Rat(0) < T)) throw DomainError("candidate period must be positive");
        if (maxT < T) maxT = T;
    }
    Rat settled = sig.tail ? sig.tail->anchor + sig.tail->period
                           : (sig.transient.empty() ? Rat(0) : sig.transient.back().first);
    Rat need = settled + Rat(2) * maxT;
    if (horizon < need)
        throw HorizonError("horizon " + to_string(horizon) + " does not cover two periods past the settled zone; need at least " + to_string(need));
    const Rat H = horizon;
    const Rat K = H - Rat(2) * maxT;

    detail::RGrid g = detail::r_grid(sig, H);
    auto first = r_first_change(sig);
    Rat t0 = first.value_or(Rat(0));

    std::set<Point> orbit, omega;
    orbit.insert(sig.initial);
    for (const Rat& c : g.changes) orbit.insert(r_value_at(sig, c));
    omega.insert(r_value_at(sig, K));
    for (const Rat& c : g.changes)
        if (!(c < K)) omega.insert(r_value_at(sig, c));

    std::vector<RealSignal> shifted = {sig, r_forget(sig, t0 + Rat(1)),
                                       r_forget(sig, t0 + Rat(1) + maxT)};
    std::vector<detail::RGrid> sgrids;
    for (const RealSignal& s : shifted) sgrids.push_back(detail::r_grid(s, H));
    auto shifted_t0 = [&](size_t i) {
        auto fc = r_first_change(shifted[i]);
        return fc.value_or(Rat(0));
    };

    RSignalAnalysis engine = analyze_signal_r(sig);
    bool exp_const = engine.classification == Classification::constant;
    bool exp_ev_const = exp_const || engine.classification == Classification::eventually_constant;
    bool is_periodic = exp_const || engine.window.has_value();

    CharacterizationReport rep;
    rep.header = "bounded characterization check: T in {";
    for (size_t i = 0; i < T_candidates.size(); ++i)
        rep.header += (i ? ", " : "") + to_string(T_candidates[i]);
    rep.header += "}, start points searched below " + to_string(K) + ", values read up to " +
                  to_string(H) + "; every verdict means true for all tested, not true for all";

    {
        bool g1 = !first || H < *first;
        detail::push_row(rep, "constancy: single value everywhere", "", exp_const, g1);
    }
    {
        bool g2 = true, g3 = true, g4 = true;
        for (const Rat& T : T_candidates) {
            for (size_t i = 0; i < shifted.size(); ++i) {
                for (const Point& mu : orbit)
                    g2 = g2 && detail::r_closure_from_initial(sgrids[i], shifted_t0(i), T, mu);
                g4 = g4 && detail::r_val_per_from_initial(sgrids[i], shifted_t0(i), T);
            }
            bool any = false;
            for (const Point& mu : orbit)
                any = any || detail::r_closure_from_initial(g, t0, T, mu);
            g3 = g3 && any;
        }
        detail::push_row(rep, "constancy: support closure at every value and shift", "", exp_const, g2);
        detail::push_row(rep, "constancy: support closure at some value", "", exp_const, g3);
        detail::push_row(rep, "constancy: value periodicity from the start", "", exp_const, g4);
    }
    {
        Point last = r_value_at(sig, H);
        bool g1 = true;
        for (const Rat& c : g.changes) g1 = g1 && (c < K || r_value_at(sig, c) == last);
        g1 = g1 && r_value_at(sig, K) == last;
        detail::push_row(rep, "eventual constancy: settles on one value", "", exp_ev_const, g1);
    }
    {
        bool g2 = true, g3 = true, g4 = true;
        for (const Rat& T : T_candidates) {
            for (const Point& mu : orbit) g2 = g2 && detail::r_closure(g, K, T, mu);
            bool any = false;
            for (const Point& mu : orbit) {
                bool occurs = omega.count(mu) > 0;
                any = any || (occurs && detail::r_closure(g, K, T, mu));
            }
            g3 = g3 && any;
            for (size_t i = 0; i < shifted.size(); ++i) {
                bool a = false;
                for (const Point& mu : orbit) {
                    bool occurs = r_value_at(shifted[i], H) == mu;
                    for (const Rat& c : sgrids[i].changes)
                        occurs = occurs || (!(c < K) && r_value_at(shifted[i], c) == mu);
                    a = a || (occurs && detail::r_closure(sgrids[i], K, T, mu));
                }
                g4 = g4 && a;
            }
        }
        detail::push_row(rep, "eventual constancy: every value eventually shift-closed", "", exp_ev_const, g2);
        detail::push_row(rep, "eventual constancy: some recurring value shift-closed", "", exp_ev_const, g3);
        detail::push_row(rep, "eventual constancy: shift-closed value after forgetting", "", exp_ev_const, g4);
    }
    for (const Rat& T : T_candidates) {
        std::string cand = "T=" + to_string(T);
        bool exp_ep = engine.periods.contains(T);
        bool exp_p = is_periodic && exp_ep;
        bool ep1 = true;
        for (const Point& mu : omega) ep1 = ep1 && detail::r_closure(g, K, T, mu);
        detail::push_row(rep, "eventual periodicity: recurring values shift-closed", cand, exp_ep, ep1);
        detail::push_row(rep, "eventual periodicity: values repeat from some start", cand, exp_ep,
                         detail::r_val_per(g, K, T));
        bool p1 = true;
        for (size_t i = 0; i < shifted.size(); ++i)
            for (const Point& mu : orbit)
                p1 = p1 && detail::r_closure_from_initial(sgrids[i], shifted_t0(i), T, mu);
        detail::push_row(rep, "periodicity: all supports shift-closed from the start", cand, exp_p, p1);
        bool p2 = true;
        for (size_t i = 0; i < shifted.size(); ++i)
            p2 = p2 && detail::r_val_per_from_initial(sgrids[i], shifted_t0(i), T);
        detail::push_row(rep, "periodicity: values repeat from the start", cand, exp_p, p2);
    }
    {
        bool lhs = true;
        for (const Rat& T : T_candidates) lhs = lhs && detail::r_val_per(g, K, T);
        std::vector<Rat> starts = {t0, K};
        for (const Rat& c : g.changes)
            if (!(K < c)) starts.push_back(c);
        bool rhs = false;
        for (const Rat& s : starts) {
            bool all = true;
            for (const Rat& T : T_candidates) all = all && detail::r_val_per(g, s, T);
            rhs = rhs || all;
        }
        detail::push_row(rep,
                         "quantifier swap: per-period starts vs one shared start "
                         "(empirical on representable class)",
                         "", lhs, rhs);
    }
    return rep;
}

}
