#pragma once

#include "dsignal.hpp"
#include "rsignal.hpp"

#include <numeric>

namespace bsig {

// One-instant rewrite: x̂(k) <- v.
struct DEdit {
    long long k;
    Point v;
};

// Progression rewrite: x̂(k0 + j*d) <- v for every j >= 0.
struct DProgEdit {
    long long k0;
    long long d;
    Point v;
};

namespace detail {

inline bool prog_hits(const DProgEdit& p, long long k) {
    return k >= p.k0 && (k - p.k0) % p.d == 0;
}

}

inline DiscreteSignal d_edit(const DiscreteSignal& raw, const std::vector<DEdit>& singles,
                             const std::vector<DProgEdit>& progs) {
    DiscreteSignal sig = d_canonicalize(raw);
    for (const DEdit& e : singles) {
        if (e.k < -1) throw DomainError("edit time must be at least -1");
        if (e.v.width != sig.width) throw WidthError(sig.width, e.v.width);
    }
    for (const DProgEdit& p : progs) {
        if (p.k0 < -1) throw DomainError("progression start must be at least -1");
        if (p.d < 1) throw DomainError("progression stride must be positive");
        if (p.v.width != sig.width) throw WidthError(sig.width, p.v.width);
    }
    for (size_t i = 0; i < singles.size(); ++i)
        for (size_t j = i + 1; j < singles.size(); ++j)
            if (singles[i].k == singles[j].k && !(singles[i].v == singles[j].v))
                throw EditConflict("conflicting values at instant " +
                                   std::to_string(singles[i].k));
    for (const DEdit& e : singles)
        for (const DProgEdit& p : progs)
            if (detail::prog_hits(p, e.k) && !(e.v == p.v))
                throw EditConflict("instant edit at " + std::to_string(e.k) +
                                   " conflicts with a progression");
    for (size_t i = 0; i < progs.size(); ++i)
        for (size_t j = i + 1; j < progs.size(); ++j) {
            const DProgEdit &a = progs[i], &b = progs[j];
            if (a.v == b.v) continue;
            long long g = std::gcd(a.d, b.d);
            if ((b.k0 - a.k0) % g == 0)
                throw EditConflict("progressions with strides " + std::to_string(a.d) +
                                   " and " + std::to_string(b.d) + " meet");
        }

    long long L = (long long)sig.cycle.size();
    long long Lp = L;
    for (const DProgEdit& p : progs) {
        Lp = std::lcm(Lp, p.d);
        if (Lp > 1000000)
            throw RepresentationError("edited cycle length exceeds one million");
    }
    long long A = sig.anchor();
    for (const DEdit& e : singles) A = std::max(A, e.k + 1);
    for (const DProgEdit& p : progs) A = std::max(A, p.k0);

    auto value = [&](long long k) -> Point {
        for (const DEdit& e : singles)
            if (e.k == k) return e.v;
        for (const DProgEdit& p : progs)
            if (detail::prog_hits(p, k)) return p.v;
        return d_value_at(sig, k);
    };
    std::vector<Point> prefix, cycle;
    for (long long k = -1; k < A; ++k) prefix.push_back(value(k));
    for (long long k = A; k < A + Lp; ++k) cycle.push_back(value(k));
    return make_dsignal(sig.width, std::move(prefix), std::move(cycle));
}

// Maximal interval around t on which the signal is constant.
struct FlatInterval {
    enum Kind { whole_line, initial_ray, final_ray, segment } kind;
    Rat a;  // unset for whole_line and initial_ray
    Rat b;  // unset for whole_line and final_ray
};

inline FlatInterval flat_interval(const RealSignal& raw, const Rat& t) {
    RealSignal sig = r_canonicalize(raw);
    auto first = r_first_change(sig);
    if (!first) return {FlatInterval::whole_line, Rat(0), Rat(0)};
    if (t < *first) return {FlatInterval::initial_ray, Rat(0), *first};

    // Last change at or before t; *first qualifies, so the fallback is sound.
    Rat a = *first;
    for (const auto& [time, val] : sig.transient)
        if (!(t < time)) a = time;
    if (sig.tail && !(t < sig.tail->anchor)) {
        const Rat& T = sig.tail->period;
        long long k = ((t - sig.tail->anchor) / T).floor();
        for (const Rat& c : r_change_points_in(sig, sig.tail->anchor + Rat(k) * T, t))
            a = c;
    }
    if (!(r_left_at(sig, t) == r_value_at(sig, t))) a = t;

    // First change strictly after t; a tail always supplies one.
    std::optional<Rat> b;
    for (const auto& [time, val] : sig.transient)
        if (t < time) {
            b = time;
            break;
        }
    if (!b && sig.tail) {
        const Rat& T = sig.tail->period;
        Rat w = sig.tail->anchor;
        if (!(t < w)) w = w + Rat(((t - w) / T).floor()) * T;
        for (const Rat& c : r_change_points_in(sig, w, w + Rat(2) * T))
            if (t < c) {
                b = c;
                break;
            }
        assert(b);
    }
    if (!b) return {FlatInterval::final_ray, a, Rat(0)};
    return {FlatInterval::segment, a, *b};
}

// Interval rewrite: x(t) <- v on [a, b).
struct REditInterval {
    Rat a, b;
    Point v;
};

// Interval-train rewrite: x(t) <- v on [a + k*step, b + k*step) for every k >= 0.
struct RTrainEdit {
    Rat a, b, step;
    Point v;
};

inline RealSignal r_edit(const RealSignal& raw, const std::vector<REditInterval>& ivs,
                         const std::vector<RTrainEdit>& trains) {
    RealSignal sig = r_canonicalize(raw);
    for (const REditInterval& e : ivs) {
        if (!(e.a < e.b)) throw DomainError("edit interval must be nonempty");
        if (e.v.width != sig.width) throw WidthError(sig.width, e.v.width);
    }
    for (const RTrainEdit& e : trains) {
        if (!(e.a < e.b)) throw DomainError("train interval must be nonempty");
        if (!(Rat(0) < e.step)) throw DomainError("train step must be positive");
        if (e.b - e.a > e.step)
            throw RepresentationError("train intervals overlap their successors");
        if (e.v.width != sig.width) throw WidthError(sig.width, e.v.width);
    }

    // Plain intervals beat trains everywhere; within each kind, later entries win.
    auto value = [&](const Rat& t) -> Point {
        for (auto it = ivs.rbegin(); it != ivs.rend(); ++it)
            if (!(t < it->a) && t < it->b) return it->v;
        for (auto it = trains.rbegin(); it != trains.rend(); ++it) {
            if (t < it->a) continue;
            if (rat_mod(t - it->a, it->step) < it->b - it->a) return it->v;
        }
        return r_value_at(sig, t);
    };

    std::optional<Rat> period;
    if (sig.tail) period = sig.tail->period;
    for (const RTrainEdit& e : trains) {
        period = period ? rat_lcm(*period, e.step) : e.step;
        if (period->num > 1000000)
            throw RepresentationError("combined repeating structure is too coarse to close");
    }

    Rat A = sig.tail ? sig.tail->anchor : Rat(0);
    if (!sig.transient.empty() && A < sig.transient.back().first)
        A = sig.transient.back().first;
    for (const REditInterval& e : ivs)
        if (A < e.b) A = e.b;
    for (const RTrainEdit& e : trains)
        if (A < e.a) A = e.a;

    // Candidate cut times: wherever the base or any rewrite may switch value.
    auto cuts_in = [&](const Rat& lo, const Rat& hi) {
        std::vector<Rat> cuts = r_change_points_in(sig, lo, hi);
        auto add = [&](const Rat& t) {
            if (!(t < lo) && t < hi) cuts.push_back(t);
        };
        for (const REditInterval& e : ivs) {
            add(e.a);
            add(e.b);
        }
        for (const RTrainEdit& e : trains) {
            if (hi <= e.a) continue;
            long long kfirst = ((lo - e.a) / e.step).floor() - 1;
            if (kfirst < 0) kfirst = 0;
            for (long long k = kfirst;; ++k) {
                Rat base = e.a + Rat(k) * e.step;
                if (!(base < hi)) break;
                add(base);
                add(base + (e.b - e.a));
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        return cuts;
    };

    Rat lo = A;
    if (sig.tail && sig.tail->anchor < lo) lo = sig.tail->anchor;
    if (!sig.transient.empty() && sig.transient.front().first < lo)
        lo = sig.transient.front().first;
    for (const REditInterval& e : ivs)
        if (e.a < lo) lo = e.a;
    for (const RTrainEdit& e : trains)
        if (e.a < lo) lo = e.a;

    std::vector<std::pair<Rat, Point>> transient;
    for (const Rat& c : cuts_in(lo, A)) transient.push_back({c, value(c)});
    if (!period) {
        transient.push_back({A, value(A)});
        return make_rsignal(sig.width, sig.initial, std::move(transient), std::nullopt);
    }
    Tail tail;
    tail.anchor = A;
    tail.period = *period;
    tail.pattern.push_back({Rat(0), value(A)});
    for (const Rat& c : cuts_in(A, A + *period))
        if (A < c) tail.pattern.push_back({c - A, value(c)});
    return make_rsignal(sig.width, sig.initial, std::move(transient), std::move(tail));
}

// Move the first change of the signal by eps: positive values stretch the
// initial ray, negative values start the signal earlier with its first value.
inline RealSignal shift_initial_time(const RealSignal& raw, const Rat& eps) {
    RealSignal sig = r_canonicalize(raw);
    auto first = r_first_change(sig);
    if (!first) throw DomainError("constant signal has no initial time to move");
    if (eps == Rat(0)) throw DomainError("shift must be nonzero");
    Rat t0 = *first;
    if (Rat(0) < eps) {
        FlatInterval next = flat_interval(sig, t0);
        if (next.kind == FlatInterval::segment && !(eps < next.b - next.a))
            throw DomainError("shift of " + to_string(eps) +
                              " swallows the change at " + to_string(next.b));
        return r_edit(sig, {{t0, t0 + eps, sig.initial}}, {});
    }
    return r_edit(sig, {{t0 + eps, t0, r_value_at(sig, t0)}}, {});
}

}
