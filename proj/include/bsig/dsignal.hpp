#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "point.hpp"

namespace bsig {

// Discrete-time signal N_ -> B^n in lasso form. prefix holds the values at
// k = -1, 0, ..., prefix.size()-2; from anchor = prefix.size()-1 on the value
// at k is cycle[(k - anchor) mod cycle.size()].
struct DiscreteSignal {
    int width = 1;
    std::vector<Point> prefix;
    std::vector<Point> cycle;

    long long anchor() const { return (long long)prefix.size() - 1; }
};

inline DiscreteSignal d_canonicalize(DiscreteSignal sig);

inline DiscreteSignal make_dsignal(int width, std::vector<Point> prefix,
                                   std::vector<Point> cycle) {
    if (cycle.empty())
        throw DomainError("discrete signal needs a nonempty cycle");
    for (const Point& p : prefix)
        if (p.width != width)
            throw WidthError("prefix value width " + std::to_string(p.width) +
                             " does not match signal width " + std::to_string(width));
    for (const Point& p : cycle)
        if (p.width != width)
            throw WidthError("cycle value width " + std::to_string(p.width) +
                             " does not match signal width " + std::to_string(width));
    DiscreteSignal sig;
    sig.width = width;
    sig.prefix = std::move(prefix);
    sig.cycle = std::move(cycle);
    return d_canonicalize(std::move(sig));
}

inline Point d_value_at(const DiscreteSignal& sig, long long k) {
    if (k < -1)
        throw DomainError("discrete time " + std::to_string(k) + " below -1");
    long long idx = k + 1;
    if (idx < (long long)sig.prefix.size())
        return sig.prefix[idx];
    long long L = (long long)sig.cycle.size();
    return sig.cycle[(k - sig.anchor()) % L];
}

// Smallest d with cycle[i] == cycle[(i+d) mod L] for all i; always divides L.
inline long long minimal_rotation_period(const std::vector<Point>& cycle) {
    long long L = (long long)cycle.size();
    for (long long d = 1; d <= L; ++d) {
        if (L % d != 0) continue;
        bool ok = true;
        for (long long i = 0; i < L && ok; ++i)
            ok = cycle[i] == cycle[(i + d) % L];
        if (ok) return d;
    }
    return L;
}

inline DiscreteSignal d_canonicalize(DiscreteSignal sig) {
    long long d = minimal_rotation_period(sig.cycle);
    sig.cycle.resize(d);
    while (!sig.prefix.empty() && sig.prefix.back() == sig.cycle.back()) {
        sig.prefix.pop_back();
        std::rotate(sig.cycle.rbegin(), sig.cycle.rbegin() + 1, sig.cycle.rend());
    }
    return sig;
}

inline bool d_equal(const DiscreteSignal& a, const DiscreteSignal& b) {
    DiscreteSignal ca = d_canonicalize(a), cb = d_canonicalize(b);
    return ca.width == cb.width && ca.prefix == cb.prefix && ca.cycle == cb.cycle;
}

// sigma^{k'}: result(k) = sig(k + k') for all k >= -1.
inline DiscreteSignal d_forget(const DiscreteSignal& sig, long long kp) {
    if (kp < 0)
        throw DomainError("forget offset must be >= 0");
    long long new_anchor = std::max(-1ll, sig.anchor() - kp);
    std::vector<Point> prefix, cycle;
    for (long long k = -1; k < new_anchor; ++k)
        prefix.push_back(d_value_at(sig, k + kp));
    for (long long i = 0; i < (long long)sig.cycle.size(); ++i)
        cycle.push_back(d_value_at(sig, new_anchor + i + kp));
    return make_dsignal(sig.width, std::move(prefix), std::move(cycle));
}

struct FinalTimeSetD {
    enum Kind { empty, from, all } kind = empty;
    long long k0 = 0;
};

struct DSummary {
    std::set<Point> orbit;
    std::set<Point> omega;
    long long omega_horizon = -1;
    Point initial_value;
    std::optional<Point> final_value;
    FinalTimeSetD final_time_set;
};

inline DSummary d_summarize(const DiscreteSignal& raw) {
    DiscreteSignal sig = d_canonicalize(raw);
    DSummary s;
    for (const Point& p : sig.cycle) s.omega.insert(p);
    s.orbit = s.omega;
    for (const Point& p : sig.prefix) s.orbit.insert(p);
    s.omega_horizon = -1;
    for (long long i = (long long)sig.prefix.size() - 1; i >= 0; --i) {
        if (!s.omega.count(sig.prefix[i])) {
            s.omega_horizon = i;  // value at k = i-1 is not recurrent
            break;
        }
    }
    s.initial_value = d_value_at(sig, -1);
    if (sig.cycle.size() == 1) {
        s.final_value = sig.cycle[0];
        if (sig.prefix.empty())
            s.final_time_set = {FinalTimeSetD::all, 0};
        else
            s.final_time_set = {FinalTimeSetD::from, sig.anchor()};
    } else {
        s.final_time_set = {FinalTimeSetD::empty, 0};
    }
    return s;
}

// Support set T_mu in closed form: member(k) for k >= anchor iff
// (k - anchor) mod period is in residues; below the anchor membership is the
// finite exceptional list.
struct EvPeriodicIntSet {
    std::vector<long long> exceptional;  // sorted, within [-1, anchor)
    long long anchor = -1;
    long long period = 1;
    std::vector<long long> residues;  // sorted, within [0, period)

    bool member(long long k) const {
        if (k < -1) return false;
        if (k >= anchor) {
            long long r = (k - anchor) % period;
            return std::binary_search(residues.begin(), residues.end(), r);
        }
        return std::binary_search(exceptional.begin(), exceptional.end(), k);
    }
};

inline EvPeriodicIntSet d_support_set(const DiscreteSignal& raw, const Point& mu) {
    DiscreteSignal sig = d_canonicalize(raw);
    if (mu.width != sig.width)
        throw WidthError("support query width " + std::to_string(mu.width) +
                         " does not match signal width " + std::to_string(sig.width));
    EvPeriodicIntSet s;
    s.anchor = sig.anchor();
    s.period = (long long)sig.cycle.size();
    for (long long i = 0; i < (long long)sig.cycle.size(); ++i)
        if (sig.cycle[i] == mu) s.residues.push_back(i);
    for (long long i = 0; i < (long long)sig.prefix.size(); ++i)
        if (sig.prefix[i] == mu) s.exceptional.push_back(i - 1);
    return s;
}

}
