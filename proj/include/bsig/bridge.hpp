#pragma once

#include "dsignal.hpp"
#include "rsignal.hpp"

namespace bsig {

// Lay the lasso out on the uniform grid t0 + k*h.
inline RealSignal embed(const DiscreteSignal& raw, const Rat& t0, const Rat& h) {
    if (!(Rat(0) < h)) throw DomainError("grid step must be positive");
    DiscreteSignal sig = d_canonicalize(raw);
    std::vector<std::pair<Rat, Point>> transient;
    for (long long k = 0; k < sig.anchor(); ++k)
        transient.push_back({t0 + Rat(k) * h, sig.prefix[k + 1]});
    Tail tail;
    tail.anchor = t0 + Rat(sig.anchor()) * h;
    tail.period = Rat((long long)sig.cycle.size()) * h;
    for (size_t i = 0; i < sig.cycle.size(); ++i)
        tail.pattern.push_back({Rat((long long)i) * h, sig.cycle[i]});
    return make_rsignal(sig.width, d_value_at(sig, -1), std::move(transient),
                        std::move(tail));
}

// Read the signal at the grid times t0 + k*h; x̂(-1) is the initial value.
// With phase_check, the grid must refine the signal's breakpoints, so that
// embedding the sample reproduces the signal.
inline DiscreteSignal sample(const RealSignal& raw, const Rat& t0, const Rat& h,
                             bool phase_check = true) {
    if (!(Rat(0) < h)) throw DomainError("grid step must be positive");
    RealSignal sig = r_canonicalize(raw);

    Rat lo = sig.tail ? sig.tail->anchor : Rat(0);
    if (!sig.transient.empty() && sig.transient.front().first < lo)
        lo = sig.transient.front().first;
    Rat hi = sig.tail ? sig.tail->anchor + Rat(2) * sig.tail->period
                      : (sig.transient.empty() ? lo : sig.transient.back().first + Rat(1));
    std::vector<Rat> changes = r_change_points_in(sig, lo - Rat(1), hi);

    if (phase_check) {
        if (sig.tail) {
            Rat q = sig.tail->period / h;
            if (q.den != 1 || q.num < 1)
                throw GridMismatch("tail period " + to_string(sig.tail->period) +
                                   " is not a whole number of grid steps of " + to_string(h));
        }
        for (const Rat& tau : changes) {
            Rat q = (tau - t0) / h;
            if (q.den != 1 || q.num < 0)
                throw GridMismatch("breakpoint at " + to_string(tau) +
                                   " falls inside a grid cell");
        }
    }

    std::vector<Point> prefix = {sig.initial};
    if (!sig.tail) {
        long long k_end = 0;
        if (!changes.empty()) {
            k_end = ((changes.back() - t0) / h).ceil();
            if (k_end < 0) k_end = 0;
        }
        for (long long k = 0; k < k_end; ++k)
            prefix.push_back(r_value_at(sig, t0 + Rat(k) * h));
        Point final_v = r_value_at(sig, t0 + Rat(k_end) * h);
        return make_dsignal(sig.width, std::move(prefix), {final_v});
    }

    const Rat& T = sig.tail->period;
    Rat ratio = T / rat_gcd(T, h);
    long long P = ratio.num;  // h * P is the least common multiple of h and T
    Rat ka_steps = (sig.tail->anchor - t0) / h;
    long long k_a = ka_steps.ceil();
    if (k_a < 0) k_a = 0;
    for (long long k = 0; k < k_a; ++k)
        prefix.push_back(r_value_at(sig, t0 + Rat(k) * h));
    std::vector<Point> cycle;
    for (long long k = k_a; k < k_a + P; ++k)
        cycle.push_back(r_value_at(sig, t0 + Rat(k) * h));
    return make_dsignal(sig.width, std::move(prefix), std::move(cycle));
}

}
