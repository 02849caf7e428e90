#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include <bsig/dsignal.hpp>
#include <bsig/rsignal.hpp>

namespace corpus {

using bsig::DiscreteSignal;
using bsig::Point;
using bsig::Rat;
using bsig::RealSignal;
using bsig::Tail;
using bsig::TailSeg;

inline Point random_point(std::mt19937& rng, int width) {
    std::uniform_int_distribution<uint64_t> bits(0, (width == 64) ? ~0ull : ((1ull << width) - 1));
    return Point{width, bits(rng)};
}

inline DiscreteSignal random_dsignal(std::mt19937& rng, int max_width = 3,
                                     int max_prefix = 5, int max_cycle = 8) {
    std::uniform_int_distribution<int> wd(1, max_width);
    int width = wd(rng);
    std::uniform_int_distribution<int> pd(0, max_prefix);
    std::uniform_int_distribution<int> cd(1, max_cycle);
    std::vector<Point> prefix, cycle;
    int np = pd(rng), nc = cd(rng);
    for (int i = 0; i < np; ++i) prefix.push_back(random_point(rng, width));
    for (int i = 0; i < nc; ++i) cycle.push_back(random_point(rng, width));
    return bsig::make_dsignal(width, prefix, cycle);
}

inline Rat random_step(std::mt19937& rng) {
    static const int dens[] = {1, 2, 3, 4, 6};
    std::uniform_int_distribution<int> nd(1, 4);
    std::uniform_int_distribution<int> dd(0, 4);
    return Rat(nd(rng), dens[dd(rng)]);
}

inline RealSignal random_rsignal(std::mt19937& rng, int max_width = 2,
                                 int max_transient = 6, int max_tail_segs = 4) {
    std::uniform_int_distribution<int> wd(1, max_width);
    int width = wd(rng);
    Point initial = random_point(rng, width);

    std::uniform_int_distribution<int> td(0, max_transient);
    int nt = td(rng);
    std::vector<std::pair<Rat, Point>> transient;
    std::uniform_int_distribution<int> start_num(-3, 3);
    Rat t = Rat(start_num(rng));
    Point prev = initial;
    for (int i = 0; i < nt; ++i) {
        Point v = random_point(rng, width);
        if (!(v == prev)) {
            transient.push_back({t, v});
            prev = v;
        }
        t = t + random_step(rng);
    }

    std::uniform_int_distribution<int> coin(0, 9);
    std::optional<Tail> tail;
    if (coin(rng) < 8) {
        Rat anchor = t + random_step(rng);
        std::uniform_int_distribution<int> sd(1, max_tail_segs);
        int ns = sd(rng);
        std::vector<TailSeg> pattern;
        Rat off = Rat(0);
        for (int i = 0; i < ns; ++i) {
            Point v = random_point(rng, width);
            if (i == 0 || !(v == pattern.back().value)) pattern.push_back({off, v});
            off = off + random_step(rng);
        }
        Rat period = off;
        tail = Tail{anchor, period, pattern};
    }
    return bsig::make_rsignal(width, initial, transient, tail);
}

inline std::vector<long long> p_candidates(int p_bound = 12) {
    std::vector<long long> ps;
    for (long long p = 1; p <= p_bound; ++p) ps.push_back(p);
    return ps;
}

inline std::vector<Rat> t_candidates(const RealSignal& sig, std::size_t cap = 12) {
    std::vector<Rat> out;
    auto push = [&out](const Rat& T) {
        if (T <= Rat(0)) return;
        if (std::find(out.begin(), out.end(), T) == out.end()) out.push_back(T);
    };
    if (sig.tail) {
        const Rat T = sig.tail->period;
        push(T);
        push(T + T);
        for (long long d = 2; d <= 4; ++d) {
            Rat q = T / Rat(d);
            if (rat_mod(T, q) == Rat(0)) push(q);
        }
        Rat lo = sig.tail->anchor - T;
        Rat hi = sig.tail->anchor + T + T;
        auto cuts = bsig::r_change_points_in(sig, lo, hi);
        for (std::size_t i = 0; i < cuts.size() && out.size() < cap; ++i)
            for (std::size_t j = i + 1; j < cuts.size() && out.size() < cap; ++j)
                push(cuts[j] - cuts[i]);
    } else {
        push(Rat(1));
        push(Rat(1, 2));
        push(Rat(3, 2));
        push(Rat(2));
    }
    if (out.size() > cap) out.resize(cap);
    return out;
}

}
