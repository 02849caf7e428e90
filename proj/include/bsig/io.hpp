#pragma once

#include "analysis.hpp"
#include "flow.hpp"
#include "oracle.hpp"
#include "perturb.hpp"

#include "json.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace bsig {

namespace detail {

struct SpecLine {
    int no;
    std::string text;
};

inline std::vector<SpecLine> spec_lines(const std::string& text) {
    std::vector<SpecLine> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        out.push_back({no, line.substr(b, e - b + 1)});
    }
    return out;
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline ParseError at_line(int no, const std::string& msg) {
    return ParseError("line " + std::to_string(no) + ": " + msg);
}

inline bool key_value(const std::string& tok, const char* key, std::string& val) {
    size_t len = std::char_traits<char>::length(key);
    if (tok.compare(0, len, key) != 0 || tok.size() <= len || tok[len] != '=') return false;
    val = tok.substr(len + 1);
    return true;
}

inline long long parse_int(const std::string& s, int line_no) {
    try {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw at_line(line_no, "expected an integer, got '" + s + "'");
    }
}

inline Rat parse_rat_at(const std::string& s, int line_no) {
    try {
        return parse_rat(s);
    } catch (const Error& e) {
        throw at_line(line_no, e.what());
    }
}

// width 0 skips the width check (used where the width is not known yet).
inline Point parse_point_at(const std::string& s, int width, int line_no) {
    try {
        Point p = parse_point(s);
        if (width > 0 && p.width != width)
            throw WidthError("value '" + s + "' should have " + std::to_string(width) +
                             " bits");
        return p;
    } catch (const Error& e) {
        throw at_line(line_no, e.what());
    }
}

// Splits "<time>:<bits>" into its halves.
inline std::pair<Rat, Point> parse_timed_point(const std::string& tok, int width,
                                               int line_no) {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
        throw at_line(line_no, "expected <time>:<bits>, got '" + tok + "'");
    return {parse_rat_at(tok.substr(0, colon), line_no),
            parse_point_at(tok.substr(colon + 1), width, line_no)};
}

inline int parse_header(const std::vector<SpecLine>& lines, const char* kind) {
    if (lines.empty()) throw ParseError(std::string("empty input, expected a ") + kind + " file");
    auto toks = split_ws(lines[0].text);
    if (toks.empty() || toks[0] != kind)
        throw at_line(lines[0].no, std::string("expected '") + kind + " n=<width>'");
    std::string val;
    if (toks.size() != 2 || !key_value(toks[1], "n", val))
        throw at_line(lines[0].no, std::string("expected '") + kind + " n=<width>'");
    long long w = parse_int(val, lines[0].no);
    if (w < 1 || w > 64) throw at_line(lines[0].no, "width out of range [1, 64]");
    return (int)w;
}

}

inline std::string file_kind(const std::string& text) {
    auto lines = detail::spec_lines(text);
    if (lines.empty()) return "";
    auto toks = detail::split_ws(lines[0].text);
    if (toks.empty()) return "";
    std::string head = toks[0];
    if (!head.empty() && head.back() == ':') head.pop_back();
    return head;
}

inline DiscreteSignal parse_dsignal(const std::string& text) {
    auto lines = detail::spec_lines(text);
    int width = detail::parse_header(lines, "dsignal");
    std::vector<Point> prefix, cycle;
    bool saw_cycle = false;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto toks = detail::split_ws(lines[i].text);
        std::vector<Point>* bucket = nullptr;
        if (toks[0] == "prefix:")
            bucket = &prefix;
        else if (toks[0] == "cycle:") {
            bucket = &cycle;
            saw_cycle = true;
        } else
            throw detail::at_line(lines[i].no, "expected 'prefix:' or 'cycle:'");
        for (size_t j = 1; j < toks.size(); ++j)
            bucket->push_back(detail::parse_point_at(toks[j], width, lines[i].no));
    }
    if (!saw_cycle || cycle.empty())
        throw ParseError("a dsignal needs a nonempty 'cycle:' line");
    return make_dsignal(width, std::move(prefix), std::move(cycle));
}

inline RealSignal parse_rsignal(const std::string& text) {
    auto lines = detail::spec_lines(text);
    int width = detail::parse_header(lines, "rsignal");
    std::optional<Point> initial;
    std::vector<std::pair<Rat, Point>> transient;
    std::optional<Tail> tail;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto toks = detail::split_ws(lines[i].text);
        int no = lines[i].no;
        if (toks[0] == "initial:") {
            if (toks.size() != 2) throw detail::at_line(no, "expected 'initial: <bits>'");
            initial = detail::parse_point_at(toks[1], width, no);
        } else if (toks[0] == "transient:") {
            for (size_t j = 1; j < toks.size(); ++j)
                transient.push_back(detail::parse_timed_point(toks[j], width, no));
        } else if (toks[0] == "tail:") {
            Tail t;
            bool saw_anchor = false, saw_period = false, in_pattern = false;
            for (size_t j = 1; j < toks.size(); ++j) {
                std::string val;
                if (detail::key_value(toks[j], "anchor", val)) {
                    t.anchor = detail::parse_rat_at(val, no);
                    saw_anchor = true;
                } else if (detail::key_value(toks[j], "period", val)) {
                    t.period = detail::parse_rat_at(val, no);
                    saw_period = true;
                } else if (toks[j] == "pattern:") {
                    in_pattern = true;
                } else if (in_pattern) {
                    auto [off, v] = detail::parse_timed_point(toks[j], width, no);
                    t.pattern.push_back({off, v});
                } else {
                    throw detail::at_line(no, "unexpected token '" + toks[j] + "' in tail");
                }
            }
            if (!saw_anchor || !saw_period || t.pattern.empty())
                throw detail::at_line(no, "tail needs anchor=, period= and a pattern");
            tail = std::move(t);
        } else {
            throw detail::at_line(no, "expected 'initial:', 'transient:' or 'tail:'");
        }
    }
    if (!initial) throw ParseError("an rsignal needs an 'initial:' line");
    try {
        return make_rsignal(width, *initial, std::move(transient), std::move(tail));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

inline DWindow parse_dwindow(const std::string& text) {
    auto lines = detail::spec_lines(text);
    int width = detail::parse_header(lines, "dwindow");
    std::optional<long long> start, end;
    std::vector<Point> values;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto toks = detail::split_ws(lines[i].text);
        int no = lines[i].no;
        if (toks[0] == "start:" && toks.size() == 2)
            start = detail::parse_int(toks[1], no);
        else if (toks[0] == "end:" && toks.size() == 2)
            end = detail::parse_int(toks[1], no);
        else if (toks[0] == "values:")
            for (size_t j = 1; j < toks.size(); ++j)
                values.push_back(detail::parse_point_at(toks[j], width, no));
        else
            throw detail::at_line(no, "expected 'start:', 'values:' or 'end:'");
    }
    if (!start) throw ParseError("a dwindow needs a 'start:' line");
    if (values.empty()) throw ParseError("a dwindow needs a nonempty 'values:' line");
    if (end && *end != *start + (long long)values.size())
        throw ParseError("window end does not match start plus value count");
    return make_dwindow(width, *start, std::move(values));
}

inline RWindow parse_rwindow(const std::string& text) {
    auto lines = detail::spec_lines(text);
    int width = detail::parse_header(lines, "rwindow");
    std::optional<Rat> start, end;
    std::vector<std::pair<Rat, Point>> pieces;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto toks = detail::split_ws(lines[i].text);
        int no = lines[i].no;
        if (toks[0] == "start:" && toks.size() == 2)
            start = detail::parse_rat_at(toks[1], no);
        else if (toks[0] == "end:" && toks.size() == 2)
            end = detail::parse_rat_at(toks[1], no);
        else if (toks[0] == "pieces:")
            for (size_t j = 1; j < toks.size(); ++j)
                pieces.push_back(detail::parse_timed_point(toks[j], width, no));
        else
            throw detail::at_line(no, "expected 'start:', 'pieces:' or 'end:'");
    }
    if (!start || !end) throw ParseError("an rwindow needs 'start:' and 'end:' lines");
    try {
        return make_rwindow(width, *start, *end, std::move(pieces));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

struct FlowSpec {
    BooleanFunction phi;
    ComputationFunction alpha;
    Point init;
};

inline FlowSpec parse_flow(const std::string& text) {
    auto lines = detail::spec_lines(text);
    std::optional<std::vector<std::string>> exprs;
    std::vector<Point> aprefix, acycle;
    std::optional<std::string> init_bits;
    bool saw_alpha = false;
    size_t i = 0;
    if (!lines.empty() && lines[0].text == "flow") i = 1;
    for (; i < lines.size(); ++i) {
        const std::string& s = lines[i].text;
        int no = lines[i].no;
        if (s.rfind("phi:", 0) == 0) {
            std::vector<std::string> parts;
            std::string body = s.substr(4);
            size_t pos = 0;
            while (pos <= body.size()) {
                size_t semi = body.find(';', pos);
                std::string piece = body.substr(pos, semi == std::string::npos
                                                         ? std::string::npos
                                                         : semi - pos);
                size_t b = piece.find_first_not_of(" \t");
                if (b != std::string::npos) {
                    size_t e = piece.find_last_not_of(" \t");
                    parts.push_back(piece.substr(b, e - b + 1));
                }
                if (semi == std::string::npos) break;
                pos = semi + 1;
            }
            if (parts.empty()) throw detail::at_line(no, "phi needs at least one expression");
            exprs = std::move(parts);
        } else if (s.rfind("alpha:", 0) == 0) {
            saw_alpha = true;
            auto toks = detail::split_ws(s.substr(6));
            std::vector<Point>* bucket = nullptr;
            for (const std::string& tok : toks) {
                std::string val;
                if (detail::key_value(tok, "prefix", val)) {
                    bucket = &aprefix;
                    if (!val.empty()) bucket->push_back(detail::parse_point_at(val, 0, no));
                } else if (detail::key_value(tok, "cycle", val)) {
                    bucket = &acycle;
                    if (!val.empty()) bucket->push_back(detail::parse_point_at(val, 0, no));
                } else if (bucket) {
                    bucket->push_back(detail::parse_point_at(tok, 0, no));
                } else {
                    throw detail::at_line(no, "alpha tokens must follow prefix= or cycle=");
                }
            }
        } else if (s.rfind("init:", 0) == 0) {
            auto toks = detail::split_ws(s.substr(5));
            if (toks.size() != 1) throw detail::at_line(no, "expected 'init: <bits>'");
            init_bits = toks[0];
        } else {
            throw detail::at_line(no, "expected 'phi:', 'alpha:' or 'init:'");
        }
    }
    if (!exprs) throw ParseError("a flow needs a 'phi:' line");
    if (!saw_alpha || acycle.empty()) throw ParseError("a flow needs an 'alpha:' line with a cycle");
    if (!init_bits) throw ParseError("a flow needs an 'init:' line");
    FlowSpec spec{parse_phi(*exprs), ComputationFunction{}, Point(1, 0)};
    int n = spec.phi.width;
    auto fix_width = [&](std::vector<Point>& v) {
        for (Point& p : v)
            if (p.width != n) throw ParseError("alpha width does not match phi");
    };
    fix_width(aprefix);
    fix_width(acycle);
    try {
        spec.alpha = make_computation(n, std::move(aprefix), std::move(acycle));
        spec.init = parse_point(*init_bits);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    if (spec.init.width != n) throw ParseError("init width does not match phi");
    return spec;
}

inline std::string to_text(const DiscreteSignal& sig) {
    std::ostringstream o;
    o << "dsignal n=" << sig.width << "\n";
    o << "prefix:";
    for (const Point& p : sig.prefix) o << ' ' << to_string(p);
    o << "\n";
    o << "cycle:";
    for (const Point& p : sig.cycle) o << ' ' << to_string(p);
    o << "\n";
    return o.str();
}

inline std::string to_text(const RealSignal& sig) {
    std::ostringstream o;
    o << "rsignal n=" << sig.width << "\n";
    o << "initial: " << to_string(sig.initial) << "\n";
    o << "transient:";
    for (const auto& [t, v] : sig.transient) o << ' ' << to_string(t) << ':' << to_string(v);
    o << "\n";
    if (sig.tail) {
        o << "tail: anchor=" << to_string(sig.tail->anchor)
          << " period=" << to_string(sig.tail->period) << " pattern:";
        for (const TailSeg& seg : sig.tail->pattern)
            o << ' ' << to_string(seg.off) << ':' << to_string(seg.value);
        o << "\n";
    }
    return o.str();
}

// --- edit scripts -----------------------------------------------------------

struct EditScript {
    std::vector<DEdit> singles;
    std::vector<DProgEdit> progs;
    std::vector<REditInterval> intervals;
    std::vector<RTrainEdit> trains;
    std::vector<Rat> shifts;
};

inline EditScript parse_edit_script(const std::string& text) {
    EditScript script;
    std::vector<std::string> commands;
    std::string cur;
    for (char c : text) {
        if (c == ';' || c == '\n') {
            commands.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    commands.push_back(cur);
    int no = 0;
    for (const std::string& cmd : commands) {
        ++no;
        auto toks = detail::split_ws(cmd);
        if (toks.empty()) continue;
        auto need = [&](size_t n) {
            if (toks.size() != n)
                throw detail::at_line(no, "wrong number of arguments for '" + toks[0] + "'");
        };
        auto field = [&](size_t i, const char* key) {
            std::string val;
            if (!detail::key_value(toks[i], key, val))
                throw detail::at_line(no, std::string("expected ") + key + "=<...>, got '" +
                                              toks[i] + "'");
            return val;
        };
        auto bit_field = [&](size_t i) {
            try {
                return parse_point(field(i, "v"));
            } catch (const Error& e) {
                throw detail::at_line(no, e.what());
            }
        };
        if (toks[0] == "set") {
            need(3);
            script.singles.push_back(
                {detail::parse_int(field(1, "k"), no), bit_field(2)});
        } else if (toks[0] == "set-progression") {
            need(4);
            script.progs.push_back({detail::parse_int(field(1, "k0"), no),
                                    detail::parse_int(field(2, "d"), no), bit_field(3)});
        } else if (toks[0] == "set-interval") {
            need(3);
            const std::string& iv = toks[1];
            auto comma = iv.find(',');
            if (iv.size() < 5 || iv.front() != '[' || iv.back() != ')' ||
                comma == std::string::npos)
                throw detail::at_line(no, "expected [<t>,<t>), got '" + iv + "'");
            script.intervals.push_back(
                {detail::parse_rat_at(iv.substr(1, comma - 1), no),
                 detail::parse_rat_at(iv.substr(comma + 1, iv.size() - comma - 2), no),
                 bit_field(2)});
        } else if (toks[0] == "set-train") {
            need(5);
            script.trains.push_back({detail::parse_rat_at(field(1, "a"), no),
                                     detail::parse_rat_at(field(2, "b"), no),
                                     detail::parse_rat_at(field(3, "step"), no),
                                     bit_field(4)});
        } else if (toks[0] == "shift-t0") {
            need(2);
            script.shifts.push_back(detail::parse_rat_at(toks[1], no));
        } else {
            throw detail::at_line(no, "unknown edit '" + toks[0] + "'");
        }
    }
    return script;
}

inline DiscreteSignal apply_script(const DiscreteSignal& sig, const EditScript& s) {
    if (!s.intervals.empty() || !s.trains.empty() || !s.shifts.empty())
        throw DomainError("interval edits and time shifts apply to real signals");
    return d_edit(sig, s.singles, s.progs);
}

inline RealSignal apply_script(const RealSignal& sig, const EditScript& s) {
    if (!s.singles.empty() || !s.progs.empty())
        throw DomainError("instant edits apply to discrete signals");
    RealSignal out = (s.intervals.empty() && s.trains.empty())
                         ? r_canonicalize(sig)
                         : r_edit(sig, s.intervals, s.trains);
    for (const Rat& eps : s.shifts) out = shift_initial_time(out, eps);
    return out;
}

// --- report rendering -------------------------------------------------------

inline std::string render(const PeriodSet& p) {
    switch (p.kind) {
        case PeriodSet::empty_set: return "none";
        case PeriodSet::all_positive: return "all";
        case PeriodSet::multiples_int: return "multiples of " + std::to_string(p.p);
        case PeriodSet::multiples_rat: return "multiples of " + to_string(p.T);
    }
    return "none";
}

inline std::string render(const LimitSet& l) {
    switch (l.kind) {
        case LimitSet::empty_set: return "none";
        case LimitSet::all_times: return "all";
        case LimitSet::from_int: return "from " + std::to_string(l.k);
        case LimitSet::from_rat: return "from " + to_string(l.t);
    }
    return "none";
}

inline std::string render(const RInterval& iv) {
    return "[" + to_string(iv.a) + ", " + to_string(iv.b) + ")";
}

inline std::string render(const EvPeriodicIntSet& s) {
    std::ostringstream o;
    bool some = false;
    if (!s.exceptional.empty()) {
        o << "instants";
        for (long long k : s.exceptional) o << ' ' << k;
        some = true;
    }
    if (!s.residues.empty()) {
        if (some) o << " then ";
        o << "from " << s.anchor << " every " << s.period << " at";
        for (long long r : s.residues) o << ' ' << r;
        some = true;
    }
    if (!some) return "empty";
    return o.str();
}

inline std::string render(const EvPeriodicIntervalSet& s) {
    if (s.all) return "all times";
    std::ostringstream o;
    bool some = false;
    if (s.initial_ray) {
        o << "(-inf, " << to_string(*s.initial_ray) << ")";
        some = true;
    }
    for (const RInterval& iv : s.transient_intervals) {
        if (some) o << ' ';
        o << render(iv);
        some = true;
    }
    if (s.tail) {
        if (some) o << ' ';
        o << "then from " << to_string(s.tail->anchor) << " every "
          << to_string(s.tail->period) << ":";
        for (const RInterval& iv : s.tail->pattern) o << ' ' << render(iv);
        some = true;
    }
    if (!some) return "empty";
    return o.str();
}

namespace detail {

inline void render_point_block(std::ostringstream& o, const DPointAnalysis& a) {
    o << "point " << to_string(a.mu) << ":\n";
    o << "  support: " << render(a.support) << "\n";
    o << "  periods: " << render(a.periods) << "\n";
    o << "  limits: " << render(a.limits) << "\n";
    o << "  periodic_point: " << (a.is_periodic_point ? "yes" : "no") << "\n";
    if (a.prime_period) o << "  prime_period: " << *a.prime_period << "\n";
    if (!a.instants.empty()) {
        o << "  instants at prime limit:";
        for (long long k : a.instants) o << ' ' << k;
        o << "\n";
    }
}

inline void render_point_block(std::ostringstream& o, const RPointAnalysis& a) {
    o << "point " << to_string(a.mu) << ":\n";
    o << "  support: " << render(a.support) << "\n";
    o << "  periods: " << render(a.periods) << "\n";
    o << "  limits: " << render(a.limits) << "\n";
    o << "  periodic_point: " << (a.is_periodic_point ? "yes" : "no") << "\n";
    if (a.prime_period) o << "  prime_period: " << to_string(*a.prime_period) << "\n";
    if (!a.intervals.empty()) {
        o << "  intervals at prime limit:";
        for (const RInterval& iv : a.intervals) o << ' ' << render(iv);
        o << "\n";
    }
}

}

inline std::string render_text(const DSignalAnalysis& an) {
    std::ostringstream o;
    o << "classification: " << to_string(an.classification);
    if (an.periods.kind == PeriodSet::multiples_int)
        o << ", prime_period: " << an.periods.p;
    o << "\n";
    o << "periods: " << render(an.periods) << "\n";
    o << "limits: " << render(an.limits) << "\n";
    for (const auto& [mu, pa] : an.per_point) detail::render_point_block(o, pa);
    return o.str();
}

inline std::string render_text(const RSignalAnalysis& an) {
    std::ostringstream o;
    o << "classification: " << to_string(an.classification);
    if (an.periods.kind == PeriodSet::multiples_rat)
        o << ", prime_period: " << to_string(an.periods.T);
    o << "\n";
    o << "periods: " << render(an.periods) << "\n";
    o << "limits: " << render(an.limits) << "\n";
    if (an.window)
        o << "window: " << render(*an.window) << "\n";
    for (const auto& [mu, pa] : an.per_point) detail::render_point_block(o, pa);
    return o.str();
}

inline std::string render_text(const DPointAnalysis& a) {
    std::ostringstream o;
    detail::render_point_block(o, a);
    return o.str();
}

inline std::string render_text(const RPointAnalysis& a) {
    std::ostringstream o;
    detail::render_point_block(o, a);
    return o.str();
}

namespace detail {

inline nlohmann::ordered_json point_json(const DPointAnalysis& a) {
    nlohmann::ordered_json j;
    j["value"] = to_string(a.mu);
    j["support"] = render(a.support);
    j["periods"] = render(a.periods);
    j["limits"] = render(a.limits);
    j["periodic_point"] = a.is_periodic_point;
    if (a.prime_period) j["prime_period"] = std::to_string(*a.prime_period);
    j["instants_at_prime_limit"] = a.instants;
    return j;
}

inline nlohmann::ordered_json point_json(const RPointAnalysis& a) {
    nlohmann::ordered_json j;
    j["value"] = to_string(a.mu);
    j["support"] = render(a.support);
    j["periods"] = render(a.periods);
    j["limits"] = render(a.limits);
    j["periodic_point"] = a.is_periodic_point;
    if (a.prime_period) j["prime_period"] = to_string(*a.prime_period);
    nlohmann::ordered_json ivs = nlohmann::ordered_json::array();
    for (const RInterval& iv : a.intervals) ivs.push_back(render(iv));
    j["intervals_at_prime_limit"] = ivs;
    return j;
}

}

inline nlohmann::ordered_json to_json(const DPointAnalysis& a) { return detail::point_json(a); }
inline nlohmann::ordered_json to_json(const RPointAnalysis& a) { return detail::point_json(a); }

inline nlohmann::ordered_json to_json(const DSignalAnalysis& an) {
    nlohmann::ordered_json j;
    j["domain"] = "discrete";
    j["classification"] = to_string(an.classification);
    if (an.periods.kind == PeriodSet::multiples_int)
        j["prime_period"] = std::to_string(an.periods.p);
    j["periods"] = render(an.periods);
    j["limits"] = render(an.limits);
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& [mu, pa] : an.per_point) pts.push_back(detail::point_json(pa));
    j["points"] = pts;
    return j;
}

inline nlohmann::ordered_json to_json(const RSignalAnalysis& an) {
    nlohmann::ordered_json j;
    j["domain"] = "real";
    j["classification"] = to_string(an.classification);
    if (an.periods.kind == PeriodSet::multiples_rat)
        j["prime_period"] = to_string(an.periods.T);
    j["periods"] = render(an.periods);
    j["limits"] = render(an.limits);
    if (an.window) j["window"] = render(*an.window);
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& [mu, pa] : an.per_point) pts.push_back(detail::point_json(pa));
    j["points"] = pts;
    return j;
}

}
