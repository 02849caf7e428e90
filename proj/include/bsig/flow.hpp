#pragma once

#include "dsignal.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace bsig {

// Truth table of a coordinate-wise update rule on B^n, rows indexed by the
// integer encoding of the argument.
struct BooleanFunction {
    int width = 1;
    std::vector<Point> table;
};

inline BooleanFunction make_boolean_function(int width, std::vector<Point> table) {
    if (width < 1 || width > 20)
        throw DomainError("function width must be between 1 and 20");
    if (table.size() != ((size_t)1 << width))
        throw DomainError("truth table must have exactly 2^n rows");
    for (const Point& p : table)
        if (p.width != width) throw WidthError(width, p.width);
    return {width, std::move(table)};
}

// Which coordinates are recomputed at each step k >= 0: prefix[k] for small k,
// then the cycle repeats forever.
struct ComputationFunction {
    int width = 1;
    std::vector<Point> prefix;
    std::vector<Point> cycle;

    Point at(long long k) const {
        if (k < (long long)prefix.size()) return prefix[k];
        return cycle[(k - (long long)prefix.size()) % (long long)cycle.size()];
    }
};

inline ComputationFunction make_computation(int width, std::vector<Point> prefix,
                                            std::vector<Point> cycle) {
    if (cycle.empty()) throw DomainError("computation function needs a nonempty cycle");
    for (const Point& p : prefix)
        if (p.width != width) throw WidthError(width, p.width);
    for (const Point& p : cycle)
        if (p.width != width) throw WidthError(width, p.width);
    return {width, std::move(prefix), std::move(cycle)};
}

namespace detail {

struct PhiExpr {
    enum Kind { variable, negation, conjunction, disjunction, exclusive } kind;
    int index = 0;
    std::unique_ptr<PhiExpr> lhs, rhs;
};

// Recursive descent over one coordinate expression. Operators, tightest first:
// negation, product (explicit dot or plain adjacency), then union and xor at
// equal strength, left associative. Variables are mu1/x1 or the typeset forms.
class PhiParser {
  public:
    PhiParser(const std::string& text, int width) : s(text), n(width) {}

    std::unique_ptr<PhiExpr> parse() {
        auto e = parse_sum();
        skip_ws();
        if (pos != s.size())
            throw ParseError("unexpected input at position " + std::to_string(pos + 1));
        return e;
    }

  private:
    const std::string& s;
    size_t pos = 0;
    int n;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }

    bool eat(const char* tok) {
        skip_ws();
        size_t len = std::char_traits<char>::length(tok);
        if (s.compare(pos, len, tok) == 0) {
            pos += len;
            return true;
        }
        return false;
    }

    bool peek_factor() {
        skip_ws();
        if (pos >= s.size()) return false;
        if (s[pos] == '(' || s[pos] == '!' || s[pos] == 'x') return true;
        if (s.compare(pos, 2, "\xc2\xac") == 0) return true;   // negation sign
        if (s.compare(pos, 2, "\xce\xbc") == 0) return true;   // Greek mu
        if (s.compare(pos, 2, "mu") == 0) return true;
        return false;
    }

    int parse_index() {
        long long idx = 0;
        bool any = false;
        while (pos < s.size()) {
            if (s[pos] >= '0' && s[pos] <= '9') {
                idx = idx * 10 + (s[pos] - '0');
                ++pos;
            } else if (pos + 2 < s.size() && s.compare(pos, 2, "\xe2\x82") == 0 &&
                       (unsigned char)s[pos + 2] >= 0x80 && (unsigned char)s[pos + 2] <= 0x89) {
                idx = idx * 10 + ((unsigned char)s[pos + 2] - 0x80);  // subscript digit
                pos += 3;
            } else {
                break;
            }
            any = true;
            if (idx > 1000000) throw ParseError("variable index overflow");
        }
        if (!any)
            throw ParseError("expected a variable index at position " + std::to_string(pos + 1));
        if (idx < 1 || idx > n)
            throw ParseError("variable index " + std::to_string(idx) +
                             " outside 1.." + std::to_string(n));
        return (int)idx;
    }

    std::unique_ptr<PhiExpr> parse_factor() {
        skip_ws();
        if (eat("\xc2\xac") || eat("!")) {
            auto e = std::make_unique<PhiExpr>();
            e->kind = PhiExpr::negation;
            e->lhs = parse_factor();
            return e;
        }
        if (eat("(")) {
            auto e = parse_sum();
            if (!eat(")"))
                throw ParseError("missing ')' at position " + std::to_string(pos + 1));
            return e;
        }
        bool barred = false;
        if (eat("\xce\xbc") || eat("mu") || eat("x")) {
            if (s.compare(pos, 2, "\xcc\x84") == 0) {  // combining overbar
                barred = true;
                pos += 2;
            }
            auto v = std::make_unique<PhiExpr>();
            v->kind = PhiExpr::variable;
            v->index = parse_index();
            if (!barred) return v;
            auto e = std::make_unique<PhiExpr>();
            e->kind = PhiExpr::negation;
            e->lhs = std::move(v);
            return e;
        }
        throw ParseError("expected a variable, negation, or '(' at position " +
                         std::to_string(pos + 1));
    }

    std::unique_ptr<PhiExpr> parse_term() {
        auto e = parse_factor();
        while (true) {
            if (eat("\xc2\xb7") || eat("*")) {
                auto r = parse_factor();
                auto p = std::make_unique<PhiExpr>();
                p->kind = PhiExpr::conjunction;
                p->lhs = std::move(e);
                p->rhs = std::move(r);
                e = std::move(p);
            } else if (peek_factor()) {  // adjacency is a product
                auto r = parse_factor();
                auto p = std::make_unique<PhiExpr>();
                p->kind = PhiExpr::conjunction;
                p->lhs = std::move(e);
                p->rhs = std::move(r);
                e = std::move(p);
            } else {
                return e;
            }
        }
    }

    std::unique_ptr<PhiExpr> parse_sum() {
        auto e = parse_term();
        while (true) {
            PhiExpr::Kind kind;
            if (eat("\xe2\x88\xaa") || eat("|"))
                kind = PhiExpr::disjunction;
            else if (eat("\xe2\x8a\x95") || eat("^"))
                kind = PhiExpr::exclusive;
            else
                return e;
            auto r = parse_term();
            auto p = std::make_unique<PhiExpr>();
            p->kind = kind;
            p->lhs = std::move(e);
            p->rhs = std::move(r);
            e = std::move(p);
        }
    }
};

inline bool eval_phi(const PhiExpr& e, const Point& mu) {
    switch (e.kind) {
        case PhiExpr::variable: return ((mu.bits >> (mu.width - e.index)) & 1) != 0;
        case PhiExpr::negation: return !eval_phi(*e.lhs, mu);
        case PhiExpr::conjunction: return eval_phi(*e.lhs, mu) && eval_phi(*e.rhs, mu);
        case PhiExpr::disjunction: return eval_phi(*e.lhs, mu) || eval_phi(*e.rhs, mu);
        case PhiExpr::exclusive: return eval_phi(*e.lhs, mu) != eval_phi(*e.rhs, mu);
    }
    return false;
}

}

inline BooleanFunction parse_phi(const std::vector<std::string>& exprs) {
    int n = (int)exprs.size();
    if (n < 1 || n > 20)
        throw DomainError("function width must be between 1 and 20");
    std::vector<std::unique_ptr<detail::PhiExpr>> parsed;
    for (int i = 0; i < n; ++i) {
        try {
            parsed.push_back(detail::PhiParser(exprs[i], n).parse());
        } catch (const ParseError& e) {
            throw ParseError("coordinate " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    std::vector<Point> table;
    for (std::uint64_t m = 0; m < ((std::uint64_t)1 << n); ++m) {
        Point mu(n, m);
        std::uint64_t out = 0;
        for (int i = 0; i < n; ++i)
            out = (out << 1) | (detail::eval_phi(*parsed[i], mu) ? 1 : 0);
        table.push_back(Point(n, out));
    }
    return make_boolean_function(n, std::move(table));
}

// Iterate phi from mu0, recomputing at step k exactly the coordinates alpha
// switches on; alpha at step 0 maps x̂(-1) to x̂(0). The trajectory is folded
// into a lasso as soon as a (state, alpha-phase) pair repeats.
inline DiscreteSignal run_flow(const BooleanFunction& phi, const ComputationFunction& alpha,
                               const Point& mu0) {
    if (mu0.width != phi.width) throw WidthError(phi.width, mu0.width);
    if (alpha.width != phi.width) throw WidthError(phi.width, alpha.width);

    long long P = (long long)alpha.prefix.size();
    long long L = (long long)alpha.cycle.size();
    auto phase = [&](long long k) { return k < P ? k : P + (k - P) % L; };

    std::vector<Point> values = {mu0};  // values[i] = x̂(i - 1)
    std::map<std::pair<std::uint64_t, long long>, long long> seen;
    Point state = mu0;
    long long bound = ((long long)1 << phi.width) * (P + L) + P + L + 2;
    for (long long k = 0;; ++k) {
        auto key = std::make_pair(state.bits, phase(k));
        auto [it, fresh] = seen.emplace(key, k);
        if (!fresh) {
            long long k1 = it->second, k2 = k;
            std::vector<Point> prefix(values.begin(), values.begin() + k1);
            std::vector<Point> cycle(values.begin() + k1, values.begin() + k2);
            return make_dsignal(phi.width, std::move(prefix), std::move(cycle));
        }
        assert(k <= bound);
        Point a = alpha.at(k);
        Point next(phi.width,
                   (phi.table[state.bits].bits & a.bits) | (state.bits & ~a.bits & width_mask(phi.width)));
        values.push_back(next);
        state = next;
    }
}

}
