#pragma once

// Annotated terms and annotated dependency pairs (ADPs).
//
// An annotated term is a plain term plus the set of positions whose (defined)
// root symbol carries an annotation. Sharped symbols f# only materialise when
// a term is handed to an order or printed.

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "term.hpp"
#include "trs.hpp"

namespace reladp {

inline constexpr const char* kCompound0 = "#c0";
inline constexpr const char* kCompound2 = "#c2";

inline std::string sharp_name(const std::string& f) { return f + "#"; }

inline bool is_sharp_name(const std::string& f) { return f.size() > 1 && f.back() == '#' && f.front() != '#'; }

/// t# : the root symbol replaced by its annotated variant.
inline Term sharp(const Term& t) {
    if (t.is_var()) throw Error("cannot annotate variable " + t.name());
    return Term::app(sharp_name(t.name()), std::vector<Term>(t.args().begin(), t.args().end()));
}

struct AnnotatedTerm {
    Term plain;
    std::set<Position> annotated;

    AnnotatedTerm() = default;
    AnnotatedTerm(Term t, std::set<Position> ann = {}) : plain(std::move(t)), annotated(std::move(ann)) {}

    bool has_annotations() const { return !annotated.empty(); }

    /// Every annotated position exists and carries a symbol from `defined`.
    bool valid_for(const std::set<std::string>& defined) const {
        for (const auto& p : annotated) {
            if (!is_position_of(plain, p)) return false;
            const Term& s = subterm_at(plain, p);
            if (s.is_var() || !defined.count(s.name())) return false;
        }
        return true;
    }

    auto operator<=>(const AnnotatedTerm&) const = default;
    bool operator==(const AnnotatedTerm&) const = default;
};

/// Rewrite rule whose right-hand side carries annotations.
struct Adp {
    Term lhs;
    AnnotatedTerm rhs;

    Rule flat_rule() const { return Rule{lhs, rhs.plain}; }
    std::size_t annotation_count() const { return rhs.annotated.size(); }

    auto operator<=>(const Adp&) const = default;
    bool operator==(const Adp&) const = default;
};

struct AdpProblem {
    std::vector<Adp> main;
    std::vector<Adp> base;

    bool operator==(const AdpProblem&) const = default;

    std::set<std::string> defined() const {
        std::set<std::string> out;
        for (const auto* part : {&main, &base}) {
            for (const auto& a : *part) out.insert(a.lhs.name());
        }
        return out;
    }

    std::vector<Rule> flat_rules() const {
        std::vector<Rule> out;
        for (const auto* part : {&main, &base}) {
            for (const auto& a : *part) out.push_back(a.flat_rule());
        }
        return out;
    }

    std::size_t annotated_count() const {
        std::size_t n = 0;
        for (const auto* part : {&main, &base}) {
            for (const auto& a : *part) n += a.rhs.has_annotations() ? 1 : 0;
        }
        return n;
    }

    bool base_annotation_free() const {
        for (const auto& a : base) {
            if (a.rhs.has_annotations()) return false;
        }
        return true;
    }
};

// ---------------------------------------------------------------- combinators

inline AnnotatedTerm flatten(const AnnotatedTerm& t) { return AnnotatedTerm(t.plain); }
inline Adp flatten(const Adp& a) { return Adp{a.lhs, flatten(a.rhs)}; }
inline std::vector<Adp> flatten(const std::vector<Adp>& adps) {
    std::vector<Adp> out;
    out.reserve(adps.size());
    for (const auto& a : adps) out.push_back(flatten(a));
    return out;
}

/// (position, flattened subterm) for every annotated position, in <lex order.
inline std::vector<std::pair<Position, Term>> annotated_subterms(const AnnotatedTerm& t) {
    std::vector<std::pair<Position, Term>> out;
    for (const auto& p : t.annotated) out.emplace_back(p, subterm_at(t.plain, p));
    return out;
}

/// Compound term bundling the annotated subterms of an ADP right-hand side.
inline Term ann_of_rhs(const AnnotatedTerm& r) {
    auto subs = annotated_subterms(r);
    switch (subs.size()) {
        case 0:
            return Term::app(kCompound0);
        case 1:
            return sharp(subs[0].second);
        case 2:
            return Term::app(kCompound2, {sharp(subs[0].second), sharp(subs[1].second)});
        default:
            throw Error("ann_of_rhs: more than two annotations");
    }
}

/// One single-annotation ADP per annotated position; unannotated ADPs vanish.
inline std::vector<Adp> split_adps(const std::vector<Adp>& adps) {
    std::vector<Adp> out;
    for (const auto& a : adps) {
        for (const auto& p : a.rhs.annotated) out.push_back(Adp{a.lhs, AnnotatedTerm(a.rhs.plain, {p})});
    }
    return out;
}

/// ADPs l -> ann_Phi(r) for all subset-maximal Phi of the defined positions with |Phi| <= n.
inline std::vector<Adp> canonical_adps(const Rule& rule, const std::set<std::string>& defined, std::size_t n) {
    auto pos = symbol_positions(rule.rhs, defined);
    std::vector<Adp> out;
    if (pos.size() <= n) {
        out.push_back(Adp{rule.lhs, AnnotatedTerm(rule.rhs, std::set<Position>(pos.begin(), pos.end()))});
        return out;
    }
    // all n-subsets in lexicographic order of index tuples
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        std::set<Position> phi;
        for (auto i : idx) phi.insert(pos[i]);
        out.push_back(Adp{rule.lhs, AnnotatedTerm(rule.rhs, std::move(phi))});
        std::size_t k = n;
        while (k > 0 && idx[k - 1] == pos.size() - n + k - 1) --k;
        if (k == 0) break;
        ++idx[k - 1];
        for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// Canonical problem: at most one annotation for main ADPs, two for base ADPs.
inline AdpProblem canonical_adp_problem(const RelativeTrs& trs) {
    for (const auto& r : trs.base) {
        if (is_duplicating(r)) throw Error("duplicating base rule " + to_string(r));
    }
    auto defined = defined_symbols(trs);
    AdpProblem p;
    for (const auto& r : trs.main) {
        for (auto& a : canonical_adps(r, defined, 1)) p.main.push_back(std::move(a));
    }
    for (const auto& r : trs.base) {
        for (auto& a : canonical_adps(r, defined, 2)) p.base.push_back(std::move(a));
    }
    return p;
}

// ------------------------------------------------------------------ printing

inline void print_annotated(std::ostream& os, const Term& t, const std::set<Position>& ann, Position& cur,
                            const SymbolDisplay& display) {
    if (t.is_var()) {
        os << t.name();
        return;
    }
    os << (ann.count(cur) ? display.sharp(t.name()) : display.name(t.name()));
    if (t.arity() > 0) {
        os << '(';
        for (std::uint32_t i = 0; i < t.arity(); ++i) {
            if (i) os << ',';
            cur.path.push_back(i + 1);
            print_annotated(os, t.arg(i), ann, cur, display);
            cur.path.pop_back();
        }
        os << ')';
    }
}

inline std::string to_string(const AnnotatedTerm& t, const SymbolDisplay& display = {}) {
    std::ostringstream os;
    Position cur;
    print_annotated(os, t.plain, t.annotated, cur, display);
    return os.str();
}

inline std::string to_string(const Adp& a, const SymbolDisplay& display = {}) {
    return display.term(a.lhs) + " -> " + to_string(a.rhs, display);
}

inline std::string to_string(const AdpProblem& p, const SymbolDisplay& display = {}) {
    std::ostringstream os;
    os << "main {";
    for (std::size_t i = 0; i < p.main.size(); ++i) os << (i ? "; " : " ") << to_string(p.main[i], display);
    os << (p.main.empty() ? "}" : " }") << ", base {";
    for (std::size_t i = 0; i < p.base.size(); ++i) os << (i ? "; " : " ") << to_string(p.base[i], display);
    os << (p.base.empty() ? "}" : " }");
    return os.str();
}

}  // namespace reladp
