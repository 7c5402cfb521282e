#pragma once

// Ordinary dependency pair problems, the derelatifying processors and the
// dominance shortcuts.

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adp.hpp"
#include "graph.hpp"
#include "orders.hpp"
#include "trs.hpp"

namespace reladp {

struct DpProblem {
    std::vector<Rule> pairs;  // sharped roots on both sides
    std::vector<Rule> rules;  // plain

    bool operator==(const DpProblem&) const = default;
};

namespace detail {
template <class T>
void push_unique(std::vector<T>& v, T x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(std::move(x));
}
}  // namespace detail

/// l# -> t# for every annotated subterm t of every ADP.
inline std::vector<Rule> dp_of(const std::vector<Adp>& adps) {
    std::vector<Rule> out;
    for (const auto& a : adps) {
        for (const auto& [pos, t] : annotated_subterms(a.rhs)) detail::push_unique(out, Rule{sharp(a.lhs), sharp(t)});
    }
    return out;
}

/// Classical dependency pairs of a rule set, with `defined` deciding which rhs subterms count.
inline std::vector<Rule> dependency_pairs(const std::vector<Rule>& rules, const std::set<std::string>& defined) {
    std::vector<Adp> full;
    for (const auto& r : rules) {
        auto pos = symbol_positions(r.rhs, defined);
        full.push_back(Adp{r.lhs, AnnotatedTerm(r.rhs, {pos.begin(), pos.end()})});
    }
    return dp_of(full);
}

inline std::vector<Rule> dependency_pairs(const std::vector<Rule>& rules) {
    return dependency_pairs(rules, lhs_roots(rules));
}

/// Annotation-free base: switch to the ordinary problem (DP(P), flat(P u P=)).
inline std::optional<DpProblem> drp1(const AdpProblem& problem) {
    if (!problem.base_annotation_free()) return std::nullopt;
    DpProblem dp;
    dp.pairs = dp_of(problem.main);
    for (auto& r : problem.flat_rules()) detail::push_unique(dp.rules, std::move(r));
    return dp;
}

/// Selected base ADPs leave the base; their single-annotation splits join the main component.
inline AdpProblem drp2(const AdpProblem& problem, const std::set<std::size_t>& selection) {
    for (auto i : selection) {
        if (i >= problem.base.size()) throw Error("drp2: base index " + std::to_string(i) + " out of range");
    }
    AdpProblem out;
    out.main = problem.main;
    std::vector<Adp> picked;
    for (std::size_t i = 0; i < problem.base.size(); ++i) {
        (selection.count(i) ? picked : out.base).push_back(problem.base[i]);
    }
    for (auto& a : split_adps(picked)) detail::push_unique(out.main, std::move(a));
    return out;
}

struct ClassicGraph {
    std::vector<std::vector<std::size_t>> succ;
    std::vector<std::vector<std::size_t>> sccs;
};

inline ClassicGraph classic_dependency_graph(const DpProblem& problem) {
    ClassicGraph g;
    auto defined = lhs_roots(problem.rules);
    g.succ.resize(problem.pairs.size());
    for (std::size_t i = 0; i < problem.pairs.size(); ++i) {
        for (std::size_t j = 0; j < problem.pairs.size(); ++j) {
            if (detail::may_reach(problem.pairs[i].rhs, problem.pairs[j].lhs, defined)) g.succ[i].push_back(j);
        }
    }
    g.sccs = sccs(g.succ);
    return g;
}

inline std::vector<DpProblem> classic_dg_processor(const DpProblem& problem) {
    std::vector<DpProblem> out;
    for (const auto& comp : classic_dependency_graph(problem).sccs) {
        DpProblem sub;
        for (auto i : comp) sub.pairs.push_back(problem.pairs[i]);
        sub.rules = problem.rules;
        out.push_back(std::move(sub));
    }
    return out;
}

struct ClassicRppResult {
    DpProblem problem;
    OrientationResult orientation;  // strict indices refer to pairs
};

/// Rules and pairs weak, some pairs strict; strict pairs are dropped.
inline std::optional<ClassicRppResult> classic_rpp_processor(const DpProblem& problem, std::int64_t max_coeff,
                                                             const SearchLimits& limits = {}) {
    std::vector<Inequality> weak, candidates;
    for (const auto& r : problem.rules) weak.push_back({r.lhs, r.rhs});
    for (const auto& p : problem.pairs) {
        weak.push_back({p.lhs, p.rhs});
        candidates.push_back({p.lhs, p.rhs});
    }
    auto o = orient_greedy(weak, {}, candidates, false, max_coeff, limits);
    if (!o || o->strict.empty()) return std::nullopt;
    ClassicRppResult res{{{}, problem.rules}, std::move(*o)};
    std::set<std::size_t> strict(res.orientation.strict.begin(), res.orientation.strict.end());
    for (std::size_t i = 0; i < problem.pairs.size(); ++i) {
        if (!strict.count(i)) res.problem.pairs.push_back(problem.pairs[i]);
    }
    return res;
}

/// Base indices moved to the "a" side: the least set such that main u a dominates the rest.
inline std::set<std::size_t> dominated_split(const RelativeTrs& trs) {
    std::set<std::size_t> a;
    bool changed = true;
    while (changed) {
        changed = false;
        auto defined = lhs_roots(trs.main);
        for (auto i : a) defined.insert(trs.base[i].lhs.name());
        for (std::size_t i = 0; i < trs.base.size(); ++i) {
            if (a.count(i) || !contains_symbol(trs.base[i].rhs, defined)) continue;
            a.insert(i);
            changed = true;
        }
    }
    return a;
}

/// Without a partition: base non-duplicating and dominated gives (DP(R), R u R=).
/// With base indices `partition` as R=a: R=b non-duplicating and dominated by R u R=a gives (DP(R u R=a), R u R=).
inline std::optional<DpProblem> dominance_fast_path(const RelativeTrs& trs,
                                                    const std::optional<std::set<std::size_t>>& partition = std::nullopt) {
    std::vector<Rule> upper = trs.main, lower;
    for (std::size_t i = 0; i < trs.base.size(); ++i) {
        if (partition && partition->count(i)) {
            upper.push_back(trs.base[i]);
        } else {
            lower.push_back(trs.base[i]);
        }
    }
    if (partition) {
        for (auto i : *partition) {
            if (i >= trs.base.size()) throw Error("partition index out of range");
        }
    }
    if (!is_non_duplicating(lower) || !dominates(upper, lower)) return std::nullopt;
    DpProblem dp;
    dp.pairs = dependency_pairs(upper);
    for (const auto* part : {&trs.main, &trs.base}) {
        for (const auto& r : *part) detail::push_unique(dp.rules, r);
    }
    return dp;
}

inline std::string to_string(const DpProblem& p, const SymbolDisplay& display = {}) {
    std::ostringstream os;
    os << "pairs {";
    for (std::size_t i = 0; i < p.pairs.size(); ++i) os << (i ? "; " : " ") << display.rule(p.pairs[i]);
    os << (p.pairs.empty() ? "}" : " }") << ", rules {";
    for (std::size_t i = 0; i < p.rules.size(); ++i) os << (i ? "; " : " ") << display.rule(p.rules[i]);
    os << (p.rules.empty() ? "}" : " }");
    return os.str();
}

}  // namespace reladp
