#pragma once

// Brute-force oracles shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "reladp/reladp.hpp"

namespace oracle {

using namespace reladp;

/// Largest number of main steps (capped at `cap`) of a plain sequence from t of at most `steps`
/// steps that never leaves terms of size <= max_size.
class PlainSearch {
public:
    PlainSearch(const RelativeTrs& trs, std::size_t max_size, std::size_t cap)
        : trs_(trs), max_size_(max_size), cap_(cap) {}

    std::size_t best(const Term& t, std::size_t steps) {
        if (steps == 0) return 0;
        auto key = std::make_pair(t, steps);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::size_t b = 0;
        for (const auto& s : rewrite_successors(trs_, t)) {
            if (s.result.size() > max_size_) continue;
            std::size_t v = (s.kind == RuleKind::Main ? 1 : 0) + best(s.result, steps - 1);
            b = std::max(b, std::min(v, cap_));
            if (b == cap_) break;
        }
        memo_[key] = b;
        return b;
    }

private:
    const RelativeTrs& trs_;
    std::size_t max_size_;
    std::size_t cap_;
    std::map<std::pair<Term, std::size_t>, std::size_t> memo_;
};

/// Same measure for the annotated relation, counting main steps at annotated positions (pr).
class AnnotatedSearch {
public:
    AnnotatedSearch(const AdpProblem& problem, std::size_t max_size, std::size_t cap)
        : problem_(problem), defined_(problem.defined()), max_size_(max_size), cap_(cap) {}

    std::size_t best(const AnnotatedTerm& t, std::size_t steps) {
        if (steps == 0) return 0;
        auto key = std::make_pair(t, steps);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::size_t b = 0;
        for (const auto& s : annotated_successors(problem_, defined_, t)) {
            if (s.result.plain.size() > max_size_) continue;
            std::size_t v = (s.kind == RuleKind::Main && s.pr ? 1 : 0) + best(s.result, steps - 1);
            b = std::max(b, std::min(v, cap_));
            if (b == cap_) break;
        }
        memo_[key] = b;
        return b;
    }

    /// Maximum over all annotations of the defined positions of t.
    std::size_t best_any_annotation(const Term& t, std::size_t steps) {
        auto pos = symbol_positions(t, defined_);
        std::size_t b = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << pos.size()); ++mask) {
            std::set<Position> ann;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                if (mask >> i & 1) ann.insert(pos[i]);
            }
            b = std::max(b, best(AnnotatedTerm(t, ann), steps));
            if (b == cap_) break;
        }
        return b;
    }

private:
    const AdpProblem& problem_;
    std::set<std::string> defined_;
    std::size_t max_size_;
    std::size_t cap_;
    std::map<std::pair<AnnotatedTerm, std::size_t>, std::size_t> memo_;
};

/// All terms over a/0, b/0, f/1 and (optionally) the variable x, up to the given size.
inline std::vector<Term> tiny_terms(std::size_t max_size, bool with_var) {
    std::vector<Term> level{Term::app("a"), Term::app("b")};
    if (with_var) level.push_back(Term::var("x"));
    std::vector<Term> all = level;
    for (std::size_t s = 2; s <= max_size; ++s) {
        std::vector<Term> next;
        for (const auto& t : level) next.push_back(Term::app("f", {t}));
        all.insert(all.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return all;
}

/// Rules with lhs of size <= 2 and rhs of size <= 3 over a/0, b/0, f/1; all non-duplicating.
inline std::vector<Rule> tiny_rules() {
    std::vector<Rule> out;
    for (const auto& l : tiny_terms(2, true)) {
        if (l.is_var()) continue;
        auto lv = variables(l);
        for (const auto& r : tiny_terms(3, true)) {
            if (r == l) continue;
            auto rv = variables(r);
            if (!std::includes(lv.begin(), lv.end(), rv.begin(), rv.end())) continue;
            out.push_back(Rule{l, r});
        }
    }
    return out;
}

/// The exhaustive family: one main rule with zero or one base rule over the full pool, plus two main
/// rules and one base rule over the first eight pool rules.
inline std::vector<RelativeTrs> tiny_family() {
    auto pool = tiny_rules();
    std::vector<RelativeTrs> out;
    for (const auto& m : pool) {
        out.push_back(RelativeTrs::from_rules({m}, {}));
        for (const auto& b : pool) out.push_back(RelativeTrs::from_rules({m}, {b}));
    }
    std::size_t small = std::min<std::size_t>(8, pool.size());
    for (std::size_t i = 0; i < small; ++i) {
        for (std::size_t j = i + 1; j < small; ++j) {
            for (std::size_t k = 0; k < small; ++k) out.push_back(RelativeTrs::from_rules({pool[i], pool[j]}, {pool[k]}));
        }
    }
    return out;
}

struct Disagreement {
    RelativeTrs trs;
    Term start;
    std::size_t k = 0;
    std::size_t plain = 0;
    std::size_t annotated = 0;
};

struct ChainCheck {
    std::size_t systems = 0;
    std::size_t comparisons = 0;
    std::vector<Disagreement> disagreements;
};

/// Compares, for k = 1..max_k and every ground start term of size <= 3, whether a plain sequence
/// with >= k main steps exists against whether an annotated one with >= k main (pr) steps exists.
/// `full_annotations` replaces the canonical ADPs with fully annotated ones.
inline ChainCheck check_chain_criterion(const std::vector<RelativeTrs>& family, std::size_t max_k = 4,
                                        std::size_t max_size = 5, bool full_annotations = false) {
    ChainCheck res;
    auto starts = tiny_terms(3, false);
    for (const auto& trs : family) {
        ++res.systems;
        AdpProblem problem;
        if (full_annotations) {
            auto defined = defined_symbols(trs);
            for (const auto* part : {&trs.main, &trs.base}) {
                for (const auto& r : *part) {
                    auto pos = symbol_positions(r.rhs, defined);
                    Adp a{r.lhs, AnnotatedTerm(r.rhs, {pos.begin(), pos.end()})};
                    (part == &trs.main ? problem.main : problem.base).push_back(a);
                }
            }
        } else {
            problem = canonical_adp_problem(trs);
        }
        std::size_t steps = max_k + 4;
        PlainSearch plain(trs, max_size, max_k);
        AnnotatedSearch ann(problem, max_size, max_k);
        for (const auto& t : starts) {
            auto p = plain.best(t, steps);
            auto a = ann.best_any_annotation(t, steps);
            for (std::size_t k = 1; k <= max_k; ++k) {
                ++res.comparisons;
                if ((p >= k) != (a >= k)) {
                    res.disagreements.push_back({trs, t, k, p, a});
                }
            }
        }
    }
    return res;
}

}  // namespace oracle
