#pragma once

// Reduction pairs from linear polynomial interpretations: a finite-domain
// search for coefficients, and the processors that consume its results.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adp.hpp"
#include "poly.hpp"
#include "trs.hpp"

namespace reladp {

struct Inequality {
    Term lhs;
    Term rhs;
};

struct SearchLimits {
    std::optional<std::chrono::steady_clock::time_point> deadline;
    const std::atomic<bool>* cancel = nullptr;
    std::size_t node_budget = 2'000'000;

    bool expired() const {
        if (cancel && cancel->load(std::memory_order_relaxed)) return true;
        return deadline && std::chrono::steady_clock::now() > *deadline;
    }
};

enum class OrderMode { Rpp, RuleRemoval, DupPreprocess };

inline const char* to_string(OrderMode m) {
    switch (m) {
        case OrderMode::Rpp: return "rpp";
        case OrderMode::RuleRemoval: return "rule-removal";
        case OrderMode::DupPreprocess: return "dup-preprocess";
    }
    return "?";
}

struct OrientationResult {
    PolyInterpretation interpretation;
    std::vector<std::size_t> strict;  // indices into main ++ base (or main ++ base rules)
};

namespace detail {

struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

struct IntervalPoly {
    Interval constant;
    std::map<std::string, Interval> coeffs;
};

/// Depth-first search over symbol templates with interval pruning.
class PolySolver {
public:
    PolySolver(const std::vector<Inequality>& weak, const std::vector<Inequality>& strict, bool monotone,
               std::int64_t max_coeff, const SearchLimits& limits, std::size_t& nodes)
        : monotone_(monotone), max_coeff_(max_coeff), limits_(limits), nodes_(nodes) {
        for (const auto& s : strict) constraints_.push_back({s.lhs, s.rhs, true, {}});
        for (const auto& w : weak) constraints_.push_back({w.lhs, w.rhs, false, {}});
        for (auto& c : constraints_) {
            std::set<std::string> syms;
            collect_symbols(c.lhs, syms);
            collect_symbols(c.rhs, syms);
            std::vector<std::string> ordered;
            order_symbols(c.lhs, ordered);
            order_symbols(c.rhs, ordered);
            for (const auto& f : ordered) {
                if (f == kCompound0 || f == kCompound2) continue;
                if (!index_.count(f)) {
                    index_[f] = symbols_.size();
                    symbols_.push_back(f);
                    arities_.push_back(0);
                }
            }
            c.symbols = std::move(syms);
        }
        for (const auto& c : constraints_) record_arities(c.lhs), record_arities(c.rhs);
        by_symbol_.resize(symbols_.size());
        for (std::size_t i = 0; i < constraints_.size(); ++i) {
            for (const auto& f : constraints_[i].symbols) {
                if (auto it = index_.find(f); it != index_.end()) by_symbol_[it->second].push_back(i);
            }
        }
        assignment_.resize(symbols_.size());
        assigned_.assign(symbols_.size(), false);
    }

    std::optional<PolyInterpretation> solve() {
        for (std::size_t i = 0; i < constraints_.size(); ++i) {
            if (!feasible(constraints_[i])) return std::nullopt;
        }
        if (!dfs(0)) return std::nullopt;
        PolyInterpretation pol;
        for (std::size_t i = 0; i < symbols_.size(); ++i) pol.set(symbols_[i], assignment_[i]);
        return pol;
    }

private:
    struct Constraint {
        Term lhs;
        Term rhs;
        bool strict;
        std::set<std::string> symbols;
    };

    static void order_symbols(const Term& t, std::vector<std::string>& out) {
        if (t.is_var()) return;
        if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
        for (const auto& a : t.args()) order_symbols(a, out);
    }

    void record_arities(const Term& t) {
        if (t.is_var()) return;
        if (auto it = index_.find(t.name()); it != index_.end()) arities_[it->second] = t.arity();
        for (const auto& a : t.args()) record_arities(a);
    }

    Interval arg_domain() const { return {monotone_ ? 1 : 0, max_coeff_}; }

    IntervalPoly eval(const Term& t) const {
        IntervalPoly p;
        if (t.is_var()) {
            p.coeffs[t.name()] = {1, 1};
            return p;
        }
        std::vector<Interval> a(t.arity());
        if (t.name() == kCompound0 || t.name() == kCompound2) {
            for (auto& x : a) x = {1, 1};
        } else {
            auto idx = index_.at(t.name());
            if (assigned_[idx]) {
                p.constant = {assignment_[idx].constant, assignment_[idx].constant};
                for (std::size_t i = 0; i < a.size(); ++i) a[i] = {assignment_[idx].args[i], assignment_[idx].args[i]};
            } else {
                p.constant = {0, max_coeff_};
                for (auto& x : a) x = arg_domain();
            }
        }
        for (std::size_t i = 0; i < t.arity(); ++i) {
            if (a[i].hi == 0) continue;
            auto sub = eval(t.arg(i));
            p.constant.lo += a[i].lo * sub.constant.lo;
            p.constant.hi += a[i].hi * sub.constant.hi;
            for (const auto& [x, iv] : sub.coeffs) {
                auto& dst = p.coeffs[x];
                dst.lo += a[i].lo * iv.lo;
                dst.hi += a[i].hi * iv.hi;
            }
        }
        return p;
    }

    /// False only if the constraint cannot hold under any completion.
    bool feasible(const Constraint& c) const {
        auto l = eval(c.lhs);
        auto r = eval(c.rhs);
        if (l.constant.hi - r.constant.lo < (c.strict ? 1 : 0)) return false;
        for (const auto& [x, iv] : r.coeffs) {
            auto it = l.coeffs.find(x);
            std::int64_t lhi = it == l.coeffs.end() ? 0 : it->second.hi;
            if (lhi < iv.lo) return false;
        }
        return true;
    }

    bool dfs(std::size_t k) {
        if (k == symbols_.size()) return true;
        std::size_t n = arities_[k];
        SymbolPoly sp;
        sp.constant = 0;
        sp.args.assign(n, arg_domain().lo);
        assigned_[k] = true;
        while (true) {
            if ((++nodes_ & 1023u) == 0 && limits_.expired()) break;
            if (nodes_ > limits_.node_budget) break;
            assignment_[k] = sp;
            bool ok = true;
            for (auto ci : by_symbol_[k]) {
                if (!feasible(constraints_[ci])) {
                    ok = false;
                    break;
                }
            }
            if (ok && dfs(k + 1)) return true;
            if (nodes_ > limits_.node_budget) break;
            // next template, lexicographic over (constant, a1, ..., an)
            std::size_t pos = n + 1;
            bool done = true;
            while (pos > 0) {
                --pos;
                std::int64_t& v = pos == 0 ? sp.constant : sp.args[pos - 1];
                std::int64_t lo = pos == 0 ? 0 : arg_domain().lo;
                if (v < max_coeff_) {
                    ++v;
                    done = false;
                    break;
                }
                v = lo;
            }
            if (done) break;
        }
        assigned_[k] = false;
        return false;
    }

    bool monotone_;
    std::int64_t max_coeff_;
    const SearchLimits& limits_;
    std::size_t& nodes_;
    std::vector<Constraint> constraints_;
    std::vector<std::string> symbols_;
    std::vector<std::size_t> arities_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> by_symbol_;
    std::vector<SymbolPoly> assignment_;
    std::vector<bool> assigned_;
};

}  // namespace detail

/// Weak constraints must hold; `required` must be strict; the strict subset of `candidates` is greedily
/// enlarged in index order. Returns the interpretation and the strictly oriented candidate indices.
inline std::optional<OrientationResult> orient_greedy(const std::vector<Inequality>& weak,
                                                      const std::vector<Inequality>& required,
                                                      const std::vector<Inequality>& candidates, bool monotone,
                                                      std::int64_t max_coeff, const SearchLimits& limits = {}) {
    if (max_coeff < 1) throw Error("max-coeff must be at least 1");
    std::size_t nodes = 0;
    auto solve = [&](const std::vector<Inequality>& strict) {
        return detail::PolySolver(weak, strict, monotone, max_coeff, limits, nodes).solve();
    };
    auto strict_under = [&](const PolyInterpretation& pol) {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (strictly_gt(interpret_term(pol, candidates[i].lhs), interpret_term(pol, candidates[i].rhs))) out.push_back(i);
        }
        return out;
    };
    auto sol = solve(required);
    if (!sol) return std::nullopt;
    auto chosen = strict_under(*sol);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        if (limits.expired()) break;
        auto strict = required;
        for (auto j : chosen) strict.push_back(candidates[j]);
        strict.push_back(candidates[i]);
        if (auto better = solve(strict)) {
            sol = std::move(better);
            chosen = strict_under(*sol);
        }
    }
    if (chosen.empty() && required.empty()) return std::nullopt;
    return OrientationResult{std::move(*sol), std::move(chosen)};
}

/// Constraint sets for the three modes over an ADP problem. Indices run over main ++ base.
inline std::optional<OrientationResult> find_reduction_pair(const AdpProblem& problem, std::int64_t max_coeff,
                                                            OrderMode mode, const SearchLimits& limits = {}) {
    std::vector<const Adp*> all;
    for (const auto& a : problem.main) all.push_back(&a);
    for (const auto& a : problem.base) all.push_back(&a);

    std::vector<Inequality> weak, required, candidates;
    std::vector<std::size_t> candidate_index;
    for (const auto* a : all) weak.push_back({a->lhs, a->rhs.plain});

    if (mode == OrderMode::Rpp) {
        for (const auto* a : all) weak.push_back({sharp(a->lhs), ann_of_rhs(a->rhs)});
        for (std::size_t i = 0; i < all.size(); ++i) {
            bool is_main = i < problem.main.size();
            if (!is_main && !all[i]->rhs.has_annotations()) continue;
            candidates.push_back({sharp(all[i]->lhs), ann_of_rhs(all[i]->rhs)});
            candidate_index.push_back(i);
        }
    } else {
        for (std::size_t i = 0; i < all.size(); ++i) {
            bool is_base = i >= problem.main.size();
            Inequality ineq{all[i]->lhs, all[i]->rhs.plain};
            if (mode == OrderMode::DupPreprocess && is_base && is_duplicating(all[i]->flat_rule())) {
                required.push_back(ineq);
            }
            candidates.push_back(ineq);
            candidate_index.push_back(i);
        }
    }
    bool monotone = mode != OrderMode::Rpp;
    auto res = orient_greedy(weak, required, candidates, monotone, max_coeff, limits);
    if (!res) return std::nullopt;
    for (auto& i : res->strict) i = candidate_index[i];
    if (res->strict.empty()) return std::nullopt;
    return res;
}

namespace detail {
inline void push_unique(std::vector<Adp>& v, const Adp& a) {
    if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
}
}  // namespace detail

/// Strict ADPs leave their component and return flattened as base ADPs.
inline AdpProblem rpp_processor(const AdpProblem& problem, const OrientationResult& result) {
    std::set<std::size_t> strict(result.strict.begin(), result.strict.end());
    AdpProblem out;
    std::vector<Adp> moved;
    for (std::size_t i = 0; i < problem.main.size(); ++i) {
        (strict.count(i) ? moved : out.main).push_back(problem.main[i]);
    }
    for (std::size_t i = 0; i < problem.base.size(); ++i) {
        (strict.count(problem.main.size() + i) ? moved : out.base).push_back(problem.base[i]);
    }
    for (const auto& a : moved) detail::push_unique(out.base, flatten(a));
    return out;
}

/// Strict ADPs are deleted from both components.
inline AdpProblem rule_removal_processor(const AdpProblem& problem, const OrientationResult& result) {
    std::set<std::size_t> strict(result.strict.begin(), result.strict.end());
    AdpProblem out;
    for (std::size_t i = 0; i < problem.main.size(); ++i) {
        if (!strict.count(i)) out.main.push_back(problem.main[i]);
    }
    for (std::size_t i = 0; i < problem.base.size(); ++i) {
        if (!strict.count(problem.main.size() + i)) out.base.push_back(problem.base[i]);
    }
    return out;
}

struct DupPreprocessResult {
    enum class Action { Identity, Removed, Moved };
    Action action = Action::Identity;
    RelativeTrs trs;
    std::optional<OrientationResult> orientation;  // set when action == Removed
    std::vector<Rule> affected;                    // removed or moved rules
};

/// Gets rid of duplicating base rules: delete them with a monotone order if possible, else move them to main.
inline DupPreprocessResult preprocess_duplicating_base_detailed(const RelativeTrs& trs, std::int64_t max_coeff,
                                                                const SearchLimits& limits = {}) {
    DupPreprocessResult res;
    res.trs = trs;
    if (is_non_duplicating(trs.base)) return res;

    AdpProblem flat;
    for (const auto& r : trs.main) flat.main.push_back(Adp{r.lhs, AnnotatedTerm(r.rhs)});
    for (const auto& r : trs.base) flat.base.push_back(Adp{r.lhs, AnnotatedTerm(r.rhs)});
    if (auto o = find_reduction_pair(flat, max_coeff, OrderMode::DupPreprocess, limits)) {
        std::set<std::size_t> strict(o->strict.begin(), o->strict.end());
        std::vector<Rule> main, base;
        for (std::size_t i = 0; i < trs.main.size(); ++i) {
            (strict.count(i) ? res.affected : main).push_back(trs.main[i]);
        }
        for (std::size_t i = 0; i < trs.base.size(); ++i) {
            (strict.count(trs.main.size() + i) ? res.affected : base).push_back(trs.base[i]);
        }
        res.action = DupPreprocessResult::Action::Removed;
        res.trs = RelativeTrs::from_rules(std::move(main), std::move(base), trs.variables);
        res.orientation = std::move(o);
        return res;
    }
    std::vector<Rule> main = trs.main, base;
    for (const auto& r : trs.base) {
        if (is_duplicating(r)) {
            main.push_back(r);
            res.affected.push_back(r);
        } else {
            base.push_back(r);
        }
    }
    res.action = DupPreprocessResult::Action::Moved;
    res.trs = RelativeTrs::from_rules(std::move(main), std::move(base), trs.variables);
    return res;
}

inline RelativeTrs preprocess_duplicating_base(const RelativeTrs& trs, std::int64_t max_coeff) {
    return preprocess_duplicating_base_detailed(trs, max_coeff).trs;
}

}  // namespace reladp
