#pragma once

// Plain relative rewriting, the annotated rewrite relation on ADPs, and a
// bounded forward search for relative loops.

#include <atomic>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adp.hpp"
#include "term.hpp"
#include "trs.hpp"

namespace reladp {

enum class RuleKind { Main, Base };

inline const char* to_string(RuleKind k) { return k == RuleKind::Main ? "main" : "base"; }

struct RewriteStep {
    Position position;
    Rule rule;
    RuleKind kind = RuleKind::Main;
    Substitution sigma;
    Term result;
};

/// All one-step successors of t; positions in <lex order, main rules before base rules.
inline std::vector<RewriteStep> rewrite_successors(const std::vector<Rule>& main, const std::vector<Rule>& base,
                                                   const Term& t) {
    std::vector<RewriteStep> out;
    for (const auto& p : positions_where(t, [](const Term& s) { return s.is_app(); })) {
        const Term& redex = subterm_at(t, p);
        for (auto kind : {RuleKind::Main, RuleKind::Base}) {
            for (const auto& r : kind == RuleKind::Main ? main : base) {
                if (r.lhs.name() != redex.name()) continue;
                if (auto sigma = match_term(r.lhs, redex)) {
                    out.push_back(RewriteStep{p, r, kind, *sigma, replace_at(t, p, reladp::apply(r.rhs, *sigma))});
                }
            }
        }
    }
    return out;
}

inline std::vector<RewriteStep> rewrite_successors(const RelativeTrs& trs, const Term& t) {
    return rewrite_successors(trs.main, trs.base, t);
}

// ------------------------------------------------------------ annotated steps

/// Variable reposition function: lhs variable position -> rhs position of the same variable, or none.
using Vrf = std::map<Position, std::optional<Position>>;

inline std::string to_string(const Vrf& vrf) {
    std::string s = "{";
    bool first = true;
    for (const auto& [from, to] : vrf) {
        if (!first) s += ", ";
        first = false;
        s += from.str() + " -> " + (to ? to->str() : "_|_");
    }
    return s + "}";
}

inline std::vector<Vrf> enumerate_vrfs(const Adp& adp) {
    auto lhs_vars = variable_positions(adp.lhs);
    auto rhs_vars = variable_positions(adp.rhs.plain);
    std::vector<Vrf> out{Vrf{}};
    for (const auto& pi : lhs_vars) {
        const auto& x = subterm_at(adp.lhs, pi).name();
        std::vector<std::optional<Position>> targets{std::nullopt};
        for (const auto& q : rhs_vars) {
            if (subterm_at(adp.rhs.plain, q).name() == x) targets.emplace_back(q);
        }
        std::vector<Vrf> next;
        next.reserve(out.size() * targets.size());
        for (const auto& partial : out) {
            for (const auto& t : targets) {
                Vrf v = partial;
                v.emplace(pi, t);
                next.push_back(std::move(v));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// One step of the annotated rewrite relation. `pr` is set when the redex position was annotated.
inline AnnotatedTerm adp_rewrite_step(const std::set<std::string>& defined, const AnnotatedTerm& s,
                                      const Position& at, const Adp& adp, const Vrf& vrf, bool* pr = nullptr) {
    if (!is_position_of(s.plain, at)) throw Error("adp_rewrite_step: invalid position " + at.str());
    const Term& redex = subterm_at(s.plain, at);
    if (redex.is_var() || !defined.count(redex.name())) {
        throw Error("adp_rewrite_step: position " + at.str() + " does not carry a defined symbol");
    }
    auto sigma = match_term(adp.lhs, redex);
    if (!sigma) throw Error("adp_rewrite_step: " + to_string(adp.lhs) + " does not match " + to_string(redex));

    std::set<Position> psi;
    for (const auto& [rho, target] : vrf) {
        if (!target) continue;
        Position below = at.concat(rho);
        for (auto it = s.annotated.lower_bound(below); it != s.annotated.end() && below.is_prefix_of(*it); ++it) {
            psi.insert(target->concat(below.suffix_of(*it)));
        }
    }
    bool is_pr = s.annotated.count(at) > 0;
    if (pr) *pr = is_pr;

    std::set<Position> phi = psi;
    if (is_pr) phi.insert(adp.rhs.annotated.begin(), adp.rhs.annotated.end());

    AnnotatedTerm result;
    result.plain = replace_at(s.plain, at, reladp::apply(adp.rhs.plain, *sigma));
    for (const auto& q : s.annotated) {
        if (!at.is_prefix_of(q)) result.annotated.insert(q);
    }
    for (const auto& q : phi) result.annotated.insert(at.concat(q));
    return result;
}

struct AnnotatedStep {
    Position position;
    Adp adp;
    RuleKind kind = RuleKind::Main;
    Vrf vrf;
    bool pr = false;
    AnnotatedTerm result;
};

/// Every annotated step from s (all positions, ADPs and VRFs).
inline std::vector<AnnotatedStep> annotated_successors(const AdpProblem& problem, const std::set<std::string>& defined,
                                                       const AnnotatedTerm& s) {
    std::vector<AnnotatedStep> out;
    for (const auto& p : symbol_positions(s.plain, defined)) {
        const Term& redex = subterm_at(s.plain, p);
        for (auto kind : {RuleKind::Main, RuleKind::Base}) {
            for (const auto& adp : kind == RuleKind::Main ? problem.main : problem.base) {
                if (adp.lhs.name() != redex.name() || !match_term(adp.lhs, redex)) continue;
                for (const auto& vrf : enumerate_vrfs(adp)) {
                    AnnotatedStep step{p, adp, kind, vrf, false, {}};
                    step.result = adp_rewrite_step(defined, s, p, adp, vrf, &step.pr);
                    out.push_back(std::move(step));
                }
            }
        }
    }
    return out;
}

// --------------------------------------------------------------- loop search

/// start ->* C[start sigma] with at least one main step; pumping it gives an infinite relative sequence.
struct LoopWitness {
    Term start;
    std::vector<RewriteStep> trace;
    Position context;
    Substitution loop_sub;
    std::size_t main_steps = 0;

    const Term& end() const { return trace.empty() ? start : trace.back().result; }
};

struct LoopSearchOptions {
    std::size_t max_depth = 6;
    std::size_t max_term_size = 30;
    std::size_t seed_depth = 2;
    std::size_t seed_cap = 256;
    std::size_t node_budget = 200000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    const std::atomic<bool>* cancel = nullptr;

    bool expired() const {
        if (cancel && cancel->load(std::memory_order_relaxed)) return true;
        return deadline && std::chrono::steady_clock::now() > *deadline;
    }
};

/// Ground terms over `sig` up to the given depth (a constant has depth 1). Constructor-only terms come first.
inline std::vector<Term> ground_terms(const Signature& sig, const std::set<std::string>& constructors,
                                     std::size_t depth, std::size_t cap) {
    std::vector<Term> all;
    std::vector<Term> prev_levels;
    for (std::size_t d = 1; d <= depth; ++d) {
        std::vector<Term> level;
        for (const auto& [f, n] : sig) {
            if (n == 0) {
                if (d == 1) level.push_back(Term::app(f));
                continue;
            }
            if (d == 1) continue;
            // every argument from prev_levels, at least one of depth d-1
            std::vector<std::size_t> idx(n, 0);
            while (true) {
                std::vector<Term> args;
                bool deep = false;
                for (auto i : idx) {
                    args.push_back(prev_levels[i]);
                    deep = deep || prev_levels[i].depth() == d - 1;
                }
                if (deep) level.push_back(Term::app(f, std::move(args)));
                if (level.size() + all.size() > cap * 4) break;
                std::size_t k = 0;
                while (k < n && ++idx[k] == prev_levels.size()) idx[k++] = 0;
                if (k == n) break;
            }
        }
        prev_levels.insert(prev_levels.end(), level.begin(), level.end());
        all.insert(all.end(), level.begin(), level.end());
        if (prev_levels.empty()) break;
    }
    std::stable_sort(all.begin(), all.end(), [&](const Term& a, const Term& b) {
        std::set<std::string> sa, sb;
        collect_symbols(a, sa);
        collect_symbols(b, sb);
        bool ca = std::includes(constructors.begin(), constructors.end(), sa.begin(), sa.end());
        bool cb = std::includes(constructors.begin(), constructors.end(), sb.begin(), sb.end());
        if (ca != cb) return ca;
        return a.size() < b.size();
    });
    if (all.size() > cap) all.resize(cap);
    return all;
}

/// Seed terms: each lhs as is, then instantiated with ground terms of bounded depth.
inline std::vector<Term> loop_seeds(const RelativeTrs& trs, const LoopSearchOptions& opt) {
    std::vector<Term> seeds;
    std::set<Term> seen;
    auto add = [&](const Term& t) {
        if (seen.insert(t).second) seeds.push_back(t);
    };
    std::vector<const Rule*> rules;
    for (const auto& r : trs.main) rules.push_back(&r);
    for (const auto& r : trs.base) rules.push_back(&r);
    for (const auto* r : rules) add(r->lhs);
    auto ground = ground_terms(trs.signature, trs.constructors, opt.seed_depth, opt.seed_cap);
    if (ground.empty()) return seeds;
    for (const auto* r : rules) {
        auto vars = std::vector<std::string>();
        for (const auto& x : variables(r->lhs)) vars.push_back(x);
        if (vars.empty()) continue;
        std::vector<std::size_t> idx(vars.size(), 0);
        std::size_t produced = 0;
        while (produced < opt.seed_cap) {
            Substitution sigma;
            for (std::size_t i = 0; i < vars.size(); ++i) sigma.emplace(vars[i], ground[idx[i]]);
            add(reladp::apply(r->lhs, sigma));
            ++produced;
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == ground.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return seeds;
}

namespace detail {
struct LoopNode {
    Term term;
    long parent;
    RewriteStep step;
    std::size_t depth;
    std::size_t mains;  // main steps from the seed
};

inline std::optional<LoopWitness> embedding_witness(const std::vector<LoopNode>& nodes, std::size_t leaf) {
    const Term& t = nodes[leaf].term;
    // walk ancestors from the closest one upwards
    for (long a = nodes[leaf].parent; a >= 0; a = nodes[static_cast<std::size_t>(a)].parent) {
        const auto& anc = nodes[static_cast<std::size_t>(a)];
        if (nodes[leaf].mains == anc.mains) continue;
        for (const auto& p : positions_where(t, [&](const Term& s) { return s.is_app() && s.name() == anc.term.name(); })) {
            auto sigma = match_term(anc.term, subterm_at(t, p));
            if (!sigma) continue;
            LoopWitness w;
            w.start = anc.term;
            w.context = p;
            w.loop_sub = *sigma;
            w.main_steps = nodes[leaf].mains - anc.mains;
            for (long n = static_cast<long>(leaf); n != a; n = nodes[static_cast<std::size_t>(n)].parent) {
                w.trace.push_back(nodes[static_cast<std::size_t>(n)].step);
            }
            std::reverse(w.trace.begin(), w.trace.end());
            return w;
        }
    }
    return std::nullopt;
}
}  // namespace detail

/// Breadth-first search from one seed term.
inline std::optional<LoopWitness> find_loop_from(const RelativeTrs& trs, const Term& seed, const LoopSearchOptions& opt,
                                                 std::size_t& budget) {
    std::vector<detail::LoopNode> nodes;
    nodes.push_back({seed, -1, {}, 0, 0});
    std::set<Term> visited{seed};
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (nodes[head].depth >= opt.max_depth) continue;
        if (opt.expired()) return std::nullopt;
        auto succ = rewrite_successors(trs, nodes[head].term);
        for (auto& step : succ) {
            if (step.result.size() > opt.max_term_size) continue;
            if (budget == 0) return std::nullopt;
            --budget;
            detail::LoopNode n{step.result, static_cast<long>(head), step, nodes[head].depth + 1,
                               nodes[head].mains + (step.kind == RuleKind::Main ? 1 : 0)};
            nodes.push_back(std::move(n));
            if (auto w = detail::embedding_witness(nodes, nodes.size() - 1)) return w;
            if (!visited.insert(nodes.back().term).second) nodes.pop_back();
        }
    }
    return std::nullopt;
}

inline std::optional<LoopWitness> find_relative_loop(const RelativeTrs& trs, const LoopSearchOptions& opt) {
    if (opt.max_depth == 0 || opt.max_term_size == 0) throw Error("loop search bounds must be positive");
    if (trs.main.empty()) return std::nullopt;
    std::size_t budget = opt.node_budget;
    for (const auto& seed : loop_seeds(trs, opt)) {
        if (opt.expired() || budget == 0) break;
        if (auto w = find_loop_from(trs, seed, opt, budget)) return w;
    }
    return std::nullopt;
}

inline std::optional<LoopWitness> find_relative_loop(const RelativeTrs& trs, std::size_t max_depth,
                                                     std::size_t max_term_size) {
    LoopSearchOptions opt;
    opt.max_depth = max_depth;
    opt.max_term_size = max_term_size;
    return find_relative_loop(trs, opt);
}

/// Re-executes the trace against the TRS and checks the self-embedding equation.
inline bool replay_witness(const RelativeTrs& trs, const LoopWitness& w) {
    Term cur = w.start;
    std::size_t mains = 0;
    for (const auto& step : w.trace) {
        const auto& rules = step.kind == RuleKind::Main ? trs.main : trs.base;
        if (std::find(rules.begin(), rules.end(), step.rule) == rules.end()) return false;
        if (!is_position_of(cur, step.position)) return false;
        auto sigma = match_term(step.rule.lhs, subterm_at(cur, step.position));
        if (!sigma) return false;
        cur = replace_at(cur, step.position, reladp::apply(step.rule.rhs, *sigma));
        if (!(cur == step.result)) return false;
        mains += step.kind == RuleKind::Main ? 1 : 0;
    }
    if (mains == 0 || mains != w.main_steps) return false;
    if (!is_position_of(cur, w.context)) return false;
    return subterm_at(cur, w.context) == reladp::apply(w.start, w.loop_sub);
}

inline std::string to_string(const LoopWitness& w) {
    std::ostringstream os;
    os << w.start;
    for (const auto& s : w.trace) os << (s.kind == RuleKind::Main ? " -> " : " ->= ") << s.result;
    os << "  (contains " << reladp::apply(w.start, w.loop_sub) << " at position " << w.context.str() << ", "
       << w.main_steps << " main step" << (w.main_steps == 1 ? "" : "s") << ")";
    return os.str();
}

}  // namespace reladp
