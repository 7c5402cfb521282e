#pragma once

// Estimated dependency graphs over ADP problems, their SCCs and minimal
// lassos, and the relative dependency graph processor.

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adp.hpp"
#include "term.hpp"

namespace reladp {

namespace detail {

/// CAP and REN in one pass: defined subterms and variables become fresh variables.
inline Term cap_ren(const Term& t, const std::set<std::string>& defined, std::size_t& fresh) {
    if (t.is_var() || defined.count(t.name())) return Term::var("?" + std::to_string(fresh++));
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(cap_ren(a, defined, fresh));
    return Term::app(t.name(), std::move(args));
}

/// May an instance of t (root kept, below it rewriting with rules rooted in `defined`) reach an instance of lhs?
inline bool may_reach(const Term& t, const Term& lhs, const std::set<std::string>& defined) {
    if (t.is_var() || lhs.is_var()) return true;
    if (t.name() != lhs.name() || t.arity() != lhs.arity()) return false;
    std::size_t fresh = 0;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(cap_ren(a, defined, fresh));
    return unify_terms(Term::app(t.name(), std::move(args)), lhs).has_value();
}

}  // namespace detail

struct DependencyGraph {
    std::vector<Adp> nodes;  // main ADPs first, then base ADPs
    std::size_t main_count = 0;
    std::vector<std::vector<std::size_t>> succ;

    bool is_main(std::size_t i) const { return i < main_count; }
    bool has_edge(std::size_t a, std::size_t b) const {
        return std::binary_search(succ[a].begin(), succ[a].end(), b);
    }
    std::size_t size() const { return nodes.size(); }
};

/// Edge n1 -> n2 iff some annotated subterm of n1's rhs may reach an instance of n2's lhs.
inline DependencyGraph estimate_dependency_graph(const AdpProblem& problem) {
    DependencyGraph g;
    g.nodes = problem.main;
    g.nodes.insert(g.nodes.end(), problem.base.begin(), problem.base.end());
    g.main_count = problem.main.size();
    g.succ.resize(g.nodes.size());
    auto defined = problem.defined();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        auto subs = annotated_subterms(g.nodes[i].rhs);
        for (std::size_t j = 0; j < g.nodes.size(); ++j) {
            for (const auto& [pos, t] : subs) {
                if (detail::may_reach(t, g.nodes[j].lhs, defined)) {
                    g.succ[i].push_back(j);
                    break;
                }
            }
        }
    }
    return g;
}

/// Tarjan over an adjacency list. Only components lying on a cycle; each sorted, ordered by least member.
inline std::vector<std::vector<std::size_t>> sccs(const std::vector<std::vector<std::size_t>>& succ) {
    const std::size_t n = succ.size();
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, kUnset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> out;
    std::size_t counter = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : succ[v]) {
            if (index[w] == kUnset) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] != index[v]) return;
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
        } while (w != v);
        bool cyclic = comp.size() > 1 || std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
        if (!cyclic) return;
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (index[v] == kUnset) visit(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<std::size_t>> sccs(const DependencyGraph& g) { return sccs(g.succ); }

/// Node sets Q u {base nodes on base-only paths from Q to m} u {m}, for every SCC Q of the
/// (flat(main), base) graph holding a base ADP with two annotations and every main node m reachable from Q.
/// Indices refer to main ++ base of `problem`.
inline std::vector<std::set<std::size_t>> minimal_lassos(const AdpProblem& problem) {
    AdpProblem flat_main{flatten(problem.main), problem.base};
    auto g = estimate_dependency_graph(flat_main);
    const std::size_t n = g.size();
    std::vector<std::vector<std::size_t>> pred(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (auto w : g.succ[v]) pred[w].push_back(v);
    }
    std::set<std::set<std::size_t>> out;
    for (const auto& comp : sccs(g)) {
        bool doubly = std::any_of(comp.begin(), comp.end(), [&](std::size_t v) {
            return !g.is_main(v) && g.nodes[v].annotation_count() > 1;
        });
        if (!doubly) continue;
        // forward closure through base nodes only
        std::vector<bool> fwd(n, false);
        std::vector<std::size_t> work(comp.begin(), comp.end());
        for (auto v : comp) fwd[v] = true;
        while (!work.empty()) {
            auto v = work.back();
            work.pop_back();
            if (g.is_main(v)) continue;
            for (auto w : g.succ[v]) {
                if (!fwd[w]) {
                    fwd[w] = true;
                    work.push_back(w);
                }
            }
        }
        for (std::size_t m = 0; m < g.main_count; ++m) {
            if (!fwd[m]) continue;
            std::vector<bool> bwd(n, false);
            std::vector<std::size_t> back{m};
            while (!back.empty()) {
                auto v = back.back();
                back.pop_back();
                for (auto u : pred[v]) {
                    if (g.is_main(u) || bwd[u]) continue;
                    bwd[u] = true;
                    back.push_back(u);
                }
            }
            std::set<std::size_t> lasso(comp.begin(), comp.end());
            for (std::size_t v = g.main_count; v < n; ++v) {
                if (fwd[v] && bwd[v]) lasso.insert(v);
            }
            lasso.insert(m);
            out.insert(std::move(lasso));
        }
    }
    return {out.begin(), out.end()};
}

/// (P n Q, (P= n Q) u flat((P u P=) \ Q)) for an index set Q over main ++ base.
inline AdpProblem restrict_to(const AdpProblem& problem, const std::set<std::size_t>& q) {
    AdpProblem out;
    auto push = [&](const Adp& a) {
        if (std::find(out.base.begin(), out.base.end(), a) == out.base.end()) out.base.push_back(a);
    };
    for (std::size_t i = 0; i < problem.main.size(); ++i) {
        if (q.count(i)) out.main.push_back(problem.main[i]);
    }
    for (std::size_t i = 0; i < problem.main.size(); ++i) {
        if (!q.count(i)) push(flatten(problem.main[i]));
    }
    for (std::size_t i = 0; i < problem.base.size(); ++i) {
        const auto& a = problem.base[i];
        push(q.count(problem.main.size() + i) ? a : flatten(a));
    }
    return out;
}

struct DgAnalysis {
    DependencyGraph graph;
    std::vector<std::set<std::size_t>> sccs;    // SCCs containing a main ADP
    std::vector<std::set<std::size_t>> lassos;  // minimal lassos
    std::vector<std::set<std::size_t>> regions;  // deduplicated union, in that order
    std::vector<AdpProblem> problems;
};

inline DgAnalysis dg_analysis(const AdpProblem& problem) {
    DgAnalysis res;
    res.graph = estimate_dependency_graph(problem);
    for (const auto& comp : sccs(res.graph)) {
        if (res.graph.is_main(comp.front())) res.sccs.emplace_back(comp.begin(), comp.end());
    }
    res.lassos = minimal_lassos(problem);
    for (const auto* part : {&res.sccs, &res.lassos}) {
        for (const auto& q : *part) {
            if (std::find(res.regions.begin(), res.regions.end(), q) == res.regions.end()) res.regions.push_back(q);
        }
    }
    for (const auto& q : res.regions) res.problems.push_back(restrict_to(problem, q));
    return res;
}

inline std::vector<AdpProblem> dg_processor(const AdpProblem& problem) { return dg_analysis(problem).problems; }

inline std::string to_dot(const DependencyGraph& g, const SymbolDisplay& display = {}, const std::string& name = "dg") {
    auto escape = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '"' || c == '\\') o += '\\';
            o += c;
        }
        return o;
    };
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        os << "  n" << i << " [shape=" << (g.is_main(i) ? "box" : "oval") << ", label=\""
           << escape(to_string(g.nodes[i], display)) << "\"];\n";
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (auto j : g.succ[i]) os << "  n" << i << " -> n" << j << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace reladp
