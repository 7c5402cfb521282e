#pragma once

// Strategy: dominance shortcut, duplicating-base preprocessing, then the
// relative ADP processors, with a loop search running alongside.

#include <atomic>
#include <chrono>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "adp.hpp"
#include "classic.hpp"
#include "graph.hpp"
#include "orders.hpp"
#include "proof.hpp"
#include "rewrite.hpp"
#include "trs.hpp"

namespace reladp {

enum class Answer { Yes, No, Maybe };

inline const char* to_string(Answer a) {
    switch (a) {
        case Answer::Yes: return "YES";
        case Answer::No: return "NO";
        case Answer::Maybe: return "MAYBE";
    }
    return "?";
}

struct ProverConfig {
    double timeout_seconds = 60;
    std::int64_t max_coeff = 2;
    std::size_t loop_depth = 6;
    std::size_t loop_term_size = 30;
    std::size_t seed_depth = 2;
    bool loop_search = true;
    bool fast_path = true;
    ProofFormat format = ProofFormat::Text;
    std::optional<std::uint64_t> seed;  // accepted for reproducibility; the search has no random choices

    void validate() const {
        if (timeout_seconds <= 0) throw Error("timeout must be positive");
        if (max_coeff < 1) throw Error("max-coeff must be at least 1");
        if (loop_depth == 0 || loop_term_size == 0 || seed_depth == 0) throw Error("loop bounds must be positive");
    }
};

/// An interpretation together with the inequalities it was claimed to satisfy.
struct OrientationRecord {
    std::string processor;
    PolyInterpretation interpretation;
    std::vector<Inequality> weak;
    std::vector<Inequality> strict;
};

struct ProofResult {
    Answer answer = Answer::Maybe;
    ProofNode proof;
    std::optional<LoopWitness> witness;
    std::vector<OrientationRecord> orientations;
    double seconds = 0;
};

namespace detail {

inline std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty()) out += '\n';
        out += l;
    }
    return out;
}

class Strategy {
public:
    Strategy(const RelativeTrs& trs, const ProverConfig& cfg, const SearchLimits& limits,
             std::vector<OrientationRecord>& records)
        : cfg_(cfg), limits_(limits), records_(records), display_(trs.signature) {}

    const SymbolDisplay& display() const { return display_; }

    // ------------------------------------------------------------ ordinary DPs

    ProofNode solve_dp(const DpProblem& p, int depth = 0) {
        ProofNode node;
        node.problem = to_string(p, display_);
        if (p.pairs.empty()) {
            node.label = "no dependency pairs";
            node.verdict = Verdict::SN;
            return node;
        }
        if (limits_.expired() || depth > kMaxDepth) return give_up(node, "timeout or depth limit");

        auto g = classic_dependency_graph(p);
        bool whole = g.sccs.size() == 1 && g.sccs[0].size() == p.pairs.size();
        if (!whole) {
            node.label = "classic-dg";
            std::vector<std::string> comps;
            for (const auto& comp : g.sccs) {
                std::string s = "{";
                for (std::size_t k = 0; k < comp.size(); ++k) s += (k ? "; " : " ") + display_.rule(p.pairs[comp[k]]);
                comps.push_back(s + " }");
            }
            node.params["sccs"] = comps.empty() ? "none" : detail::join_lines(comps);
            node.params["sub-problems"] = std::to_string(g.sccs.size());
            for (const auto& sub : classic_dg_processor(p)) node.children.push_back(solve_dp(sub, depth + 1));
            if (node.children.empty()) node.verdict = Verdict::SN;
            node.settle();
            return node;
        }
        std::vector<std::string> failed;
        for (std::int64_t c = 1; c <= cfg_.max_coeff; ++c) {
            auto r = classic_rpp_processor(p, c, limits_);
            if (!r) {
                failed.push_back("classic-rpp max-coeff " + std::to_string(c) + ": absent");
                continue;
            }
            node.label = "classic-rpp";
            node.params["max-coeff"] = std::to_string(c);
            node.params["interpretation"] = detail::join_lines(pol_lines(r->orientation.interpretation, display_));
            std::vector<std::string> strict;
            OrientationRecord rec{"classic-rpp", r->orientation.interpretation, {}, {}};
            for (const auto& x : p.rules) rec.weak.push_back({x.lhs, x.rhs});
            for (const auto& x : p.pairs) rec.weak.push_back({x.lhs, x.rhs});
            for (auto i : r->orientation.strict) {
                strict.push_back(display_.rule(p.pairs[i]));
                rec.strict.push_back({p.pairs[i].lhs, p.pairs[i].rhs});
            }
            records_.push_back(std::move(rec));
            node.params["strict"] = detail::join_lines(strict);
            if (!failed.empty()) node.params["failed"] = detail::join_lines(failed);
            node.children.push_back(solve_dp(r->problem, depth + 1));
            node.settle();
            return node;
        }
        node.params["failed"] = detail::join_lines(failed);
        return give_up(node, "no processor applies");
    }

    // ------------------------------------------------------------ ADP problems

    ProofNode solve_adp(const AdpProblem& p, int depth = 0) {
        ProofNode node;
        node.problem = to_string(p, display_);
        if (p.main.empty()) {
            node.label = "no main ADPs";
            node.verdict = Verdict::SN;
            return node;
        }
        if (limits_.expired() || depth > kMaxDepth) return give_up(node, "timeout or depth limit");
        std::vector<std::string> failed;
        auto finish = [&](ProofNode& n) -> ProofNode& {
            if (!failed.empty()) n.params["failed"] = detail::join_lines(failed);
            n.settle();
            return n;
        };

        if (auto dp = drp1(p)) {
            auto child = solve_dp(*dp, depth + 1);
            if (child.verdict == Verdict::SN) {
                node.label = "drp1";
                node.params["pairs"] = std::to_string(dp->pairs.size());
                node.children.push_back(std::move(child));
                return finish(node);
            }
            failed.push_back("drp1: ordinary DP problem not proved");
        }

        auto dg = dg_analysis(p);
        if (!(dg.problems.size() == 1 && dg.problems[0] == p)) {
            node.label = "dg";
            node.params["sccs"] = describe_regions(dg.graph, dg.sccs);
            node.params["lassos"] = describe_regions(dg.graph, dg.lassos);
            node.params["sub-problems"] = std::to_string(dg.problems.size());
            node.dot = to_dot(dg.graph, display_, "dg" + std::to_string(dot_counter_++));
            for (const auto& sub : dg.problems) node.children.push_back(solve_adp(sub, depth + 1));
            if (node.children.empty()) node.verdict = Verdict::SN;
            return finish(node);
        }
        failed.push_back("dg: no progress");

        std::set<std::size_t> lasso_sel;
        for (const auto& q : dg.lassos) {
            for (auto i : q) {
                if (i >= p.main.size() && p.base[i - p.main.size()].rhs.has_annotations()) {
                    lasso_sel.insert(i - p.main.size());
                }
            }
        }
        if (!lasso_sel.empty()) {
            if (auto n = try_drp2(p, lasso_sel, "lasso", depth)) return finish(*n);
            failed.push_back("drp2 (lasso selection): sub-proof failed");
        }

        for (std::int64_t c = 1; c <= cfg_.max_coeff; ++c) {
            auto o = find_reduction_pair(p, c, OrderMode::Rpp, limits_);
            if (!o) {
                failed.push_back("rpp max-coeff " + std::to_string(c) + ": absent");
                continue;
            }
            node.label = "rpp";
            describe_orientation(node, p, *o, c, OrderMode::Rpp);
            node.children.push_back(solve_adp(rpp_processor(p, *o), depth + 1));
            return finish(node);
        }

        for (std::int64_t c = 1; c <= cfg_.max_coeff; ++c) {
            auto o = find_reduction_pair(p, c, OrderMode::RuleRemoval, limits_);
            if (!o) {
                failed.push_back("rule-removal max-coeff " + std::to_string(c) + ": absent");
                continue;
            }
            node.label = "rule-removal";
            describe_orientation(node, p, *o, c, OrderMode::RuleRemoval);
            node.children.push_back(solve_adp(rule_removal_processor(p, *o), depth + 1));
            return finish(node);
        }

        std::set<std::size_t> all_sel;
        for (std::size_t i = 0; i < p.base.size(); ++i) {
            if (p.base[i].rhs.has_annotations()) all_sel.insert(i);
        }
        if (!all_sel.empty() && all_sel != lasso_sel) {
            if (auto n = try_drp2(p, all_sel, "all annotated", depth)) return finish(*n);
            failed.push_back("drp2 (all annotated base ADPs): sub-proof failed");
        }
        node.params["failed"] = detail::join_lines(failed);
        return give_up(node, "no processor applies");
    }

private:
    static constexpr int kMaxDepth = 64;

    ProofNode& give_up(ProofNode& node, const std::string& why) {
        node.label = "stuck";
        node.params["reason"] = why;
        node.verdict = Verdict::Unknown;
        return node;
    }

    std::optional<ProofNode> try_drp2(const AdpProblem& p, const std::set<std::size_t>& sel, const std::string& how,
                                      int depth) {
        auto child = solve_adp(drp2(p, sel), depth + 1);
        if (child.verdict != Verdict::SN) return std::nullopt;
        ProofNode node;
        node.problem = to_string(p, display_);
        node.label = "drp2";
        node.params["selection"] = how;
        std::vector<std::string> picked;
        for (auto i : sel) picked.push_back(to_string(p.base[i], display_));
        node.params["moved"] = detail::join_lines(picked);
        node.children.push_back(std::move(child));
        return node;
    }

    std::string describe_regions(const DependencyGraph& g, const std::vector<std::set<std::size_t>>& regions) const {
        if (regions.empty()) return "none";
        std::vector<std::string> out;
        for (const auto& q : regions) {
            std::string s = "{";
            bool first = true;
            for (auto i : q) {
                s += (first ? " " : "; ") + to_string(g.nodes[i], display_);
                first = false;
            }
            out.push_back(s + " }");
        }
        return detail::join_lines(out);
    }

    void describe_orientation(ProofNode& node, const AdpProblem& p, const OrientationResult& o, std::int64_t c,
                              OrderMode mode) {
        std::vector<const Adp*> all;
        for (const auto& a : p.main) all.push_back(&a);
        for (const auto& a : p.base) all.push_back(&a);
        node.params["max-coeff"] = std::to_string(c);
        node.params["interpretation"] = detail::join_lines(pol_lines(o.interpretation, display_));
        OrientationRecord rec{to_string(mode), o.interpretation, {}, {}};
        for (const auto* a : all) rec.weak.push_back({a->lhs, a->rhs.plain});
        if (mode == OrderMode::Rpp) {
            for (const auto* a : all) rec.weak.push_back({sharp(a->lhs), ann_of_rhs(a->rhs)});
        }
        std::vector<std::string> strict;
        for (auto i : o.strict) {
            const Adp& a = *all[i];
            strict.push_back(to_string(a, display_));
            if (mode == OrderMode::Rpp) {
                rec.strict.push_back({sharp(a.lhs), ann_of_rhs(a.rhs)});
            } else {
                rec.strict.push_back({a.lhs, a.rhs.plain});
            }
        }
        node.params["strict"] = detail::join_lines(strict);
        records_.push_back(std::move(rec));
    }

    const ProverConfig& cfg_;
    const SearchLimits& limits_;
    std::vector<OrientationRecord>& records_;
    SymbolDisplay display_;
    int dot_counter_ = 0;
};

}  // namespace detail

/// Runs the processor pipeline; the loop search runs concurrently when enabled.
inline ProofResult prove(const RelativeTrs& trs, const ProverConfig& cfg = {}) {
    cfg.validate();
    auto t0 = std::chrono::steady_clock::now();
    auto deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(cfg.timeout_seconds));
    ProofResult result;

    std::atomic<bool> proved{false};
    std::atomic<bool> looped{false};
    std::future<std::optional<LoopWitness>> loop;
    if (cfg.loop_search) {
        LoopSearchOptions opt;
        opt.max_depth = cfg.loop_depth;
        opt.max_term_size = cfg.loop_term_size;
        opt.seed_depth = cfg.seed_depth;
        opt.deadline = deadline;
        opt.cancel = &proved;
        loop = std::async(std::launch::async, [trs, opt, &looped] {
            auto w = find_relative_loop(trs, opt);
            if (w) looped = true;
            return w;
        });
    }

    SearchLimits limits;
    limits.deadline = deadline;
    limits.cancel = &looped;
    detail::Strategy strategy(trs, cfg, limits, result.orientations);
    const auto& display = strategy.display();

    ProofNode root;
    root.label = "relative termination";
    {
        std::ostringstream os;
        os << "main {";
        for (std::size_t i = 0; i < trs.main.size(); ++i) os << (i ? "; " : " ") << display.rule(trs.main[i]);
        os << (trs.main.empty() ? "}" : " }") << ", base {";
        for (std::size_t i = 0; i < trs.base.size(); ++i) {
            os << (i ? "; " : " ") << display.term(trs.base[i].lhs) << " ->= " << display.term(trs.base[i].rhs);
        }
        os << (trs.base.empty() ? "}" : " }");
        root.problem = os.str();
    }

    std::vector<std::string> failed;
    ProofNode pipeline;
    bool done = false;
    if (cfg.fast_path) {
        if (auto dp = dominance_fast_path(trs)) {
            auto child = strategy.solve_dp(*dp);
            if (child.verdict == Verdict::SN) {
                pipeline.label = "dominance";
                pipeline.params["pairs"] = std::to_string(dp->pairs.size());
                pipeline.problem = root.problem;
                pipeline.children.push_back(std::move(child));
                pipeline.settle();
                done = true;
            } else {
                failed.push_back("dominance: ordinary DP problem not proved");
            }
        } else {
            failed.push_back("dominance: side conditions fail");
        }
    }
    if (!done) {
        auto pre = preprocess_duplicating_base_detailed(trs, cfg.max_coeff, limits);
        auto adp = canonical_adp_problem(pre.trs);
        auto body = strategy.solve_adp(adp);
        if (pre.action == DupPreprocessResult::Action::Identity) {
            pipeline = std::move(body);
        } else {
            pipeline.problem = root.problem;
            std::vector<std::string> rules;
            for (const auto& r : pre.affected) rules.push_back(display.rule(r));
            pipeline.params["rules"] = detail::join_lines(rules);
            if (pre.action == DupPreprocessResult::Action::Removed) {
                pipeline.label = "dup-preprocess (remove)";
                pipeline.params["max-coeff"] = std::to_string(cfg.max_coeff);
                pipeline.params["interpretation"] = detail::join_lines(pol_lines(pre.orientation->interpretation, display));
                OrientationRecord rec{"dup-preprocess", pre.orientation->interpretation, {}, {}};
                for (const auto* part : {&trs.main, &trs.base}) {
                    for (const auto& r : *part) rec.weak.push_back({r.lhs, r.rhs});
                }
                for (const auto& r : pre.affected) rec.strict.push_back({r.lhs, r.rhs});
                result.orientations.push_back(std::move(rec));
            } else {
                pipeline.label = "dup-preprocess (move to main)";
            }
            pipeline.children.push_back(std::move(body));
            pipeline.settle();
        }
    }
    if (!failed.empty()) root.params["failed"] = detail::join_lines(failed);
    bool yes = pipeline.verdict == Verdict::SN;
    if (yes) proved = true;

    if (cfg.loop_search) {
        result.witness = loop.get();
        if (result.witness && yes) throw Error("inconsistent result: proof and loop witness for the same system");
    }
    if (result.witness) {
        ProofNode leaf;
        leaf.label = "loop";
        leaf.verdict = Verdict::NotSN;
        leaf.params["witness"] = to_string(*result.witness);
        std::vector<std::string> steps;
        for (const auto& s : result.witness->trace) {
            steps.push_back(std::string(to_string(s.kind)) + " step at " + s.position.str() + " with " +
                            to_string(s.rule) + ": " + to_string(s.result));
        }
        leaf.params["trace"] = detail::join_lines(steps);
        root.children.push_back(std::move(leaf));
        root.verdict = Verdict::NotSN;
        result.answer = Answer::No;
        if (!pipeline.label.empty()) root.params["pipeline"] = std::string(to_string(pipeline.verdict));
    } else {
        root.children.push_back(std::move(pipeline));
        root.settle();
        result.answer = yes ? Answer::Yes : Answer::Maybe;
    }
    result.proof = std::move(root);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace reladp
