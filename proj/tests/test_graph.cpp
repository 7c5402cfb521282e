#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace reladp;
using fixtures::term;

namespace {

std::size_t index_of(const AdpProblem& p, const std::string& shown, const SymbolDisplay& d) {
    for (std::size_t i = 0; i < p.main.size(); ++i) {
        if (to_string(p.main[i], d) == shown) return i;
    }
    for (std::size_t i = 0; i < p.base.size(); ++i) {
        if (to_string(p.base[i], d) == shown) return p.main.size() + i;
    }
    ADD_FAILURE() << "no ADP " << shown;
    return 0;
}

}  // namespace

TEST(Graph, DivLMset2Edges) {
    auto trs = parse_relative_trs(fixtures::divl_mset2());
    SymbolDisplay d(trs.signature);
    auto p = canonical_adp_problem(trs);
    auto g = estimate_dependency_graph(p);
    auto base = index_of(p, "divL(z,cons(x,cons(y,zs))) -> DIVL(z,cons(y,cons(x,zs)))", d);
    auto dl = index_of(p, "divL(x,cons(y,xs)) -> DIVL(div(x,y),xs)", d);
    auto dl2 = index_of(p, "divL(x,cons(y,xs)) -> divL(DIV(x,y),xs)", d);
    EXPECT_TRUE(g.has_edge(base, base));
    EXPECT_TRUE(g.has_edge(base, dl));
    EXPECT_TRUE(g.has_edge(base, dl2));
    for (std::size_t i = 0; i < p.main.size(); ++i) {
        if (p.main[i].lhs.name() != "divL") EXPECT_FALSE(g.has_edge(i, base));
    }
    // unannotated ADPs have no successors
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g.nodes[i].rhs.has_annotations()) EXPECT_TRUE(g.succ[i].empty());
    }
}

TEST(Graph, R2) {
    auto p = canonical_adp_problem(parse_relative_trs(fixtures::kR2));
    auto g = estimate_dependency_graph(p);
    EXPECT_TRUE(g.succ[0].empty());
    EXPECT_EQ(g.succ[1], (std::vector<std::size_t>{0, 1}));
}

TEST(Scc, Basics) {
    EXPECT_TRUE(sccs(std::vector<std::vector<std::size_t>>{{1}, {}}).empty());
    EXPECT_EQ(sccs(std::vector<std::vector<std::size_t>>{{0}}), (std::vector<std::vector<std::size_t>>{{0}}));
    EXPECT_EQ(sccs(std::vector<std::vector<std::size_t>>{{1}, {0}, {2, 0}, {}}),
              (std::vector<std::vector<std::size_t>>{{0, 1}, {2}}));
}

TEST(Lasso, R2) {
    auto p = canonical_adp_problem(parse_relative_trs(fixtures::kR2));
    auto l = minimal_lassos(p);
    ASSERT_EQ(l.size(), 1u);
    EXPECT_EQ(l[0], (std::set<std::size_t>{0, 1}));
}

TEST(Lasso, DivLMset2HasNone) {
    EXPECT_TRUE(minimal_lassos(canonical_adp_problem(parse_relative_trs(fixtures::divl_mset2()))).empty());
}

TEST(Lasso, EmptyBase) {
    EXPECT_TRUE(minimal_lassos(canonical_adp_problem(parse_relative_trs(fixtures::divl()))).empty());
}

TEST(Lasso, PathNodesAreBase) {
    // g -> h(G) is a base path node between the doubly annotated SCC and the main ADP
    auto trs = parse_relative_trs("(VAR x)(RULES a -> b  f ->= d(f,g)  g ->= h(a))");
    auto p = canonical_adp_problem(trs);
    auto lassos = minimal_lassos(p);
    ASSERT_EQ(lassos.size(), 1u);
    EXPECT_EQ(lassos[0].size(), 3u);
    std::size_t mains = 0;
    for (auto i : lassos[0]) mains += i < p.main.size() ? 1 : 0;
    EXPECT_EQ(mains, 1u);
}

TEST(DgProcessor, DivLMset2) {
    auto trs = parse_relative_trs(fixtures::divl_mset2());
    auto p = canonical_adp_problem(trs);
    auto subs = dg_processor(p);
    ASSERT_EQ(subs.size(), 3u);
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_EQ(subs[k].main.size(), 1u);
        EXPECT_TRUE(subs[k].base_annotation_free());
    }
    EXPECT_EQ(subs[2].main.size(), 1u);
    EXPECT_FALSE(subs[2].base_annotation_free());
    // processors keep the plain rules
    auto flat_set = [](const AdpProblem& q) {
        std::set<Rule> s;
        for (const auto& r : q.flat_rules()) s.insert(r);
        return s;
    };
    for (const auto& s : subs) EXPECT_EQ(flat_set(s), flat_set(p));
}

TEST(DgProcessor, R2KeepsLasso) {
    auto p = canonical_adp_problem(parse_relative_trs(fixtures::kR2));
    auto subs = dg_processor(p);
    ASSERT_EQ(subs.size(), 1u);
    EXPECT_EQ(subs[0], p);
}

TEST(DgProcessor, NoAnnotationsMeansNoProblems) {
    AdpProblem p{{Adp{term("a"), AnnotatedTerm(term("b"))}}, {Adp{term("b"), AnnotatedTerm(term("a"))}}};
    EXPECT_TRUE(dg_processor(p).empty());
}

TEST(Dot, ShapesAndEdges) {
    auto trs = parse_relative_trs(fixtures::kR2);
    auto dot = to_dot(estimate_dependency_graph(canonical_adp_problem(trs)), SymbolDisplay(trs.signature));
    EXPECT_NE(dot.find("shape=box, label=\"a -> b\""), std::string::npos);
    EXPECT_NE(dot.find("shape=oval, label=\"f -> d(F,A)\""), std::string::npos);
    EXPECT_NE(dot.find("n1 -> n0;"), std::string::npos);
    EXPECT_NE(dot.find("n1 -> n1;"), std::string::npos);
}

namespace {

/// Does some annotated subterm t of a's rhs reach an instance of b's lhs in <= steps plain steps,
/// over ground instances drawn from `values`?
bool concrete_edge(const AdpProblem& p, const Adp& a, const Adp& b, const std::vector<Term>& values, int steps) {
    auto rules = p.flat_rules();
    auto xs = variables(a.lhs);
    std::vector<Substitution> sigmas{{}};
    for (const auto& x : xs) {
        std::vector<Substitution> next;
        for (const auto& s : sigmas) {
            for (const auto& v : values) {
                auto t = s;
                t[x] = v;
                next.push_back(t);
            }
        }
        sigmas = std::move(next);
    }
    for (const auto& [pos, t] : annotated_subterms(a.rhs)) {
        for (const auto& sigma : sigmas) {
            std::vector<Term> frontier{reladp::apply(t, sigma)};
            for (int i = 0; i <= steps; ++i) {
                std::vector<Term> next;
                for (const auto& u : frontier) {
                    if (u.name() == b.lhs.name() && match_term(b.lhs, u)) return true;
                    // rewrite strictly below the root
                    for (const auto& st : rewrite_successors(rules, {}, u)) {
                        if (!st.position.is_root() && st.result.size() < 10) next.push_back(st.result);
                    }
                }
                frontier = std::move(next);
            }
        }
    }
    return false;
}

}  // namespace

TEST(Properties, EstimationCoversConcreteEdges) {
    std::vector<std::string> systems{fixtures::kR2, fixtures::kR3, fixtures::kCreatingTerminating,
                                     "(VAR x)(RULES f(s(x)) -> g(h(x))  h(x) -> s(x)  g(s(x)) ->= f(x))",
                                     "(VAR x y)(RULES p(x,y) -> q(y,x)  q(s(x),y) ->= p(x,h(y))  h(x) -> s(x))"};
    for (const auto& text : systems) {
        auto trs = parse_relative_trs(text);
        auto p = canonical_adp_problem(trs);
        auto g = estimate_dependency_graph(p);
        auto values = ground_terms(trs.signature, trs.constructors, 2, 12);
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t j = 0; j < g.size(); ++j) {
                if (concrete_edge(p, g.nodes[i], g.nodes[j], values, 4)) {
                    EXPECT_TRUE(g.has_edge(i, j)) << text << ": " << i << " -> " << j;
                }
            }
        }
    }
}
