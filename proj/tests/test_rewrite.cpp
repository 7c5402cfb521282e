#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace reladp;
using fixtures::term;

TEST(Rewrite, Successors) {
    auto r4 = parse_relative_trs(fixtures::kR4);
    auto s = rewrite_successors(r4, term("a"));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].result, term("b"));
    EXPECT_EQ(s[0].kind, RuleKind::Main);
    EXPECT_TRUE(s[0].position.is_root());

    auto divl = parse_relative_trs(fixtures::divl());
    EXPECT_TRUE(rewrite_successors(divl, term("s(s(O))")).empty());

    auto r2 = parse_relative_trs(fixtures::kR2);
    auto d = rewrite_successors(r2, term("d(f,a)"));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].position, Position{1});
    EXPECT_EQ(d[0].kind, RuleKind::Base);
    EXPECT_EQ(d[0].result, term("d(d(f,a),a)"));
    EXPECT_EQ(d[1].position, Position{2});
    EXPECT_EQ(d[1].kind, RuleKind::Main);
    EXPECT_EQ(d[1].result, term("d(f,b)"));
}

TEST(Vrf, Enumeration) {
    Adp ab{term("a(x)"), AnnotatedTerm(term("b(x)"))};
    auto v = enumerate_vrfs(ab);
    ASSERT_EQ(v.size(), 2u);
    Adp ground{term("a"), AnnotatedTerm(term("b"))};
    EXPECT_EQ(enumerate_vrfs(ground).size(), 1u);
    EXPECT_TRUE(enumerate_vrfs(ground)[0].empty());
    Adp dup{term("f(x)"), AnnotatedTerm(term("d(x,x)"))};
    EXPECT_EQ(enumerate_vrfs(dup).size(), 3u);
    for (const auto& vrf : enumerate_vrfs(dup)) {
        for (const auto& [from, to] : vrf) {
            if (to) EXPECT_EQ(subterm_at(dup.lhs, from), subterm_at(dup.rhs.plain, *to));
        }
    }
}

TEST(AdpStep, ProperAndRewriteCases) {
    std::set<std::string> defined{"a", "f"};
    Adp ab{term("a(x)"), AnnotatedTerm(term("b(x)"))};
    AnnotatedTerm s(term("a(f)"), {Position{}, Position{1}});  // A(F)
    Vrf keep{{Position{1}, Position{1}}};
    Vrf drop{{Position{1}, std::nullopt}};
    bool pr = false;
    auto t1 = adp_rewrite_step(defined, s, Position{}, ab, keep, &pr);
    EXPECT_TRUE(pr);
    EXPECT_EQ(t1, AnnotatedTerm(term("b(f)"), {Position{1}}));
    auto t2 = adp_rewrite_step(defined, s, Position{}, ab, drop);
    EXPECT_EQ(t2, AnnotatedTerm(term("b(f)")));

    Adp base{term("f"), AnnotatedTerm(term("d(f,a)"), {Position{1}, Position{2}})};
    auto t3 = adp_rewrite_step(defined, AnnotatedTerm(term("f"), {Position{}}), Position{}, base, {}, &pr);
    EXPECT_TRUE(pr);
    EXPECT_EQ(t3, AnnotatedTerm(term("d(f,a)"), {Position{1}, Position{2}}));
    // (r) step: rhs annotations dropped
    auto t4 = adp_rewrite_step(defined, AnnotatedTerm(term("f")), Position{}, base, {}, &pr);
    EXPECT_FALSE(pr);
    EXPECT_FALSE(t4.has_annotations());
}

TEST(AdpStep, Errors) {
    std::set<std::string> defined{"a"};
    Adp ab{term("a(x)"), AnnotatedTerm(term("b(x)"))};
    EXPECT_THROW(adp_rewrite_step(defined, AnnotatedTerm(term("b(a(c))")), Position{}, ab, {}), Error);
    EXPECT_THROW(adp_rewrite_step(defined, AnnotatedTerm(term("a(c)")), Position{2}, ab, {}), Error);
    Adp other{term("a(b(x))"), AnnotatedTerm(term("x"))};
    EXPECT_THROW(adp_rewrite_step(defined, AnnotatedTerm(term("a(c)")), Position{}, other, {}), Error);
}

TEST(Properties, AnnotatedStepsAreCoherentWithPlainSteps) {
    for (const auto* text : {fixtures::kR2, fixtures::kR3, fixtures::kCreatingTerminating}) {
        auto trs = parse_relative_trs(text);
        auto problem = canonical_adp_problem(trs);
        auto defined = problem.defined();
        std::vector<AnnotatedTerm> frontier;
        for (const auto& t : ground_terms(trs.signature, trs.constructors, 3, 40)) {
            auto ps = symbol_positions(t, defined);
            frontier.emplace_back(t, std::set<Position>(ps.begin(), ps.end()));
        }
        for (int round = 0; round < 2; ++round) {
            std::vector<AnnotatedTerm> next;
            for (const auto& s : frontier) {
                for (const auto& st : annotated_successors(problem, defined, s)) {
                    EXPECT_TRUE(st.result.valid_for(defined));
                    auto sigma = match_term(st.adp.lhs, subterm_at(s.plain, st.position));
                    ASSERT_TRUE(sigma);
                    EXPECT_EQ(st.result.plain, replace_at(s.plain, st.position, reladp::apply(st.adp.rhs.plain, *sigma)));
                    if (!st.pr) EXPECT_LE(st.result.annotated.size(), s.annotated.size());
                    if (next.size() < 200 && st.result.plain.size() < 12) next.push_back(st.result);
                }
            }
            frontier = std::move(next);
        }
    }
}

TEST(Loop, R4) {
    auto w = find_relative_loop(parse_relative_trs(fixtures::kR4), 6, 30);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->start, term("a"));
    ASSERT_EQ(w->trace.size(), 2u);
    EXPECT_EQ(w->trace[0].kind, RuleKind::Main);
    EXPECT_EQ(w->trace[1].kind, RuleKind::Base);
    EXPECT_EQ(w->main_steps, 1u);
    EXPECT_TRUE(replay_witness(parse_relative_trs(fixtures::kR4), *w));
}

TEST(Loop, R2) {
    auto trs = parse_relative_trs(fixtures::kR2);
    auto w = find_relative_loop(trs, 3, 30);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->start, term("f"));
    EXPECT_EQ(w->end(), term("d(f,b)"));
    EXPECT_EQ(w->context, Position{1});
    EXPECT_TRUE(replay_witness(trs, *w));
}

TEST(Loop, DivLMset2HasNone) {
    EXPECT_FALSE(find_relative_loop(parse_relative_trs(fixtures::divl_mset2()), 6, 30));
}

TEST(Loop, TamperedWitnessFailsReplay) {
    auto trs = parse_relative_trs(fixtures::kR4);
    auto w = find_relative_loop(trs, 6, 30);
    ASSERT_TRUE(w);
    auto bad = *w;
    bad.trace.pop_back();
    EXPECT_FALSE(replay_witness(trs, bad));
}
