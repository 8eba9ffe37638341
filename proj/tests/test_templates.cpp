#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inpk/syntax.hpp"
#include "inpk/templates.hpp"
#include "oracle.hpp"

#include <random>
#include <set>

using namespace inpk;

namespace {

const Formula p = atom("p");
const Formula q = atom("q");
const Formula r = atom("r");

Substitution random_binding(std::mt19937& rng, const TemplateInfo& info)
{
    Substitution s;
    for (const auto& v : info.metavariables) s.emplace(v, oracle::random_formula_upto(rng, 3, {p, q, r}));
    return s;
}

}  // namespace

TEST_CASE("template catalogue")
{
    auto all = all_templates();
    CHECK(all.size() == 30);
    std::set<std::string_view> names;
    for (const auto& t : all) {
        names.insert(t.name);
        CHECK(parse_template_id(t.name) == t.id);
        CHECK(template_info(t.id).name == t.name);
    }
    CHECK(names.size() == all.size());
    CHECK_THROWS_AS(parse_template_id("no_such_template"), std::invalid_argument);
}

TEST_CASE("classical_intro is a single Ax1 instance")
{
    Proof pr = derive_template(TemplateId::ClassicalIntro, {{"phi", p}}, {1, 1});
    REQUIRE(pr.lines.size() == 1);
    CHECK(std::get<AxiomJust>(pr.lines[0].just).schema == AxiomId::Ax1);
    CHECK(pr.conclusion() == imp(p, classicalize(p)));
}

TEST_CASE("statements")
{
    CHECK(template_statement(TemplateId::CircOfCirc, {{"phi", p}}) == circ(circ(p)));
    CHECK(template_statement(TemplateId::AndIntro, {{"phi", p}, {"psi", q}}) == imp(p, imp(q, land(p, q))));
    CHECK(template_statement(TemplateId::NegImpIntro, {{"phi", p}, {"psi", q}}) ==
          imp(circ(q), imp(p, imp(neg(q), neg(imp(p, q))))));
    CHECK(template_statement(TemplateId::StrongReductio, {{"phi", p}, {"psi", q}}) ==
          imp(imp(strong_neg(p), strong_neg(q)), imp(imp(strong_neg(p), q), p)));
}

TEST_CASE("examples check")
{
    for (const auto& lp : {LogicParams{0, 0}, LogicParams{1, 2}, LogicParams{2, 1}}) {
        Proof cc = derive_template(TemplateId::CircOfCirc, {{"phi", p}}, lp);
        CHECK(check(cc).accepted);
        CHECK(cc.conclusion() == circ(circ(p)));
        Proof ai = derive_template(TemplateId::AndIntro, {{"phi", p}, {"psi", q}}, lp);
        CHECK(check(ai).accepted);
        CHECK(ai.conclusion() == imp(p, imp(q, land(p, q))));
    }
}

TEST_CASE("unbound metavariable")
{
    CHECK_THROWS_AS(derive_template(TemplateId::AndIntro, {{"phi", p}}, {}), TemplateError);
    CHECK_THROWS_AS(template_statement(TemplateId::Identity, {}), TemplateError);
}

TEST_CASE("every template checks and proves a tautology")
{
    std::mt19937 rng(31);
    for (unsigned n = 0; n <= 2; ++n) {
        for (unsigned k = 0; k <= 2; ++k) {
            LogicParams lp{n, k};
            for (const auto& t : all_templates()) {
                for (int i = 0; i < 3; ++i) {
                    auto s = random_binding(rng, t);
                    Proof pr = derive_template(t.id, s, lp);
                    INFO(t.name, " in (", n, ",", k, ")");
                    auto res = check(pr);
                    INFO(res.reason);
                    REQUIRE(res.accepted);
                    CHECK(pr.hypotheses.empty());
                    CHECK(pr.conclusion() == template_statement(t.id, s));
                    CHECK(oracle::tautology(lp, pr.conclusion()));
                }
            }
        }
    }
}

TEST_CASE("use_template reuses existing lines")
{
    ProofBuilder b({1, 1}, {});
    auto a = use_template(b, TemplateId::StarOfStar, {{"phi", p}});
    std::size_t size = b.size();
    auto again = use_template(b, TemplateId::StarOfStar, {{"phi", p}});
    CHECK(a == again);
    CHECK(b.size() == size);
}

TEST_CASE("implicative formulas are well behaved")
{
    for (const auto& lp : {LogicParams{0, 0}, LogicParams{2, 1}, LogicParams{1, 2}}) {
        for (std::size_t qn = 0; qn <= 3; ++qn) {
            Formula f = neg_n(qn, imp(p, neg(q)));
            ProofBuilder b(lp, {});
            auto s = derive_star_of_implicative(b, f);
            auto c = derive_circ_of_implicative(b, f);
            CHECK(b.formula(s) == star(f));
            CHECK(b.formula(c) == circ(f));
            CHECK(check(b.finish(s)).accepted);
            CHECK(check(b.finish(c)).accepted);
        }
        ProofBuilder b(lp, {});
        CHECK_THROWS_AS(derive_star_of_implicative(b, neg(p)), TemplateError);
    }
}

TEST_CASE("climbing ladders")
{
    LogicParams lp{2, 2};
    ProofBuilder b(lp, {star(p), circ(p)});
    auto s = climb_star(b, b.hyp(star(p)), p, 3);
    auto c = climb_circ(b, b.hyp(circ(p)), p, 2);
    CHECK(b.formula(s) == star(neg_n(3, p)));
    CHECK(b.formula(c) == circ(neg_n(2, p)));
    CHECK(check(b.finish(s)).accepted);
    CHECK(check(b.finish(c)).accepted);
}
