#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inpk/semantics.hpp"
#include "inpk/syntax.hpp"
#include "oracle.hpp"

#include <random>

using namespace inpk;
using TV = TruthValue;

namespace {

const Formula p = atom("p");
const Formula q = atom("q");
const Formula r = atom("r");

std::vector<LogicParams> grid(unsigned max_n, unsigned max_k)
{
    std::vector<LogicParams> out;
    for (unsigned n = 0; n <= max_n; ++n) {
        for (unsigned k = 0; k <= max_k; ++k) out.push_back({n, k});
    }
    return out;
}

Valuation to_valuation(const oracle::Assignment& a)
{
    Valuation v;
    for (const auto& [name, value] : a) v.set(name, value);
    return v;
}

std::vector<oracle::Assignment> assignments(const LogicParams& lp, const std::vector<std::string>& names)
{
    std::vector<oracle::Assignment> out;
    oracle::Assignment cur;
    oracle::assignments(lp, names, 0, cur, out);
    return out;
}

}  // namespace

TEST_CASE("negation table")
{
    LogicParams l21{2, 1};
    CHECK(neg_value(l21, TV::F(2)) == TV::F(1));
    CHECK(neg_value(l21, TV::T(0)) == TV::F(0));
    CHECK(neg_value(l21, TV::T(1)) == TV::T(0));
    CHECK(neg_value({0, 0}, TV::F(0)) == TV::T(0));
    CHECK_THROWS_AS(neg_value(l21, TV::F(3)), RangeError);
    CHECK_THROWS_AS(neg_value(l21, TV::T(2)), RangeError);
}

TEST_CASE("implication table")
{
    LogicParams l21{2, 1};
    CHECK(imp_value(l21, TV::F(2), TV::F(0)) == TV::T(0));
    CHECK(imp_value(l21, TV::T(0), TV::F(1)) == TV::F(0));
    CHECK(imp_value(l21, TV::T(1), TV::T(0)) == TV::T(0));
    CHECK_THROWS_AS(imp_value(l21, TV::T(0), TV::F(5)), RangeError);
}

TEST_CASE("designated values")
{
    CHECK(is_designated({0, 0}, TV::T(0)));
    CHECK_FALSE(is_designated({0, 0}, TV::F(0)));
    CHECK(is_designated({2, 1}, TV::T(1)));
    CHECK_THROWS_AS(is_designated({0, 0}, TV::T(1)), RangeError);
}

TEST_CASE("carrier order and codes")
{
    LogicParams l{2, 1};
    auto c = carrier(l);
    REQUIRE(c.size() == 5);
    CHECK(c == std::vector<TV>{TV::F(0), TV::F(1), TV::F(2), TV::T(0), TV::T(1)});
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(value_code(l, c[i]) == i);
        CHECK(value_from_code(l, i) == c[i]);
    }
}

TEST_CASE("value and valuation text")
{
    CHECK(to_string(TV::T(3)) == "T3");
    CHECK(parse_truth_value("F12") == TV::F(12));
    CHECK_THROWS_AS(parse_truth_value("X1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_truth_value("T"), std::invalid_argument);
    Valuation v{{"p", TV::T(1)}, {"q", TV::F(0)}};
    CHECK(to_string(v) == "p=T1,q=F0");
    CHECK(parse_valuation("p=T1,q=F0") == v);
    CHECK_THROWS_AS(parse_valuation("p=T1,,q"), std::invalid_argument);
}

TEST_CASE("eval examples")
{
    Formula mep = lor(neg(p), p);
    CHECK(eval({0, 1}, mep, {{"p", TV::T(1)}}) == TV::T(0));
    CHECK(eval({1, 0}, mep, {{"p", TV::F(1)}}) == TV::F(0));
    for (const auto& lp : grid(2, 2)) {
        for (const auto& a : carrier(lp)) CHECK(eval(lp, imp(p, p), {{"p", a}}) == TV::T(0));
    }
    CHECK_THROWS_AS(eval({0, 0}, imp(p, q), {{"p", TV::T(0)}}), UnboundAtom);
    CHECK_THROWS_AS(eval({0, 0}, p, {{"p", TV::T(1)}}), RangeError);
}

TEST_CASE("enumerate_valuations")
{
    CHECK(all_valuations({0, 0}, {"p"}).size() == 2);
    CHECK(all_valuations({1, 1}, {"p"}).size() == 4);
    auto nine = all_valuations({1, 0}, {"p", "q"});
    REQUIRE(nine.size() == 9);
    CHECK(to_string(nine[0]) == "p=F0,q=F0");
    CHECK(to_string(nine[1]) == "p=F0,q=F1");
    CHECK(to_string(nine[3]) == "p=F1,q=F0");
    CHECK(to_string(nine[8]) == "p=T0,q=T0");
    CHECK(all_valuations({3, 3}, {}).size() == 1);

    std::size_t seen = 0;
    enumerate_valuations({2, 2}, {"p", "q"}, [&](const Valuation&) { return ++seen < 7; });
    CHECK(seen == 7);
}

TEST_CASE("is_tautology examples")
{
    CHECK(is_tautology({1, 1}, lor(neg_n(2, p), neg(p))).valid());
    CHECK(is_tautology({1, 1}, neg(land(neg_n(2, p), neg(p)))).valid());
    auto ncp = is_tautology({0, 1}, neg(land(neg(p), p)));
    REQUIRE_FALSE(ncp.valid());
    CHECK(to_string(*ncp.counterexample) == "p=T1");
}

TEST_CASE("counterexample is the first in enumeration order")
{
    // p -> q fails at (T0,F0) first; (T0,F1) and (T1,*) later.
    auto v = is_tautology({1, 1}, imp(p, q));
    REQUIRE_FALSE(v.valid());
    CHECK(to_string(*v.counterexample) == "p=T0,q=F0");
}

TEST_CASE("entails examples")
{
    for (const auto& lp : grid(2, 2)) CHECK(entails(lp, {p}, p).valid());
    std::vector<Formula> hyps{imp(neg(p), neg(q)), q, star(p), circ(q)};
    CHECK(entails({1, 1}, hyps, p).valid());
    auto mep = entails({1, 0}, {}, lor(neg(p), p));
    REQUIRE_FALSE(mep.valid());
    CHECK(to_string(*mep.counterexample) == "p=F1");
    // Hypothesis atoms count too.
    CHECK_FALSE(entails({0, 0}, {r}, p).valid());
}

TEST_CASE("compare_logics examples")
{
    CHECK(compare_logics({1, 0}, {0, 0}) == OrderVerdict::StrictlyBelow);
    CHECK(compare_logics({0, 0}, {1, 0}) == OrderVerdict::StrictlyAbove);
    CHECK(compare_logics({1, 0}, {0, 1}) == OrderVerdict::Incomparable);
    CHECK(compare_logics({2, 3}, {2, 3}) == OrderVerdict::Equal);
    CHECK(to_string(OrderVerdict::Incomparable) == "incomparable");
}

TEST_CASE("separating_witness examples")
{
    auto w1 = separating_witness({0, 0}, {1, 0});
    REQUIRE(w1);
    CHECK(*w1 == lor(neg(p), p));
    CHECK(is_tautology({0, 0}, *w1).valid());
    auto c1 = is_tautology({1, 0}, *w1);
    REQUIRE_FALSE(c1.valid());
    CHECK(to_string(*c1.counterexample) == "p=F1");

    auto w2 = separating_witness({0, 0}, {0, 1});
    REQUIRE(w2);
    CHECK(*w2 == neg(land(neg(p), p)));
    auto c2 = is_tautology({0, 1}, *w2);
    REQUIRE_FALSE(c2.valid());
    CHECK(to_string(*c2.counterexample) == "p=T1");

    CHECK_FALSE(separating_witness({1, 1}, {1, 1}));
    CHECK_FALSE(separating_witness({2, 2}, {1, 0}));
}

TEST_CASE("truth_table examples")
{
    LogicParams l21{2, 1};
    auto code = [&](TV a) { return value_code(l21, a); };
    auto cl = truth_table(l21, "classicalize");
    CHECK(cl.arity == 1);
    CHECK(cl.at(code(TV::T(1))) == TV::T(0));
    CHECK(cl.at(code(TV::F(2))) == TV::F(0));
    auto sn = truth_table(l21, "strong");
    CHECK(sn.at(code(TV::F(2))) == TV::T(0));
    CHECK(sn.at(code(TV::T(1))) == TV::F(0));
    LogicParams l10{1, 0};
    CHECK(truth_table(l10, "star").at(value_code(l10, TV::F(1))) == TV::F(0));
    auto im = truth_table(l21, "imp");
    CHECK(im.arity == 2);
    CHECK(im.cells.size() == 25);
    CHECK(im.at(code(TV::T(0)), code(TV::F(1))) == TV::F(0));
    CHECK_THROWS_AS(truth_table(l21, "xor"), UnknownConnective);
    CHECK(connective_names().size() == 10);
}

TEST_CASE("disjunction follows its definition, not a transcribed table")
{
    // F0 ∨ F_s = ∼F0 → F_s = T0 → F_s = F0.
    LogicParams l{2, 1};
    auto t = truth_table(l, "or");
    for (unsigned s = 0; s <= 2; ++s) {
        CHECK(t.at(value_code(l, TV::F(0)), value_code(l, TV::F(s))) == TV::F(0));
    }
}

TEST_CASE("homomorphism against the oracle")
{
    auto forms = oracle::formulas_up_to(3, {p, q});
    for (const auto& lp : grid(2, 2)) {
        for (const auto& a : assignments(lp, {"p", "q"})) {
            Valuation v = to_valuation(a);
            for (const auto& f : forms) {
                TV got = eval(lp, f, v);
                CHECK(got == oracle::eval(f, a));
                if (f.is_neg()) CHECK(got == neg_value(lp, eval(lp, f.body(), v)));
                if (f.is_imp())
                    CHECK(got == imp_value(lp, eval(lp, f.antecedent(), v), eval(lp, f.consequent(), v)));
            }
        }
    }
}

TEST_CASE("implication collapses to T0 or F0")
{
    for (const auto& lp : grid(3, 3)) {
        for (const auto& a : carrier(lp)) {
            for (const auto& b : carrier(lp)) {
                TV c = imp_value(lp, a, b);
                CHECK((c == TV::T(0) || c == TV::F(0)));
                CHECK(c.is_true() == (!a.is_true() || b.is_true()));
            }
        }
    }
}

TEST_CASE("negation descends to the classical values")
{
    LogicParams lp{4, 4};
    for (unsigned r = 0; r <= 4; ++r) {
        TV a = TV::F(r);
        for (unsigned s = 0; s < r; ++s) a = neg_value(lp, a);
        CHECK(a == TV::F(0));
        TV b = TV::T(r);
        for (unsigned s = 0; s < r; ++s) b = neg_value(lp, b);
        CHECK(b == TV::T(0));
    }
}

TEST_CASE("derived table identities")
{
    for (const auto& lp : grid(4, 4)) {
        auto cl = truth_table(lp, "classicalize");
        auto sn = truth_table(lp, "strong");
        auto dom = carrier(lp);
        for (std::size_t i = 0; i < dom.size(); ++i) {
            CHECK((cl.at(i) == TV::T(0)) == dom[i].is_true());
            CHECK((sn.at(i) == TV::T(0)) == !dom[i].is_true());
            CHECK(sn.at(value_code(lp, sn.at(i))) == cl.at(i));
            CHECK(eval(lp, strong_neg(strong_neg(p)), {{"p", dom[i]}}) == eval(lp, classicalize(p), {{"p", dom[i]}}));
        }
    }
}

TEST_CASE("valuation transfer to a larger logic")
{
    std::mt19937 rng(3);
    auto forms = oracle::formulas_up_to(3, {p, q});
    for (int i = 0; i < 60; ++i) forms.push_back(oracle::random_formula_upto(rng, 7, {p, q}));
    for (const auto& small : grid(2, 2)) {
        for (const auto& big : grid(2, 2)) {
            if (small.n > big.n || small.k > big.k) continue;
            for (const auto& v : all_valuations(small, {"p", "q"})) {
                for (const auto& f : forms) CHECK(eval(small, f, v) == eval(big, f, v));
            }
        }
    }
}

TEST_CASE("semantic deduction theorem and monotonicity")
{
    std::mt19937 rng(5);
    std::vector<Formula> pool{p, q, r};
    for (int i = 0; i < 300; ++i) {
        LogicParams lp{static_cast<unsigned>(rng() % 3), static_cast<unsigned>(rng() % 3)};
        std::vector<Formula> gamma;
        for (unsigned j = rng() % 3; j > 0; --j) gamma.push_back(oracle::random_formula_upto(rng, 4, pool));
        Formula phi = oracle::random_formula_upto(rng, 4, pool);
        Formula psi = oracle::random_formula_upto(rng, 4, pool);
        Formula chi = oracle::random_formula_upto(rng, 4, pool);

        auto with = gamma;
        with.push_back(phi);
        bool lhs = entails(lp, with, psi).valid();
        CHECK(lhs == entails(lp, gamma, imp(phi, psi)).valid());
        CHECK(lhs == oracle::entails(lp, with, psi));

        if (entails(lp, gamma, psi).valid()) {
            auto more = gamma;
            more.push_back(chi);
            CHECK(entails(lp, more, psi).valid());
        }
    }
}

TEST_CASE("generalized middle excluded and non-contradiction")
{
    for (const auto& lp : grid(4, 4)) {
        CHECK(is_tautology(lp, lor(neg_n(lp.n + 1, p), neg_n(lp.n, p))).valid());
        CHECK(is_tautology(lp, neg(land(neg_n(lp.k + 1, p), neg_n(lp.k, p)))).valid());
        if (lp.n >= 1) CHECK_FALSE(is_tautology(lp, lor(neg_n(lp.n, p), neg_n(lp.n - 1, p))).valid());
        if (lp.k >= 1) CHECK_FALSE(is_tautology(lp, neg(land(neg_n(lp.k, p), neg_n(lp.k - 1, p)))).valid());
    }
}

TEST_CASE("well-behaved formulas")
{
    for (const auto& lp : grid(2, 2)) {
        for (unsigned t = 0; t <= 4; ++t) {
            Formula lit = neg_n(t, p);
            CHECK(is_tautology(lp, lor(neg(lit), lit)).valid() == (t >= lp.n));
            CHECK(is_tautology(lp, neg(land(neg(lit), lit))).valid() == (t >= lp.k));
        }
        for (unsigned t = 0; t <= 2; ++t) {
            Formula im = neg_n(t, imp(p, q));
            CHECK(is_tautology(lp, lor(neg(im), im)).valid());
            CHECK(is_tautology(lp, neg(land(neg(im), im))).valid());
        }
    }
}

TEST_CASE("order agrees with validity on witnesses")
{
    for (const auto& a : grid(2, 2)) {
        for (const auto& b : grid(2, 2)) {
            auto w = separating_witness(a, b);
            bool below = b.n <= a.n && b.k <= a.k;
            CHECK(w.has_value() == !below);
            if (w) {
                CHECK(is_tautology(a, *w).valid());
                CHECK_FALSE(is_tautology(b, *w).valid());
            }
        }
    }
}
