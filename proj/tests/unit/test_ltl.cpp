#include "doctest.h"

#include "tlplan/ltl.hpp"

#include "../support/lasso_oracle.hpp"

using namespace tlplan;
using tlplan::testing::brute_force_holds;
using tlplan::testing::for_each_lasso;

namespace {

Formula at(const std::string& robot, int wp) { return Formula::atom(Atom{robot, wp}); }
Formula prop(const std::string& name) { return Formula::atom(Atom{name, 0}); }
Letter letter(std::initializer_list<const char*> names)
{
    Letter l;
    for (const char* n : names)
        l.insert(Atom{n, 0});
    return l;
}

}  // namespace

TEST_CASE("parse: single operator")
{
    CHECK(parse("F r1@45") == Formula::eventually(at("r1", 45)));
}

TEST_CASE("parse: back-and-forth clauses")
{
    const Formula expected = Formula::conj(Formula::always(Formula::eventually(at("r", 88))),
                                           Formula::always(Formula::eventually(at("r", 42))));
    CHECK(parse("(G F r@88) & (G F r@42)") == expected);
}

TEST_CASE("parse: unary binds tighter than until")
{
    CHECK(parse("!a U b") == Formula::until(Formula::negation(prop("a")), prop("b")));
    CHECK_FALSE(parse("!a U b") == Formula::negation(Formula::until(prop("a"), prop("b"))));
}

TEST_CASE("parse: precedence and associativity")
{
    CHECK(parse("a & b | c") == Formula::disj(Formula::conj(prop("a"), prop("b")), prop("c")));
    CHECK(parse("a | b -> c") == Formula::implies(Formula::disj(prop("a"), prop("b")), prop("c")));
    CHECK(parse("a -> b -> c") == Formula::implies(prop("a"), Formula::implies(prop("b"), prop("c"))));
    CHECK(parse("a U b U c") == Formula::until(prop("a"), Formula::until(prop("b"), prop("c"))));
    CHECK(parse("a R b & c") == Formula::conj(Formula::release(prop("a"), prop("b")), prop("c")));
    CHECK(parse("G !obs") == Formula::always(Formula::negation(Formula::atom(Atom::obs()))));
}

TEST_CASE("parse: comments and whitespace")
{
    CHECK(parse("# header\nF a # trailing\n") == Formula::eventually(prop("a")));
}

TEST_CASE("parse: errors carry line and column")
{
    try {
        parse("F a &\n  (b | ");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 8);
    }
    try {
        parse("a && b");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("unknown operator") != std::string::npos);
        CHECK(e.line() == 1);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse("a => b"), ParseError);
    CHECK_THROWS_AS(parse("r@0"), ParseError);
    CHECK_THROWS_AS(parse("r@x"), ParseError);
    CHECK_THROWS_AS(parse("obs@3"), ParseError);
    CHECK_THROWS_AS(parse("(a"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("a b"), ParseError);
}

TEST_CASE("printer round trip")
{
    for (const char* text : {"F r1@45", "(G F r@88) & (G F r@42)", "!a U b", "a -> X (b R !c)",
                             "G (r@45 -> X (!r@45 U b@16)) & G !obs", "true | false", "!!a"}) {
        const Formula f = parse(text);
        CHECK(parse(f.str()) == f);
    }
    CHECK(parse("!a U b").str() == "((!a) U b)");
}

TEST_CASE("to_nnf examples")
{
    CHECK(to_nnf(parse("!F p")) == parse("false R !p"));
    CHECK(to_nnf(parse("!(p U q)")) == parse("!p R !q"));
    CHECK(to_nnf(parse("!!p")) == parse("p"));
    CHECK(to_nnf(parse("a -> b")) == parse("!a | b"));
    CHECK(is_nnf(to_nnf(parse("!(G (a -> X F b) & !(a R b))"))));
    CHECK_FALSE(is_nnf(parse("F a")));
    CHECK_FALSE(is_nnf(parse("!(a & b)")));
}

TEST_CASE("atoms")
{
    CHECK(atoms(parse("true")).empty());
    CHECK(atoms(parse("F (a & !b)")) == std::set<Atom>{Atom{"a", 0}, Atom{"b", 0}});
    const Formula case1 = parse(
        "(G F r@45) & (!r@45 U r@46) & G (r@45 -> X (!r@45 U b@16)) & (G F r@12) & (G F b@45) & G !obs");
    CHECK(atoms(case1) ==
          std::set<Atom>{Atom{"r", 45}, Atom{"r", 46}, Atom{"r", 12}, Atom{"b", 16}, Atom{"b", 45}, Atom::obs()});
}

TEST_CASE("eval_lasso examples")
{
    CHECK(eval_lasso(parse("G F p"), LassoWord{{letter({})}, {letter({"p"}), letter({})}}));
    CHECK_FALSE(eval_lasso(parse("F p"), LassoWord{{letter({}), letter({})}, {letter({})}}));
    const LassoWord w{{letter({}), letter({"b"}), letter({"a"})}, {letter({"a"})}};
    // brute force: position 0 has !a and not b, position 1 has b
    CHECK(brute_force_holds(parse("!a U b"), w));
    CHECK(eval_lasso(parse("!a U b"), w));
    CHECK_THROWS(eval_lasso(parse("a"), LassoWord{{letter({})}, {}}));
}

TEST_CASE("eval_lasso agrees with the unrolling oracle and with its NNF")
{
    const std::vector<Formula> formulas = {
        parse("a U b"), parse("a R b"), parse("G F a"), parse("F G !a"), parse("X (a U X b)"),
        parse("!(a U (b R a))"), parse("G (a -> F b)"), parse("(X a) U (G b)"), parse("!(F a -> G X b)"),
    };
    const std::vector<Atom> ab = {Atom{"a", 0}, Atom{"b", 0}};
    std::size_t checked = 0;
    for_each_lasso(ab, 6, [&](const LassoWord& w) {
        for (const auto& f : formulas) {
            const bool v = eval_lasso(f, w);
            REQUIRE(v == brute_force_holds(f, w));
            REQUIRE(v == eval_lasso(to_nnf(f), w));
        }
        ++checked;
    });
    CHECK(checked == 30948);
}

TEST_CASE("eval_lasso is invariant under period unrolling")
{
    const std::vector<Atom> ab = {Atom{"a", 0}, Atom{"b", 0}};
    const Formula f = parse("G (a -> X (!a U b)) & F G !b | X X a");
    for_each_lasso(ab, 5, [&](const LassoWord& w) {
        LassoWord unrolled = w;
        unrolled.prefix.insert(unrolled.prefix.end(), w.period.begin(), w.period.end());
        REQUIRE(eval_lasso(f, w) == eval_lasso(f, unrolled));
    });
}
