#include "doctest.h"
#include "fixtures.hpp"

#include "teamlogic/formulas.hpp"

using namespace teamlogic;

TEST_SUITE("formulas")
{
    TEST_CASE("print then parse is the identity on the corpus")
    {
        for (const auto& f : fixtures::list("formulas", ".frm")) {
            CAPTURE(f);
            Formula phi = parse_formula(fixtures::text(f));
            Formula again = parse_formula(print(phi));
            CHECK(equal(phi, again));
            CHECK(print(again) == print(phi));
        }
        for (const auto& f : fixtures::list("so", ".so")) {
            CAPTURE(f);
            SOFormula phi = parse_so_formula(fixtures::text(f));
            SOFormula again = parse_so_formula(print_so(phi));
            CHECK(equal(phi, again));
        }
    }

    TEST_CASE("precedence and binders")
    {
        Formula f = parse_formula("P(x) & Q(x) | R(x)");
        CHECK(f->kind == Kind::Or);
        CHECK(f->a->kind == Kind::And);
        Formula g = parse_formula("A x. P(x) & Q(x)");
        CHECK(g->kind == Kind::Forall);
        CHECK(g->free.empty());
        Formula h = parse_formula("E x. E y. inc(x; y)");
        CHECK(h->kind == Kind::Exists);
        CHECK(h->a->kind == Kind::Exists);
        CHECK_THROWS_AS(parse_formula("E x y. inc(x; y)"), ParseError);
        Formula imp = parse_formula("P(x) -> inc(x; y)");
        CHECK(imp->kind == Kind::Or);
        CHECK(imp->a->kind == Kind::Rel);
        CHECK_FALSE(imp->a->positive);
    }

    TEST_CASE("free variables and atom flags")
    {
        Formula f = parse_formula("E y. (E(x,y) & exc(x, y; y, z))");
        CHECK(f->free == std::vector<std::string>{"x", "z"});
        CHECK(f->has_exc);
        CHECK_FALSE(f->has_inc);
        CHECK(f->downward_closed());
        CHECK_FALSE(parse_formula("inc(x; y)")->downward_closed());
        CHECK(parse_formula("P(x) | ~Q(x, y)")->flat());
        CHECK(parse_formula("dep(x; y)")->has_dep);
    }

    TEST_CASE("parse errors carry positions")
    {
        auto position = [](const std::string& text) {
            try {
                parse_formula(text);
            } catch (const ParseError& e) {
                return std::make_pair(e.line(), e.column());
            }
            return std::make_pair(0, 0);
        };
        CHECK(position("P(x) &") == std::make_pair(1, 7));
        CHECK(position("P(x\n& Q(y)").first == 2);
        CHECK(position("inc(x, y; z)").first == 1);
        CHECK(position("P(x) $ Q(x)").second == 6);
        CHECK(position("__fresh_x = y") != std::make_pair(0, 0));
        CHECK_THROWS_AS(parse_formula("P(x) & P(x, y)"), ParseError);
        CHECK_THROWS_AS(parse_formula("EX R/1. R(x)"), ParseError);
    }

    TEST_CASE("negation normal form")
    {
        Formula f = to_nnf(parse_formula("~(P(x) & A y. (E(x,y) | x = y))"));
        CHECK(print(f) == "~P(x) | (E y. (~E(x, y) & x != y))");
        CHECK_THROWS_AS(to_nnf(parse_formula("~inc(x; y)")), InvalidInput);
        Formula g = parse_formula("~~P(x)");
        CHECK(print(to_nnf(g)) == "P(x)");
    }

    TEST_CASE("occurrence ids and subformulas")
    {
        Formula f = parse_formula("P(x) & (Q(x) | R(x))");
        auto subs = subformula_multiset(f);
        REQUIRE(subs.size() == 5);
        CHECK(subs[0].first == "r");
        CHECK(child_id("r.1", 0) == "r.1.0");
        bool found = false;
        for (const auto& [id, node] : subs)
            if (id == "r.1.1")
                found = node->kind == Kind::Rel && node->name == "R";
        CHECK(found);
    }

    TEST_CASE("renaming avoids capture")
    {
        Formula f = parse_formula("E y. inc(x; y)");
        Formula g = rename_free(f, {{"x", "y"}});
        CHECK(g->free == std::vector<std::string>{"y"});
        CHECK(g->kind == Kind::Exists);
        CHECK(g->name != "y");
        Formula h = rename_bound_apart(f, {"y"});
        CHECK(h->name != "y");
        CHECK(h->free == f->free);
        Formula r = rename_relations(parse_formula("P(x) & E(x,x)"), {{"P", "Q"}});
        CHECK(relation_symbols(r) == std::set<std::string>{"E", "Q"});
    }

    TEST_CASE("second-order formulas")
    {
        SOFormula phi = parse_so_formula("EX R/1. A x. (X(x) -> R(x))");
        CHECK(phi.free_arity == 1);
        CHECK(phi.quantified.size() == 1);
        CHECK(phi.guard.empty());
        SOFormula g = parse_so_formula("A x. (X(x) -> EX R/1. (R(x) & P(x)))");
        CHECK(g.guard == std::vector<std::string>{"x"});
        CHECK(check_myopic_so(g).ok);
        CHECK_FALSE(check_myopic_so(phi).ok);
        SOFormula neg = parse_so_formula("A x. (X(x) -> ~X(x))");
        CHECK_FALSE(check_myopic_so(neg).ok);
        SOFormula binary = parse_so_formula("A x. A y. (X(x,y) -> E(x,y))");
        CHECK(binary.free_arity == 2);
        CHECK(check_myopic_so(binary).ok);
        CHECK_THROWS_AS(parse_so_formula("EX X/1. X(x)"), ParseError);
        CHECK_THROWS_AS(parse_so_formula("X(x)"), ParseError);
    }

    TEST_CASE("x-myopic classifier")
    {
        CHECK(check_x_myopic(parse_formula("E z. (inc(z; x) & A y. (E(x,y) -> inc(x, y; x, z)))"), {"x"}).ok);
        auto phi = check_x_myopic(parse_formula(fixtures::text("formulas/evil_phi.frm")), {"x"});
        CHECK_FALSE(phi.ok);
        CHECK(phi.diagnostic.find("r.") != std::string::npos);
        CHECK_FALSE(check_x_myopic(parse_formula(fixtures::text("formulas/evil_psi.frm")), {"x"}).ok);
        CHECK_FALSE(check_x_myopic(parse_formula("P(x) | E z. inc(z; x)"), {"x"}).ok);
        CHECK_FALSE(check_x_myopic(parse_formula("E x. P(x)"), {"x"}).ok);
        CHECK_FALSE(check_x_myopic(parse_formula("exc(x; y)"), {"x"}).ok);
    }
}
