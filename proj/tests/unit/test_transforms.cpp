#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "naive.hpp"

#include "teamlogic/classical.hpp"
#include "teamlogic/constructions.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/transforms.hpp"

using namespace teamlogic;

namespace {

std::set<std::set<Tuple>> tuples_of(const std::vector<Relation>& rels)
{
    std::set<std::set<Tuple>> out;
    for (const auto& r : rels)
        out.insert(r.tuples());
    return out;
}

std::set<std::set<Tuple>> rows_of(const std::vector<Team>& teams)
{
    std::set<std::set<Tuple>> out;
    for (const auto& t : teams)
        out.insert(t.rows());
    return out;
}

} // namespace

TEST_SUITE("transforms")
{
    TEST_CASE("guarded second-order formulas in prenex form")
    {
        Structure st = parse_structure(fixtures::text("structures/path.str"));
        SOFormula phi = parse_so_formula(fixtures::text("so/s14_myopic_reach.so"));
        SOFormula pre = so_prenex(phi);
        CHECK(pre.guard.empty());
        CHECK(pre.quantified.front().second == 2);
        CHECK(tuples_of(satisfying_relations(st, pre)) == naive::so_family(st, phi));
        SOFormula plain = parse_so_formula("E x. X(x)");
        CHECK(equal(so_prenex(plain), plain));
    }

    TEST_CASE("myopic companion of a second-order formula is the union closure")
    {
        Structure st = parse_structure(fixtures::text("structures/two.str"));
        for (const auto& f : fixtures::list("so", ".so")) {
            CAPTURE(f);
            SOFormula phi = parse_so_formula(fixtures::text(f));
            SOFormula mu = myopic_companion_so(phi);
            CHECK(check_myopic_so(mu).ok);
            CHECK(tuples_of(satisfying_relations(st, mu)) == naive::union_closure(naive::so_family(st, phi)));
        }
    }

    TEST_CASE("singleton companion yields every subset")
    {
        Structure st = parse_structure(fixtures::text("structures/path.str"));
        SOFormula mu = myopic_companion_so(parse_so_formula(fixtures::text("so/s02_singleton.so")));
        CHECK(satisfying_relations(st, mu).size() == 8);
        SOFormula twice = myopic_companion_so(mu);
        CHECK(satisfying_relations(st, twice) == satisfying_relations(st, mu));
    }

    TEST_CASE("guarding and unguarding")
    {
        Formula f = parse_formula("E w. (inc(v; w) & exc(v, w; w, v) & dep(v; w))");
        Formula g = guard_atoms(f, {"x"});
        CHECK(print(g) == "E w. (inc(x, v; x, w) & exc(x, v, w; x, w, v) & dep(v; w))");
        CHECK(equal(unguard_atoms(g, {"x"}), f));
        CHECK_THROWS_AS(guard_atoms(parse_formula("inc(x; y)"), {"x"}), InvalidInput);
        CHECK_THROWS_AS(unguard_atoms(parse_formula("inc(y; x)"), {"x"}), InvalidInput);
    }

    TEST_CASE("a guarded formula holds iff it holds on every anchor component")
    {
        std::mt19937 rng(61);
        for (int i = 0; i < 80; ++i) {
            Structure st = gen::random_structure(rng, gen::uniform(rng, 2, 3));
            Formula f = gen::random_formula(rng, {"y"});
            Formula g = guard_atoms(f, {"x"});
            Team t({"x", "y"});
            for (const auto& r : all_tuples(st.size(), 2))
                if (gen::coin(rng, 0.4))
                    t.insert(r);
            bool all = true;
            Relation xs = project_team(t, {"x"});
            for (const auto& a : xs.tuples())
                all &= eval_team(st, component_team(t, {"x"}, a), f);
            CAPTURE(print(f));
            CHECK(eval_team(st, t, g) == all);
        }
    }

    TEST_CASE("dependence expansion")
    {
        Formula f = expand_dependence(parse_formula("dep(x; y)"));
        CHECK_FALSE(f->has_dep);
        Structure st = parse_structure("universe: a b c\n");
        CHECK(rows_of(satisfying_teams(st, f, {"x", "y"})) ==
              rows_of(satisfying_teams(st, parse_formula("dep(x; y)"), {"x", "y"})));
    }

    TEST_CASE("team companion is x-myopic and yields the union closure")
    {
        Structure st = parse_structure(fixtures::text("structures/two.str"));
        for (const auto& f : fixtures::list("formulas", ".frm")) {
            Formula phi = parse_formula(fixtures::text(f));
            if (phi->has_indep || f.find("evil") != std::string::npos)
                continue;
            CAPTURE(f);
            std::vector<std::string> anchor(phi->free.begin(), phi->free.end());
            CompanionOptions opts;
            opts.expand_dependence = true;
            Formula mu = team_myopic_companion(phi, anchor, opts);
            auto check = check_x_myopic(mu, anchor);
            CHECK_MESSAGE(check.ok, check.diagnostic);
            auto want = naive::union_closure(naive::family(st, anchor, phi));
            CHECK(rows_of(satisfying_teams(st, mu, anchor)) == want);
        }
        CHECK_THROWS_AS(team_myopic_companion(parse_formula("dep(x; y)"), {"x", "y"}), InvalidInput);
        CHECK_THROWS_AS(team_myopic_companion(parse_formula("P(z)"), {"x"}), InvalidInput);
    }

    TEST_CASE("graph example: closure under successors")
    {
        Structure st = parse_structure(fixtures::text("structures/fork.str"));
        Formula mu = parse_formula(fixtures::text("formulas/closed_under_e.frm"));
        for (const auto& t : all_teams(st, {"x"})) {
            auto v = project_team(t, {"x"});
            bool a = v.contains({0});
            bool bc = v.contains({1}) && v.contains({2});
            CHECK(eval_team(st, t, mu) == (!a || bc));
        }
    }

    TEST_CASE("win template agrees with the strategy checker")
    {
        Formula phi = template_phi_win();
        CHECK(phi->free.empty());
        CHECK(relation_symbols(phi).count("W"));
        std::mt19937 rng(67);
        for (int i = 0; i < 5; ++i) {
            Game g = gen::random_game(rng);
            Structure st = game_as_structure(g);
            CompiledFormula c(st, phi, {}, {{"W", 1}});
            for (std::size_t mask = 0; mask < (std::size_t{1} << g.size()); ++mask) {
                VertexSet w;
                Relation wr(1);
                for (std::size_t v = 0; v < g.size(); ++v)
                    if (mask >> v & 1) {
                        w.push_back(static_cast<Vertex>(v));
                        wr.insert({static_cast<Element>(v)});
                    }
                RelationTable table = relation_table(wr, st.size());
                c.set_param(0, &table);
                CHECK(c.eval(nullptr) == is_winning_strategy(g, w));
            }
        }
    }

    TEST_CASE("team templates have the expected free variables and fragments")
    {
        CHECK(template_psi_win()->free == std::vector<std::string>{"y"});
        CHECK(template_psi_target()->free == std::vector<std::string>{"z"});
        Formula theta = template_theta_target();
        CHECK(theta->free == std::vector<std::string>{"x"});
        CHECK(check_x_myopic(theta, {"x"}).ok);
        CHECK(equal(parse_formula(print(theta)), theta));
    }
}
