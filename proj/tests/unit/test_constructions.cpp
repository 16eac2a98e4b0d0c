#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "naive.hpp"
#include "codec_groups.hpp"

#include "teamlogic/constructions.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/transforms.hpp"

using namespace teamlogic;
using codec_groups::assemble;
using codec_groups::groups_of;

namespace {

std::set<std::set<Tuple>> relation_family(const Game& g, int arity)
{
    std::set<std::set<Tuple>> out;
    for (const auto& t : enumerate_targets(g))
        out.insert(relation_of_targets(g, t, arity).tuples());
    return out;
}

const char* kSmall[] = {"structures/two.str", "structures/path.str", "structures/cycle.str"};

} // namespace

TEST_SUITE("constructions")
{
    TEST_CASE("second-order model-checking games realize exactly the satisfying relations")
    {
        for (const char* s : kSmall)
            for (const auto& f : fixtures::list("so", ".so")) {
                CAPTURE(s);
                CAPTURE(f);
                Structure st = parse_structure(fixtures::text(s));
                SOFormula phi = parse_so_formula(fixtures::text(f));
                Game g = mc_game_so(st, phi);
                CHECK(g.initial().size() == 1);
                CHECK(relation_family(g, phi.free_arity) == naive::so_family(st, phi));
            }
    }

    TEST_CASE("position names are canonical")
    {
        Structure st = parse_structure(fixtures::text("structures/two.str"));
        SOFormula phi = parse_so_formula("A x. (X(x) -> P(x))");
        Game g = mc_game_so(st, phi);
        CHECK(g.find("T(a)"));
        CHECK(g.find("(r|)"));
        CHECK(g.find("(r.0|x=a)"));
        CHECK(mc_game_so(st, phi) == g);
        CHECK(print_game(mc_game_so(st, phi)) == print_game(g));
    }

    TEST_CASE("relations and targets convert both ways")
    {
        Structure st = parse_structure(fixtures::text("structures/path.str"));
        Game g = mc_game_so(st, parse_so_formula("A x. A y. (X(x,y) -> E(x,y))"));
        Relation r(2, {{0, 1}, {1, 2}});
        VertexSet t = targets_of_relation(g, r);
        CHECK(t.size() == 2);
        CHECK(relation_of_targets(g, t, 2) == r);
        Team team = team_of_targets(g, t, {"x", "y"});
        CHECK(targets_of_team(g, team, {"x", "y"}) == t);
        CHECK_THROWS_AS(relation_of_targets(g, {g.vertex("(r|)")}, 2), DomainError);
    }

    TEST_CASE("myopic games are union games realizing the myopic family")
    {
        for (const char* s : kSmall)
            for (const auto& f : fixtures::list("so", ".so")) {
                Structure st = parse_structure(fixtures::text(s));
                SOFormula phi = parse_so_formula(fixtures::text(f));
                if (!check_myopic_so(phi).ok)
                    continue;
                CAPTURE(s);
                CAPTURE(f);
                Game g = mc_game_myopic(st, phi);
                auto v = validate_union_game(g);
                CHECK_MESSAGE(v.ok, v.diagnostic);
                CHECK(relation_family(g, phi.free_arity) == naive::so_family(st, phi));
            }
        Structure st = parse_structure(fixtures::text("structures/two.str"));
        CHECK_THROWS_AS(mc_game_myopic(st, parse_so_formula("E x. X(x)")), InvalidInput);
    }

    TEST_CASE("exclusion games realize exactly the satisfying teams")
    {
        std::mt19937 rng(41);
        gen::FormulaShape shape;
        shape.inclusion = false;
        std::vector<Formula> corpus;
        for (const char* f : {"formulas/f01_p.frm", "formulas/f02_exc.frm", "formulas/f05_succ_apart.frm",
                              "formulas/f08_exc_or_eq.frm", "formulas/f09_antisym.frm", "formulas/f14_p_or_exc.frm",
                              "formulas/f16_singleton.frm"})
            corpus.push_back(parse_formula(fixtures::text(f)));
        for (int i = 0; i < 15; ++i)
            corpus.push_back(gen::random_formula(rng, {"x", "y"}, shape));
        int compared = 0;
        for (const auto& f : corpus)
            for (const char* s : {"structures/two.str", "structures/path.str"}) {
                CAPTURE(print(f));
                CAPTURE(s);
                Structure st = parse_structure(fixtures::text(s));
                Game g = mc_game_exclusion(st, f, {"x", "y"});
                CHECK(validate_exclusion_game(g).ok);
                std::set<std::set<Tuple>> expected;
                try {
                    expected = naive::family(st, {"x", "y"}, f, 300'000);
                } catch (const naive::Exhausted&) {
                    continue;
                }
                std::set<std::set<Tuple>> fam;
                for (const auto& t : enumerate_targets(g))
                    fam.insert(team_of_targets(g, t, {"x", "y"}).rows());
                CHECK(fam == expected);
                ++compared;
            }
        CHECK(compared >= 30);
        Structure st = parse_structure(fixtures::text("structures/two.str"));
        CHECK_THROWS_AS(mc_game_exclusion(st, parse_formula("inc(x; y)"), {"x", "y"}), InvalidInput);
        CHECK_THROWS_AS(mc_game_exclusion(st, parse_formula("P(z)"), {"x"}), DomainError);
    }

    TEST_CASE("CNF reduction")
    {
        Cnf unsat = parse_dimacs(fixtures::text("cnf/x_and_not_x.cnf"));
        Game g = cnf_to_game(unsat);
        CHECK_FALSE(solve_membership(g, g.targets()));
        auto c1 = solve_membership(g, {g.vertex("C1")});
        REQUIRE(c1);
        CHECK(c1->vertices == make_vertex_set({g.vertex("C1"), g.vertex("x1")}));
        Cnf sat = parse_dimacs(fixtures::text("cnf/small_sat.cnf"));
        Game h = cnf_to_game(sat);
        CHECK(solve_membership(h, h.targets()));
        std::mt19937 rng(43);
        for (int i = 0; i < 40; ++i) {
            Cnf cnf = gen::random_3cnf(rng);
            Game c = cnf_to_game(cnf);
            CHECK(solve_membership(c, c.targets()).has_value() == gen::truth_table_sat(cnf));
        }
    }

    TEST_CASE("DIMACS errors")
    {
        CHECK_THROWS_AS(parse_dimacs("1 0\n"), ParseError);
        CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
        CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
        CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n1 x 0\n"), ParseError);
        Cnf c = parse_dimacs("c hi\np cnf 2 2\n1 -2\n0 2 0\n");
        CHECK(c.clauses == std::vector<std::vector<int>>{{1, -2}, {2}});
    }

    TEST_CASE("games as structures")
    {
        Game g = parse_game(fixtures::text("games/small.game"));
        Structure st = game_as_structure(g);
        CHECK(st.relation("Eex")->size() == 1);
        CHECK(structure_as_game(st) == g);
        Structure bad = parse_structure("universe: a\nV0: (a)\nV1: (a)\nE/2:\nEex/2:\nI/1:\nT/1:\n");
        CHECK_THROWS_AS(structure_as_game(bad), InvalidInput);
    }

    TEST_CASE("codec round-trips union games")
    {
        Structure st = parse_structure("universe: a b c\n");
        GameCodecLayout layout(2);
        CHECK(layout.variables().size() == 36);
        std::mt19937 rng(47);
        gen::UnionShape shape;
        shape.max_components = 2;
        shape.max_inner = 2;
        shape.codec_ready = true;
        for (int i = 0; i < 20; ++i) {
            Game g = gen::random_union_game(rng, shape);
            Team x = encode_game_in_team(g, layout, st);
            CHECK(is_complete_team(x, layout, st));
            auto d = decode_game_from_team(x, layout, st);
            REQUIRE_MESSAGE(d.game, (d.failures.empty() ? "" : d.failures.front()));
            auto codes = default_codes(g, 2, st);
            std::vector<std::string> names;
            for (const auto& c : codes)
                names.push_back(code_name(c, st));
            CHECK(*d.game == rename_vertices(g, names));
            for (const auto& [c, r] : d.representative)
                CHECK(c == r);
        }
    }

    TEST_CASE("codec rejects games it cannot encode")
    {
        Structure st = parse_structure("universe: a b\n");
        GameCodecLayout layout(1);
        Game no_eex = parse_game("V0: t\nV1: m\nE: (t,m)\nT: t\n");
        CHECK_THROWS_AS(encode_game_in_team(no_eex, layout, st), InvalidInput);
        Game small = parse_game(fixtures::text("games/small.game"));
        CHECK_THROWS_AS(encode_game_in_team(small, layout, st), InvalidInput);
    }

    TEST_CASE("decoding a non-trivial congruence")
    {
        // m and n have the same edges and exclusions, so they may be identified.
        Structure st = parse_structure("universe: a b c d e\n");
        GameCodecLayout layout(1);
        Game g = parse_game("V0: t\nV1: m n p\nE: (t,m) (t,n) (t,p)\nT: t\nEex: (m,p) (n,p)\n");
        Team x = encode_game_in_team(g, layout, st);
        auto groups = groups_of(x, layout);
        auto complement_of = [](const std::vector<Tuple>& s) {
            std::vector<Tuple> out;
            for (const auto& t : all_tuples(5, 2))
                if (std::find(s.begin(), s.end(), t) == s.end())
                    out.push_back(t);
            return out;
        };
        // Group 6 is the congruence and group 11 its complement; codes are t=a, m=b, n=c, p=d.
        groups[6].second = {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 1}};
        groups[11].second = complement_of(groups[6].second);
        auto d = decode_game_from_team(reorder(assemble(groups), layout.variables()), layout, st);
        REQUIRE_MESSAGE(d.game, (d.failures.empty() ? "" : d.failures.front()));
        CHECK(d.game->size() == 3);
        CHECK(d.representative.at({2}) == Tuple{1});
        CHECK(d.game->edges().size() == 2);
        CHECK(d.game->exclusions().size() == 1);
        // E no longer respects the classes, so the congruence check fails.
        groups[3].second = {{0, 1}, {0, 3}};
        groups[8].second = complement_of(groups[3].second);
        auto bad = decode_game_from_team(reorder(assemble(groups), layout.variables()), layout, st);
        CHECK_FALSE(bad.game);
        bool congruence = false;
        for (const auto& f : bad.failures)
            congruence |= f == "the relation X(e1, e2) is not a congruence";
        CHECK(congruence);
    }

    TEST_CASE("decoding reports every failing clause")
    {
        Structure st = parse_structure("universe: a b c\n");
        GameCodecLayout layout(1);
        Game g = parse_game("V0: t\nV1: m\nE: (t,m)\nT: t\nEex: (m,t)\n");
        Team x = encode_game_in_team(g, layout, st);
        auto groups = groups_of(x, layout);
        groups[7].second = {{0}};  // wrong complement of V
        groups[9].second = {{1}};  // wrong complement of T
        auto d = decode_game_from_team(reorder(assemble(groups), layout.variables()), layout, st);
        CHECK_FALSE(d.game);
        CHECK(d.failures.size() >= 2);
    }

    TEST_CASE("the game atom")
    {
        Structure st = parse_structure("universe: a b c\n");
        GameCodecLayout layout(2);
        std::mt19937 rng(53);
        gen::UnionShape shape;
        shape.max_components = 2;
        shape.max_inner = 2;
        shape.codec_ready = true;
        int unions = 0;
        for (int i = 0; i < 12; ++i) {
            Game g = gen::random_union_game(rng, shape);
            Team base = encode_game_in_team(g, layout, st);
            auto codes = default_codes(g, 2, st);
            auto with_targets = [&](const VertexSet& x) {
                auto groups = groups_of(base, layout);
                std::vector<Tuple> vals;
                for (Vertex v : x)
                    vals.push_back(codes[static_cast<std::size_t>(v)]);
                if (vals.empty())
                    vals.push_back(codes[static_cast<std::size_t>(g.targets().front())]);
                groups.emplace_back(std::vector<std::string>{"z1", "z2"}, vals);
                return assemble(groups);
            };
            auto realizable = enumerate_targets(g);
            std::vector<Team> sat;
            for (const auto& x : realizable)
                if (!x.empty()) {
                    Team t = with_targets(x);
                    CHECK(eval_ugame_atom(st, t, 2, {"z1", "z2"}));
                    sat.push_back(t);
                }
            for (std::size_t a = 0; a < sat.size(); ++a)
                for (std::size_t b = a + 1; b < sat.size(); ++b) {
                    CHECK(eval_ugame_atom(st, team_union(sat[a], sat[b]), 2, {"z1", "z2"}));
                    ++unions;
                }
            std::set<VertexSet> real(realizable.begin(), realizable.end());
            for (std::size_t mask = 1; mask < (std::size_t{1} << g.targets().size()); ++mask) {
                VertexSet x;
                for (std::size_t j = 0; j < g.targets().size(); ++j)
                    if (mask >> j & 1)
                        x.push_back(g.targets()[j]);
                CHECK(eval_ugame_atom(st, with_targets(x), 2, {"z1", "z2"}) == (real.count(x) > 0));
            }
        }
        CHECK(unions > 0);
        auto dom = layout.variables();
        dom.push_back("z1");
        dom.push_back("z2");
        CHECK(eval_ugame_atom(st, Team(dom), 2, {"z1", "z2"}));
        Team partial(dom);
        partial.insert(Tuple(dom.size(), 0));
        CHECK_FALSE(eval_ugame_atom(st, partial, 2, {"z1", "z2"}));
    }

    TEST_CASE("complete subteams decode to the same game and congruence")
    {
        Structure st = parse_structure("universe: a b c\n");
        GameCodecLayout layout(2);
        std::mt19937 rng(59);
        gen::UnionShape shape;
        shape.max_components = 2;
        shape.max_inner = 2;
        shape.codec_ready = true;
        int tested = 0;
        for (int i = 0; i < 10; ++i) {
            Game g = gen::random_union_game(rng, shape);
            Team base = encode_game_in_team(g, layout, st);
            auto groups = groups_of(base, layout);
            // Extra rows mixing values of different rows keep every projection unchanged.
            Team mixed = assemble(groups);
            for (int r = 0; r < 12; ++r) {
                Tuple row;
                for (const auto& [vars, vals] : groups) {
                    const Tuple& v = vals[static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(vals.size()) - 1))];
                    row.insert(row.end(), v.begin(), v.end());
                }
                mixed.insert(row);
            }
            Team y = team_union(base, mixed);
            auto dy = decode_game_from_team(y, layout, st);
            REQUIRE(dy.game);
            for (int s = 0; s < 60; ++s) {
                Team x = codec_groups::complete_sample(y, layout, rng, 0.3);
                REQUIRE(is_complete_team(x, layout, st));
                auto dx = decode_game_from_team(x, layout, st);
                REQUIRE(dx.game);
                CHECK(*dx.game == *dy.game);
                CHECK(dx.representative == dy.representative);
                ++tested;
            }
        }
        CHECK(tested == 600);
    }
}
