#include "doctest.h"
#include "fixtures.hpp"

#include "teamlogic/cli.hpp"

#include <cstdio>
#include <sstream>

using teamlogic::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& rel)
{
    return fixtures::path(rel);
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("eval reports truth values through the exit code")
    {
        auto bad = cli({"eval", "--structure", fx("structures/evil_a.str"), "--team", fx("teams/evil_x.team"),
                        "--formula", fx("formulas/evil_phi.frm")});
        CHECK(bad.code == 1);
        CHECK(contains(bad.out, "not satisfied"));
        auto good = cli({"eval", "--structure", fx("structures/evil_a.str"), "--team", fx("teams/evil_x1.team"),
                         "--formula", fx("formulas/evil_phi.frm"), "--witness", "--max-choice-universe", "9"});
        CHECK(good.code == 0);
        CHECK(contains(good.out, "satisfied"));
        CHECK(contains(good.out, "r: "));
    }

    TEST_CASE("solve on the unsatisfiable CNF game")
    {
        std::string game = "cli_x_and_not_x.game";
        auto built = cli({"sat2game", "--cnf", fx("cnf/x_and_not_x.cnf"), "-o", game});
        REQUIRE(built.code == 0);
        auto one = cli({"solve", "--game", game, "--target", "c1"});
        CHECK(one.code == 0);
        CHECK(contains(one.out, "winning strategy: {C1, x1}"));
        auto both = cli({"solve", "--game", game, "--target", "C1, C2"});
        CHECK(both.code == 1);
        auto brute = cli({"solve", "--game", game, "--target", "C1,C2", "--method", "bruteforce"});
        CHECK(brute.code == 1);
        auto json = cli({"--json", "solve", "--game", game, "--target", "c1"});
        CHECK(json.code == 0);
        CHECK(contains(json.out, "\"strategy\": ["));
        CHECK(cli({"solve", "--game", game, "--target", "nowhere"}).code == 2);
        std::remove(game.c_str());
    }

    TEST_CASE("malformed input exits with code 2 and a position")
    {
        auto r = cli({"eval", "--structure", fx("structures/two.str"), "--team", fx("teams/evil_x1.team"), "--expr",
                      "P(x) &"});
        CHECK(r.code == 2);
        CHECK(contains(r.err, "1:7"));
        auto bad_game = cli({"targets", "--game", fx("structures/two.str")});
        CHECK(bad_game.code == 2);
        CHECK(contains(bad_game.err, "two.str:"));
        CHECK(cli({"eval"}).code == 2);
        CHECK(cli({"frobnicate"}).code == 2);
        CHECK(cli({"verify", "--suite", "nonsense"}).code == 2);
        CHECK(cli({"targets", "--game", "does/not/exist.game"}).code == 2);
    }

    TEST_CASE("budget overruns exit with code 3")
    {
        auto r = cli({"check", "union-closed", "--structure", fx("structures/evil_a.str"), "--expr", "inc(x; y)",
                      "--vars", "x,y"});
        CHECK(r.code == 3);
        CHECK(contains(r.err, "budget"));
    }

    TEST_CASE("targets, games and transforms")
    {
        auto t = cli({"targets", "--game", fx("games/small.game")});
        CHECK(t.code == 0);
        CHECK(contains(t.out, "{t1}"));
        CHECK(contains(t.out, "target sets"));
        auto g = cli({"build-game", "so", "--structure", fx("structures/two.str"), "--formula",
                      fx("so/s05_closed.so")});
        CHECK(g.code == 0);
        CHECK(contains(g.out, "T: "));
        auto m = cli({"build-game", "myopic", "--structure", fx("structures/two.str"), "--formula",
                      fx("so/s12_myopic.so")});
        CHECK(m.code == 0);
        auto x = cli({"build-game", "exclusion", "--structure", fx("structures/two.str"), "--expr", "exc(x; y)",
                      "--vars", "x,y"});
        CHECK(x.code == 0);
        auto nnf = cli({"transform", "nnf", "--expr", "~(P(x) & Q(x))"});
        CHECK(nnf.out == "~P(x) | ~Q(x)\n");
        auto guard = cli({"transform", "guard", "--expr", "inc(y; z)", "--anchor", "x"});
        CHECK(guard.out == "inc(x, y; x, z)\n");
        auto unguard = cli({"transform", "unguard", "--expr", "inc(x, y; x, z)", "--anchor", "x"});
        CHECK(unguard.out == "inc(y; z)\n");
        auto comp = cli({"transform", "companion-team", "--formula", fx("formulas/f03_inc.frm"), "--anchor", "x,y"});
        CHECK(comp.code == 0);
        auto so = cli({"transform", "companion-so", "--formula", fx("so/s02_singleton.so")});
        CHECK(so.code == 0);
        CHECK(contains(so.out, "X("));
    }

    TEST_CASE("check subcommands")
    {
        CHECK(cli({"check", "myopic", "--formula", fx("so/s12_myopic.so")}).code == 0);
        CHECK(cli({"check", "myopic", "--formula", fx("so/s06_nonempty.so")}).code == 1);
        CHECK(cli({"check", "x-myopic", "--formula", fx("formulas/closed_under_e.frm"), "--anchor", "x"}).code == 0);
        auto evil = cli({"check", "x-myopic", "--formula", fx("formulas/evil_phi.frm"), "--anchor", "x"});
        CHECK(evil.code == 1);
        CHECK(contains(evil.out, "failed"));
        CHECK(cli({"check", "union-game", "--game", fx("games/union.game")}).code == 0);
        CHECK(cli({"check", "union-game", "--game", fx("games/small.game")}).code == 1);
        auto closed = cli({"check", "union-closed", "--structure", fx("structures/evil_a.str"), "--formula",
                           fx("formulas/evil_phi.frm"), "--vars", "x", "--max-team-rows", "9"});
        CHECK(closed.code == 1);
        CHECK(contains(closed.out, "counterexample"));
    }

    TEST_CASE("eval-so")
    {
        CHECK(cli({"eval-so", "--structure", fx("structures/path.str"), "--formula", fx("so/s01_subset_p.so"),
                   "--relation", "(a) (c)"})
                  .code == 0);
        CHECK(cli({"eval-so", "--structure", fx("structures/path.str"), "--formula", fx("so/s01_subset_p.so"),
                   "--relation", "(b)"})
                  .code == 1);
        CHECK(cli({"eval-so", "--structure", fx("structures/path.str"), "--formula", fx("so/s01_subset_p.so"),
                   "--relation", "(q)"})
                  .code == 2);
    }

    TEST_CASE("verify names theorems and oracles and is deterministic")
    {
        auto a = cli({"verify", "--suite", "graph-example", "--seed", "5"});
        CHECK(a.code == 0);
        CHECK(contains(a.out, "[PASS] graph-example"));
        CHECK(contains(a.out, "oracle: "));
        auto b = cli({"verify", "--suite", "ptime", "--seed", "5"});
        auto c = cli({"verify", "--suite", "ptime", "--seed", "5"});
        CHECK(b.code == 0);
        CHECK(b.out == c.out);
        auto j = cli({"--json", "verify", "--suite", "parser"});
        CHECK(j.code == 0);
        CHECK(contains(j.out, "\"theorem\""));
        CHECK(teamlogic::cli::verify_suites().size() == 14);
    }
}
