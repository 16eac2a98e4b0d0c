#include "teamlogic/constructions.hpp"
#include "teamlogic/games.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/transforms.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

using namespace teamlogic;

namespace {

Cnf random_3cnf(int variables, int clauses, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> var(1, variables);
    std::bernoulli_distribution neg(0.5);
    Cnf cnf;
    cnf.variables = variables;
    for (int c = 0; c < clauses; ++c) {
        std::vector<int> clause;
        for (int i = 0; i < 3; ++i)
            clause.push_back(neg(rng) ? -var(rng) : var(rng));
        cnf.clauses.push_back(std::move(clause));
    }
    return cnf;
}

// Directed path a0 -> a1 -> ... with P on even elements.
Structure path_structure(int n)
{
    std::string text = "universe:";
    for (int i = 0; i < n; ++i)
        text += " a" + std::to_string(i);
    text += "\nE:";
    for (int i = 0; i + 1 < n; ++i)
        text += " (a" + std::to_string(i) + ",a" + std::to_string(i + 1) + ")";
    text += "\nP:";
    for (int i = 0; i < n; i += 2)
        text += " (a" + std::to_string(i) + ")";
    return parse_structure(text + "\n");
}

// Random game without exclusion edges; every player-0 vertex has a successor.
Game random_game(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::string v0, v1, e, t;
    for (int i = 0; i < n; ++i) {
        std::string name = " v" + std::to_string(i);
        (i % 2 == 0 ? v0 : v1) += name;
        if (i % 5 == 4)
            t += name;
        for (int k = 0; k < 2; ++k)
            e += " (v" + std::to_string(i) + ",v" + std::to_string(pick(rng)) + ")";
    }
    return parse_game("V0:" + v0 + "\nV1:" + v1 + "\nE:" + e + "\nT:" + t + "\n");
}

void BM_CnfGameSearch(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    Game g = cnf_to_game(random_3cnf(n, 4 * n, 7));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_membership(g, g.targets()));
}
BENCHMARK(BM_CnfGameSearch)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_FixpointSolver(benchmark::State& state)
{
    Game g = random_game(static_cast<int>(state.range(0)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_membership_polynomial(g, g.targets()));
}
BENCHMARK(BM_FixpointSolver)->Range(64, 8192);

void BM_TeamEvalInclusion(benchmark::State& state)
{
    int n = static_cast<int>(state.range(0));
    Structure st = path_structure(n);
    Formula f = parse_formula("A y. (~E(x, y) | inc(y; x))");
    Team t({"x"});
    for (int i = 0; i < n; ++i)
        t.insert({i});
    for (auto _ : state)
        benchmark::DoNotOptimize(eval_team(st, t, f));
}
BENCHMARK(BM_TeamEvalInclusion)->Range(8, 512);

void BM_MyopicGameTargets(benchmark::State& state)
{
    Structure st = path_structure(static_cast<int>(state.range(0)));
    SOFormula mu = myopic_companion_so(parse_so_formula("A x. (~X(x) | P(x))"));
    for (auto _ : state) {
        Game g = mc_game_myopic(st, mu);
        benchmark::DoNotOptimize(enumerate_targets(g));
    }
}
BENCHMARK(BM_MyopicGameTargets)->DenseRange(2, 8, 2);

void BM_ExclusionGame(benchmark::State& state)
{
    Structure st = path_structure(static_cast<int>(state.range(0)));
    Formula f = parse_formula("exc(x; y) | E(x, y)");
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_game_exclusion(st, f, {"x", "y"}));
}
BENCHMARK(BM_ExclusionGame)->Range(4, 64);

} // namespace

BENCHMARK_MAIN();
