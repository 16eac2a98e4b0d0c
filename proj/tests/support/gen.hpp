#pragma once

#include "teamlogic/constructions.hpp"
#include "teamlogic/games.hpp"

#include <algorithm>
#include <random>

namespace gen {

using teamlogic::Game;
using teamlogic::Vertex;

inline bool coin(std::mt19937& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

inline int uniform(std::mt19937& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct GameShape {
    int min_vertices = 2;
    int max_vertices = 8;
    double edge_p = 0.25;
    double exclusion_p = 0.08;
    double initial_p = 0.2;
    double target_p = 0.3;
};

// Arbitrary inclusion-exclusion game.
inline Game random_game(std::mt19937& rng, const GameShape& shape = {})
{
    Game g;
    int n = uniform(rng, shape.min_vertices, shape.max_vertices);
    for (int i = 0; i < n; ++i)
        g.add_vertex("v" + std::to_string(i), uniform(rng, 0, 1));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (coin(rng, shape.edge_p))
                g.add_edge(u, v);
            if (u < v && coin(rng, shape.exclusion_p))
                g.add_exclusion(u, v);
        }
    for (int v = 0; v < n; ++v) {
        if (coin(rng, shape.initial_p))
            g.add_initial(v);
        if (coin(rng, shape.target_p))
            g.add_target(v);
    }
    return g;
}

struct UnionShape {
    int max_components = 3;
    int max_inner = 3;
    double edge_p = 0.35;
    double exclusion_p = 0.2;
    double inclusion_p = 0.15;
    // Ensures at least one exclusion edge and both owners, as the codec needs.
    bool codec_ready = false;
};

// Union game: each target t owns the vertices reached from t without entering a target; edges into
// targets may cross components and exclusion edges stay inside one component.
inline Game random_union_game(std::mt19937& rng, const UnionShape& shape = {})
{
    while (true) {
        Game g;
        int c = uniform(rng, 1, shape.max_components);
        std::vector<std::vector<Vertex>> comp(static_cast<std::size_t>(c));
        std::vector<Vertex> targets;
        for (int i = 0; i < c; ++i) {
            Vertex t = g.add_vertex("t" + std::to_string(i), uniform(rng, 0, 1));
            targets.push_back(t);
            comp[static_cast<std::size_t>(i)].push_back(t);
            int inner = uniform(rng, 0, shape.max_inner);
            for (int j = 0; j < inner; ++j)
                comp[static_cast<std::size_t>(i)].push_back(
                    g.add_vertex("c" + std::to_string(i) + "_" + std::to_string(j), uniform(rng, 0, 1)));
        }
        for (Vertex t : targets)
            g.add_target(t);
        for (const auto& vs : comp) {
            for (std::size_t a = 0; a < vs.size(); ++a) {
                for (std::size_t b = 1; b < vs.size(); ++b)
                    if (coin(rng, shape.edge_p))
                        g.add_edge(vs[a], vs[b]);
                for (std::size_t b = a + 1; b < vs.size(); ++b)
                    if (coin(rng, shape.exclusion_p))
                        g.add_exclusion(vs[a], vs[b]);
            }
            // Each inner vertex gets an edge from an earlier vertex of its component.
            for (std::size_t b = 1; b < vs.size(); ++b) {
                const auto& pred = g.predecessors(vs[b]);
                bool reached = std::any_of(pred.begin(), pred.end(), [&](Vertex p) {
                    return std::find(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(b), p) !=
                           vs.begin() + static_cast<std::ptrdiff_t>(b);
                });
                if (!reached)
                    g.add_edge(vs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(b) - 1))], vs[b]);
            }
        }
        for (Vertex u = 0; u < static_cast<Vertex>(g.size()); ++u)
            for (Vertex t : targets)
                if (coin(rng, shape.inclusion_p))
                    g.add_edge(u, t);
        if (shape.codec_ready) {
            bool p0 = false, p1 = false;
            for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
                (g.owner(v) == 0 ? p0 : p1) = true;
            if (g.exclusions().empty() || !p0 || !p1 || g.edges().empty())
                continue;
        }
        return g;
    }
}

// Inclusion game: no initial vertices and no exclusion edges.
inline Game random_inclusion_game(std::mt19937& rng, int max_vertices = 8)
{
    GameShape s;
    s.max_vertices = max_vertices;
    s.exclusion_p = 0;
    s.initial_p = 0;
    s.target_p = 0.35;
    return random_game(rng, s);
}

inline teamlogic::Cnf random_3cnf(std::mt19937& rng, int max_vars = 8, int max_clauses = 12)
{
    teamlogic::Cnf cnf;
    cnf.variables = uniform(rng, 1, max_vars);
    int m = uniform(rng, 1, max_clauses);
    for (int j = 0; j < m; ++j) {
        std::vector<int> c;
        int len = uniform(rng, 1, 3);
        for (int i = 0; i < len; ++i) {
            int v = uniform(rng, 1, cnf.variables);
            c.push_back(coin(rng, 0.5) ? v : -v);
        }
        cnf.clauses.push_back(c);
    }
    return cnf;
}

inline bool truth_table_sat(const teamlogic::Cnf& cnf)
{
    for (unsigned a = 0; a < (1u << cnf.variables); ++a) {
        bool all = true;
        for (const auto& c : cnf.clauses) {
            bool any = false;
            for (int l : c) {
                bool val = a >> (std::abs(l) - 1) & 1;
                any |= (l > 0) == val;
            }
            all &= any;
        }
        if (all)
            return true;
    }
    return false;
}

// Exhaustive strategy search written from the four winning conditions.
inline bool naive_is_winning(const Game& g, const std::vector<bool>& w)
{
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) {
        if (!w[static_cast<std::size_t>(v)])
            continue;
        const auto& succ = g.successors(v);
        if (g.owner(v) == 0) {
            bool any = false;
            for (Vertex s : succ)
                any |= w[static_cast<std::size_t>(s)];
            if (!any)
                return false;
        }
        if (g.owner(v) == 1)
            for (Vertex s : succ)
                if (!w[static_cast<std::size_t>(s)])
                    return false;
    }
    for (Vertex v : g.initial())
        if (!w[static_cast<std::size_t>(v)])
            return false;
    for (auto [a, b] : g.exclusions())
        if (w[static_cast<std::size_t>(a)] && w[static_cast<std::size_t>(b)])
            return false;
    return true;
}

// T(G) by enumerating every vertex subset.
inline std::set<std::vector<Vertex>> naive_targets(const Game& g)
{
    std::set<std::vector<Vertex>> out;
    const std::size_t n = g.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<bool> w(n);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = mask >> i & 1;
        if (!naive_is_winning(g, w))
            continue;
        std::vector<Vertex> t;
        for (Vertex v : g.targets())
            if (w[static_cast<std::size_t>(v)])
                t.push_back(v);
        out.insert(t);
    }
    return out;
}

struct FormulaShape {
    int depth = 3;
    bool inclusion = true;
    bool exclusion = true;
    bool dependence = false;
};

// Random formula over P/1 and E/2 whose free variables lie in `scope`.
inline teamlogic::Formula random_formula(std::mt19937& rng, std::vector<std::string> scope, const FormulaShape& shape,
                                         int depth, int& fresh)
{
    using namespace teamlogic;
    auto pick = [&] { return scope[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(scope.size()) - 1))]; };
    if (depth == 0 || coin(rng, 0.3)) {
        std::vector<int> kinds{0, 1, 2};
        if (shape.inclusion)
            kinds.push_back(3);
        if (shape.exclusion)
            kinds.push_back(4);
        if (shape.dependence)
            kinds.push_back(5);
        switch (kinds[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(kinds.size()) - 1))]) {
        case 0:
            return rel("P", {pick()}, coin(rng, 0.7));
        case 1:
            return rel("E", {pick(), pick()}, coin(rng, 0.7));
        case 2:
            return eq(pick(), pick(), coin(rng, 0.6));
        case 3:
            if (coin(rng, 0.3))
                return inc({pick(), pick()}, {pick(), pick()});
            return inc({pick()}, {pick()});
        case 4:
            if (coin(rng, 0.3))
                return exc({pick(), pick()}, {pick(), pick()});
            return exc({pick()}, {pick()});
        default:
            return dep({pick()}, pick());
        }
    }
    switch (uniform(rng, 0, 3)) {
    case 0:
        return conj(random_formula(rng, scope, shape, depth - 1, fresh),
                    random_formula(rng, scope, shape, depth - 1, fresh));
    case 1:
        return disj(random_formula(rng, scope, shape, depth - 1, fresh),
                    random_formula(rng, scope, shape, depth - 1, fresh));
    default: {
        std::string v = "q" + std::to_string(fresh++);
        scope.push_back(v);
        auto body = random_formula(rng, scope, shape, depth - 1, fresh);
        return coin(rng, 0.5) ? exists(v, body) : forall(v, body);
    }
    }
}

inline teamlogic::Formula random_formula(std::mt19937& rng, const std::vector<std::string>& scope,
                                         const FormulaShape& shape = {})
{
    int fresh = 0;
    return random_formula(rng, scope, shape, shape.depth, fresh);
}

inline teamlogic::Structure random_structure(std::mt19937& rng, int size)
{
    std::vector<std::string> names;
    for (int i = 0; i < size; ++i)
        names.push_back(std::string(1, static_cast<char>('a' + i)));
    teamlogic::Structure st(names);
    teamlogic::Relation p(1), e(2);
    for (int a = 0; a < size; ++a) {
        if (coin(rng, 0.5))
            p.insert({a});
        for (int b = 0; b < size; ++b)
            if (coin(rng, 0.4))
                e.insert({a, b});
    }
    st.set_relation("P", p);
    st.set_relation("E", e);
    return st;
}

} // namespace gen
