#pragma once

#include "teamlogic/core.hpp"

#include <algorithm>
#include <cstdint>

namespace teamlogic {

using Vertex = int;
using VertexSet = std::vector<Vertex>; // sorted, unique

// An inclusion-exclusion game (V, V0, V1, E, I, T, Eex). Vertices are numbered in insertion order.
class Game {
public:
    Vertex add_vertex(const std::string& name, int owner);
    void add_edge(Vertex u, Vertex v);
    void add_exclusion(Vertex u, Vertex v);
    void add_initial(Vertex v);
    void add_target(Vertex v, std::optional<Tuple> payload = std::nullopt);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Vertex v) const { return names_.at(static_cast<std::size_t>(v)); }
    std::optional<Vertex> find(const std::string& name) const;
    Vertex vertex(const std::string& name) const;
    int owner(Vertex v) const { return owner_.at(static_cast<std::size_t>(v)); }
    const std::vector<Vertex>& successors(Vertex v) const { return succ_.at(static_cast<std::size_t>(v)); }
    const std::vector<Vertex>& predecessors(Vertex v) const { return pred_.at(static_cast<std::size_t>(v)); }
    const std::set<std::pair<Vertex, Vertex>>& edges() const { return edges_; }
    const std::set<std::pair<Vertex, Vertex>>& exclusions() const { return eex_; }
    // Partners under the symmetric closure of Eex.
    const std::vector<Vertex>& exclusion_partners(Vertex v) const { return partners_.at(static_cast<std::size_t>(v)); }
    const VertexSet& initial() const { return initial_; }
    const VertexSet& targets() const { return targets_; }
    bool is_initial(Vertex v) const { return std::binary_search(initial_.begin(), initial_.end(), v); }
    bool is_target(Vertex v) const { return std::binary_search(targets_.begin(), targets_.end(), v); }
    const std::map<Vertex, Tuple>& payloads() const { return payload_; }

    bool operator==(const Game& o) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, Vertex> index_;
    std::vector<int> owner_;
    std::vector<std::vector<Vertex>> succ_, pred_, partners_;
    std::set<std::pair<Vertex, Vertex>> edges_, eex_;
    VertexSet initial_, targets_;
    std::map<Vertex, Tuple> payload_;
    void check(Vertex v) const;
};

struct Strategy {
    VertexSet vertices;
    bool operator==(const Strategy& o) const { return vertices == o.vertices; }
};

VertexSet make_vertex_set(std::vector<Vertex> v);
// F = (W × W) ∩ E
std::vector<std::pair<Vertex, Vertex>> strategy_edges(const Game& game, const VertexSet& w);

// E ∩ (V × T)
std::vector<std::pair<Vertex, Vertex>> inclusion_edges(const Game& game);

struct StrategyCheck {
    bool ok = true;
    int condition = 0; // 1: player-0 move, 2: player-1 moves, 3: initial vertices, 4: exclusion edges
    std::string diagnostic;
};

StrategyCheck check_winning_strategy(const Game& game, const VertexSet& w);
bool is_winning_strategy(const Game& game, const VertexSet& w);
VertexSet strategy_target(const Game& game, const VertexSet& w);

struct SolveBudget {
    std::uint64_t max_steps = 100'000'000;
    std::size_t max_bruteforce_vertices = 22;
};

// Constraint-propagating backtracking search for W with W ∩ T = X.
std::optional<Strategy> solve_membership(const Game& game, const VertexSet& x, const SolveBudget& budget = {});
std::optional<Strategy> solve_membership_bruteforce(const Game& game, const VertexSet& x,
                                                    const SolveBudget& budget = {});
// Greatest fixpoint, for games without exclusion edges.
std::optional<Strategy> solve_membership_polynomial(const Game& game, const VertexSet& x);

// T(G), sorted. Needs |T| ≤ 16.
std::vector<VertexSet> enumerate_targets(const Game& game, const SolveBudget& budget = {});

// Vertices reachable from target t along E ∖ E_in.
VertexSet reachable_component(const Game& game, Vertex t);

CheckResult validate_union_game(const Game& game);
CheckResult validate_exclusion_game(const Game& game);
CheckResult validate_inclusion_game(const Game& game);

// Combines winning strategies of a union game component by component.
Strategy union_strategies(const Game& game, const std::vector<Strategy>& strategies);

struct SafetyGame {
    Game game; // its target set is unused; `initial` is the safety game's I
};

SafetyGame to_safety_game(const Game& inclusion_game);
Game from_safety_game(const SafetyGame& safety);
// All X ⊆ I for which player 0 has a strategy S with I ∩ W(S) = X.
std::vector<VertexSet> i_traps(const SafetyGame& safety);

Game parse_game(std::string_view text);
std::string print_game(const Game& game);
std::string format_vertex_set(const Game& game, const VertexSet& w);
VertexSet parse_vertex_list(const Game& game, std::string_view text);

} // namespace teamlogic
