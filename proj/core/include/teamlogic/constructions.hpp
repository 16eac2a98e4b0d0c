#pragma once

#include "teamlogic/formulas.hpp"
#include "teamlogic/games.hpp"

namespace teamlogic {

// Positions are named "(<occurrence-id>|<var=val,...>)", with "|copy=<tuple>" appended inside the
// per-target copies of a union game; target vertices are named "T(<tuple>)" and carry the tuple as payload.
// Only positions reachable from the initial position (or from the targets) are created.

// Inclusion-exclusion model-checking game of ∃R̄ φ′(X, R̄). A guarded input ∀x̄(Xx̄ → ∃R̄ φ′) is first
// brought into prenex form by widening each R by |x̄| arguments.
Game mc_game_so(const Structure& structure, const SOFormula& phi);
// Union game of a myopic formula: one copy of the game per tuple of A^r, rooted at that tuple.
Game mc_game_myopic(const Structure& structure, const SOFormula& mu);
// Exclusion game of φ ∈ FO(|); targets are the assignments s: x̄ → A in lexicographic order.
Game mc_game_exclusion(const Structure& structure, const Formula& phi, const std::vector<std::string>& domain);

// Target vertices of a game whose payloads are the given tuples, and the reverse direction.
VertexSet targets_of_relation(const Game& game, const Relation& rel);
Relation relation_of_targets(const Game& game, const VertexSet& targets, int arity);
VertexSet targets_of_team(const Game& game, const Team& team, const std::vector<std::string>& domain);
Team team_of_targets(const Game& game, const VertexSet& targets, const std::vector<std::string>& domain);

struct Cnf {
    int variables = 0;
    std::vector<std::vector<int>> clauses; // DIMACS literals
};

Cnf parse_dimacs(std::string_view text);
// Clause vertices "C1.." (player 0, the targets) and literal vertices "x1", "~x1" (player 1) joined
// by an exclusion edge.
Game cnf_to_game(const Cnf& cnf);

// Universe = vertex names; relations V0/1, V1/1, E/2, I/1, T/1, Eex/2.
Structure game_as_structure(const Game& game);
Game structure_as_game(const Structure& structure);

struct GameCodecLayout {
    int k = 1;
    // u, v0, v1, v, w, t, vex, wex, e1, e2, then the complements uc, vc, wc, tc, vexc, wexc, e1c, e2c.
    std::vector<std::vector<std::string>> tuples;

    explicit GameCodecLayout(int width);
    const std::vector<std::string>& operator[](std::size_t i) const { return tuples.at(i); }
    std::vector<std::string> variables() const;
};

enum LayoutSlot : std::size_t {
    U, V0, V1, Vs, Ws, Tt, Vex, Wex, E1, E2, Uc, Vc, Wc, Tc, Vexc, Wexc, E1c, E2c
};

// Codes vertex i as codes[i] (default: the i-th k-tuple in lexicographic order) and encodes the identity
// congruence. Every encoded relation and every complement must be non-empty, since a non-empty team
// has non-empty projections.
Team encode_game_in_team(const Game& game, const GameCodecLayout& layout, const Structure& structure,
                         std::vector<Tuple> codes = {});
std::vector<Tuple> default_codes(const Game& game, int k, const Structure& structure);
// Name of the decoded vertex with the given code.
std::string code_name(const Tuple& code, const Structure& structure);

bool is_complete_team(const Team& team, const GameCodecLayout& layout, const Structure& structure);

struct DecodedGame {
    std::optional<Game> game;                // undefined when any clause fails
    std::map<Tuple, Tuple> representative;   // code -> least code of its class
    std::vector<std::string> failures;       // every failing clause
};

DecodedGame decode_game_from_team(const Team& team, const GameCodecLayout& layout, const Structure& structure);

bool eval_ugame_atom(const Structure& structure, const Team& team, int k, const std::vector<std::string>& targets);

// Same game with vertex v renamed to names[v].
Game rename_vertices(const Game& game, const std::vector<std::string>& names);

} // namespace teamlogic
