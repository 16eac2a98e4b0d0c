#include "teamlogic/constructions.hpp"

#include <algorithm>

namespace teamlogic {

GameCodecLayout::GameCodecLayout(int width) : k(width)
{
    if (width < 1)
        throw DomainError("layout width must be positive");
    auto vars = ugame_layout_variables(width);
    for (std::size_t i = 0; i < 18; ++i)
        tuples.emplace_back(vars.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(width)),
                            vars.begin() + static_cast<std::ptrdiff_t>((i + 1) * static_cast<std::size_t>(width)));
}

std::vector<std::string> GameCodecLayout::variables() const
{
    std::vector<std::string> out;
    for (const auto& t : tuples)
        out.insert(out.end(), t.begin(), t.end());
    return out;
}

std::string code_name(const Tuple& code, const Structure& structure)
{
    std::string s;
    for (std::size_t i = 0; i < code.size(); ++i)
        s += (i ? "," : "") + structure.name(code[i]);
    return s;
}

std::vector<Tuple> default_codes(const Game& game, int k, const Structure& structure)
{
    auto all = all_tuples(structure.size(), static_cast<std::size_t>(k));
    if (all.size() < game.size())
        throw InvalidInput("|A|^k = " + std::to_string(all.size()) + " is too small for " +
                           std::to_string(game.size()) + " vertices");
    all.resize(game.size());
    return all;
}

namespace {

using Pairs = std::set<Tuple>;

Tuple concat(const Tuple& a, const Tuple& b)
{
    Tuple t = a;
    t.insert(t.end(), b.begin(), b.end());
    return t;
}

std::vector<std::string> concat(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    auto t = a;
    t.insert(t.end(), b.begin(), b.end());
    return t;
}

std::set<Tuple> complement(const std::set<Tuple>& s, std::size_t m, std::size_t width)
{
    std::set<Tuple> out;
    for (auto& t : all_tuples(m, width))
        if (!s.count(t))
            out.insert(std::move(t));
    return out;
}

void require_layout(const Team& team, const GameCodecLayout& layout)
{
    for (const auto& v : layout.variables())
        if (!team.has(v))
            throw DomainError("layout variable " + v + " is not in the team domain");
}

} // namespace

Team encode_game_in_team(const Game& game, const GameCodecLayout& layout, const Structure& st, std::vector<Tuple> codes)
{
    auto valid = validate_union_game(game);
    if (!valid.ok)
        throw InvalidInput("only union games can be encoded: " + valid.diagnostic);
    const std::size_t k = static_cast<std::size_t>(layout.k);
    if (codes.empty())
        codes = default_codes(game, layout.k, st);
    if (codes.size() != game.size())
        throw InvalidInput("one code per vertex is required");
    std::set<Tuple> distinct;
    for (const auto& c : codes) {
        if (c.size() != k)
            throw InvalidInput("codes must be " + std::to_string(k) + "-tuples");
        for (Element e : c)
            if (e < 0 || static_cast<std::size_t>(e) >= st.size())
                throw InvalidInput("code mentions an element outside the universe");
        distinct.insert(c);
    }
    if (distinct.size() != codes.size())
        throw InvalidInput("vertex codes must be distinct");
    auto code = [&](Vertex v) { return codes[static_cast<std::size_t>(v)]; };
    std::set<Tuple> V, V0, V1, T, E, Eex, Sim;
    for (std::size_t v = 0; v < game.size(); ++v) {
        V.insert(code(static_cast<Vertex>(v)));
        (game.owner(static_cast<Vertex>(v)) == 0 ? V0 : V1).insert(code(static_cast<Vertex>(v)));
        Sim.insert(concat(code(static_cast<Vertex>(v)), code(static_cast<Vertex>(v))));
    }
    for (Vertex t : game.targets())
        T.insert(code(t));
    for (auto [a, b] : game.edges())
        E.insert(concat(code(a), code(b)));
    for (auto [a, b] : game.exclusions())
        Eex.insert(concat(code(a), code(b)));
    const std::size_t m = st.size();
    // Column groups in layout order and the value list each must project onto.
    std::vector<std::pair<std::vector<std::string>, std::vector<Tuple>>> groups;
    auto add = [&](const char* what, std::vector<std::string> vars, const std::set<Tuple>& vals) {
        if (vals.empty())
            throw InvalidInput(std::string("cannot encode: ") + what +
                               " is empty, but every column of a non-empty team takes a value");
        groups.emplace_back(std::move(vars), std::vector<Tuple>(vals.begin(), vals.end()));
    };
    add("V", layout[U], V);
    add("V0", layout[LayoutSlot::V0], V0);
    add("V1", layout[LayoutSlot::V1], V1);
    add("E", concat(layout[Vs], layout[Ws]), E);
    add("T", layout[Tt], T);
    add("Eex", concat(layout[Vex], layout[Wex]), Eex);
    add("the congruence", concat(layout[E1], layout[E2]), Sim);
    add("the complement of V", layout[Uc], complement(V, m, k));
    add("the complement of E", concat(layout[Vc], layout[Wc]), complement(E, m, 2 * k));
    add("the complement of T", layout[Tc], complement(T, m, k));
    add("the complement of Eex", concat(layout[Vexc], layout[Wexc]), complement(Eex, m, 2 * k));
    add("the complement of the congruence", concat(layout[E1c], layout[E2c]), complement(Sim, m, 2 * k));
    std::vector<std::string> domain;
    std::size_t rows = 0;
    for (const auto& [vars, vals] : groups) {
        domain.insert(domain.end(), vars.begin(), vars.end());
        rows = std::max(rows, vals.size());
    }
    Team team(domain);
    for (std::size_t i = 0; i < rows; ++i) {
        Tuple row;
        for (const auto& [vars, vals] : groups) {
            const Tuple& t = vals[i % vals.size()];
            row.insert(row.end(), t.begin(), t.end());
        }
        team.insert(std::move(row));
    }
    return reorder(team, layout.variables());
}

bool is_complete_team(const Team& team, const GameCodecLayout& layout, const Structure& st)
{
    require_layout(team, layout);
    const std::size_t m = st.size();
    auto covers = [&](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        auto x = project_team(team, a).tuples();
        Relation pb = project_team(team, b);
        x.insert(pb.tuples().begin(), pb.tuples().end());
        std::size_t full = 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            full *= m;
        return x.size() == full;
    };
    bool ok = covers(layout[U], layout[Uc]) && covers(concat(layout[Vs], layout[Ws]), concat(layout[Vc], layout[Wc])) &&
              covers(layout[Tt], layout[Tc]) &&
              covers(concat(layout[Vex], layout[Wex]), concat(layout[Vexc], layout[Wexc])) &&
              covers(concat(layout[E1], layout[E2]), concat(layout[E1c], layout[E2c]));
    if (!ok)
        return false;
    auto v = project_team(team, layout[U]).tuples();
    auto v01 = project_team(team, layout[LayoutSlot::V0]).tuples();
    Relation v1 = project_team(team, layout[LayoutSlot::V1]);
    v01.insert(v1.tuples().begin(), v1.tuples().end());
    return v == v01;
}

DecodedGame decode_game_from_team(const Team& team, const GameCodecLayout& layout, const Structure& st)
{
    require_layout(team, layout);
    const std::size_t m = st.size();
    const std::size_t k = static_cast<std::size_t>(layout.k);
    auto proj = [&](const std::vector<std::string>& a) { return project_team(team, a).tuples(); };
    auto proj2 = [&](LayoutSlot a, LayoutSlot b) { return proj(concat(layout[a], layout[b])); };
    const auto V = proj(layout[U]);
    const auto V0 = proj(layout[LayoutSlot::V0]);
    const auto V1 = proj(layout[LayoutSlot::V1]);
    const auto E = proj2(Vs, Ws);
    const auto T = proj(layout[Tt]);
    const auto Eex = proj2(Vex, Wex);
    const auto Sim = proj2(E1, E2);
    DecodedGame out;
    auto fail = [&](const std::string& why) { out.failures.push_back(why); };
    if (proj(layout[Uc]) != complement(V, m, k))
        fail("X(uc) is not the complement of V");
    if (proj2(Vc, Wc) != complement(E, m, 2 * k))
        fail("X(vc, wc) is not the complement of E");
    if (proj(layout[Tc]) != complement(T, m, k))
        fail("X(tc) is not the complement of T");
    if (proj2(Vexc, Wexc) != complement(Eex, m, 2 * k))
        fail("X(vexc, wexc) is not the complement of Eex");
    if (proj2(E1c, E2c) != complement(Sim, m, 2 * k))
        fail("X(e1c, e2c) is not the complement of the congruence");
    {
        std::set<Tuple> diff;
        std::set_difference(V.begin(), V.end(), V1.begin(), V1.end(), std::inserter(diff, diff.end()));
        if (V0 != diff)
            fail("V0 differs from V minus V1");
    }
    auto split = [&](const Tuple& t) {
        return std::make_pair(Tuple(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k)),
                              Tuple(t.begin() + static_cast<std::ptrdiff_t>(k), t.end()));
    };
    bool structure_ok = true;
    auto in_v = [&](const Tuple& t) { return V.count(t) != 0; };
    for (const auto* s : {&V0, &V1, &T})
        for (const auto& t : *s)
            structure_ok = structure_ok && in_v(t);
    for (const auto* s : {&E, &Eex, &Sim})
        for (const auto& t : *s) {
            auto [a, b] = split(t);
            structure_ok = structure_ok && in_v(a) && in_v(b);
        }
    if (!structure_ok)
        fail("a relation mentions a tuple outside V");
    // The congruence must be an equivalence on V compatible with every relation.
    std::map<Tuple, Tuple> rep;
    bool congruence = structure_ok;
    if (congruence) {
        for (const auto& v : V)
            congruence = congruence && Sim.count(concat(v, v));
        for (const auto& t : Sim) {
            auto [a, b] = split(t);
            congruence = congruence && Sim.count(concat(b, a));
            for (const auto& c : V)
                if (Sim.count(concat(b, c)) && !Sim.count(concat(a, c)))
                    congruence = false;
        }
        if (congruence) {
            for (const auto& v : V) {
                Tuple least = v;
                for (const auto& w : V)
                    if (Sim.count(concat(v, w)) && w < least)
                        least = w;
                rep[v] = least;
            }
            auto unary_ok = [&](const std::set<Tuple>& s) {
                for (const auto& t : Sim) {
                    auto [a, b] = split(t);
                    if (s.count(a) != s.count(b))
                        return false;
                }
                return true;
            };
            auto binary_ok = [&](const std::set<Tuple>& s) {
                std::set<Tuple> quotient;
                for (const auto& t : s) {
                    auto [a, b] = split(t);
                    quotient.insert(concat(rep[a], rep[b]));
                }
                // Compatible iff every pair of representatives in the quotient is fully present.
                std::size_t expected = 0;
                for (const auto& q : quotient) {
                    auto [a, b] = split(q);
                    std::size_t ca = 0, cb = 0;
                    for (const auto& [v, r] : rep) {
                        ca += r == a;
                        cb += r == b;
                    }
                    expected += ca * cb;
                }
                return expected == s.size();
            };
            congruence = unary_ok(V0) && unary_ok(V1) && unary_ok(T) && binary_ok(E) && binary_ok(Eex);
        }
    }
    if (!congruence)
        fail("the relation X(e1, e2) is not a congruence");
    if (out.failures.empty()) {
        Game g;
        std::map<Tuple, Vertex> vid;
        for (const auto& [v, r] : rep)
            if (v == r)
                vid[v] = g.add_vertex(code_name(v, st), V0.count(v) ? 0 : 1);
        for (const auto& t : E) {
            auto [a, b] = split(t);
            g.add_edge(vid.at(rep[a]), vid.at(rep[b]));
        }
        for (const auto& t : Eex) {
            auto [a, b] = split(t);
            g.add_exclusion(vid.at(rep[a]), vid.at(rep[b]));
        }
        for (const auto& t : T)
            g.add_target(vid.at(rep[t]), rep[t]);
        auto valid = validate_union_game(g);
        if (!valid.ok)
            fail("the quotient is not a union game: " + valid.diagnostic);
        else
            out.game = std::move(g);
    }
    if (out.game)
        out.representative = std::move(rep);
    return out;
}

bool eval_ugame_atom(const Structure& st, const Team& team, int k, const std::vector<std::string>& targets)
{
    if (team.empty())
        return true;
    GameCodecLayout layout(k);
    require_layout(team, layout);
    if (static_cast<int>(targets.size()) != k)
        throw DomainError("ugame target tuple must have width k");
    if (!is_complete_team(team, layout, st))
        return false;
    auto decoded = decode_game_from_team(team, layout, st);
    if (!decoded.game)
        return true;
    const Game& g = *decoded.game;
    std::vector<Vertex> x;
    Relation chosen = project_team(team, targets);
    for (const auto& t : chosen.tuples()) {
        auto it = decoded.representative.find(t);
        if (it == decoded.representative.end())
            return false;
        auto v = g.find(code_name(it->second, st));
        if (!v || !g.is_target(*v))
            return false;
        x.push_back(*v);
    }
    return solve_membership(g, make_vertex_set(std::move(x))).has_value();
}

} // namespace teamlogic
