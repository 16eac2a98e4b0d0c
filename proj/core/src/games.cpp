#include "teamlogic/games.hpp"

#include <deque>

namespace teamlogic {

void Game::check(Vertex v) const
{
    if (v < 0 || static_cast<std::size_t>(v) >= names_.size())
        throw DomainError("vertex id " + std::to_string(v) + " out of range");
}

Vertex Game::add_vertex(const std::string& name, int owner)
{
    if (owner != 0 && owner != 1)
        throw DomainError("vertex owner must be 0 or 1");
    if (name.empty())
        throw DomainError("vertex name must be non-empty");
    if (index_.count(name))
        throw DomainError("duplicate vertex " + name);
    Vertex v = static_cast<Vertex>(names_.size());
    names_.push_back(name);
    index_[name] = v;
    owner_.push_back(owner);
    succ_.emplace_back();
    pred_.emplace_back();
    partners_.emplace_back();
    return v;
}

void Game::add_edge(Vertex u, Vertex v)
{
    check(u);
    check(v);
    if (edges_.emplace(u, v).second) {
        succ_[static_cast<std::size_t>(u)].push_back(v);
        pred_[static_cast<std::size_t>(v)].push_back(u);
    }
}

void Game::add_exclusion(Vertex u, Vertex v)
{
    check(u);
    check(v);
    if (!eex_.emplace(u, v).second)
        return;
    auto add = [&](Vertex a, Vertex b) {
        auto& p = partners_[static_cast<std::size_t>(a)];
        if (std::find(p.begin(), p.end(), b) == p.end())
            p.push_back(b);
    };
    add(u, v);
    add(v, u);
}

void Game::add_initial(Vertex v)
{
    check(v);
    auto it = std::lower_bound(initial_.begin(), initial_.end(), v);
    if (it == initial_.end() || *it != v)
        initial_.insert(it, v);
}

void Game::add_target(Vertex v, std::optional<Tuple> payload)
{
    check(v);
    auto it = std::lower_bound(targets_.begin(), targets_.end(), v);
    if (it == targets_.end() || *it != v)
        targets_.insert(it, v);
    if (payload)
        payload_[v] = *payload;
}

std::optional<Vertex> Game::find(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Vertex Game::vertex(const std::string& name) const
{
    auto v = find(name);
    if (!v)
        throw DomainError("unknown vertex " + name);
    return *v;
}

bool Game::operator==(const Game& o) const
{
    if (size() != o.size())
        return false;
    std::vector<Vertex> map(size());
    for (std::size_t v = 0; v < size(); ++v) {
        auto w = o.find(names_[v]);
        if (!w || o.owner(*w) != owner_[v])
            return false;
        map[v] = *w;
    }
    auto tr = [&](const std::set<std::pair<Vertex, Vertex>>& s) {
        std::set<std::pair<Vertex, Vertex>> out;
        for (auto [a, b] : s)
            out.emplace(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]);
        return out;
    };
    auto trs = [&](const VertexSet& s) {
        VertexSet out;
        for (Vertex v : s)
            out.push_back(map[static_cast<std::size_t>(v)]);
        std::sort(out.begin(), out.end());
        return out;
    };
    return tr(edges_) == o.edges_ && tr(eex_) == o.eex_ && trs(initial_) == o.initial_ && trs(targets_) == o.targets_;
}

VertexSet make_vertex_set(std::vector<Vertex> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

namespace {

void check_set(const Game& game, const VertexSet& w)
{
    for (Vertex v : w)
        if (v < 0 || static_cast<std::size_t>(v) >= game.size())
            throw DomainError("strategy mentions a vertex outside the game");
}

std::vector<char> membership(const Game& game, const VertexSet& w)
{
    std::vector<char> in(game.size(), 0);
    for (Vertex v : w)
        in[static_cast<std::size_t>(v)] = 1;
    return in;
}

} // namespace

std::vector<std::pair<Vertex, Vertex>> strategy_edges(const Game& game, const VertexSet& w)
{
    check_set(game, w);
    auto in = membership(game, w);
    std::vector<std::pair<Vertex, Vertex>> out;
    for (auto [u, v] : game.edges())
        if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)])
            out.emplace_back(u, v);
    return out;
}

std::vector<std::pair<Vertex, Vertex>> inclusion_edges(const Game& game)
{
    std::vector<std::pair<Vertex, Vertex>> out;
    for (auto [u, v] : game.edges())
        if (game.is_target(v))
            out.emplace_back(u, v);
    return out;
}

StrategyCheck check_winning_strategy(const Game& game, const VertexSet& w)
{
    check_set(game, w);
    auto in = membership(game, w);
    for (Vertex v : w) {
        const auto& s = game.successors(v);
        if (game.owner(v) == 0) {
            bool any = std::any_of(s.begin(), s.end(), [&](Vertex x) { return in[static_cast<std::size_t>(x)]; });
            if (!any)
                return {false, 1, "player-0 vertex " + game.name(v) + " has no successor in the strategy"};
        } else {
            for (Vertex x : s)
                if (!in[static_cast<std::size_t>(x)])
                    return {false, 2,
                            "player-1 vertex " + game.name(v) + " misses successor " + game.name(x)};
        }
    }
    for (Vertex v : game.initial())
        if (!in[static_cast<std::size_t>(v)])
            return {false, 3, "initial vertex " + game.name(v) + " is not in the strategy"};
    for (auto [a, b] : game.exclusions())
        if (in[static_cast<std::size_t>(a)] && in[static_cast<std::size_t>(b)])
            return {false, 4, "exclusion edge (" + game.name(a) + "," + game.name(b) + ") inside the strategy"};
    return {};
}

bool is_winning_strategy(const Game& game, const VertexSet& w)
{
    return check_winning_strategy(game, w).ok;
}

VertexSet strategy_target(const Game& game, const VertexSet& w)
{
    check_set(game, w);
    VertexSet out;
    std::set_intersection(w.begin(), w.end(), game.targets().begin(), game.targets().end(), std::back_inserter(out));
    return out;
}

VertexSet reachable_component(const Game& game, Vertex t)
{
    if (t < 0 || static_cast<std::size_t>(t) >= game.size() || !game.is_target(t))
        throw DomainError("reachable_component needs a target vertex");
    std::vector<char> seen(game.size(), 0);
    std::deque<Vertex> q{t};
    seen[static_cast<std::size_t>(t)] = 1;
    while (!q.empty()) {
        Vertex v = q.front();
        q.pop_front();
        for (Vertex w : game.successors(v))
            if (!game.is_target(w) && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                q.push_back(w);
            }
    }
    VertexSet out;
    for (std::size_t v = 0; v < game.size(); ++v)
        if (seen[v])
            out.push_back(static_cast<Vertex>(v));
    return out;
}

namespace {

// Component index of every vertex (-1 outside all components), or a diagnostic on overlap.
std::optional<std::string> components(const Game& game, std::vector<int>& comp)
{
    comp.assign(game.size(), -1);
    for (Vertex t : game.targets()) {
        for (Vertex v : reachable_component(game, t)) {
            int& c = comp[static_cast<std::size_t>(v)];
            if (c != -1)
                return "components of targets " + game.name(game.targets()[static_cast<std::size_t>(c)]) + " and " +
                       game.name(t) + " share vertex " + game.name(v);
            c = static_cast<int>(std::lower_bound(game.targets().begin(), game.targets().end(), t) -
                                 game.targets().begin());
        }
    }
    return std::nullopt;
}

} // namespace

CheckResult validate_union_game(const Game& game)
{
    if (!game.initial().empty())
        return {false, "initial vertices must be empty (found " + game.name(game.initial().front()) + ")"};
    std::vector<int> comp;
    if (auto err = components(game, comp))
        return {false, "components must be disjoint: " + *err};
    for (auto [a, b] : game.exclusions()) {
        int ca = comp[static_cast<std::size_t>(a)];
        int cb = comp[static_cast<std::size_t>(b)];
        if (ca == -1 || ca != cb)
            return {false, "exclusion edge (" + game.name(a) + "," + game.name(b) + ") is not inside one component"};
    }
    return {true, "union game with " + std::to_string(game.targets().size()) + " components"};
}

CheckResult validate_exclusion_game(const Game& game)
{
    if (!game.initial().empty())
        return {false, "initial vertices must be empty"};
    auto in = inclusion_edges(game);
    if (!in.empty())
        return {false, "inclusion edge (" + game.name(in.front().first) + "," + game.name(in.front().second) +
                           ") present"};
    return {true, "exclusion game"};
}

CheckResult validate_inclusion_game(const Game& game)
{
    if (!game.initial().empty())
        return {false, "initial vertices must be empty"};
    if (!game.exclusions().empty())
        return {false, "exclusion edges must be empty"};
    return {true, "inclusion game"};
}

Strategy union_strategies(const Game& game, const std::vector<Strategy>& strategies)
{
    auto valid = validate_union_game(game);
    if (!valid.ok)
        throw InvalidInput("not a union game: " + valid.diagnostic);
    std::vector<int> comp;
    components(game, comp);
    std::map<Vertex, std::size_t> chosen;
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        auto check = check_winning_strategy(game, strategies[i].vertices);
        if (!check.ok)
            throw InvalidInput("strategy " + std::to_string(i) + " is not winning: " + check.diagnostic);
        for (Vertex t : strategy_target(game, strategies[i].vertices))
            chosen.emplace(t, i);
    }
    std::vector<Vertex> out;
    for (auto [t, i] : chosen) {
        int c = static_cast<int>(std::lower_bound(game.targets().begin(), game.targets().end(), t) -
                                 game.targets().begin());
        for (Vertex v : strategies[i].vertices)
            if (comp[static_cast<std::size_t>(v)] == c)
                out.push_back(v);
    }
    return {make_vertex_set(std::move(out))};
}

SafetyGame to_safety_game(const Game& g)
{
    auto valid = validate_inclusion_game(g);
    if (!valid.ok)
        throw InvalidInput("not an inclusion game: " + valid.diagnostic);
    SafetyGame s;
    for (std::size_t v = 0; v < g.size(); ++v)
        s.game.add_vertex(g.name(static_cast<Vertex>(v)), g.owner(static_cast<Vertex>(v)));
    for (auto [a, b] : g.edges())
        s.game.add_edge(a, b);
    for (Vertex t : g.targets())
        s.game.add_initial(t);
    return s;
}

Game from_safety_game(const SafetyGame& s)
{
    Game g;
    for (std::size_t v = 0; v < s.game.size(); ++v)
        g.add_vertex(s.game.name(static_cast<Vertex>(v)), s.game.owner(static_cast<Vertex>(v)));
    for (auto [a, b] : s.game.edges())
        g.add_edge(a, b);
    for (Vertex i : s.game.initial())
        g.add_target(i);
    return g;
}

std::vector<VertexSet> i_traps(const SafetyGame& s)
{
    const VertexSet& I = s.game.initial();
    if (I.size() > 16)
        throw ResourceError("too many initial vertices to enumerate I-traps");
    // W ∩ I = X under conditions (1) and (2): the greatest such W avoids I ∖ X.
    std::vector<VertexSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << I.size()); ++mask) {
        VertexSet x;
        for (std::size_t i = 0; i < I.size(); ++i)
            if (mask >> i & 1)
                x.push_back(I[i]);
        std::vector<char> alive(s.game.size(), 1);
        for (Vertex v : I)
            if (!std::binary_search(x.begin(), x.end(), v))
                alive[static_cast<std::size_t>(v)] = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0; v < s.game.size(); ++v) {
                if (!alive[v])
                    continue;
                const auto& succ = s.game.successors(static_cast<Vertex>(v));
                bool keep = s.game.owner(static_cast<Vertex>(v)) == 0
                                ? std::any_of(succ.begin(), succ.end(), [&](Vertex w) { return alive[static_cast<std::size_t>(w)] != 0; })
                                : std::all_of(succ.begin(), succ.end(), [&](Vertex w) { return alive[static_cast<std::size_t>(w)] != 0; });
                if (!keep) {
                    alive[v] = 0;
                    changed = true;
                }
            }
        }
        if (std::all_of(x.begin(), x.end(), [&](Vertex v) { return alive[static_cast<std::size_t>(v)] != 0; }))
            out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace teamlogic
