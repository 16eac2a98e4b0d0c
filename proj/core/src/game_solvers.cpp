#include "teamlogic/games.hpp"

#include <cstdint>

namespace teamlogic {

namespace {

void check_target_subset(const Game& game, const VertexSet& x)
{
    for (Vertex v : x) {
        if (v < 0 || static_cast<std::size_t>(v) >= game.size())
            throw DomainError("target set mentions a vertex outside the game");
        if (!game.is_target(v))
            throw DomainError("vertex " + game.name(v) + " is not a target");
    }
}

enum : std::uint8_t { Unknown = 0, In = 1, Out = 2 };

// Backtracking search with unit propagation over the four winning conditions.
class Backtracker {
public:
    Backtracker(const Game& g, const SolveBudget& b) : g_(g), budget_(b) {}

    std::optional<Strategy> run(const VertexSet& x)
    {
        std::vector<std::uint8_t> st(g_.size(), Unknown);
        std::vector<Vertex> queue;
        for (Vertex t : g_.targets())
            if (!std::binary_search(x.begin(), x.end(), t) && !assign(st, t, Out, queue))
                return std::nullopt;
        for (Vertex v : g_.initial())
            if (!assign(st, v, In, queue))
                return std::nullopt;
        for (Vertex v : x)
            if (!assign(st, v, In, queue))
                return std::nullopt;
        if (!propagate(st, queue))
            return std::nullopt;
        return search(st);
    }

private:
    const Game& g_;
    const SolveBudget& budget_;
    std::uint64_t steps_ = 0;

    void tick()
    {
        if (++steps_ > budget_.max_steps)
            throw ResourceError("strategy search exceeded " + std::to_string(budget_.max_steps) + " steps");
    }

    static bool assign(std::vector<std::uint8_t>& st, Vertex v, std::uint8_t val, std::vector<Vertex>& queue)
    {
        auto& s = st[static_cast<std::size_t>(v)];
        if (s == val)
            return true;
        if (s != Unknown)
            return false;
        s = val;
        queue.push_back(v);
        return true;
    }

    // A committed player-0 vertex needs a successor that is not excluded.
    bool check_choice(std::vector<std::uint8_t>& st, Vertex v, std::vector<Vertex>& queue)
    {
        Vertex only = -1;
        int open = 0;
        for (Vertex w : g_.successors(v)) {
            auto s = st[static_cast<std::size_t>(w)];
            if (s == In)
                return true;
            if (s == Unknown) {
                ++open;
                only = w;
            }
        }
        if (open == 0)
            return false;
        if (open == 1)
            return assign(st, only, In, queue);
        return true;
    }

    bool propagate(std::vector<std::uint8_t>& st, std::vector<Vertex>& queue)
    {
        while (!queue.empty()) {
            tick();
            Vertex v = queue.back();
            queue.pop_back();
            if (st[static_cast<std::size_t>(v)] == In) {
                if (g_.owner(v) == 1) {
                    for (Vertex w : g_.successors(v))
                        if (!assign(st, w, In, queue))
                            return false;
                } else if (!check_choice(st, v, queue)) {
                    return false;
                }
                for (Vertex w : g_.exclusion_partners(v))
                    if (!assign(st, w, Out, queue))
                        return false;
            } else {
                for (Vertex p : g_.predecessors(v)) {
                    auto ps = st[static_cast<std::size_t>(p)];
                    if (g_.owner(p) == 1) {
                        if (!assign(st, p, Out, queue))
                            return false;
                    } else if (ps == In) {
                        if (!check_choice(st, p, queue))
                            return false;
                    } else if (ps == Unknown) {
                        bool alive = std::any_of(g_.successors(p).begin(), g_.successors(p).end(), [&](Vertex w) {
                            return st[static_cast<std::size_t>(w)] != Out;
                        });
                        if (!alive && !assign(st, p, Out, queue))
                            return false;
                    }
                }
            }
        }
        return true;
    }

    std::optional<Strategy> search(std::vector<std::uint8_t>& st)
    {
        tick();
        // Pick the committed player-0 vertex without a committed successor and with fewest options.
        Vertex pick = -1;
        std::size_t best = SIZE_MAX;
        for (std::size_t v = 0; v < g_.size(); ++v) {
            if (st[v] != In || g_.owner(static_cast<Vertex>(v)) != 0)
                continue;
            std::size_t open = 0;
            bool done = false;
            for (Vertex w : g_.successors(static_cast<Vertex>(v))) {
                auto s = st[static_cast<std::size_t>(w)];
                if (s == In) {
                    done = true;
                    break;
                }
                if (s == Unknown)
                    ++open;
            }
            if (!done && open < best) {
                best = open;
                pick = static_cast<Vertex>(v);
            }
        }
        if (pick < 0) {
            std::vector<Vertex> w;
            for (std::size_t v = 0; v < g_.size(); ++v)
                if (st[v] == In)
                    w.push_back(static_cast<Vertex>(v));
            return Strategy{w};
        }
        for (Vertex c : g_.successors(pick)) {
            if (st[static_cast<std::size_t>(c)] != Unknown)
                continue;
            auto copy = st;
            std::vector<Vertex> queue;
            assign(copy, c, In, queue);
            if (propagate(copy, queue))
                if (auto r = search(copy))
                    return r;
            // Later branches may assume c is out.
            std::vector<Vertex> q2;
            if (!assign(st, c, Out, q2) || !propagate(st, q2))
                return std::nullopt;
            if (st[static_cast<std::size_t>(pick)] != In)
                return std::nullopt;
        }
        // Refuted branches may have forced a successor in; the remaining state is consistent.
        return search(st);
    }
};

} // namespace

std::optional<Strategy> solve_membership(const Game& game, const VertexSet& x, const SolveBudget& budget)
{
    VertexSet xs = make_vertex_set(x);
    check_target_subset(game, xs);
    Backtracker bt(game, budget);
    return bt.run(xs);
}

std::optional<Strategy> solve_membership_bruteforce(const Game& game, const VertexSet& x, const SolveBudget& budget)
{
    VertexSet xs = make_vertex_set(x);
    check_target_subset(game, xs);
    const std::size_t n = game.size();
    if (n > budget.max_bruteforce_vertices || n > 30)
        throw ResourceError("brute-force search over " + std::to_string(n) + " vertices exceeds the budget");
    using Mask = std::uint32_t;
    std::vector<Mask> succ(n, 0), partner(n, 0);
    for (auto [a, b] : game.edges())
        succ[static_cast<std::size_t>(a)] |= Mask{1} << b;
    for (auto [a, b] : game.exclusions()) {
        partner[static_cast<std::size_t>(a)] |= Mask{1} << b;
        partner[static_cast<std::size_t>(b)] |= Mask{1} << a;
    }
    Mask init = 0, tmask = 0, xmask = 0;
    for (Vertex v : game.initial())
        init |= Mask{1} << v;
    for (Vertex v : game.targets())
        tmask |= Mask{1} << v;
    for (Vertex v : xs)
        xmask |= Mask{1} << v;
    std::vector<Vertex> free_vertices;
    for (std::size_t v = 0; v < n; ++v)
        if (!(tmask >> v & 1))
            free_vertices.push_back(static_cast<Vertex>(v));
    for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << free_vertices.size()); ++sub) {
        Mask w = xmask;
        for (std::size_t i = 0; i < free_vertices.size(); ++i)
            if (sub >> i & 1)
                w |= Mask{1} << free_vertices[i];
        if ((init & ~w) != 0)
            continue;
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (!(w >> v & 1))
                continue;
            if (partner[v] & w)
                ok = false;
            else if (game.owner(static_cast<Vertex>(v)) == 0)
                ok = (succ[v] & w) != 0;
            else
                ok = (succ[v] & ~w) == 0;
        }
        if (ok) {
            std::vector<Vertex> out;
            for (std::size_t v = 0; v < n; ++v)
                if (w >> v & 1)
                    out.push_back(static_cast<Vertex>(v));
            return Strategy{out};
        }
    }
    return std::nullopt;
}

std::optional<Strategy> solve_membership_polynomial(const Game& game, const VertexSet& x)
{
    if (!game.exclusions().empty())
        throw InvalidInput("the fixpoint solver needs a game without exclusion edges");
    VertexSet xs = make_vertex_set(x);
    check_target_subset(game, xs);
    const std::size_t n = game.size();
    std::vector<char> alive(n, 1);
    // Count of live successors per vertex; removal propagates backwards along edges.
    std::vector<std::size_t> live(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        live[v] = game.successors(static_cast<Vertex>(v)).size();
    std::vector<Vertex> queue;
    auto kill = [&](Vertex v) {
        if (alive[static_cast<std::size_t>(v)]) {
            alive[static_cast<std::size_t>(v)] = 0;
            queue.push_back(v);
        }
    };
    for (Vertex t : game.targets())
        if (!std::binary_search(xs.begin(), xs.end(), t))
            kill(t);
    for (std::size_t v = 0; v < n; ++v)
        if (game.owner(static_cast<Vertex>(v)) == 0 && live[v] == 0)
            kill(static_cast<Vertex>(v));
    while (!queue.empty()) {
        Vertex v = queue.back();
        queue.pop_back();
        for (Vertex p : game.predecessors(v)) {
            auto pi = static_cast<std::size_t>(p);
            --live[pi];
            if (game.owner(p) == 1 || live[pi] == 0)
                kill(p);
        }
    }
    for (Vertex v : game.initial())
        if (!alive[static_cast<std::size_t>(v)])
            return std::nullopt;
    for (Vertex v : xs)
        if (!alive[static_cast<std::size_t>(v)])
            return std::nullopt;
    std::vector<Vertex> w;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v])
            w.push_back(static_cast<Vertex>(v));
    return Strategy{w};
}

std::vector<VertexSet> enumerate_targets(const Game& game, const SolveBudget& budget)
{
    const VertexSet& t = game.targets();
    if (t.size() > 16)
        throw ResourceError("enumerating targets over " + std::to_string(t.size()) + " target vertices exceeds the budget");
    std::vector<VertexSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << t.size()); ++mask) {
        VertexSet x;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (mask >> i & 1)
                x.push_back(t[i]);
        if (solve_membership(game, x, budget))
            out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace teamlogic
