#include "teamlogic/classical.hpp"
#include "teamlogic/constructions.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/transforms.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <sstream>
#include <tuple>

namespace teamlogic {

namespace {

std::string tuple_text(const Tuple& t, const Structure& st)
{
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i)
        s += (i ? "," : "") + st.name(t[i]);
    return s;
}

std::string target_name(const Tuple& t, const Structure& st)
{
    return "T(" + tuple_text(t, st) + ")";
}

enum class Mode { SO, Exclusion };

class PositionBuilder {
public:
    PositionBuilder(const Structure& st, Game& g, Mode mode, std::string free_relation,
                    std::set<std::string> quantified)
        : st_(st), g_(g), mode_(mode), x_(std::move(free_relation)), rbar_(std::move(quantified))
    {
    }

    // Targets must already exist; they are looked up by tuple.
    std::map<Tuple, Vertex> targets;

    Vertex build(const Formula& f, const std::string& id, const Assignment& s, const std::optional<Tuple>& copy)
    {
        std::string name = "(" + id + "|";
        bool first = true;
        for (const auto& v : f->free) {
            name += (first ? "" : ",") + v + "=" + st_.name(s.at(v));
            first = false;
        }
        if (copy)
            name += "|copy=" + tuple_text(*copy, st_);
        name += ")";
        if (auto v = g_.find(name))
            return *v;
        switch (f->kind) {
        case Kind::And:
        case Kind::Or: {
            Vertex v = g_.add_vertex(name, f->kind == Kind::And ? 1 : 0);
            Vertex a = build(f->a, child_id(id, 0), restrict(s, f->a), copy);
            Vertex b = build(f->b, child_id(id, 1), restrict(s, f->b), copy);
            g_.add_edge(v, a);
            g_.add_edge(v, b);
            return v;
        }
        case Kind::Exists:
        case Kind::Forall: {
            Vertex v = g_.add_vertex(name, f->kind == Kind::Forall ? 1 : 0);
            for (std::size_t a = 0; a < st_.size(); ++a) {
                Assignment t = s;
                t[f->name] = static_cast<Element>(a);
                g_.add_edge(v, build(f->a, child_id(id, 0), restrict(t, f->a), copy));
            }
            return v;
        }
        case Kind::Rel:
            return literal(f, name, s, copy);
        case Kind::Eq: {
            bool holds = (s.at(f->left[0]) == s.at(f->right[0])) == f->positive;
            return g_.add_vertex(name, holds ? 1 : 0);
        }
        case Kind::Exc: {
            if (mode_ != Mode::Exclusion)
                throw InvalidInput("dependency atom in a second-order matrix: " + print(f));
            Vertex v = g_.add_vertex(name, 1);
            exc_[id].push_back({v, values(s, f->left), values(s, f->right)});
            return v;
        }
        default:
            throw InvalidInput(mode_ == Mode::Exclusion
                                   ? "exclusion games support only exclusion atoms: " + print(f)
                                   : "unsupported node in a second-order matrix: " + print(f));
        }
    }

    void finish()
    {
        for (const auto& [key, lits] : rlits_)
            for (Vertex a : lits[1])
                for (Vertex b : lits[0])
                    g_.add_exclusion(a, b);
        for (const auto& [id, atoms] : exc_)
            for (const auto& p : atoms)
                for (const auto& q : atoms)
                    if (p.left == q.right)
                        g_.add_exclusion(p.v, q.v);
    }

private:
    const Structure& st_;
    Game& g_;
    Mode mode_;
    std::string x_;
    std::set<std::string> rbar_;
    // (copy, relation, tuple) -> vertices of negative [0] and positive [1] literals
    std::map<std::tuple<Tuple, std::string, Tuple>, std::array<std::vector<Vertex>, 2>> rlits_;
    struct ExcPos {
        Vertex v;
        Tuple left, right;
    };
    std::map<std::string, std::vector<ExcPos>> exc_;

    static Assignment restrict(const Assignment& s, const Formula& f)
    {
        Assignment out;
        for (const auto& v : f->free)
            out[v] = s.at(v);
        return out;
    }

    static Tuple values(const Assignment& s, const std::vector<std::string>& vars)
    {
        Tuple t;
        for (const auto& v : vars)
            t.push_back(s.at(v));
        return t;
    }

    Vertex literal(const Formula& f, const std::string& name, const Assignment& s, const std::optional<Tuple>& copy)
    {
        Tuple vals = values(s, f->left);
        if (mode_ == Mode::SO && f->name == x_) {
            auto it = targets.find(vals);
            if (it == targets.end())
                throw DomainError("free relation " + x_ + " used with the wrong arity");
            if (f->positive) {
                Vertex v = g_.add_vertex(name, 0);
                g_.add_edge(v, it->second);
                return v;
            }
            Vertex v = g_.add_vertex(name, 1);
            g_.add_exclusion(v, it->second);
            return v;
        }
        if (mode_ == Mode::SO && rbar_.count(f->name)) {
            Vertex v = g_.add_vertex(name, 1);
            rlits_[{copy.value_or(Tuple{}), f->name, vals}][f->positive ? 1 : 0].push_back(v);
            return v;
        }
        const Relation* r = st_.relation(f->name);
        if (!r)
            throw DomainError("unknown relation symbol " + f->name);
        if (r->arity() != static_cast<int>(vals.size()))
            throw DomainError("relation " + f->name + " used with the wrong arity");
        bool holds = r->contains(vals) == f->positive;
        return g_.add_vertex(name, holds ? 1 : 0);
    }
};

// Guard, quantified relations and body of a myopic formula in either accepted shape.
struct MyopicParts {
    std::vector<std::string> guard;
    std::vector<std::pair<std::string, int>> quantified;
    Formula body;
};

MyopicParts myopic_parts(const SOFormula& mu)
{
    if (!mu.guard.empty())
        return {mu.guard, mu.quantified, mu.matrix};
    Formula g = mu.matrix;
    std::vector<std::string> guard;
    while (g->kind == Kind::Forall) {
        guard.push_back(g->name);
        g = g->a;
    }
    return {guard, {}, g->b->b};
}

} // namespace

Game mc_game_so(const Structure& structure, const SOFormula& input)
{
    SOFormula phi = so_prenex(input);
    Formula matrix = to_nnf(phi.matrix);
    if (!matrix->free.empty())
        throw InvalidInput("second-order matrix has free first-order variables");
    Game g;
    std::set<std::string> rbar;
    for (const auto& [n, a] : phi.quantified)
        rbar.insert(n);
    PositionBuilder b(structure, g, Mode::SO, phi.free_relation, rbar);
    for (const auto& t : all_tuples(structure.size(), static_cast<std::size_t>(phi.free_arity))) {
        Vertex v = g.add_vertex(target_name(t, structure), 1);
        g.add_target(v, t);
        b.targets[t] = v;
    }
    Vertex root = b.build(matrix, "r", {}, std::nullopt);
    g.add_initial(root);
    b.finish();
    return g;
}

Game mc_game_myopic(const Structure& structure, const SOFormula& mu)
{
    auto check = check_myopic_so(mu);
    if (!check.ok)
        throw InvalidInput("not a myopic formula: " + check.diagnostic);
    MyopicParts parts = myopic_parts(mu);
    Formula body = to_nnf(parts.body);
    Game g;
    std::set<std::string> rbar;
    for (const auto& [n, a] : parts.quantified)
        rbar.insert(n);
    PositionBuilder b(structure, g, Mode::SO, mu.free_relation, rbar);
    auto tuples = all_tuples(structure.size(), static_cast<std::size_t>(mu.free_arity));
    for (const auto& t : tuples) {
        Vertex v = g.add_vertex(target_name(t, structure), 1);
        g.add_target(v, t);
        b.targets[t] = v;
    }
    for (const auto& t : tuples) {
        Assignment s;
        for (std::size_t i = 0; i < parts.guard.size(); ++i)
            if (std::binary_search(body->free.begin(), body->free.end(), parts.guard[i]))
                s[parts.guard[i]] = t[i];
        Vertex root = b.build(body, "r", s, t);
        g.add_edge(b.targets[t], root);
    }
    b.finish();
    return g;
}

Game mc_game_exclusion(const Structure& structure, const Formula& input, const std::vector<std::string>& domain)
{
    Formula phi = to_nnf(input);
    if (phi->has_inc || phi->has_dep || phi->has_indep || phi->has_ugame || phi->has_so)
        throw InvalidInput("exclusion games need a formula whose only dependency atoms are exclusion atoms");
    for (const auto& v : phi->free)
        if (std::find(domain.begin(), domain.end(), v) == domain.end())
            throw DomainError("free variable " + v + " is not in the team domain");
    Game g;
    PositionBuilder b(structure, g, Mode::Exclusion, "", {});
    std::vector<std::pair<Vertex, Assignment>> roots;
    for (const auto& t : all_tuples(structure.size(), domain.size())) {
        std::string name = "T(";
        Assignment s;
        for (std::size_t i = 0; i < domain.size(); ++i) {
            name += (i ? "," : "") + domain[i] + "=" + structure.name(t[i]);
            s[domain[i]] = t[i];
        }
        Vertex v = g.add_vertex(name + ")", 1);
        g.add_target(v, t);
        roots.emplace_back(v, s);
    }
    for (auto& [v, s] : roots) {
        Assignment r;
        for (const auto& x : phi->free)
            r[x] = s.at(x);
        g.add_edge(v, b.build(phi, "r", r, std::nullopt));
    }
    b.finish();
    return g;
}

VertexSet targets_of_relation(const Game& game, const Relation& rel)
{
    std::vector<Vertex> out;
    std::set<Tuple> found;
    for (const auto& [v, payload] : game.payloads())
        if (rel.contains(payload)) {
            out.push_back(v);
            found.insert(payload);
        }
    if (found.size() != rel.size())
        throw DomainError("relation has tuples without a target vertex");
    return make_vertex_set(std::move(out));
}

Relation relation_of_targets(const Game& game, const VertexSet& targets, int arity)
{
    Relation r(arity);
    for (Vertex v : targets) {
        auto it = game.payloads().find(v);
        if (it == game.payloads().end())
            throw DomainError("target " + game.name(v) + " carries no tuple");
        r.insert(it->second);
    }
    return r;
}

VertexSet targets_of_team(const Game& game, const Team& team, const std::vector<std::string>& domain)
{
    return targets_of_relation(game, project_team(team, domain));
}

Team team_of_targets(const Game& game, const VertexSet& targets, const std::vector<std::string>& domain)
{
    Relation r = relation_of_targets(game, targets, static_cast<int>(domain.size()));
    return Team(domain, r.tuples());
}

Cnf parse_dimacs(std::string_view text)
{
    Cnf cnf;
    bool header = false;
    std::size_t declared = 0;
    std::vector<int> current;
    int lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c' || line[first] == '%')
            continue;
        std::istringstream ls(line);
        if (line[first] == 'p') {
            std::string p, fmt;
            long vars = -1, clauses = -1;
            ls >> p >> fmt >> vars >> clauses;
            if (header || fmt != "cnf" || vars < 0 || clauses < 0)
                throw ParseError("malformed DIMACS header", lineno, static_cast<int>(first) + 1);
            header = true;
            cnf.variables = static_cast<int>(vars);
            declared = static_cast<std::size_t>(clauses);
            continue;
        }
        if (!header)
            throw ParseError("clause before the 'p cnf' header", lineno, static_cast<int>(first) + 1);
        std::string tok;
        while (ls >> tok) {
            long lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stol(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("expected an integer literal, found '" + tok + "'", lineno,
                                 static_cast<int>(line.find(tok)) + 1);
            }
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                if (std::labs(lit) > cnf.variables)
                    throw ParseError("literal " + tok + " exceeds the declared variable count", lineno,
                                     static_cast<int>(line.find(tok)) + 1);
                current.push_back(static_cast<int>(lit));
            }
        }
    }
    if (!header)
        throw ParseError("missing 'p cnf' header", lineno + 1, 1);
    if (!current.empty())
        cnf.clauses.push_back(current);
    if (cnf.clauses.size() != declared)
        throw ParseError("header declares " + std::to_string(declared) + " clauses but " +
                             std::to_string(cnf.clauses.size()) + " were given",
                         lineno + 1, 1);
    return cnf;
}

Game cnf_to_game(const Cnf& cnf)
{
    Game g;
    std::vector<std::array<Vertex, 2>> lit(static_cast<std::size_t>(cnf.variables) + 1);
    for (int x = 1; x <= cnf.variables; ++x) {
        Vertex p = g.add_vertex("x" + std::to_string(x), 1);
        Vertex n = g.add_vertex("~x" + std::to_string(x), 1);
        g.add_exclusion(p, n);
        lit[static_cast<std::size_t>(x)] = {n, p};
    }
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
        Vertex c = g.add_vertex("C" + std::to_string(j + 1), 0);
        g.add_target(c);
        for (int l : cnf.clauses[j]) {
            if (l == 0 || std::abs(l) > cnf.variables)
                throw DomainError("literal " + std::to_string(l) + " out of range");
            g.add_edge(c, lit[static_cast<std::size_t>(std::abs(l))][l > 0 ? 1 : 0]);
        }
    }
    return g;
}

Structure game_as_structure(const Game& game)
{
    if (game.size() == 0)
        throw DomainError("a game without vertices has no structure (universes are non-empty)");
    std::vector<std::string> names;
    for (std::size_t v = 0; v < game.size(); ++v)
        names.push_back(game.name(static_cast<Vertex>(v)));
    Structure st(names);
    Relation v0(1), v1(1), e(2), i(1), t(1), ex(2);
    for (std::size_t v = 0; v < game.size(); ++v)
        (game.owner(static_cast<Vertex>(v)) == 0 ? v0 : v1).insert({static_cast<Element>(v)});
    for (auto [a, b] : game.edges())
        e.insert({a, b});
    for (auto [a, b] : game.exclusions())
        ex.insert({a, b});
    for (Vertex v : game.initial())
        i.insert({v});
    for (Vertex v : game.targets())
        t.insert({v});
    st.set_relation("V0", v0);
    st.set_relation("V1", v1);
    st.set_relation("E", e);
    st.set_relation("I", i);
    st.set_relation("T", t);
    st.set_relation("Eex", ex);
    return st;
}

Game structure_as_game(const Structure& st)
{
    auto need = [&](const char* name, int arity) -> const Relation& {
        const Relation* r = st.relation(name);
        if (!r || r->arity() != arity)
            throw InvalidInput(std::string("game structure needs relation ") + name + "/" + std::to_string(arity));
        return *r;
    };
    const Relation& v0 = need("V0", 1);
    const Relation& v1 = need("V1", 1);
    Game g;
    for (std::size_t v = 0; v < st.size(); ++v) {
        bool p0 = v0.contains({static_cast<Element>(v)});
        bool p1 = v1.contains({static_cast<Element>(v)});
        if (p0 == p1)
            throw InvalidInput("element " + st.name(static_cast<Element>(v)) + " must belong to exactly one of V0, V1");
        g.add_vertex(st.name(static_cast<Element>(v)), p0 ? 0 : 1);
    }
    for (const auto& t : need("E", 2).tuples())
        g.add_edge(t[0], t[1]);
    for (const auto& t : need("Eex", 2).tuples())
        g.add_exclusion(t[0], t[1]);
    for (const auto& t : need("I", 1).tuples())
        g.add_initial(t[0]);
    for (const auto& t : need("T", 1).tuples())
        g.add_target(t[0]);
    return g;
}

Game rename_vertices(const Game& game, const std::vector<std::string>& names)
{
    if (names.size() != game.size())
        throw DomainError("rename_vertices needs one name per vertex");
    Game g;
    for (std::size_t v = 0; v < game.size(); ++v)
        g.add_vertex(names[v], game.owner(static_cast<Vertex>(v)));
    for (auto [a, b] : game.edges())
        g.add_edge(a, b);
    for (auto [a, b] : game.exclusions())
        g.add_exclusion(a, b);
    for (Vertex v : game.initial())
        g.add_initial(v);
    for (Vertex v : game.targets()) {
        auto it = game.payloads().find(v);
        g.add_target(v, it == game.payloads().end() ? std::nullopt : std::optional<Tuple>(it->second));
    }
    return g;
}

} // namespace teamlogic
