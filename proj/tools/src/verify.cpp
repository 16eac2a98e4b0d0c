#include "teamlogic/cli.hpp"
#include "teamlogic/classical.hpp"
#include "teamlogic/constructions.hpp"
#include "teamlogic/semantics.hpp"
#include "teamlogic/transforms.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace teamlogic::cli {

namespace {

// Built-in corpora, so that verification does not depend on files.
const char* const kSoCorpus[] = {
    "A x. (X(x) -> P(x))",
    "(E x. X(x)) & (A x. A y. (X(x) & X(y) -> x = y))",
    "A x. A y. (X(x) & X(y) -> ~E(x,y))",
    "EX R/1. A x. A y. (X(x) & X(y) & E(x,y) -> (R(x) & ~R(y)) | (~R(x) & R(y)))",
    "A x. A y. (X(x) & E(x,y) -> X(y))",
    "E x. X(x)",
    "EX R/1. (A x. (X(x) -> R(x))) & (A x. A y. (R(x) & E(x,y) -> R(y))) & (A x. (R(x) -> P(x)))",
    "A x. A y. (X(x,y) -> E(x,y))",
    "A x. A y. A z. (X(x,y) & X(x,z) -> y = z)",
    "EX R/2. (A x. A y. (X(x,y) -> R(y,x))) & (A x. A y. (R(x,y) -> E(x,y)))",
    "EX R/1. A x. (X(x) -> R(x)) & (~X(x) -> ~R(x) | P(x))",
    "A x. (X(x) -> EX R/1. (R(x) | P(x)) & (A y. (R(y) -> ~E(y,y))))",
    "A x. A y. (X(x) & X(y) & ~P(x) & ~P(y) -> x = y)",
    "A x. (X(x) -> EX R/1. R(x) & (A y. (R(y) -> P(y) | (E z. (E(y,z) & P(z))))))",
};

const char* const kMyopicCorpus[] = {
    "A x. (X(x) -> P(x))",
    "A x. (X(x) -> EX R/1. (R(x) | P(x)) & (A y. (R(y) -> ~E(y,y))))",
    "A x. (X(x) -> EX R/1. R(x) & (A y. (R(y) -> P(y) | (E z. (E(y,z) & P(z))))))",
    "A x. A y. (X(x,y) -> E(x,y))",
    "A x. (X(x) -> E y. (E(x,y) & ~P(y)))",
    "A x. (X(x) -> EX R/1. R(x) & (A y. A z. (R(y) & E(y,z) -> R(z))) & (A y. (R(y) -> ~P(y) | E(y,y))))",
};

const char* const kIncExcCorpus[] = {
    "P(x)",
    "exc(x; y)",
    "inc(x; y)",
    "E y. (E(x,y) & inc(y; x))",
    "E y. (E(x,y) & exc(x; y))",
    "P(x) | inc(x; y)",
    "A y. (E(x,y) -> inc(y; x))",
    "exc(x; y) | x = y",
    "E y. (E(x,y) & exc(x, y; y, x))",
    "E y. (P(y) & inc(y; x))",
    "~P(x) | E y. (E(x,y) & inc(y; x))",
    "inc(x; y) & exc(y; x)",
    "P(x) | exc(x; y)",
    "A z. (exc(x; z) | x = z)",
};

const char* const kExclusionCorpus[] = {
    "exc(x; y)",
    "E y. (E(x,y) & exc(x; y))",
    "exc(x; y) | x = y",
    "E y. (E(x,y) & exc(x, y; y, x))",
    "P(x) | exc(x; y)",
    "A z. (exc(x; z) | x = z)",
    "exc(x, y; y, x)",
};

const char* const kEvilA = "universe: a b c ap am bp bm cp cm\n"
                           "E: (a,b) (c,b) (b,b)\n"
                           "F: (a,ap) (a,am) (b,bp) (b,bm) (c,cp) (c,cm)\n"
                           "P: (ap) (am) (bp)\n"
                           "Q: (bm) (cp) (cm)\n";
const char* const kEvilB = "universe: a b c ap am bp bm cp cm\n"
                           "E: (b,bp) (b,bm) (bp,b) (bm,b) (bp,a) (bm,c) (a,ap) (a,am) (c,cp) (c,cm) "
                           "(ap,ap) (am,am) (cp,cp) (cm,cm)\n";
const char* const kEvilPhi = "E y. E z. (F(x,y) & F(x,z) & exc(x, y; x, z) & ((P(y) & E v. (E(x,v) & inc(v; x))) | "
                             "(Q(y) & E v. (E(x,v) & inc(v; x)))))";
const char* const kEvilPsi = "E y. E z. (E(x,y) & E(x,z) & exc(x, y; x, z) & E w. (E(y,w) & inc(x; w)))";
const char* const kClosedUnderE = "E z. (inc(z; x) & A y. (E(x,y) -> inc(x, y; x, z)))";

using Rng = std::mt19937;

bool coin(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Structure random_structure(Rng& rng, int size)
{
    std::vector<std::string> names;
    for (int i = 0; i < size; ++i)
        names.emplace_back(1, static_cast<char>('a' + i));
    Structure st(names);
    Relation p(1), e(2);
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

Game random_game(Rng& rng, int max_vertices, double exclusion_p)
{
    Game g;
    int n = uniform(rng, 2, max_vertices);
    for (int i = 0; i < n; ++i)
        g.add_vertex("v" + std::to_string(i), uniform(rng, 0, 1));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (coin(rng, 0.25))
                g.add_edge(u, v);
            if (u < v && coin(rng, exclusion_p))
                g.add_exclusion(u, v);
        }
    for (int v = 0; v < n; ++v) {
        if (coin(rng, 0.2))
            g.add_initial(v);
        if (coin(rng, 0.3))
            g.add_target(v);
    }
    return g;
}

// Targets own disjoint components; edges into targets may cross components.
Game random_union_game(Rng& rng, int max_components, int max_inner, bool codec_ready)
{
    while (true) {
        Game g;
        int c = uniform(rng, 1, max_components);
        std::vector<std::vector<Vertex>> comp(static_cast<std::size_t>(c));
        for (int i = 0; i < c; ++i) {
            auto& vs = comp[static_cast<std::size_t>(i)];
            vs.push_back(g.add_vertex("t" + std::to_string(i), uniform(rng, 0, 1)));
            int inner = uniform(rng, 0, max_inner);
            for (int j = 0; j < inner; ++j)
                vs.push_back(g.add_vertex("c" + std::to_string(i) + "_" + std::to_string(j), uniform(rng, 0, 1)));
        }
        for (const auto& vs : comp)
            g.add_target(vs.front());
        for (const auto& vs : comp) {
            for (std::size_t a = 0; a < vs.size(); ++a) {
                for (std::size_t b = 1; b < vs.size(); ++b)
                    if (coin(rng, 0.35))
                        g.add_edge(vs[a], vs[b]);
                for (std::size_t b = a + 1; b < vs.size(); ++b)
                    if (coin(rng, 0.2))
                        g.add_exclusion(vs[a], vs[b]);
            }
            // Each inner vertex gets an edge from an earlier vertex of its component.
            for (std::size_t b = 1; b < vs.size(); ++b) {
                auto first = vs.begin(), last = vs.begin() + static_cast<std::ptrdiff_t>(b);
                const auto& pred = g.predecessors(vs[b]);
                if (std::none_of(pred.begin(), pred.end(), [&](Vertex p) { return std::find(first, last, p) != last; }))
                    g.add_edge(vs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(b) - 1))], vs[b]);
            }
        }
        for (Vertex u = 0; u < static_cast<Vertex>(g.size()); ++u)
            for (const auto& vs : comp)
                if (coin(rng, 0.15))
                    g.add_edge(u, vs.front());
        if (codec_ready) {
            bool p0 = false, p1 = false;
            for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
                (g.owner(v) == 0 ? p0 : p1) = true;
            if (g.exclusions().empty() || g.edges().empty() || !p0 || !p1)
                continue;
        }
        return g;
    }
}

Cnf random_cnf(Rng& rng, int max_vars, int max_clauses)
{
    Cnf cnf;
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

bool truth_table(const Cnf& cnf)
{
    for (unsigned a = 0; a < (1u << cnf.variables); ++a) {
        bool all = true;
        for (const auto& c : cnf.clauses) {
            bool any = false;
            for (int l : c)
                any |= (l > 0) == static_cast<bool>(a >> (std::abs(l) - 1) & 1);
            all &= any;
        }
        if (all)
            return true;
    }
    return false;
}

VertexSet random_subset(Rng& rng, const VertexSet& from)
{
    VertexSet out;
    for (Vertex v : from)
        if (coin(rng, 0.5))
            out.push_back(v);
    return out;
}

std::set<std::set<Tuple>> relation_family(const std::vector<Relation>& rels)
{
    std::set<std::set<Tuple>> out;
    for (const auto& r : rels)
        out.insert(r.tuples());
    return out;
}

std::set<std::set<Tuple>> game_relation_family(const Game& g, int arity)
{
    std::set<std::set<Tuple>> out;
    for (const auto& t : enumerate_targets(g))
        out.insert(relation_of_targets(g, t, arity).tuples());
    return out;
}

std::set<std::set<Tuple>> team_family(const std::vector<Team>& teams, const std::vector<std::string>& domain)
{
    std::set<std::set<Tuple>> out;
    for (const auto& t : teams)
        out.insert(reorder(t, domain).rows());
    return out;
}

// Structure sizes used for formulas whose free relation has the given arity.
std::vector<int> sizes(const VerifyOptions& o, int arity)
{
    int cap = arity >= 2 ? std::min(o.max_universe, 2) : std::min(o.max_universe, 3);
    std::vector<int> out;
    for (int s = 1; s <= std::max(cap, 1); ++s)
        out.push_back(s);
    return out;
}

struct Runner {
    SuiteOutcome& out;
    void fail(const std::string& what) { out.failures.push_back(what); }
    void expect(bool ok, const std::string& what)
    {
        ++out.cases;
        if (!ok)
            fail(what);
    }
};

using SuiteFn = std::function<void(Runner&, const VerifyOptions&, Rng&)>;

struct Suite {
    SuiteInfo info;
    SuiteFn run;
};

void eso_game(Runner& r, const VerifyOptions& o, Rng& rng)
{
    for (const char* text : kSoCorpus) {
        SOFormula phi = parse_so_formula(text);
        for (int n : sizes(o, phi.free_arity)) {
            Structure st = random_structure(rng, n);
            Game g = mc_game_so(st, phi);
            r.expect(game_relation_family(g, phi.free_arity) == relation_family(satisfying_relations(st, phi)),
                     std::string(text) + " on a structure of size " + std::to_string(n));
        }
    }
}

void np_reduction(Runner& r, const VerifyOptions&, Rng& rng)
{
    for (int i = 0; i < 40; ++i) {
        Cnf cnf = random_cnf(rng, 6, 10);
        Game g = cnf_to_game(cnf);
        r.expect(solve_membership(g, g.targets()).has_value() == truth_table(cnf), "cnf instance " + std::to_string(i));
    }
}

void ptime(Runner& r, const VerifyOptions&, Rng& rng)
{
    for (int i = 0; i < 80; ++i) {
        Game g = random_game(rng, 10, 0);
        VertexSet x = random_subset(rng, g.targets());
        r.expect(solve_membership_polynomial(g, x).has_value() == solve_membership_bruteforce(g, x).has_value(),
                 "game " + std::to_string(i) + ":\n" + print_game(g));
    }
}

void myopic_companion(Runner& r, const VerifyOptions& o, Rng& rng)
{
    for (const char* text : kSoCorpus) {
        SOFormula phi = parse_so_formula(text);
        SOFormula mu = myopic_companion_so(phi);
        r.expect(check_myopic_so(mu).ok, std::string("companion of ") + text + " is not myopic");
        for (int n : sizes(o, phi.free_arity)) {
            Structure st = random_structure(rng, n);
            auto closure = union_closure(satisfying_relations(st, phi), phi.free_arity);
            r.expect(relation_family(satisfying_relations(st, mu)) == relation_family(closure),
                     std::string(text) + " on a structure of size " + std::to_string(n));
        }
    }
}

void union_game(Runner& r, const VerifyOptions& o, Rng& rng)
{
    for (const char* text : kMyopicCorpus) {
        SOFormula mu = parse_so_formula(text);
        for (int n : sizes(o, mu.free_arity)) {
            Structure st = random_structure(rng, n);
            Game g = mc_game_myopic(st, mu);
            auto valid = validate_union_game(g);
            r.expect(valid.ok, std::string(text) + ": " + valid.diagnostic);
            r.expect(game_relation_family(g, mu.free_arity) == relation_family(satisfying_relations(st, mu)),
                     std::string(text) + " on a structure of size " + std::to_string(n));
        }
    }
}

void strategy_union(Runner& r, const VerifyOptions&, Rng& rng)
{
    for (int i = 0; i < 40; ++i) {
        Game g = random_union_game(rng, 3, 3, false);
        auto targets = enumerate_targets(g);
        for (const auto& a : targets)
            for (const auto& b : targets) {
                auto sa = solve_membership(g, a);
                auto sb = solve_membership(g, b);
                if (!sa || !sb) {
                    r.expect(false, "target without a strategy in game " + std::to_string(i));
                    continue;
                }
                Strategy u = union_strategies(g, {*sa, *sb});
                VertexSet want;
                std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(want));
                r.expect(is_winning_strategy(g, u.vertices) && strategy_target(g, u.vertices) == want,
                         "union of strategies in game " + std::to_string(i));
            }
    }
}

Team team_of(const Structure& st, std::initializer_list<const char*> names)
{
    Team t(std::vector<std::string>{"x"});
    for (auto n : names)
        t.insert(Tuple{st.element(n)});
    return t;
}

void evil(Runner& r, const VerifyOptions&, Rng&)
{
    struct Case {
        const char* structure;
        const char* formula;
        const char* label;
    };
    for (const Case& c : {Case{kEvilA, kEvilPhi, "phi"}, Case{kEvilB, kEvilPsi, "psi"}}) {
        Structure st = parse_structure(c.structure);
        Formula f = parse_formula(c.formula);
        std::string l = c.label;
        r.expect(eval_team(st, team_of(st, {"a", "b"}), f), l + " holds on {a,b}");
        r.expect(eval_team(st, team_of(st, {"b", "c"}), f), l + " holds on {b,c}");
        r.expect(!eval_team(st, team_of(st, {"a", "b", "c"}), f), l + " fails on {a,b,c}");
        r.expect(!check_x_myopic(f, {"x"}).ok, l + " is not x-myopic");
    }
}

void graph_example(Runner& r, const VerifyOptions&, Rng&)
{
    Structure st = parse_structure("universe: a b c\nE: (a,b) (a,c)\n");
    Formula mu = parse_formula(kClosedUnderE);
    r.expect(check_x_myopic(mu, {"x"}).ok, "formula is x-myopic");
    for (const auto& t : all_teams(st, {"x"})) {
        auto v = project_team(t, {"x"});
        bool want = !v.contains({0}) || (v.contains({1}) && v.contains({2}));
        r.expect(eval_team(st, t, mu) == want, "team " + print_team(t, st));
    }
}

void team_companion(Runner& r, const VerifyOptions& o, Rng& rng)
{
    for (const char* text : kIncExcCorpus) {
        Formula phi = parse_formula(text);
        std::vector<std::string> anchor = phi->free;
        Formula mu = team_myopic_companion(phi, anchor);
        auto check = check_x_myopic(mu, anchor);
        r.expect(check.ok, std::string("companion of ") + text + ": " + check.diagnostic);
        int cap = anchor.size() >= 2 ? std::min(o.max_universe, 2) : std::min(o.max_universe, 3);
        for (int n = 1; n <= cap; ++n) {
            Structure st = random_structure(rng, n);
            auto closure = union_closure(satisfying_teams(st, phi, anchor), anchor);
            r.expect(team_family(satisfying_teams(st, mu, anchor), anchor) == team_family(closure, anchor),
                     std::string(text) + " on a structure of size " + std::to_string(n));
            r.expect(check_union_closed_empirical(st, mu, anchor).closed,
                     std::string("companion of ") + text + " is not union closed");
        }
    }
}

void templates(Runner& r, const VerifyOptions&, Rng& rng)
{
    Formula phi = template_phi_win();
    for (int i = 0; i < 10; ++i) {
        Game g = random_game(rng, 7, 0.1);
        Structure st = game_as_structure(g);
        CompiledFormula c(st, phi, {}, {{"W", 1}});
        for (std::size_t mask = 0; mask < (std::size_t{1} << g.size()); ++mask) {
            VertexSet w;
            Relation wr(1);
            for (std::size_t v = 0; v < g.size(); ++v)
                if (mask >> v & 1) {
                    w.push_back(static_cast<Vertex>(v));
                    wr.insert({static_cast<Element>(v)});
                }
            RelationTable table = relation_table(wr, st.size());
            c.set_param(0, &table);
            r.expect(c.eval(nullptr) == is_winning_strategy(g, w), "phi_win in game " + std::to_string(i));
        }
    }
    EvalBudget budget;
    budget.max_choice_universe = 6;
    Formula win = template_psi_win();
    Formula target = template_psi_target();
    Formula theta = template_theta_target();
    for (int i = 0; i < 6; ++i) {
        bool union_game = i % 2 == 1;
        Game g = union_game ? random_union_game(rng, 2, 1, false) : random_game(rng, 4, 0.1);
        Structure st = game_as_structure(g);
        auto targets = enumerate_targets(g);
        std::set<VertexSet> realizable(targets.begin(), targets.end());
        for (const auto& t : all_teams(st, {"y"})) {
            if (t.empty())
                continue;
            VertexSet w;
            for (const auto& row : t.rows())
                w.push_back(row[0]);
            try {
                r.expect(eval_team(st, t, win, budget) == is_winning_strategy(g, w),
                         "psi_win in game " + std::to_string(i));
                Team z = reorder(Team(std::vector<std::string>{"z"}, t.rows()), {"z"});
                r.expect(eval_team(st, z, target, budget) == (realizable.count(w) > 0),
                         "psi_target in game " + std::to_string(i));
                if (union_game) {
                    Team x(std::vector<std::string>{"x"}, t.rows());
                    r.expect(eval_team(st, x, theta, budget) == (realizable.count(w) > 0),
                             "theta_T in game " + std::to_string(i));
                }
            } catch (const ResourceError&) {
                ++r.out.skipped;
            }
        }
    }
}

void codec(Runner& r, const VerifyOptions& o, Rng& rng)
{
    int m = std::min(o.max_universe, 3);
    if (m < 2)
        m = 2;
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i)
        names.emplace_back(1, static_cast<char>('a' + i));
    Structure st(names);
    GameCodecLayout layout(2);
    for (int i = 0; i < 8; ++i) {
        Game g = random_union_game(rng, 2, 1, true);
        if (static_cast<std::size_t>(m * m) < g.size()) {
            ++r.out.skipped;
            continue;
        }
        Team x = encode_game_in_team(g, layout, st);
        auto d = decode_game_from_team(x, layout, st);
        auto codes = default_codes(g, 2, st);
        std::vector<std::string> renamed;
        for (const auto& c : codes)
            renamed.push_back(code_name(c, st));
        r.expect(d.game && *d.game == rename_vertices(g, renamed), "codec round trip of game " + std::to_string(i));
        // Attach target columns cycling through each realizable target set.
        auto dom = layout.variables();
        dom.push_back("z1");
        dom.push_back("z2");
        std::vector<Team> sat;
        for (const auto& target : enumerate_targets(g)) {
            if (target.empty())
                continue;
            Team t(dom);
            std::size_t j = 0;
            for (const auto& row : x.rows()) {
                Tuple full = row;
                const Tuple& code = codes[static_cast<std::size_t>(target[j++ % target.size()])];
                full.insert(full.end(), code.begin(), code.end());
                t.insert(full);
            }
            r.expect(eval_ugame_atom(st, t, 2, {"z1", "z2"}), "atom on a realizable target set");
            sat.push_back(t);
        }
        for (std::size_t a = 0; a < sat.size(); ++a)
            for (std::size_t b = a + 1; b < sat.size(); ++b)
                r.expect(eval_ugame_atom(st, team_union(sat[a], sat[b]), 2, {"z1", "z2"}),
                         "atom on a union of satisfying teams");
    }
}

void exclusion_game(Runner& r, const VerifyOptions& o, Rng& rng)
{
    for (const char* text : kExclusionCorpus) {
        Formula phi = parse_formula(text);
        std::vector<std::string> dom{"x", "y"};
        for (int n = 1; n <= std::min(o.max_universe, 2); ++n) {
            Structure st = random_structure(rng, n);
            Game g = mc_game_exclusion(st, phi, dom);
            r.expect(validate_exclusion_game(g).ok, std::string(text) + ": not an exclusion game");
            std::set<std::set<Tuple>> fam;
            for (const auto& t : enumerate_targets(g))
                fam.insert(reorder(team_of_targets(g, t, dom), dom).rows());
            r.expect(fam == team_family(satisfying_teams(st, phi, dom), dom),
                     std::string(text) + " on a structure of size " + std::to_string(n));
            bool down = true;
            for (const auto& s : fam)
                for (const auto& row : s) {
                    auto smaller = s;
                    smaller.erase(row);
                    down &= fam.count(smaller) > 0;
                }
            r.expect(down, std::string(text) + ": targets not downward closed");
        }
    }
}

void safety(Runner& r, const VerifyOptions&, Rng& rng)
{
    for (int i = 0; i < 20; ++i) {
        Game g = random_game(rng, 8, 0);
        Game inc;
        for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v)
            inc.add_vertex(g.name(v), g.owner(v));
        for (auto [u, v] : g.edges())
            inc.add_edge(u, v);
        for (Vertex t : g.targets())
            inc.add_target(t);
        SafetyGame s = to_safety_game(inc);
        r.expect(i_traps(s) == enumerate_targets(inc), "I-traps of game " + std::to_string(i));
        r.expect(from_safety_game(s) == inc, "round trip of game " + std::to_string(i));
    }
}

void parser(Runner& r, const VerifyOptions&, Rng&)
{
    auto fo = [&](const char* text) {
        Formula f = parse_formula(text);
        r.expect(equal(parse_formula(print(f)), f), text);
    };
    for (const char* t : kIncExcCorpus)
        fo(t);
    for (const char* t : {kEvilPhi, kEvilPsi, kClosedUnderE})
        fo(t);
    for (const char* t : kSoCorpus) {
        SOFormula f = parse_so_formula(t);
        r.expect(equal(parse_so_formula(print_so(f)), f), t);
    }
    for (const char* bad : {"P(x) &", "E x P(x)", "inc(x, y; z)", "P(x) $ Q(x)"}) {
        bool positioned = false;
        try {
            parse_formula(bad);
        } catch (const ParseError& e) {
            positioned = e.line() >= 1 && e.column() >= 1;
        }
        r.expect(positioned, std::string("malformed input accepted: ") + bad);
    }
}

const std::vector<Suite>& suites()
{
    static const std::vector<Suite> all = {
        {{"eso-game", "targets of the model-checking game of a sigma-1-1 formula are its satisfying relations",
          "exhaustive enumeration of candidate relations"},
         eso_game},
        {{"np-reduction", "full-target membership in the CNF game decides satisfiability",
          "truth-table satisfiability"},
         np_reduction},
        {{"ptime", "games without exclusion edges are solved by a greatest fixpoint",
          "brute-force search over vertex subsets"},
         ptime},
        {{"myopic-companion", "the myopic companion defines the union closure of the input family",
          "union closure of the exhaustively enumerated relation family"},
         myopic_companion},
        {{"union-game", "union games of myopic formulas are valid and their targets are the satisfying relations",
          "exhaustive enumeration of candidate relations"},
         union_game},
        {{"strategy-union", "unions of winning strategies in union games are winning",
          "winning-strategy checker and target comparison"},
         strategy_union},
        {{"evil-disjunctions", "disjunctions of x-myopic formulas need not be union closed",
          "stated truth values on the two example structures"},
         evil},
        {{"graph-example", "the successor-closure formula defines exactly the E-closed teams",
          "direct closure predicate on all teams"},
         graph_example},
        {{"team-companion", "the team-level companion is x-myopic, union closed and defines the union closure",
          "union closure of the exhaustively enumerated team family"},
         team_companion},
        {{"templates", "phi_win, psi_win, psi_target and theta_T agree with the game-side predicates",
          "winning-strategy checker and target enumeration"},
         templates},
        {{"codec", "games encoded in teams decode to themselves and the game atom is union closed",
          "the renamed input game and realizable target sets"},
         codec},
        {{"exclusion-game", "targets of exclusion games are the satisfying teams and are downward closed",
          "exhaustive enumeration of teams"},
         exclusion_game},
        {{"safety", "inclusion games and safety games have the same target families",
          "target enumeration of the inclusion game"},
         safety},
        {{"parser", "printing then parsing is the identity and malformed input is located",
          "structural equality of syntax trees"},
         parser},
    };
    return all;
}

} // namespace

std::vector<SuiteInfo> verify_suites()
{
    std::vector<SuiteInfo> out;
    for (const auto& s : suites())
        out.push_back(s.info);
    return out;
}

SuiteOutcome run_suite(const std::string& name, const VerifyOptions& options)
{
    for (const auto& s : suites()) {
        if (s.info.name != name)
            continue;
        SuiteOutcome out;
        out.info = s.info;
        Runner r{out};
        Rng rng(options.seed);
        s.run(r, options, rng);
        return out;
    }
    throw InvalidInput("unknown suite " + name);
}

} // namespace teamlogic::cli
