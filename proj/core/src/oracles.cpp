#include "teamlogic/semantics.hpp"
#include "teamlogic/transforms.hpp"

#include <algorithm>
#include <functional>
#include <memory>

namespace teamlogic {

std::vector<Team> satisfying_teams(const Structure& structure, const Formula& phi,
                                   const std::vector<std::string>& domain, const EvalBudget& budget)
{
    for (const auto& v : phi->free)
        if (std::find(domain.begin(), domain.end(), v) == domain.end())
            throw DomainError("free variable " + v + " is not in the domain");
    std::size_t rows = 1;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        rows *= structure.size();
        if (rows > budget.max_team_rows)
            throw ResourceError("enumerating teams over more than " + std::to_string(budget.max_team_rows) +
                                " candidate rows exceeds the budget");
    }
    TeamEvaluator ev(structure, phi, budget);
    std::vector<Team> out;
    for (auto& t : all_teams(structure, domain))
        if (ev.eval(t))
            out.push_back(std::move(t));
    return out;
}

UnionClosureVerdict check_union_closed_empirical(const Structure& structure, const Formula& phi,
                                                 const std::vector<std::string>& domain, const EvalBudget& budget)
{
    auto family = satisfying_teams(structure, phi, domain, budget);
    std::set<std::set<Tuple>> members;
    for (const auto& t : family)
        members.insert(t.rows());
    UnionClosureVerdict v;
    v.family_size = family.size();
    v.note = "binary unions checked; for a finite family this implies closure under arbitrary unions";
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            auto u = family[i].rows();
            u.insert(family[j].rows().begin(), family[j].rows().end());
            if (!members.count(u)) {
                v.closed = false;
                v.counterexample = std::make_pair(family[i], family[j]);
                return v;
            }
        }
    return v;
}

namespace {

// Labels refer to the negation normal form of φ with bound variables renamed apart from dom(X).
Formula labelling_form(const Team& team, const Formula& phi)
{
    const auto& d = team.domain();
    return rename_bound_apart(to_nnf(phi), std::set<std::string>(d.begin(), d.end()));
}

class Labeller {
public:
    Labeller(const Structure& st, const EvalBudget& budget) : st_(st), budget_(budget) {}

    bool holds(const Formula& f, const Team& x)
    {
        auto it = evaluators_.find(f.get());
        if (it == evaluators_.end())
            it = evaluators_.emplace(f.get(), std::make_unique<TeamEvaluator>(st_, f, budget_)).first;
        return it->second->eval(x);
    }

    // Precondition: holds(f, x).
    void label(const Formula& f, const std::string& id, const Team& x, Labelling& out)
    {
        out[id] = x;
        switch (f->kind) {
        case Kind::And:
            label(f->a, child_id(id, 0), x, out);
            label(f->b, child_id(id, 1), x, out);
            return;
        case Kind::Or: {
            auto [y, z] = split(f, x);
            label(f->a, child_id(id, 0), y, out);
            label(f->b, child_id(id, 1), z, out);
            return;
        }
        case Kind::Forall:
            label(f->a, child_id(id, 0), extend_universal(x, f->name, st_), out);
            return;
        case Kind::Exists:
            label(f->a, child_id(id, 0), choose(f, x), out);
            return;
        default:
            return;
        }
    }

private:
    const Structure& st_;
    const EvalBudget& budget_;
    std::map<const Node*, std::unique_ptr<TeamEvaluator>> evaluators_;

    std::pair<Team, Team> split(const Formula& f, const Team& x)
    {
        std::vector<Tuple> rows(x.rows().begin(), x.rows().end());
        // Quick candidates: everything on one side, or the classical split of a flat disjunct.
        std::vector<std::pair<Team, Team>> quick{{x, Team(x.domain())}, {Team(x.domain()), x}, {x, x}};
        for (int side = 0; side < 2; ++side) {
            const Formula& flat = side == 0 ? f->a : f->b;
            if (!flat->flat())
                continue;
            Team in(x.domain()), out(x.domain());
            for (const auto& r : rows)
                (eval_classical(st_, x.assignment(r), flat) ? in : out).insert(r);
            quick.push_back(side == 0 ? std::make_pair(in, out) : std::make_pair(out, in));
        }
        for (const auto& [y, z] : quick)
            if (holds(f->a, y) && holds(f->b, z))
                return {y, z};
        if (rows.size() > budget_.max_split_rows)
            throw ResourceError("labelling a disjunction over " + std::to_string(rows.size()) + " rows exceeds the budget");
        std::vector<int> pick(rows.size(), 0);
        while (true) {
            Team y(x.domain()), z(x.domain());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (pick[i] != 1)
                    y.insert(rows[i]);
                if (pick[i] != 0)
                    z.insert(rows[i]);
            }
            if (holds(f->a, y) && holds(f->b, z))
                return {y, z};
            std::size_t i = 0;
            while (i < rows.size() && ++pick[i] == 3)
                pick[i++] = 0;
            if (i == rows.size())
                break;
        }
        throw Error("no split found for a satisfied disjunction");
    }

    // Choice functions depending only on the values of free(∃x φ) suffice.
    Team choose(const Formula& f, const Team& x)
    {
        const auto& free = f->free;
        std::map<Tuple, std::vector<Tuple>> groups;
        std::vector<int> idx;
        for (const auto& v : free)
            idx.push_back(x.index_of(v));
        for (const auto& r : x.rows()) {
            Tuple key;
            for (int i : idx)
                key.push_back(r[static_cast<std::size_t>(i)]);
            groups[key].push_back(r);
        }
        std::vector<Tuple> keys;
        for (const auto& [k, rows] : groups)
            keys.push_back(k);
        const std::size_t m = st_.size();
        auto build = [&](const std::vector<std::uint32_t>& masks) {
            std::map<Tuple, std::set<Element>> choice;
            for (std::size_t g = 0; g < keys.size(); ++g) {
                std::set<Element> img;
                for (std::size_t a = 0; a < m; ++a)
                    if (masks[g] >> a & 1)
                        img.insert(static_cast<Element>(a));
                for (const auto& r : groups[keys[g]])
                    choice[r] = img;
            }
            return extend_choice(x, f->name, choice);
        };
        std::vector<std::uint32_t> masks(keys.size(), (std::uint32_t{1} << m) - 1);
        Team full = build(masks);
        if (holds(f->a, full))
            return full;
        if (m > budget_.max_choice_universe)
            throw ResourceError("labelling a quantifier over a universe of " + std::to_string(m) +
                                " elements exceeds the budget");
        double combos = 1;
        for (std::size_t g = 0; g < keys.size(); ++g)
            combos *= static_cast<double>((std::uint32_t{1} << m) - 1);
        if (combos > static_cast<double>(budget_.max_steps))
            throw ResourceError("labelling a quantifier needs too many choice functions");
        std::fill(masks.begin(), masks.end(), 1u);
        while (true) {
            Team t = build(masks);
            if (holds(f->a, t))
                return t;
            std::size_t g = 0;
            while (g < masks.size() && ++masks[g] == (std::uint32_t{1} << m))
                masks[g++] = 1;
            if (g == masks.size())
                break;
        }
        throw Error("no choice function found for a satisfied quantifier");
    }
};

// Every row of `child` agrees with a row of `parent` outside `var`, and every parent row has an extension.
bool is_extension(const Team& parent, const Team& child, const std::string& var)
{
    auto dom = parent.domain();
    dom.push_back(var);
    if (child.domain().size() != dom.size())
        return false;
    for (const auto& v : dom)
        if (!child.has(v))
            return false;
    Team c = reorder(child, dom);
    std::set<Tuple> seen;
    for (const auto& r : c.rows()) {
        Tuple p(r.begin(), r.end() - 1);
        if (!parent.rows().count(p))
            return false;
        seen.insert(std::move(p));
    }
    return seen.size() == parent.size();
}

} // namespace

std::optional<Labelling> find_witness_labelling(const Structure& structure, const Team& team, const Formula& phi,
                                                const EvalBudget& budget)
{
    Formula f = labelling_form(team, phi);
    Labeller l(structure, budget);
    if (!l.holds(f, team))
        return std::nullopt;
    Labelling out;
    l.label(f, "r", team, out);
    return out;
}

CheckResult check_labelling(const Structure& structure, const Team& team, const Formula& phi,
                            const Labelling& labelling, const EvalBudget& budget)
{
    Formula root = labelling_form(team, phi);
    std::function<CheckResult(const Formula&, const std::string&)> walk = [&](const Formula& f,
                                                                               const std::string& id) -> CheckResult {
        auto it = labelling.find(id);
        if (it == labelling.end())
            return {false, "node " + id + " has no label"};
        const Team& x = it->second;
        auto label_of = [&](int i) -> const Team* {
            auto c = labelling.find(child_id(id, i));
            return c == labelling.end() ? nullptr : &c->second;
        };
        switch (f->kind) {
        case Kind::And: {
            const Team* a = label_of(0);
            const Team* b = label_of(1);
            if (!a || !b || *a != x || *b != x)
                return {false, "conjunction " + id + ": children must carry the parent label"};
            break;
        }
        case Kind::Or: {
            const Team* a = label_of(0);
            const Team* b = label_of(1);
            if (!a || !b || a->domain().size() != x.domain().size() || b->domain().size() != x.domain().size() ||
                team_union(*a, *b) != x)
                return {false, "disjunction " + id + ": children labels must cover the parent label"};
            break;
        }
        case Kind::Forall: {
            const Team* a = label_of(0);
            if (!a || x.has(f->name) || *a != extend_universal(x, f->name, structure))
                return {false, "universal quantifier " + id + ": child label must be X[" + f->name + " -> A]"};
            break;
        }
        case Kind::Exists: {
            const Team* a = label_of(0);
            if (!a || x.has(f->name) || !is_extension(x, *a, f->name))
                return {false, "existential quantifier " + id + ": child label must be X[" + f->name + " -> F]"};
            break;
        }
        default:
            if (!eval_team(structure, x, f, budget))
                return {false, "literal or atom " + id + " (" + print(f) + ") fails on its label"};
            return {};
        }
        auto r = walk(f->a, child_id(id, 0));
        if (!r.ok || !f->b)
            return r;
        return walk(f->b, child_id(id, 1));
    };
    auto root_label = labelling.find("r");
    if (root_label == labelling.end() || root_label->second != team)
        return {false, "root label differs from the team"};
    return walk(root, "r");
}

bool eval_normalform_myopic(const Structure& structure, const Team& team, const Formula& phi,
                            const std::vector<std::string>& anchor, const EvalBudget& budget)
{
    auto shape_error = [&](const std::string& why) {
        return InvalidInput("expected E s. (s inc x & psi) with x the anchor: " + why);
    };
    auto check = check_x_myopic(phi, anchor);
    if (!check.ok)
        throw shape_error(check.diagnostic);
    std::vector<std::string> s;
    Formula body = phi;
    while (body->kind == Kind::Exists && s.size() < anchor.size()) {
        s.push_back(body->name);
        body = body->a;
    }
    if (s.size() != anchor.size() || body->kind != Kind::And || body->a->kind != Kind::Inc || body->a->left != s ||
        body->a->right != anchor)
        throw shape_error("prefix does not match");
    Formula psi = body->b;
    for (const auto& [id, node] : subformula_multiset(psi))
        if (node->kind == Kind::Inc && node->right == anchor)
            throw shape_error("psi contains an inclusion into the anchor at " + id);
    Formula unguarded = unguard_atoms(psi, anchor);
    for (const auto& v : anchor)
        if (!team.has(v))
            throw DomainError("anchor variable " + v + " is not in the team domain");
    if (team.empty())
        return true;
    auto values = project_team(team, anchor).tuples();
    std::vector<Tuple> k(values.begin(), values.end());
    if (k.size() > 20)
        throw ResourceError("too many anchor values for the componentwise search");
    std::vector<std::string> dom = anchor;
    dom.insert(dom.end(), s.begin(), s.end());
    TeamEvaluator ev(structure, unguarded, budget);
    // Components are independent: component ā needs some non-empty B ⊆ X(x̄) with {ā} × B ⊨ ψ′.
    for (const auto& a : k) {
        bool found = false;
        for (std::size_t mask = 1; mask < (std::size_t{1} << k.size()) && !found; ++mask) {
            Team c(dom);
            for (std::size_t i = 0; i < k.size(); ++i)
                if (mask >> i & 1) {
                    Tuple row = a;
                    row.insert(row.end(), k[i].begin(), k[i].end());
                    c.insert(std::move(row));
                }
            found = ev.eval(c);
        }
        if (!found)
            return false;
    }
    return true;
}

std::vector<Team> union_closure(const std::vector<Team>& family, const std::vector<std::string>& domain)
{
    std::set<std::set<Tuple>> closed{{}};
    for (const auto& t : family) {
        Team r = reorder(t, domain);
        std::vector<std::set<Tuple>> add;
        for (const auto& c : closed) {
            auto u = c;
            u.insert(r.rows().begin(), r.rows().end());
            add.push_back(std::move(u));
        }
        closed.insert(add.begin(), add.end());
    }
    std::vector<Team> out;
    for (const auto& rows : closed)
        out.emplace_back(domain, rows);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Relation> union_closure(const std::vector<Relation>& family, int arity)
{
    std::set<std::set<Tuple>> closed{{}};
    for (const auto& rel : family) {
        if (rel.arity() != arity)
            throw DomainError("relation family with mixed arities");
        std::vector<std::set<Tuple>> add;
        for (const auto& c : closed) {
            auto u = c;
            u.insert(rel.tuples().begin(), rel.tuples().end());
            add.push_back(std::move(u));
        }
        closed.insert(add.begin(), add.end());
    }
    std::vector<Relation> out;
    for (const auto& t : closed)
        out.emplace_back(arity, t);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace teamlogic
