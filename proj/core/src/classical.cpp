#include "teamlogic/classical.hpp"
#include "teamlogic/semantics.hpp"

namespace teamlogic {

RelationTable relation_table(const Relation& rel, std::size_t m)
{
    std::size_t size = 1;
    for (int i = 0; i < rel.arity(); ++i)
        size *= m;
    RelationTable t(size, 0);
    for (const auto& tup : rel.tuples()) {
        std::size_t c = 0;
        for (Element e : tup)
            c = c * m + static_cast<std::size_t>(e);
        t[c] = 1;
    }
    return t;
}

CompiledFormula::CompiledFormula(const Structure& st, const Formula& f, const std::vector<std::string>& inputs,
                                 const std::vector<std::pair<std::string, int>>& params)
    : m_(st.size()), n_inputs_(inputs.size())
{
    std::map<std::string, int> scope;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        scope[inputs[i]] = static_cast<int>(i);
    n_slots_ = inputs.size();
    params_.assign(params.size(), nullptr);
    for (const auto& [name, arity] : params) {
        std::size_t s = 1;
        for (int i = 0; i < arity; ++i)
            s *= m_;
        param_sizes_.push_back(s);
    }
    std::map<std::string, int> rel_index;
    root_ = compile(f, scope, st, params, rel_index);
}

int CompiledFormula::compile(const Formula& f, std::map<std::string, int>& scope, const Structure& st,
                             const std::vector<std::pair<std::string, int>>& params,
                             std::map<std::string, int>& rel_index)
{
    CNode n;
    n.kind = f->kind;
    n.positive = f->positive;
    auto slot = [&](const std::string& v) {
        auto it = scope.find(v);
        if (it == scope.end())
            throw DomainError("variable " + v + " is not assigned");
        return it->second;
    };
    switch (f->kind) {
    case Kind::Rel: {
        for (const auto& t : f->left)
            n.slots.push_back(slot(t));
        bool found = false;
        for (std::size_t i = 0; i < params.size(); ++i)
            if (params[i].first == f->name) {
                if (params[i].second != static_cast<int>(f->left.size()))
                    throw DomainError("relation " + f->name + " used with the wrong arity");
                n.param = true;
                n.rel = static_cast<int>(i);
                found = true;
                break;
            }
        if (!found) {
            const Relation* r = st.relation(f->name);
            if (!r)
                throw DomainError("unknown relation symbol " + f->name);
            if (r->arity() != static_cast<int>(f->left.size()))
                throw DomainError("relation " + f->name + " has arity " + std::to_string(r->arity()) +
                                  ", used with " + std::to_string(f->left.size()) + " terms");
            auto it = rel_index.find(f->name);
            if (it == rel_index.end()) {
                it = rel_index.emplace(f->name, static_cast<int>(tables_.size())).first;
                tables_.push_back(relation_table(*r, m_));
            }
            n.rel = it->second;
        }
        break;
    }
    case Kind::Eq:
        n.slots = {slot(f->left[0]), slot(f->right[0])};
        break;
    case Kind::And:
    case Kind::Or:
        n.a = compile(f->a, scope, st, params, rel_index);
        n.b = compile(f->b, scope, st, params, rel_index);
        break;
    case Kind::Not:
        n.a = compile(f->a, scope, st, params, rel_index);
        break;
    case Kind::Exists:
    case Kind::Forall: {
        int s = static_cast<int>(n_slots_++);
        n.var = s;
        auto it = scope.find(f->name);
        const bool shadowing = it != scope.end();
        const int saved = shadowing ? it->second : -1;
        scope[f->name] = s;
        n.a = compile(f->a, scope, st, params, rel_index);
        if (shadowing)
            scope[f->name] = saved;
        else
            scope.erase(f->name);
        break;
    }
    default:
        throw InvalidInput("classical evaluation does not support dependency atoms or second-order quantifiers: " +
                           print(f));
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
}

std::size_t CompiledFormula::code(const CNode& n, const std::vector<Element>& env) const
{
    std::size_t c = 0;
    for (int s : n.slots)
        c = c * m_ + static_cast<std::size_t>(env[static_cast<std::size_t>(s)]);
    return c;
}

bool CompiledFormula::ev(int i, std::vector<Element>& env) const
{
    const CNode& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
    case Kind::Rel: {
        const RelationTable& t = n.param ? *params_[static_cast<std::size_t>(n.rel)] : tables_[static_cast<std::size_t>(n.rel)];
        return (t[code(n, env)] == 1) == n.positive;
    }
    case Kind::Eq:
        return (env[static_cast<std::size_t>(n.slots[0])] == env[static_cast<std::size_t>(n.slots[1])]) == n.positive;
    case Kind::And:
        return ev(n.a, env) && ev(n.b, env);
    case Kind::Or:
        return ev(n.a, env) || ev(n.b, env);
    case Kind::Not:
        return !ev(n.a, env);
    case Kind::Exists:
        for (std::size_t a = 0; a < m_; ++a) {
            env[static_cast<std::size_t>(n.var)] = static_cast<Element>(a);
            if (ev(n.a, env))
                return true;
        }
        return false;
    case Kind::Forall:
        for (std::size_t a = 0; a < m_; ++a) {
            env[static_cast<std::size_t>(n.var)] = static_cast<Element>(a);
            if (!ev(n.a, env))
                return false;
        }
        return true;
    default:
        return false;
    }
}

int CompiledFormula::ev3(int i, std::vector<Element>& env) const
{
    const CNode& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
    case Kind::Rel: {
        const RelationTable& t = n.param ? *params_[static_cast<std::size_t>(n.rel)] : tables_[static_cast<std::size_t>(n.rel)];
        int v = t[code(n, env)];
        if (v == 2)
            return 2;
        return (v == 1) == n.positive ? 1 : 0;
    }
    case Kind::Eq:
        return (env[static_cast<std::size_t>(n.slots[0])] == env[static_cast<std::size_t>(n.slots[1])]) == n.positive;
    case Kind::And: {
        int x = ev3(n.a, env);
        if (x == 0)
            return 0;
        int y = ev3(n.b, env);
        if (y == 0)
            return 0;
        return x == 1 && y == 1 ? 1 : 2;
    }
    case Kind::Or: {
        int x = ev3(n.a, env);
        if (x == 1)
            return 1;
        int y = ev3(n.b, env);
        if (y == 1)
            return 1;
        return x == 0 && y == 0 ? 0 : 2;
    }
    case Kind::Not: {
        int x = ev3(n.a, env);
        return x == 2 ? 2 : 1 - x;
    }
    case Kind::Exists: {
        int best = 0;
        for (std::size_t a = 0; a < m_; ++a) {
            env[static_cast<std::size_t>(n.var)] = static_cast<Element>(a);
            int x = ev3(n.a, env);
            if (x == 1)
                return 1;
            if (x == 2)
                best = 2;
        }
        return best;
    }
    case Kind::Forall: {
        int worst = 1;
        for (std::size_t a = 0; a < m_; ++a) {
            env[static_cast<std::size_t>(n.var)] = static_cast<Element>(a);
            int x = ev3(n.a, env);
            if (x == 0)
                return 0;
            if (x == 2)
                worst = 2;
        }
        return worst;
    }
    default:
        return 0;
    }
}

bool CompiledFormula::eval(const Element* inputs) const
{
    std::vector<Element> env(n_slots_, 0);
    for (std::size_t i = 0; i < n_inputs_; ++i)
        env[i] = inputs[i];
    return ev(root_, env);
}

int CompiledFormula::eval3(const Element* inputs) const
{
    std::vector<Element> env(n_slots_, 0);
    for (std::size_t i = 0; i < n_inputs_; ++i)
        env[i] = inputs[i];
    return ev3(root_, env);
}

bool eval_classical(const Structure& structure, const Assignment& s, const Formula& f)
{
    if (!f->flat())
        throw InvalidInput("classical evaluation needs a formula without dependency atoms: " + print(f));
    Tuple in;
    for (const auto& v : f->free) {
        auto it = s.find(v);
        if (it == s.end())
            throw DomainError("variable " + v + " is not assigned");
        if (it->second < 0 || static_cast<std::size_t>(it->second) >= structure.size())
            throw DomainError("value of " + v + " is outside the universe");
        in.push_back(it->second);
    }
    CompiledFormula c(structure, f, f->free);
    return c.eval(in.data());
}

namespace {

// ∃R̄ matrix with the given inputs, by depth-first search over partial relations.
bool search_relations(CompiledFormula& c, std::vector<RelationTable>& tables, std::size_t first_quantified,
                      const Tuple& inputs)
{
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = first_quantified; r < tables.size(); ++r) {
        std::fill(tables[r].begin(), tables[r].end(), 2);
        for (std::size_t i = 0; i < tables[r].size(); ++i)
            cells.emplace_back(r, i);
    }
    std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
        int v = c.eval3(inputs.data());
        if (v == 1)
            return true;
        if (v == 0 || k == cells.size())
            return false;
        auto [r, i] = cells[k];
        for (std::uint8_t bit : {std::uint8_t{1}, std::uint8_t{0}}) {
            tables[r][i] = bit;
            if (dfs(k + 1))
                return true;
        }
        tables[r][i] = 2;
        return false;
    };
    return dfs(0);
}

} // namespace

bool eval_so(const Structure& structure, const Relation& free_relation, const SOFormula& phi, const EvalBudget& budget)
{
    if (free_relation.arity() != phi.free_arity)
        throw DomainError("free relation has arity " + std::to_string(free_relation.arity()) + ", expected " +
                          std::to_string(phi.free_arity));
    std::vector<std::pair<std::string, int>> params{{phi.free_relation, phi.free_arity}};
    params.insert(params.end(), phi.quantified.begin(), phi.quantified.end());
    CompiledFormula c(structure, phi.matrix, phi.guard, params);
    std::vector<RelationTable> tables;
    tables.push_back(relation_table(free_relation, structure.size()));
    std::size_t bits = 0;
    for (std::size_t i = 1; i < params.size(); ++i) {
        tables.emplace_back(c.param_size(i), 2);
        bits += c.param_size(i);
    }
    if (bits > budget.max_so_bits)
        throw ResourceError("second-order search over " + std::to_string(bits) + " relation cells exceeds the budget");
    for (std::size_t i = 0; i < tables.size(); ++i)
        c.set_param(i, &tables[i]);
    if (phi.guard.empty())
        return search_relations(c, tables, 1, {});
    for (const auto& a : free_relation.tuples())
        if (!search_relations(c, tables, 1, a))
            return false;
    return true;
}

std::vector<Relation> satisfying_relations(const Structure& structure, const SOFormula& phi, const EvalBudget& budget)
{
    auto tuples = all_tuples(structure.size(), static_cast<std::size_t>(phi.free_arity));
    if (tuples.size() > budget.max_relation_tuples)
        throw ResourceError("enumerating relations over " + std::to_string(tuples.size()) +
                            " tuples exceeds the budget");
    std::vector<Relation> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << tuples.size()); ++mask) {
        Relation r(phi.free_arity);
        for (std::size_t i = 0; i < tuples.size(); ++i)
            if (mask >> i & 1)
                r.insert(tuples[i]);
        if (eval_so(structure, r, phi, budget))
            out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace teamlogic
