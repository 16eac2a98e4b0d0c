#include "teamlogic/formulas.hpp"

#include <algorithm>
#include <functional>

namespace teamlogic {

namespace {

using Names = std::vector<std::string>;

Names sorted_unique(Names v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Names set_union(const Names& x, const Names& y)
{
    Names out;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

Names set_minus(const Names& x, const std::string& v)
{
    Names out;
    for (const auto& s : x)
        if (s != v)
            out.push_back(s);
    return out;
}

Names set_intersection(const Names& x, const Names& y)
{
    Names out;
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
    return out;
}

void combine_guards(Node& n, const Node& c)
{
    if (c.guards_all)
        return;
    if (n.guards_all) {
        n.guards = c.guards;
        n.guards_all = false;
    } else {
        n.guards = set_intersection(n.guards, c.guards);
    }
}

void inherit(Node& n, const Node& c)
{
    n.team_atoms |= c.team_atoms;
    n.has_inc |= c.has_inc;
    n.has_exc |= c.has_exc;
    n.has_dep |= c.has_dep;
    n.has_indep |= c.has_indep;
    n.has_ugame |= c.has_ugame;
    n.has_not_over_atom |= c.has_not_over_atom;
    n.has_so |= c.has_so;
    n.bound = set_union(n.bound, c.bound);
    combine_guards(n, c);
}

Names matching_positions(const Names& l, const Names& r)
{
    Names g;
    for (std::size_t i = 0; i < l.size() && i < r.size(); ++i)
        if (l[i] == r[i])
            g.push_back(l[i]);
    return sorted_unique(g);
}

std::shared_ptr<Node> make(Kind k)
{
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

void check_names(const Names& v, const char* what)
{
    for (const auto& s : v)
        if (s.empty())
            throw DomainError(std::string("empty variable name in ") + what);
}

Formula finish_atom(std::shared_ptr<Node> n)
{
    Names vars = n->left;
    vars.insert(vars.end(), n->right.begin(), n->right.end());
    n->free = sorted_unique(vars);
    return n;
}

} // namespace

Formula rel(const std::string& symbol, std::vector<std::string> terms, bool positive)
{
    if (terms.empty())
        throw DomainError("relational atom " + symbol + " needs at least one term");
    check_names(terms, "relational atom");
    auto n = make(Kind::Rel);
    n->name = symbol;
    n->left = std::move(terms);
    n->positive = positive;
    return finish_atom(n);
}

Formula eq(const std::string& t1, const std::string& t2, bool positive)
{
    auto n = make(Kind::Eq);
    n->left = {t1};
    n->right = {t2};
    n->positive = positive;
    return finish_atom(n);
}

Formula inc(std::vector<std::string> left, std::vector<std::string> right)
{
    if (left.size() != right.size() || left.empty())
        throw DomainError("inclusion atom sides must have equal, positive length");
    auto n = make(Kind::Inc);
    n->guards = matching_positions(left, right);
    n->guards_all = false;
    n->left = std::move(left);
    n->right = std::move(right);
    n->team_atoms = n->has_inc = true;
    return finish_atom(n);
}

Formula exc(std::vector<std::string> left, std::vector<std::string> right)
{
    if (left.size() != right.size() || left.empty())
        throw DomainError("exclusion atom sides must have equal, positive length");
    auto n = make(Kind::Exc);
    n->guards = matching_positions(left, right);
    n->guards_all = false;
    n->left = std::move(left);
    n->right = std::move(right);
    n->team_atoms = n->has_exc = true;
    return finish_atom(n);
}

Formula dep(std::vector<std::string> determiners, const std::string& determined)
{
    auto n = make(Kind::Dep);
    n->guards = sorted_unique(determiners);
    n->guards_all = false;
    n->left = std::move(determiners);
    n->right = {determined};
    n->team_atoms = n->has_dep = true;
    return finish_atom(n);
}

Formula indep(std::vector<std::string> left, std::vector<std::string> right)
{
    if (left.empty() || right.empty())
        throw DomainError("independence atom sides must be non-empty");
    auto n = make(Kind::Indep);
    n->guards_all = false;
    n->left = std::move(left);
    n->right = std::move(right);
    n->team_atoms = n->has_indep = true;
    return finish_atom(n);
}

std::vector<std::string> ugame_layout_variables(int k)
{
    static const char* bases[] = {"u",  "v0", "v1", "v",  "w",    "t",    "vex", "wex", "e1",
                                  "e2", "uc", "vc", "wc", "tc", "vexc", "wexc", "e1c", "e2c"};
    Names out;
    for (const char* b : bases) {
        std::string base = b;
        bool digit = std::isdigit(static_cast<unsigned char>(base.back())) != 0;
        for (int i = 1; i <= k; ++i)
            out.push_back(base + (digit ? "_" : "") + std::to_string(i));
    }
    return out;
}

Formula ugame(int k, std::vector<std::string> targets)
{
    if (k < 1)
        throw DomainError("ugame width must be positive");
    if (static_cast<int>(targets.size()) != k)
        throw DomainError("ugame target tuple must have length k");
    auto n = make(Kind::UGame);
    n->k = k;
    n->guards_all = false;
    n->left = std::move(targets);
    n->right = ugame_layout_variables(k);
    n->team_atoms = n->has_ugame = true;
    return finish_atom(n);
}

Formula conj(Formula a, Formula b)
{
    auto n = make(Kind::And);
    n->free = set_union(a->free, b->free);
    inherit(*n, *a);
    inherit(*n, *b);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

Formula disj(Formula a, Formula b)
{
    auto n = make(Kind::Or);
    n->free = set_union(a->free, b->free);
    inherit(*n, *a);
    inherit(*n, *b);
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

Formula neg(Formula a)
{
    auto n = make(Kind::Not);
    n->free = a->free;
    inherit(*n, *a);
    if (a->team_atoms)
        n->has_not_over_atom = true;
    n->a = std::move(a);
    return n;
}

namespace {

Formula quantifier(Kind k, const std::string& var, Formula body)
{
    if (var.empty())
        throw DomainError("empty quantified variable");
    auto n = make(k);
    n->name = var;
    n->free = set_minus(body->free, var);
    inherit(*n, *body);
    n->bound = set_union(n->bound, {var});
    n->a = std::move(body);
    return n;
}

} // namespace

Formula exists(const std::string& var, Formula body)
{
    return quantifier(Kind::Exists, var, std::move(body));
}

Formula forall(const std::string& var, Formula body)
{
    return quantifier(Kind::Forall, var, std::move(body));
}

Formula exists(const std::vector<std::string>& vars, Formula body)
{
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = exists(*it, body);
    return body;
}

Formula forall(const std::vector<std::string>& vars, Formula body)
{
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = forall(*it, body);
    return body;
}

Formula so_exists(std::vector<std::pair<std::string, int>> decls, Formula body)
{
    auto n = make(Kind::SOExists);
    n->decls = std::move(decls);
    n->free = body->free;
    inherit(*n, *body);
    n->has_so = true;
    n->a = std::move(body);
    return n;
}

Formula conj(const std::vector<Formula>& parts)
{
    if (parts.empty())
        throw DomainError("empty conjunction");
    Formula f = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        f = conj(f, parts[i]);
    return f;
}

Formula disj(const std::vector<Formula>& parts)
{
    if (parts.empty())
        throw DomainError("empty disjunction");
    Formula f = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        f = disj(f, parts[i]);
    return f;
}

Formula rebuild(const Node& n, Formula a, Formula b)
{
    switch (n.kind) {
    case Kind::And:
        return conj(std::move(a), std::move(b));
    case Kind::Or:
        return disj(std::move(a), std::move(b));
    case Kind::Not:
        return neg(std::move(a));
    case Kind::Exists:
        return exists(n.name, std::move(a));
    case Kind::Forall:
        return forall(n.name, std::move(a));
    case Kind::SOExists:
        return so_exists(n.decls, std::move(a));
    default:
        throw DomainError("rebuild called on an atom");
    }
}

bool equal(const Formula& x, const Formula& y)
{
    if (x == y)
        return true;
    if (!x || !y)
        return false;
    if (x->kind != y->kind || x->positive != y->positive || x->name != y->name || x->left != y->left ||
        x->right != y->right || x->k != y->k || x->decls != y->decls)
        return false;
    if (static_cast<bool>(x->a) != static_cast<bool>(y->a) || static_cast<bool>(x->b) != static_cast<bool>(y->b))
        return false;
    return (!x->a || equal(x->a, y->a)) && (!x->b || equal(x->b, y->b));
}

namespace {

std::string join(const Names& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += v[i];
    }
    return s;
}

bool is_binary(const Formula& f)
{
    return f->kind == Kind::And || f->kind == Kind::Or;
}

bool is_quant(const Formula& f)
{
    return f->kind == Kind::Exists || f->kind == Kind::Forall || f->kind == Kind::SOExists;
}

void emit(const Formula& f, std::string& out);

void emit_operand(const Formula& f, bool parens, std::string& out)
{
    if (parens) {
        out += "(";
        emit(f, out);
        out += ")";
    } else {
        emit(f, out);
    }
}

void emit(const Formula& f, std::string& out)
{
    switch (f->kind) {
    case Kind::Rel:
        if (!f->positive)
            out += "~";
        out += f->name + "(" + join(f->left) + ")";
        return;
    case Kind::Eq:
        out += f->left[0] + (f->positive ? " = " : " != ") + f->right[0];
        return;
    case Kind::Inc:
        out += "inc(" + join(f->left) + "; " + join(f->right) + ")";
        return;
    case Kind::Exc:
        out += "exc(" + join(f->left) + "; " + join(f->right) + ")";
        return;
    case Kind::Dep:
        out += "dep(" + join(f->left) + "; " + f->right[0] + ")";
        return;
    case Kind::Indep:
        out += "indep(" + join(f->left) + "; " + join(f->right) + ")";
        return;
    case Kind::UGame:
        out += "ugame(" + std::to_string(f->k) + "; " + join(f->left) + ")";
        return;
    case Kind::And:
        emit_operand(f->a, f->a->kind == Kind::Or || is_quant(f->a), out);
        out += " & ";
        emit_operand(f->b, is_binary(f->b) || is_quant(f->b), out);
        return;
    case Kind::Or:
        emit_operand(f->a, is_quant(f->a), out);
        out += " | ";
        emit_operand(f->b, f->b->kind == Kind::Or || is_quant(f->b), out);
        return;
    case Kind::Not:
        out += "~";
        emit_operand(f->a, true, out);
        return;
    case Kind::Exists:
    case Kind::Forall:
        out += (f->kind == Kind::Exists ? "E " : "A ") + f->name + ". ";
        emit_operand(f->a, is_binary(f->a), out);
        return;
    case Kind::SOExists: {
        out += "EX ";
        for (std::size_t i = 0; i < f->decls.size(); ++i) {
            if (i)
                out += ", ";
            out += f->decls[i].first + "/" + std::to_string(f->decls[i].second);
        }
        out += ". ";
        emit_operand(f->a, is_binary(f->a), out);
        return;
    }
    }
}

} // namespace

std::string print(const Formula& f)
{
    std::string out;
    emit(f, out);
    return out;
}

Formula to_nnf(const Formula& f)
{
    switch (f->kind) {
    case Kind::And:
    case Kind::Or:
        return rebuild(*f, to_nnf(f->a), to_nnf(f->b));
    case Kind::Exists:
    case Kind::Forall:
    case Kind::SOExists:
        return rebuild(*f, to_nnf(f->a), nullptr);
    case Kind::Not:
        break;
    default:
        return f;
    }
    const Formula& g = f->a;
    switch (g->kind) {
    case Kind::Rel:
        return rel(g->name, g->left, !g->positive);
    case Kind::Eq:
        return eq(g->left[0], g->right[0], !g->positive);
    case Kind::And:
        return disj(to_nnf(neg(g->a)), to_nnf(neg(g->b)));
    case Kind::Or:
        return conj(to_nnf(neg(g->a)), to_nnf(neg(g->b)));
    case Kind::Exists:
        return forall(g->name, to_nnf(neg(g->a)));
    case Kind::Forall:
        return exists(g->name, to_nnf(neg(g->a)));
    case Kind::Not:
        return to_nnf(g->a);
    default:
        throw InvalidInput("negation applied to a dependency atom or second-order quantifier: " + print(f));
    }
}

Formula arrow(const Formula& guard, const Formula& body)
{
    if (!guard->flat())
        throw InvalidInput("the guard of an implication must be first-order: " + print(guard));
    Formula g = to_nnf(guard);
    return disj(to_nnf(neg(guard)), conj(g, body));
}

std::set<std::string> free_variables(const Formula& f)
{
    return {f->free.begin(), f->free.end()};
}

std::string child_id(const std::string& parent, int i)
{
    return parent + "." + std::to_string(i);
}

std::vector<std::pair<std::string, Formula>> subformula_multiset(const Formula& f)
{
    std::vector<std::pair<std::string, Formula>> out;
    std::function<void(const Formula&, const std::string&)> walk = [&](const Formula& g, const std::string& id) {
        out.emplace_back(id, g);
        if (g->a)
            walk(g->a, child_id(id, 0));
        if (g->b)
            walk(g->b, child_id(id, 1));
    };
    walk(f, "r");
    return out;
}

std::set<std::string> all_variables(const Formula& f)
{
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        out.insert(g->left.begin(), g->left.end());
        if (g->kind != Kind::Rel)
            out.insert(g->right.begin(), g->right.end());
        if (g->kind == Kind::Exists || g->kind == Kind::Forall)
            out.insert(g->name);
        if (g->a)
            walk(g->a);
        if (g->b)
            walk(g->b);
    };
    walk(f);
    return out;
}

std::set<std::string> relation_symbols(const Formula& f)
{
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g->kind == Kind::Rel)
            out.insert(g->name);
        if (g->a)
            walk(g->a);
        if (g->b)
            walk(g->b);
    };
    walk(f);
    return out;
}

std::vector<Formula> conjuncts(const Formula& f)
{
    std::vector<Formula> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g->kind == Kind::And) {
            walk(g->a);
            walk(g->b);
        } else {
            out.push_back(g);
        }
    };
    walk(f);
    return out;
}

namespace {

std::string fresh_like(const std::string& base, std::set<std::string>& used)
{
    for (int i = 1;; ++i) {
        std::string cand = base + "_" + std::to_string(i);
        if (!used.count(cand)) {
            used.insert(cand);
            return cand;
        }
    }
}

Formula map_atom_vars(const Formula& f, const std::function<std::string(const std::string&)>& m)
{
    auto mv = [&](const Names& v) {
        Names o;
        for (const auto& s : v)
            o.push_back(m(s));
        return o;
    };
    switch (f->kind) {
    case Kind::Rel:
        return rel(f->name, mv(f->left), f->positive);
    case Kind::Eq:
        return eq(m(f->left[0]), m(f->right[0]), f->positive);
    case Kind::Inc:
        return inc(mv(f->left), mv(f->right));
    case Kind::Exc:
        return exc(mv(f->left), mv(f->right));
    case Kind::Dep:
        return dep(mv(f->left), m(f->right[0]));
    case Kind::Indep:
        return indep(mv(f->left), mv(f->right));
    case Kind::UGame: {
        for (const auto& v : f->right)
            if (m(v) != v)
                throw InvalidInput("cannot rename the layout variables of a ugame atom");
        return ugame(f->k, mv(f->left));
    }
    default:
        throw DomainError("map_atom_vars on a non-atom");
    }
}

Formula rename_free_impl(const Formula& f, std::map<std::string, std::string> ren, std::set<std::string>& used)
{
    if (ren.empty())
        return f;
    switch (f->kind) {
    case Kind::And:
    case Kind::Or:
        return rebuild(*f, rename_free_impl(f->a, ren, used), rename_free_impl(f->b, ren, used));
    case Kind::Not:
    case Kind::SOExists:
        return rebuild(*f, rename_free_impl(f->a, ren, used), nullptr);
    case Kind::Exists:
    case Kind::Forall: {
        ren.erase(f->name);
        std::string v = f->name;
        Formula body = f->a;
        bool captures = false;
        for (const auto& [from, to] : ren)
            if (to == v && std::binary_search(body->free.begin(), body->free.end(), from))
                captures = true;
        if (captures) {
            std::string nv = fresh_like(v, used);
            body = rename_free_impl(body, {{v, nv}}, used);
            v = nv;
        }
        return f->kind == Kind::Exists ? exists(v, rename_free_impl(body, ren, used))
                                       : forall(v, rename_free_impl(body, ren, used));
    }
    default:
        return map_atom_vars(f, [&](const std::string& s) {
            auto it = ren.find(s);
            return it == ren.end() ? s : it->second;
        });
    }
}

} // namespace

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming)
{
    std::set<std::string> used = all_variables(f);
    for (const auto& [from, to] : renaming)
        used.insert(to);
    return rename_free_impl(f, renaming, used);
}

Formula rename_bound_apart(const Formula& f, const std::set<std::string>& avoid)
{
    std::set<std::string> used = all_variables(f);
    used.insert(avoid.begin(), avoid.end());
    std::function<Formula(const Formula&, std::set<std::string>)> walk = [&](const Formula& g,
                                                                             std::set<std::string> scope) {
        switch (g->kind) {
        case Kind::And:
        case Kind::Or:
            return rebuild(*g, walk(g->a, scope), walk(g->b, scope));
        case Kind::Not:
        case Kind::SOExists:
            return rebuild(*g, walk(g->a, scope), nullptr);
        case Kind::Exists:
        case Kind::Forall: {
            std::string v = g->name;
            Formula body = g->a;
            if (avoid.count(v) || scope.count(v)) {
                std::string nv = fresh_like(v, used);
                body = rename_free_impl(body, {{v, nv}}, used);
                v = nv;
            }
            scope.insert(v);
            Formula nb = walk(body, scope);
            return g->kind == Kind::Exists ? exists(v, nb) : forall(v, nb);
        }
        default:
            return g;
        }
    };
    return walk(f, {});
}

Formula rename_relations(const Formula& f, const std::map<std::string, std::string>& renaming)
{
    switch (f->kind) {
    case Kind::Rel: {
        auto it = renaming.find(f->name);
        return it == renaming.end() ? f : rel(it->second, f->left, f->positive);
    }
    case Kind::And:
    case Kind::Or:
        return rebuild(*f, rename_relations(f->a, renaming), rename_relations(f->b, renaming));
    case Kind::Not:
    case Kind::Exists:
    case Kind::Forall:
        return rebuild(*f, rename_relations(f->a, renaming), nullptr);
    case Kind::SOExists: {
        auto decls = f->decls;
        for (auto& d : decls)
            if (auto it = renaming.find(d.first); it != renaming.end())
                d.first = it->second;
        return so_exists(decls, rename_relations(f->a, renaming));
    }
    default:
        return f;
    }
}

} // namespace teamlogic
