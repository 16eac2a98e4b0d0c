#include "teamlogic/transforms.hpp"

#include <algorithm>
#include <functional>

namespace teamlogic {

namespace {

// Rebuilds f with every atom replaced by fn(atom).
Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn)
{
    switch (f->kind) {
    case Kind::And:
    case Kind::Or:
        return rebuild(*f, map_atoms(f->a, fn), map_atoms(f->b, fn));
    case Kind::Not:
    case Kind::Exists:
    case Kind::Forall:
    case Kind::SOExists:
        return rebuild(*f, map_atoms(f->a, fn), nullptr);
    default:
        return fn(f);
    }
}

std::vector<std::string> fresh_names(const std::string& base, std::size_t n, const std::set<std::string>& avoid)
{
    std::vector<std::string> out;
    for (std::size_t i = 1; out.size() < n; ++i) {
        std::string c = std::string(kFreshPrefix) + base + std::to_string(i);
        if (!avoid.count(c))
            out.push_back(c);
    }
    return out;
}

std::vector<std::string> concat(const std::vector<std::string>& a, const std::vector<std::string>& b)
{
    auto t = a;
    t.insert(t.end(), b.begin(), b.end());
    return t;
}

} // namespace

SOFormula so_prenex(const SOFormula& phi)
{
    if (phi.guard.empty())
        return phi;
    const auto& guard = phi.guard;
    std::map<std::string, int> widened;
    for (const auto& [n, a] : phi.quantified)
        widened[n] = a;
    Formula body = rename_bound_apart(phi.matrix, std::set<std::string>(guard.begin(), guard.end()));
    body = map_atoms(body, [&](const Formula& a) {
        if (a->kind == Kind::Rel && widened.count(a->name))
            return rel(a->name, concat(guard, a->left), a->positive);
        return a;
    });
    SOFormula out;
    out.free_relation = phi.free_relation;
    out.free_arity = phi.free_arity;
    for (const auto& [n, a] : phi.quantified)
        out.quantified.emplace_back(n, a + static_cast<int>(guard.size()));
    out.matrix = forall(guard, disj(rel(phi.free_relation, guard, false), conj(rel(phi.free_relation, guard), body)));
    return out;
}

SOFormula myopic_companion_so(const SOFormula& input)
{
    SOFormula phi = so_prenex(input);
    const int r = phi.free_arity;
    std::set<std::string> symbols = relation_symbols(phi.matrix);
    for (const auto& [n, a] : phi.quantified)
        symbols.insert(n);
    std::string y = fresh_names("Y", 1, symbols).front();
    std::set<std::string> vars = all_variables(phi.matrix);
    auto xs = fresh_names("x", static_cast<std::size_t>(r), vars);
    auto zs = fresh_names("z", static_cast<std::size_t>(r), vars);
    Formula inner = rename_relations(phi.matrix, {{phi.free_relation, y}});
    Formula subset = forall(zs, disj(rel(y, zs, false), rel(phi.free_relation, zs)));
    SOFormula mu;
    mu.free_relation = phi.free_relation;
    mu.free_arity = r;
    mu.guard = xs;
    mu.quantified.emplace_back(y, r);
    mu.quantified.insert(mu.quantified.end(), phi.quantified.begin(), phi.quantified.end());
    mu.matrix = conj(subset, conj(rel(y, xs), inner));
    return mu;
}

Formula guard_atoms(const Formula& phi, const std::vector<std::string>& anchor)
{
    auto vars = all_variables(phi);
    for (const auto& x : anchor)
        if (vars.count(x))
            throw InvalidInput("anchor variable " + x + " already occurs in the formula");
    return map_atoms(phi, [&](const Formula& a) {
        if (a->kind == Kind::Inc)
            return inc(concat(anchor, a->left), concat(anchor, a->right));
        if (a->kind == Kind::Exc)
            return exc(concat(anchor, a->left), concat(anchor, a->right));
        return a;
    });
}

Formula unguard_atoms(const Formula& phi, const std::vector<std::string>& anchor)
{
    auto strip = [&](const std::vector<std::string>& side, const Formula& a) {
        if (side.size() < anchor.size() || !std::equal(anchor.begin(), anchor.end(), side.begin()))
            throw InvalidInput("atom is not guarded by the anchor: " + print(a));
        return std::vector<std::string>(side.begin() + static_cast<std::ptrdiff_t>(anchor.size()), side.end());
    };
    return map_atoms(phi, [&](const Formula& a) {
        if (a->kind == Kind::Inc)
            return inc(strip(a->left, a), strip(a->right, a));
        if (a->kind == Kind::Exc)
            return exc(strip(a->left, a), strip(a->right, a));
        return a;
    });
}

Formula expand_dependence(const Formula& phi)
{
    std::set<std::string> used = all_variables(phi);
    return map_atoms(phi, [&](const Formula& a) {
        if (a->kind != Kind::Dep)
            return a;
        std::string v = fresh_names("v", 1, used).front();
        used.insert(v);
        const std::string& z = a->right[0];
        return forall(v, disj(exc(concat(a->left, {v}), concat(a->left, {z})), eq(z, v)));
    });
}

Formula team_myopic_companion(const Formula& input, const std::vector<std::string>& anchor,
                              const CompanionOptions& options)
{
    if (anchor.empty())
        throw InvalidInput("the anchor must be non-empty");
    std::set<std::string> xs(anchor.begin(), anchor.end());
    if (xs.size() != anchor.size())
        throw InvalidInput("anchor variables must be distinct");
    Formula phi = to_nnf(input);
    if (phi->has_dep) {
        if (!options.expand_dependence)
            throw InvalidInput("dependence atoms need the expansion option");
        phi = expand_dependence(phi);
    }
    if (phi->has_indep || phi->has_ugame || phi->has_so)
        throw InvalidInput("the team companion needs a formula of FO(inc, exc)");
    for (const auto& v : phi->free)
        if (!xs.count(v))
            throw InvalidInput("free variable " + v + " is not in the anchor");
    auto avoid = all_variables(phi);
    avoid.insert(anchor.begin(), anchor.end());
    auto ys = fresh_names("y", anchor.size(), avoid);
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < anchor.size(); ++i)
        ren[anchor[i]] = ys[i];
    std::set<std::string> apart(anchor.begin(), anchor.end());
    apart.insert(ys.begin(), ys.end());
    Formula moved = rename_bound_apart(rename_free(phi, ren), apart);
    Formula star = guard_atoms(moved, anchor);
    return exists(ys, conj(inc(ys, anchor), conj(inc(concat(anchor, anchor), concat(anchor, ys)), star)));
}

} // namespace teamlogic
