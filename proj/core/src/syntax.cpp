#include "teamlogic/formulas.hpp"

#include <algorithm>
#include <functional>

namespace teamlogic {

namespace {

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i];
    return s;
}

CheckResult violation(const std::string& clause, const std::string& id, const Formula& node)
{
    return {false, clause + " at " + id + ": " + print(node)};
}

} // namespace

CheckResult check_myopic_so(const SOFormula& phi)
{
    std::vector<std::string> guard = phi.guard;
    Formula body = phi.matrix;
    std::string body_id = "r";
    if (guard.empty()) {
        if (!phi.quantified.empty())
            return {false, "shape: expected A x. (" + phi.free_relation +
                               "(x) -> EX R. ...) but the formula starts with a second-order quantifier"};
        // Guard written without a second-order block: ∀x̄(¬Xx̄ ∨ (Xx̄ ∧ φ′)).
        Formula g = phi.matrix;
        while (g->kind == Kind::Forall) {
            guard.push_back(g->name);
            g = g->a;
            body_id = child_id(body_id, 0);
        }
        bool shape = !guard.empty() && g->kind == Kind::Or && g->a->kind == Kind::Rel &&
                     g->a->name == phi.free_relation && !g->a->positive && g->a->left == guard &&
                     g->b->kind == Kind::And && g->b->a->kind == Kind::Rel && g->b->a->name == phi.free_relation &&
                     g->b->a->positive && g->b->a->left == guard;
        if (!shape)
            return {false, "shape: expected A x. (" + phi.free_relation + "(x) -> ...) at the root, found " +
                               print(phi.matrix)};
        body = g->b->b;
        body_id = child_id(child_id(body_id, 1), 1);
    }
    if (static_cast<int>(guard.size()) != phi.free_arity)
        return {false, "shape: guard has " + std::to_string(guard.size()) + " variables but " + phi.free_relation +
                           " has arity " + std::to_string(phi.free_arity)};
    auto sorted = guard;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return {false, "shape: guard variables " + join(guard) + " are not distinct"};
    for (const auto& [id, node] : subformula_multiset(body)) {
        if (node->kind == Kind::Rel && node->name == phi.free_relation && !node->positive)
            return violation("negative occurrence of " + phi.free_relation, body_id + id.substr(1), node);
        if (node->kind == Kind::Not)
            return violation("matrix not in negation normal form", body_id + id.substr(1), node);
    }
    return {true, "myopic with guard " + join(guard)};
}

CheckResult check_x_myopic(const Formula& phi, const std::vector<std::string>& anchor)
{
    std::set<std::string> xs(anchor.begin(), anchor.end());
    if (xs.size() != anchor.size() || anchor.empty())
        return {false, "anchor must be a non-empty tuple of distinct variables"};
    auto prefixed = [&](const std::vector<std::string>& v) {
        return v.size() >= anchor.size() && std::equal(anchor.begin(), anchor.end(), v.begin());
    };
    std::function<CheckResult(const Formula&, const std::string&, bool)> walk =
        [&](const Formula& f, const std::string& id, bool under_or) -> CheckResult {
        switch (f->kind) {
        case Kind::Exists:
        case Kind::Forall:
            if (xs.count(f->name))
                return violation("anchor variable " + f->name + " is quantified", id, f);
            return walk(f->a, child_id(id, 0), under_or);
        case Kind::And:
        case Kind::Or: {
            bool inner = under_or || f->kind == Kind::Or;
            auto r = walk(f->a, child_id(id, 0), inner);
            if (!r.ok)
                return r;
            return walk(f->b, child_id(id, 1), inner);
        }
        case Kind::Not:
            if (f->a->team_atoms)
                return violation("negated dependency atom", id, f);
            return walk(f->a, child_id(id, 0), under_or);
        case Kind::Exc:
            if (!prefixed(f->left) || !prefixed(f->right))
                return violation("exclusion atom is not guarded by the anchor", id, f);
            return {};
        case Kind::Inc:
            if (prefixed(f->left) && prefixed(f->right))
                return {};
            if (f->right == anchor) {
                if (under_or)
                    return violation("unguarded inclusion into the anchor inside a disjunction", id, f);
                return {};
            }
            return violation("inclusion atom is neither anchor-guarded nor of the form y ⊆ anchor", id, f);
        case Kind::Dep:
        case Kind::Indep:
        case Kind::UGame:
            return violation("only inclusion and exclusion atoms are allowed", id, f);
        case Kind::SOExists:
            return violation("second-order quantifier", id, f);
        default:
            return {};
        }
    };
    auto r = walk(phi, "r", false);
    if (!r.ok)
        return r;
    std::vector<std::string> extra;
    for (const auto& v : phi->free)
        if (!xs.count(v))
            extra.push_back(v);
    if (!extra.empty())
        return {false, "free variables " + join(extra) + " outside the anchor"};
    std::vector<std::string> missing;
    for (const auto& v : anchor)
        if (!std::binary_search(phi->free.begin(), phi->free.end(), v))
            missing.push_back(v);
    if (!missing.empty())
        return {true, "x-myopic; note: anchor variables " + join(missing) +
                          " do not occur free (only inclusion of the free variables in the anchor is required)"};
    return {true, "x-myopic"};
}

} // namespace teamlogic
