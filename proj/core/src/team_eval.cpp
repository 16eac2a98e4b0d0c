#include "teamlogic/classical.hpp"
#include "teamlogic/constructions.hpp"
#include "teamlogic/semantics.hpp"

#include <algorithm>
#include <unordered_map>

namespace teamlogic {

namespace {

using Names = std::vector<std::string>;
using Rows = std::vector<Tuple>;

// A team whose columns are the sorted variable list `vars`; rows sorted and unique.
struct TT {
    Names vars;
    Rows rows;
};

void canon(Rows& r)
{
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
}

std::vector<int> indices(const Names& from, const Names& vars)
{
    std::vector<int> idx;
    idx.reserve(vars.size());
    for (const auto& v : vars) {
        auto it = std::lower_bound(from.begin(), from.end(), v);
        if (it == from.end() || *it != v)
            throw DomainError("variable " + v + " is not in the team domain");
        idx.push_back(static_cast<int>(it - from.begin()));
    }
    return idx;
}

Tuple pick(const Tuple& row, const std::vector<int>& idx)
{
    Tuple t;
    t.reserve(idx.size());
    for (int i : idx)
        t.push_back(row[static_cast<std::size_t>(i)]);
    return t;
}

TT project(const TT& t, const Names& vars)
{
    if (t.vars == vars)
        return t;
    auto idx = indices(t.vars, vars);
    TT out{vars, {}};
    out.rows.reserve(t.rows.size());
    for (const auto& r : t.rows)
        out.rows.push_back(pick(r, idx));
    canon(out.rows);
    return out;
}

// Inserts `var` (absent from t.vars) at its sorted position, pairing each row with each value.
TT extend(const TT& t, const std::string& var, std::size_t m)
{
    TT out;
    out.vars = t.vars;
    auto pos = static_cast<std::size_t>(std::lower_bound(out.vars.begin(), out.vars.end(), var) - out.vars.begin());
    out.vars.insert(out.vars.begin() + static_cast<std::ptrdiff_t>(pos), var);
    out.rows.reserve(t.rows.size() * m);
    for (const auto& r : t.rows)
        for (std::size_t a = 0; a < m; ++a) {
            Tuple n = r;
            n.insert(n.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<Element>(a));
            out.rows.push_back(std::move(n));
        }
    canon(out.rows);
    return out;
}

bool contains_sorted(const Rows& rows, const Tuple& t)
{
    return std::binary_search(rows.begin(), rows.end(), t);
}

Names minus(const Names& a, const Names& b)
{
    Names out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Names intersect(const Names& a, const Names& b)
{
    Names out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool subset(const Names& a, const Names& b)
{
    Names s = a;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return std::includes(b.begin(), b.end(), s.begin(), s.end());
}

bool meets(const Names& a, const Names& sorted_b)
{
    for (const auto& v : a)
        if (std::binary_search(sorted_b.begin(), sorted_b.end(), v))
            return true;
    return false;
}

Names dvars(const Node* n)
{
    if (n->guards_all)
        return {};
    return minus(n->guards, n->bound);
}

struct KeyHash {
    std::size_t operator()(const std::pair<const Node*, Rows>& k) const
    {
        std::size_t h = std::hash<const void*>()(k.first);
        for (const auto& r : k.second)
            for (Element e : r)
                h = h * 1000003u ^ static_cast<std::size_t>(e + 17);
        return h ^ (k.second.size() * 0x9e3779b97f4a7c15ull);
    }
};

std::vector<Rows> group_by(const TT& t, const Names& cols)
{
    if (cols.empty())
        return {t.rows};
    auto idx = indices(t.vars, cols);
    std::map<Tuple, Rows> g;
    for (const auto& r : t.rows)
        g[pick(r, idx)].push_back(r);
    std::vector<Rows> out;
    for (auto& [k, rows] : g)
        out.push_back(std::move(rows));
    return out;
}

struct Filter {
    enum Type { Flat, IncInto, ExcFrom } type;
    std::unique_ptr<CompiledFormula> compiled;
    std::vector<int> in_ext;  // positions of the tested variables in the extended row
    std::vector<int> in_base; // positions of the fixed side in the base row
};

struct ExistsPlan {
    Names ys;       // quantified variables that occur in the body (block order irrelevant)
    Names ext_vars; // sorted D ∪ ys
    std::vector<int> base_pos; // position of each D column in ext rows
    std::vector<int> y_pos;    // position of each ys variable in ext rows
    Formula body;
    std::vector<Formula> statics;
    std::vector<Filter> filters;
    Formula rest;
    std::vector<Formula> rest_parts;
    std::vector<Formula> rest_dc; // downward-closed parts of rest, for pruning
};

} // namespace

struct TeamEvaluator::Impl {
    const Structure& st;
    Formula root;
    EvalBudget budget;
    std::size_t m;
    std::uint64_t steps = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    std::unordered_map<std::pair<const Node*, Rows>, bool, KeyHash> memo;
    std::unordered_map<std::pair<const Node*, Rows>, Rows, KeyHash> max_memo;
    std::unordered_map<const Node*, std::unique_ptr<CompiledFormula>> compiled;
    std::unordered_map<const Node*, std::unique_ptr<ExistsPlan>> plans;
    std::unordered_map<const Node*, std::vector<Formula>> flat_parts;
    std::vector<Formula> keep_alive;

    Impl(const Structure& s, Formula f, const EvalBudget& b) : st(s), root(std::move(f)), budget(b), m(s.size()) {}

    void tick(std::uint64_t n = 1)
    {
        steps += n;
        if (steps > budget.max_steps)
            throw ResourceError("team evaluation exceeded its step budget");
        if (budget.time_limit && (steps & 0xfff) == 0 &&
            std::chrono::steady_clock::now() - start > *budget.time_limit)
            throw ResourceError("team evaluation exceeded its time limit");
    }

    void reset_counters()
    {
        steps = 0;
        start = std::chrono::steady_clock::now();
    }

    const CompiledFormula& compiled_for(const Node* n)
    {
        auto it = compiled.find(n);
        if (it == compiled.end()) {
            Formula f(root, n); // aliasing handle; lifetime tied to the evaluator's formulas
            it = compiled.emplace(n, std::make_unique<CompiledFormula>(st, f, n->free)).first;
        }
        return *it->second;
    }

    Rows flat_rows(const Node* n, const TT& X)
    {
        const auto& c = compiled_for(n);
        Rows out;
        for (const auto& r : X.rows) {
            tick();
            if (c.eval(r.data()))
                out.push_back(r);
        }
        return out;
    }

    bool flat_all(const Node* n, const TT& X)
    {
        const auto& c = compiled_for(n);
        for (const auto& r : X.rows) {
            tick();
            if (!c.eval(r.data()))
                return false;
        }
        return true;
    }

    // ---------- satisfaction ----------

    bool sat(const Node* n, TT X)
    {
        if (X.vars != n->free)
            X = project(X, n->free);
        if (X.rows.empty())
            return true;
        tick();
        if (n->flat())
            return flat_all(n, X);
        auto key = std::make_pair(n, X.rows);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool r = dispatch(n, X);
        memo.emplace(std::move(key), r);
        return r;
    }

    bool sat_rows(const Node* n, const Names& vars, Rows rows)
    {
        canon(rows);
        return sat(n, TT{vars, std::move(rows)});
    }

    bool dispatch(const Node* n, const TT& X)
    {
        Names dv = intersect(dvars(n), X.vars);
        if (!dv.empty()) {
            auto groups = group_by(X, dv);
            if (groups.size() > 1) {
                for (auto& g : groups)
                    if (!sat(n, TT{X.vars, std::move(g)}))
                        return false;
                return true;
            }
        }
        if (n->inclusion_only())
            return max_sat(n, X).size() == X.rows.size();
        switch (n->kind) {
        case Kind::Inc:
        case Kind::Exc: {
            auto li = indices(X.vars, n->left);
            auto ri = indices(X.vars, n->right);
            std::set<Tuple> lv, rv;
            for (const auto& r : X.rows) {
                lv.insert(pick(r, li));
                rv.insert(pick(r, ri));
            }
            if (n->kind == Kind::Inc)
                return std::includes(rv.begin(), rv.end(), lv.begin(), lv.end());
            for (const auto& t : lv)
                if (rv.count(t))
                    return false;
            return true;
        }
        case Kind::Dep: {
            auto li = indices(X.vars, n->left);
            auto ri = indices(X.vars, n->right);
            std::map<Tuple, Element> f;
            for (const auto& r : X.rows) {
                auto [it, fresh] = f.emplace(pick(r, li), r[static_cast<std::size_t>(ri[0])]);
                if (!fresh && it->second != r[static_cast<std::size_t>(ri[0])])
                    return false;
            }
            return true;
        }
        case Kind::Indep: {
            auto li = indices(X.vars, n->left);
            auto ri = indices(X.vars, n->right);
            std::set<std::pair<Tuple, Tuple>> both;
            std::set<Tuple> ls, rs;
            for (const auto& r : X.rows) {
                both.emplace(pick(r, li), pick(r, ri));
                ls.insert(pick(r, li));
                rs.insert(pick(r, ri));
            }
            // Overlapping sides are handled by requiring a consistent witness row.
            Names all = n->left;
            all.insert(all.end(), n->right.begin(), n->right.end());
            auto ai = indices(X.vars, all);
            std::set<Tuple> rows;
            for (const auto& r : X.rows)
                rows.insert(pick(r, ai));
            for (const auto& a : ls)
                for (const auto& b : rs) {
                    tick();
                    Tuple w = a;
                    w.insert(w.end(), b.begin(), b.end());
                    if (!rows.count(w))
                        return false;
                }
            return true;
        }
        case Kind::UGame: {
            Team t(X.vars);
            for (const auto& r : X.rows)
                t.insert(r);
            return eval_ugame_atom(st, t, n->k, n->left);
        }
        case Kind::And:
            return sat(n->a.get(), X) && sat(n->b.get(), X);
        case Kind::Or:
            return sat_or(n, X);
        case Kind::Exists:
            return sat_exists(n, X);
        case Kind::Forall: {
            const Node* body = n->a.get();
            if (!std::binary_search(body->free.begin(), body->free.end(), n->name))
                return sat(body, X);
            return sat(body, extend(X, n->name, m));
        }
        case Kind::Not:
            throw InvalidInput("negation over a dependency atom: " + print(Formula(root, n)));
        default:
            throw DomainError("unexpected node in team evaluation");
        }
    }

    // ---------- greatest satisfying subteam (inclusion-only formulas) ----------

    Rows lift(const Node* c, const TT& Y)
    {
        TT p = project(Y, c->free);
        Rows M = max_sat(c, p);
        if (M.size() == p.rows.size())
            return Y.rows;
        auto idx = indices(Y.vars, c->free);
        Rows out;
        for (const auto& r : Y.rows)
            if (contains_sorted(M, pick(r, idx)))
                out.push_back(r);
        return out;
    }

    Rows max_sat(const Node* n, const TT& X)
    {
        if (X.rows.empty())
            return {};
        tick();
        if (n->flat())
            return flat_rows(n, X);
        auto key = std::make_pair(n, X.rows);
        if (auto it = max_memo.find(key); it != max_memo.end())
            return it->second;
        Rows r = max_dispatch(n, X);
        max_memo.emplace(std::move(key), r);
        return r;
    }

    Rows max_dispatch(const Node* n, const TT& X)
    {
        Names dv = intersect(dvars(n), X.vars);
        if (!dv.empty()) {
            auto groups = group_by(X, dv);
            if (groups.size() > 1) {
                Rows out;
                for (auto& g : groups) {
                    auto part = max_sat(n, TT{X.vars, std::move(g)});
                    out.insert(out.end(), part.begin(), part.end());
                }
                canon(out);
                return out;
            }
        }
        switch (n->kind) {
        case Kind::Inc: {
            auto li = indices(X.vars, n->left);
            auto ri = indices(X.vars, n->right);
            Rows Y = X.rows;
            while (true) {
                tick(Y.size());
                std::set<Tuple> rv;
                for (const auto& r : Y)
                    rv.insert(pick(r, ri));
                Rows next;
                for (const auto& r : Y)
                    if (rv.count(pick(r, li)))
                        next.push_back(r);
                if (next.size() == Y.size())
                    return Y;
                Y = std::move(next);
            }
        }
        case Kind::And: {
            TT Y = X;
            while (true) {
                std::size_t before = Y.rows.size();
                Y.rows = lift(n->a.get(), Y);
                Y.rows = lift(n->b.get(), Y);
                if (Y.rows.size() == before)
                    return Y.rows;
            }
        }
        case Kind::Or: {
            Rows a = lift(n->a.get(), X);
            Rows b = lift(n->b.get(), X);
            a.insert(a.end(), b.begin(), b.end());
            canon(a);
            return a;
        }
        case Kind::Exists: {
            const Node* body = n->a.get();
            if (!std::binary_search(body->free.begin(), body->free.end(), n->name))
                return lift(body, X);
            TT E = extend(X, n->name, m);
            TT M{E.vars, lift(body, E)};
            return project(M, X.vars).rows;
        }
        case Kind::Forall: {
            const Node* body = n->a.get();
            if (!std::binary_search(body->free.begin(), body->free.end(), n->name))
                return lift(body, X);
            TT Y = X;
            while (true) {
                TT E = extend(Y, n->name, m);
                Rows M = lift(body, E);
                auto pos = static_cast<std::size_t>(
                    std::lower_bound(E.vars.begin(), E.vars.end(), n->name) - E.vars.begin());
                Rows next;
                for (const auto& r : Y.rows) {
                    bool all = true;
                    for (std::size_t a = 0; a < m && all; ++a) {
                        Tuple t = r;
                        t.insert(t.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<Element>(a));
                        all = contains_sorted(M, t);
                    }
                    if (all)
                        next.push_back(r);
                }
                if (next.size() == Y.rows.size())
                    return Y.rows;
                Y.rows = std::move(next);
            }
        }
        default:
            throw DomainError("greatest-subteam computation on a formula outside the inclusion fragment");
        }
    }

    // ---------- disjunction ----------

    const std::vector<Formula>& flat_conjuncts(const Node* n)
    {
        auto it = flat_parts.find(n);
        if (it == flat_parts.end()) {
            std::vector<Formula> fs;
            for (const auto& c : conjuncts(Formula(root, n)))
                if (c->flat())
                    fs.push_back(c);
            it = flat_parts.emplace(n, std::move(fs)).first;
        }
        return it->second;
    }

    void check_split(std::size_t n)
    {
        if (n > budget.max_split_rows)
            throw ResourceError("disjunction split over " + std::to_string(n) + " rows exceeds the budget of " +
                                std::to_string(budget.max_split_rows));
    }

    bool passes_flat(const std::vector<Formula>& fs, const Names& vars, const Tuple& row)
    {
        for (const auto& f : fs) {
            auto idx = indices(vars, f->free);
            Tuple t = pick(row, idx);
            tick();
            if (!compiled_for(f.get()).eval(t.data()))
                return false;
        }
        return true;
    }

    bool sat_or(const Node* n, const TT& X)
    {
        const Node* A = n->a.get();
        const Node* B = n->b.get();
        const Rows& rows = X.rows;
        if (A->flat() || B->flat()) {
            const Node* F = A->flat() ? A : B;
            const Node* O = A->flat() ? B : A;
            TT px = project(X, F->free);
            auto idx = indices(X.vars, F->free);
            const auto& cf = compiled_for(F);
            Rows must, opt;
            for (const auto& r : rows) {
                tick();
                Tuple t = pick(r, idx);
                (cf.eval(t.data()) ? opt : must).push_back(r);
            }
            if (must.empty())
                return true;
            const auto& ofl = flat_conjuncts(O);
            for (const auto& r : must)
                if (!passes_flat(ofl, X.vars, r))
                    return false;
            Rows opt2;
            for (const auto& r : opt)
                if (passes_flat(ofl, X.vars, r))
                    opt2.push_back(r);
            if (O->downward_closed() || opt2.empty())
                return sat_rows(O, X.vars, must);
            if (O->inclusion_only()) {
                Rows all = must;
                all.insert(all.end(), opt2.begin(), opt2.end());
                canon(all);
                TT U{X.vars, all};
                Rows M = lift(O, U);
                for (const auto& r : must)
                    if (!contains_sorted(M, r))
                        return false;
                return true;
            }
            check_split(opt2.size());
            for (std::size_t mask = (std::size_t{1} << opt2.size()); mask-- > 0;) {
                tick();
                Rows z = must;
                for (std::size_t i = 0; i < opt2.size(); ++i)
                    if (mask >> i & 1)
                        z.push_back(opt2[i]);
                if (sat_rows(O, X.vars, z))
                    return true;
            }
            return false;
        }
        bool dcA = A->downward_closed(), dcB = B->downward_closed();
        if (dcA && dcB) {
            check_split(rows.size());
            Rows y, z;
            std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
                tick();
                if (i == rows.size())
                    return true;
                y.push_back(rows[i]);
                if (sat_rows(A, X.vars, y) && dfs(i + 1))
                    return true;
                y.pop_back();
                z.push_back(rows[i]);
                if (sat_rows(B, X.vars, z) && dfs(i + 1))
                    return true;
                z.pop_back();
                return false;
            };
            return dfs(0);
        }
        if (dcA || dcB) {
            const Node* D = dcA ? A : B;
            const Node* O = dcA ? B : A;
            if (O->inclusion_only()) {
                Rows M = lift(O, X);
                Rows rest;
                std::set_difference(rows.begin(), rows.end(), M.begin(), M.end(), std::back_inserter(rest));
                return sat_rows(D, X.vars, rest);
            }
            check_split(rows.size());
            Rows y, z;
            std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
                tick();
                if (i == rows.size())
                    return sat_rows(O, X.vars, y);
                y.push_back(rows[i]);
                if (dfs(i + 1))
                    return true;
                y.pop_back();
                z.push_back(rows[i]);
                if (sat_rows(D, X.vars, z) && dfs(i + 1))
                    return true;
                z.pop_back();
                return false;
            };
            return dfs(0);
        }
        if (A->inclusion_only() || B->inclusion_only()) {
            const Node* I = A->inclusion_only() ? A : B;
            const Node* O = A->inclusion_only() ? B : A;
            Rows M = lift(I, X);
            Rows must;
            std::set_difference(rows.begin(), rows.end(), M.begin(), M.end(), std::back_inserter(must));
            if (must.empty())
                return true;
            check_split(M.size());
            for (std::size_t mask = 0; mask < (std::size_t{1} << M.size()); ++mask) {
                tick();
                Rows z = must;
                for (std::size_t i = 0; i < M.size(); ++i)
                    if (mask >> i & 1)
                        z.push_back(M[i]);
                if (sat_rows(O, X.vars, z))
                    return true;
            }
            return false;
        }
        check_split(rows.size());
        Rows y, z;
        std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
            tick();
            if (i == rows.size())
                return sat_rows(A, X.vars, y) && sat_rows(B, X.vars, z);
            y.push_back(rows[i]);
            if (dfs(i + 1))
                return true;
            z.push_back(rows[i]);
            if (dfs(i + 1))
                return true;
            y.pop_back();
            if (dfs(i + 1))
                return true;
            z.pop_back();
            return false;
        };
        return dfs(0);
    }

    // ---------- existential blocks ----------

    ExistsPlan& plan_for(const Node* n)
    {
        auto it = plans.find(n);
        if (it != plans.end())
            return *it->second;
        auto p = std::make_unique<ExistsPlan>();
        const Node* b = n;
        Names block;
        while (b->kind == Kind::Exists) {
            block.push_back(b->name);
            b = b->a.get();
        }
        p->body = Formula(root, b);
        const Names& D = n->free;
        for (const auto& y : block)
            if (std::binary_search(b->free.begin(), b->free.end(), y))
                p->ys.push_back(y);
        std::sort(p->ys.begin(), p->ys.end());
        p->ys.erase(std::unique(p->ys.begin(), p->ys.end()), p->ys.end());
        p->ext_vars = D;
        p->ext_vars.insert(p->ext_vars.end(), p->ys.begin(), p->ys.end());
        std::sort(p->ext_vars.begin(), p->ext_vars.end());
        p->base_pos = indices(p->ext_vars, D);
        p->y_pos = indices(p->ext_vars, p->ys);
        std::vector<Formula> rest;
        for (const auto& c : conjuncts(p->body)) {
            if (subset(c->free, D)) {
                p->statics.push_back(c);
                continue;
            }
            if (c->flat()) {
                Filter f{Filter::Flat, std::make_unique<CompiledFormula>(st, c, c->free), indices(p->ext_vars, c->free), {}};
                p->filters.push_back(std::move(f));
                continue;
            }
            if (c->kind == Kind::Inc && subset(c->right, D)) {
                p->filters.push_back({Filter::IncInto, nullptr, indices(p->ext_vars, c->left), indices(D, c->right)});
                continue;
            }
            if (c->kind == Kind::Exc && subset(c->right, D)) {
                p->filters.push_back({Filter::ExcFrom, nullptr, indices(p->ext_vars, c->left), indices(D, c->right)});
                continue;
            }
            if (c->kind == Kind::Exc && subset(c->left, D)) {
                p->filters.push_back({Filter::ExcFrom, nullptr, indices(p->ext_vars, c->right), indices(D, c->left)});
                continue;
            }
            rest.push_back(c);
        }
        if (!rest.empty()) {
            p->rest = conj(rest);
            p->rest_parts = rest;
            for (const auto& c : rest)
                if (c->downward_closed())
                    p->rest_dc.push_back(c);
        }
        return *plans.emplace(n, std::move(p)).first->second;
    }

    Tuple ext_row(const ExistsPlan& p, const Tuple& base, const Tuple& ys) const
    {
        Tuple r(p.ext_vars.size());
        for (std::size_t i = 0; i < base.size(); ++i)
            r[static_cast<std::size_t>(p.base_pos[i])] = base[i];
        for (std::size_t i = 0; i < ys.size(); ++i)
            r[static_cast<std::size_t>(p.y_pos[i])] = ys[i];
        return r;
    }

    bool sat_exists(const Node* n, const TT& X)
    {
        ExistsPlan& p = plan_for(n);
        if (p.ys.empty())
            return sat(p.body.get(), X);
        for (const auto& s : p.statics)
            if (!sat(s.get(), X))
                return false;
        std::vector<std::set<Tuple>> fixed(p.filters.size());
        for (std::size_t i = 0; i < p.filters.size(); ++i)
            if (p.filters[i].type != Filter::Flat)
                for (const auto& r : X.rows)
                    fixed[i].insert(pick(r, p.filters[i].in_base));
        auto choices = all_tuples(m, p.ys.size());
        if (choices.size() > 4096)
            throw ResourceError("existential block ranges over too many value tuples");
        // Candidate ext rows per base row.
        std::vector<Rows> cand(X.rows.size());
        for (std::size_t i = 0; i < X.rows.size(); ++i) {
            for (const auto& b : choices) {
                tick();
                Tuple e = ext_row(p, X.rows[i], b);
                bool ok = true;
                for (std::size_t f = 0; f < p.filters.size() && ok; ++f) {
                    const Filter& fl = p.filters[f];
                    Tuple t = pick(e, fl.in_ext);
                    if (fl.type == Filter::Flat)
                        ok = fl.compiled->eval(t.data());
                    else if (fl.type == Filter::IncInto)
                        ok = fixed[f].count(t) != 0;
                    else
                        ok = fixed[f].count(t) == 0;
                }
                if (ok)
                    cand[i].push_back(std::move(e));
            }
            if (cand[i].empty())
                return false;
        }
        if (!p.rest)
            return true;
        const Node* R = p.rest.get();
        Names dv = intersect(dvars(R), n->free);
        std::vector<std::vector<std::size_t>> groups;
        if (dv.empty()) {
            groups.emplace_back();
            for (std::size_t i = 0; i < X.rows.size(); ++i)
                groups.back().push_back(i);
        } else {
            auto idx = indices(X.vars, dv);
            std::map<Tuple, std::vector<std::size_t>> g;
            for (std::size_t i = 0; i < X.rows.size(); ++i)
                g[pick(X.rows[i], idx)].push_back(i);
            for (auto& [k, v] : g)
                groups.push_back(std::move(v));
        }
        for (const auto& g : groups)
            if (!sat_group(p, X, cand, g))
                return false;
        return true;
    }

    // The supplier criterion: any witness F can be replaced by the uniform F(s) = ⋃F.
    bool uniform_ok(const ExistsPlan& p, const TT& X, const std::vector<std::size_t>& g)
    {
        const Names& D = X.vars;
        Names K, N;
        for (std::size_t c = 0; c < D.size(); ++c) {
            bool constant = true;
            for (std::size_t i : g)
                if (X.rows[i][c] != X.rows[g.front()][c]) {
                    constant = false;
                    break;
                }
            (constant ? K : N).push_back(D[c]);
        }
        if (N.empty())
            return true;
        Names EK = K;
        EK.insert(EK.end(), p.ys.begin(), p.ys.end());
        std::sort(EK.begin(), EK.end());
        for (const auto& c : p.rest_parts) {
            if (c->kind == Kind::Inc && subset(c->left, D) && subset(c->right, EK))
                continue;
            if (meets(c->bound, D))
                return false;
            bool ok = true;
            std::function<void(const Node*)> walk = [&](const Node* f) {
                if (!ok)
                    return;
                switch (f->kind) {
                case Kind::And:
                case Kind::Or:
                    walk(f->a.get());
                    walk(f->b.get());
                    return;
                case Kind::Exists:
                case Kind::Forall:
                case Kind::Not:
                    walk(f->a.get());
                    return;
                case Kind::Inc:
                    if (meets(f->left, N) || (meets(f->right, N) && !subset(f->right, D)))
                        ok = false;
                    return;
                default:
                    if (meets(f->free, N))
                        ok = false;
                    return;
                }
            };
            walk(c.get());
            if (!ok)
                return false;
        }
        return true;
    }

    bool sat_group(const ExistsPlan& p, const TT& X, const std::vector<Rows>& cand, const std::vector<std::size_t>& g)
    {
        const Node* R = p.rest.get();
        if (R->inclusion_only()) {
            Rows all;
            for (std::size_t i : g)
                all.insert(all.end(), cand[i].begin(), cand[i].end());
            canon(all);
            TT E{p.ext_vars, all};
            Rows M = lift(R, E);
            for (std::size_t i : g) {
                bool any = false;
                for (const auto& e : cand[i])
                    if (contains_sorted(M, e)) {
                        any = true;
                        break;
                    }
                if (!any)
                    return false;
            }
            return true;
        }
        auto ys_of = [&](const Tuple& e) { return pick(e, p.y_pos); };
        bool equal_cands = true;
        for (std::size_t i : g) {
            if (cand[i].size() != cand[g.front()].size()) {
                equal_cands = false;
                break;
            }
            for (std::size_t j = 0; j < cand[i].size(); ++j)
                if (ys_of(cand[i][j]) != ys_of(cand[g.front()][j])) {
                    equal_cands = false;
                    break;
                }
            if (!equal_cands)
                break;
        }
        if (equal_cands && cand[g.front()].size() <= 20 && uniform_ok(p, X, g)) {
            std::size_t c = cand[g.front()].size();
            for (std::size_t mask = (std::size_t{1} << c) - 1; mask >= 1; --mask) {
                tick();
                Rows rows;
                for (std::size_t i : g)
                    for (std::size_t j = 0; j < c; ++j)
                        if (mask >> j & 1)
                            rows.push_back(cand[i][j]);
                if (sat_rows(R, p.ext_vars, rows))
                    return true;
            }
            return false;
        }
        Rows partial;
        if (R->downward_closed()) {
            std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
                tick();
                if (k == g.size())
                    return true;
                for (const auto& e : cand[g[k]]) {
                    partial.push_back(e);
                    if (sat_rows(R, p.ext_vars, partial) && dfs(k + 1))
                        return true;
                    partial.pop_back();
                }
                return false;
            };
            return dfs(0);
        }
        for (std::size_t i : g)
            if (cand[i].size() > budget.max_choice_universe)
                throw ResourceError("choice-function search over " + std::to_string(cand[i].size()) +
                                    " candidate values exceeds the budget of " +
                                    std::to_string(budget.max_choice_universe));
        std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
            tick();
            if (k == g.size())
                return sat_rows(R, p.ext_vars, partial);
            const Rows& c = cand[g[k]];
            for (std::size_t mask = (std::size_t{1} << c.size()) - 1; mask >= 1; --mask) {
                std::size_t before = partial.size();
                for (std::size_t j = 0; j < c.size(); ++j)
                    if (mask >> j & 1)
                        partial.push_back(c[j]);
                bool ok = true;
                for (const auto& d : p.rest_dc)
                    if (!sat_rows(d.get(), p.ext_vars, partial)) {
                        ok = false;
                        break;
                    }
                if (ok && dfs(k + 1))
                    return true;
                partial.resize(before);
            }
            return false;
        };
        return dfs(0);
    }
};

namespace {

void check_vocabulary(const Structure& st, const Formula& f)
{
    for (const auto& [id, node] : subformula_multiset(f))
        if (node->kind == Kind::Rel) {
            const Relation* r = st.relation(node->name);
            if (!r)
                throw DomainError("unknown relation symbol " + node->name);
            if (r->arity() != static_cast<int>(node->left.size()))
                throw DomainError("relation " + node->name + " has arity " + std::to_string(r->arity()));
        }
}

} // namespace

TeamEvaluator::TeamEvaluator(const Structure& structure, const Formula& f, const EvalBudget& budget)
{
    if (f->has_so)
        throw InvalidInput("team evaluation of a second-order formula");
    Formula g = to_nnf(f);
    check_vocabulary(structure, g);
    impl_ = std::make_unique<Impl>(structure, g, budget);
}

TeamEvaluator::~TeamEvaluator() = default;

const Formula& TeamEvaluator::formula() const
{
    return impl_->root;
}

bool TeamEvaluator::eval(const Team& team)
{
    const Formula& f = impl_->root;
    for (const auto& v : f->free)
        if (!team.has(v))
            throw DomainError("free variable " + v + " is not in the team domain");
    TT X;
    X.vars = f->free;
    std::vector<int> idx;
    for (const auto& v : X.vars)
        idx.push_back(team.index_of(v));
    for (const auto& r : team.rows()) {
        for (Element e : r)
            if (e < 0 || static_cast<std::size_t>(e) >= impl_->m)
                throw DomainError("team value outside the universe");
        X.rows.push_back(pick(r, idx));
    }
    canon(X.rows);
    impl_->reset_counters();
    return impl_->sat(f.get(), X);
}

bool eval_team(const Structure& structure, const Team& team, const Formula& f, const EvalBudget& budget)
{
    TeamEvaluator ev(structure, f, budget);
    return ev.eval(team);
}

Team restrict_team(const Structure& structure, const Team& team, const Formula& guard)
{
    if (!guard->flat())
        throw InvalidInput("invalid guard: restriction needs a first-order formula, got " + print(guard));
    for (const auto& v : guard->free)
        if (!team.has(v))
            throw DomainError("guard variable " + v + " is not in the team domain");
    CompiledFormula c(structure, guard, guard->free);
    std::vector<int> idx;
    for (const auto& v : guard->free)
        idx.push_back(team.index_of(v));
    Team out(team.domain());
    for (const auto& r : team.rows()) {
        Tuple t = pick(r, idx);
        if (c.eval(t.data()))
            out.insert(r);
    }
    return out;
}

} // namespace teamlogic
