#pragma once

// Definitional team semantics, written directly from the clauses with exhaustive splits and
// exhaustive choice functions. Independent of the library evaluator; only usable on tiny teams.

#include "teamlogic/formulas.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace naive {

using teamlogic::Element;
using teamlogic::Formula;
using teamlogic::Kind;
using teamlogic::Structure;
using teamlogic::Tuple;

struct NTeam {
    std::vector<std::string> vars;
    std::set<Tuple> rows;
};

inline int col(const NTeam& x, const std::string& v)
{
    for (std::size_t i = 0; i < x.vars.size(); ++i)
        if (x.vars[i] == v)
            return static_cast<int>(i);
    throw std::runtime_error("naive: unbound variable " + v);
}

inline Tuple values(const NTeam& x, const Tuple& row, const std::vector<std::string>& vs)
{
    Tuple t;
    for (const auto& v : vs)
        t.push_back(row[static_cast<std::size_t>(col(x, v))]);
    return t;
}

inline std::set<Tuple> proj(const NTeam& x, const std::vector<std::string>& vs)
{
    std::set<Tuple> out;
    for (const auto& r : x.rows)
        out.insert(values(x, r, vs));
    return out;
}

inline bool holds_row(const Structure& st, const NTeam& x, const Tuple& row, const Formula& f)
{
    if (f->kind == Kind::Rel)
        return st.holds(f->name, values(x, row, f->left)) == f->positive;
    auto t = values(x, row, {f->left[0], f->right[0]});
    return (t[0] == t[1]) == f->positive;
}

// Drops column v if present (a requantified variable overwrites its old value).
inline NTeam drop(const NTeam& x, const std::string& v)
{
    int c = -1;
    for (std::size_t i = 0; i < x.vars.size(); ++i)
        if (x.vars[i] == v)
            c = static_cast<int>(i);
    if (c < 0)
        return x;
    NTeam out;
    for (std::size_t i = 0; i < x.vars.size(); ++i)
        if (static_cast<int>(i) != c)
            out.vars.push_back(x.vars[i]);
    for (const auto& r : x.rows) {
        Tuple t;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (static_cast<int>(i) != c)
                t.push_back(r[i]);
        out.rows.insert(t);
    }
    return out;
}

// The oracle ran out of work; the caller should skip the case.
struct Exhausted : std::runtime_error {
    Exhausted() : std::runtime_error("naive: work budget exhausted") {}
};

inline constexpr std::size_t kDefaultWork = 20'000'000;

class Evaluator {
public:
    explicit Evaluator(const Structure& st, std::size_t max_work = kDefaultWork) : st_(st), budget_(max_work) {}

    bool eval(const NTeam& x, const Formula& f)
    {
        auto key = std::make_tuple(f.get(), x.vars, x.rows);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        tick(x.rows.size() + 1);
        bool v = eval_node(x, f);
        memo_.emplace(std::move(key), v);
        return v;
    }

private:
    bool eval_node(const NTeam& x, const Formula& f)
    {
        switch (f->kind) {
        case Kind::Rel:
        case Kind::Eq:
            for (const auto& r : x.rows)
                if (!holds_row(st_, x, r, f))
                    return false;
            return true;
        case Kind::Inc: {
            auto l = proj(x, f->left), r = proj(x, f->right);
            for (const auto& t : l)
                if (!r.count(t))
                    return false;
            return true;
        }
        case Kind::Exc: {
            auto l = proj(x, f->left), r = proj(x, f->right);
            for (const auto& t : l)
                if (r.count(t))
                    return false;
            return true;
        }
        case Kind::Dep: {
            std::map<Tuple, Element> fn;
            for (const auto& r : x.rows) {
                auto k = values(x, r, f->left);
                auto v = values(x, r, f->right)[0];
                if (fn.count(k) && fn[k] != v)
                    return false;
                fn[k] = v;
            }
            return true;
        }
        case Kind::Indep: {
            auto l = proj(x, f->left), r = proj(x, f->right);
            auto both = f->left;
            both.insert(both.end(), f->right.begin(), f->right.end());
            auto lr = proj(x, both);
            for (const auto& a : l)
                for (const auto& b : r) {
                    Tuple t = a;
                    t.insert(t.end(), b.begin(), b.end());
                    if (!lr.count(t))
                        return false;
                }
            return true;
        }
        case Kind::And:
            return eval(x, f->a) && eval(x, f->b);
        case Kind::Or:
            return eval_or(x, f);
        case Kind::Forall: {
            NTeam y = drop(x, f->name);
            NTeam z{y.vars, {}};
            z.vars.push_back(f->name);
            for (const auto& r : y.rows)
                for (std::size_t a = 0; a < st_.size(); ++a) {
                    Tuple t = r;
                    t.push_back(static_cast<Element>(a));
                    z.rows.insert(t);
                }
            return eval(z, f->a);
        }
        case Kind::Exists:
            return eval_exists(x, f);
        default:
            throw std::runtime_error("naive: unsupported node");
        }
    }

    const Structure& st_;
    std::size_t budget_;
    std::map<std::tuple<const teamlogic::Node*, std::vector<std::string>, std::set<Tuple>>, bool> memo_;

    // Work is measured in rows touched.
    void tick(std::size_t w = 1)
    {
        if (budget_ < w)
            throw Exhausted();
        budget_ -= w;
    }

    // Every cover Y ∪ Z = X: each row goes left, right or both.
    bool eval_or(const NTeam& x, const Formula& f)
    {
        std::vector<Tuple> rows(x.rows.begin(), x.rows.end());
        std::vector<int> side(rows.size(), 0);
        while (true) {
            tick();
            NTeam y{x.vars, {}}, z{x.vars, {}};
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (side[i] != 1)
                    y.rows.insert(rows[i]);
                if (side[i] != 0)
                    z.rows.insert(rows[i]);
            }
            if (eval(y, f->a) && eval(z, f->b))
                return true;
            std::size_t i = 0;
            while (i < side.size() && ++side[i] == 3)
                side[i++] = 0;
            if (i == side.size())
                return false;
        }
    }

    // Every function F from rows to non-empty subsets of A.
    bool eval_exists(const NTeam& x, const Formula& f)
    {
        NTeam y = drop(x, f->name);
        std::vector<Tuple> rows(y.rows.begin(), y.rows.end());
        const unsigned full = (1u << st_.size()) - 1;
        std::vector<unsigned> pick(rows.size(), 1);
        while (true) {
            tick();
            NTeam z{y.vars, {}};
            z.vars.push_back(f->name);
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t a = 0; a < st_.size(); ++a)
                    if (pick[i] >> a & 1) {
                        Tuple t = rows[i];
                        t.push_back(static_cast<Element>(a));
                        z.rows.insert(t);
                    }
            if (eval(z, f->a))
                return true;
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] > full)
                pick[i++] = 1;
            if (i == pick.size())
                return false;
        }
    }
};

inline bool eval(const Structure& st, const std::vector<std::string>& vars, const std::set<Tuple>& rows,
                 const Formula& f, std::size_t max_work = kDefaultWork)
{
    Evaluator e(st, max_work);
    return e.eval(NTeam{vars, rows}, teamlogic::to_nnf(f));
}

// Every subset of A^k as a set of rows.
inline std::vector<std::set<Tuple>> all_row_sets(std::size_t m, std::size_t k)
{
    std::vector<Tuple> cells{{}};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Tuple> next;
        for (const auto& c : cells)
            for (std::size_t a = 0; a < m; ++a) {
                Tuple t = c;
                t.push_back(static_cast<Element>(a));
                next.push_back(t);
            }
        cells = next;
    }
    std::vector<std::set<Tuple>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells.size()); ++mask) {
        std::set<Tuple> s;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (mask >> i & 1)
                s.insert(cells[i]);
        out.push_back(s);
    }
    return out;
}

// Family of satisfying row sets over `vars`.
inline std::set<std::set<Tuple>> family(const Structure& st, const std::vector<std::string>& vars, const Formula& f,
                                        std::size_t max_work = kDefaultWork)
{
    std::set<std::set<Tuple>> out;
    Formula g = teamlogic::to_nnf(f);
    Evaluator e(st, max_work);
    for (const auto& rows : all_row_sets(st.size(), vars.size())) {
        if (e.eval(NTeam{vars, rows}, g))
            out.insert(rows);
    }
    return out;
}

// Closure under all unions, including the empty union.
inline std::set<std::set<Tuple>> union_closure(const std::set<std::set<Tuple>>& fam)
{
    std::set<std::set<Tuple>> out{{}};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& a : std::set<std::set<Tuple>>(out))
            for (const auto& b : fam) {
                auto u = a;
                u.insert(b.begin(), b.end());
                grew |= out.insert(u).second;
            }
    }
    return out;
}

// Classical first-order truth with some relation symbols overridden.
using Overlay = std::map<std::string, std::set<Tuple>>;

inline bool fo(const Structure& st, const Overlay& ov, std::map<std::string, Element>& s, const Formula& f)
{
    auto val = [&](const std::vector<std::string>& vs) {
        Tuple t;
        for (const auto& v : vs)
            t.push_back(s.at(v));
        return t;
    };
    switch (f->kind) {
    case Kind::Rel: {
        auto t = val(f->left);
        auto it = ov.find(f->name);
        bool in = it != ov.end() ? it->second.count(t) > 0 : st.holds(f->name, t);
        return in == f->positive;
    }
    case Kind::Eq:
        return (s.at(f->left[0]) == s.at(f->right[0])) == f->positive;
    case Kind::Not:
        return !fo(st, ov, s, f->a);
    case Kind::And:
        return fo(st, ov, s, f->a) && fo(st, ov, s, f->b);
    case Kind::Or:
        return fo(st, ov, s, f->a) || fo(st, ov, s, f->b);
    case Kind::Exists:
    case Kind::Forall: {
        auto saved = s.find(f->name) == s.end() ? std::optional<Element>() : std::optional<Element>(s[f->name]);
        bool ex = f->kind == Kind::Exists;
        bool result = !ex;
        for (std::size_t a = 0; a < st.size(); ++a) {
            s[f->name] = static_cast<Element>(a);
            if (fo(st, ov, s, f->a) == ex) {
                result = ex;
                break;
            }
        }
        if (saved)
            s[f->name] = *saved;
        else
            s.erase(f->name);
        return result;
    }
    default:
        throw std::runtime_error("naive: not first-order");
    }
}

inline std::vector<Tuple> cells(std::size_t m, std::size_t k)
{
    std::vector<Tuple> out{{}};
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Tuple> next;
        for (const auto& c : out)
            for (std::size_t a = 0; a < m; ++a) {
                Tuple t = c;
                t.push_back(static_cast<Element>(a));
                next.push_back(t);
            }
        out = next;
    }
    return out;
}

// Relations X with A ⊨ φ(X), by enumerating X and every interpretation of the quantified relations.
inline std::set<std::set<Tuple>> so_family(const Structure& st, const teamlogic::SOFormula& phi)
{
    std::vector<std::pair<std::string, std::vector<Tuple>>> slots;
    for (const auto& [n, a] : phi.quantified)
        slots.emplace_back(n, cells(st.size(), static_cast<std::size_t>(a)));
    std::size_t bits = 0;
    for (const auto& s : slots)
        bits += s.second.size();
    auto xcells = cells(st.size(), static_cast<std::size_t>(phi.free_arity));
    std::set<std::set<Tuple>> out;
    for (std::size_t xm = 0; xm < (std::size_t{1} << xcells.size()); ++xm) {
        Overlay ov;
        for (std::size_t i = 0; i < xcells.size(); ++i)
            if (xm >> i & 1)
                ov[phi.free_relation].insert(xcells[i]);
        ov[phi.free_relation];
        // Guarded shape: every tuple of X needs its own witnesses.
        auto sat_with = [&](const std::map<std::string, Element>& base) {
            for (std::size_t qm = 0; qm < (std::size_t{1} << bits); ++qm) {
                Overlay o = ov;
                std::size_t bit = 0;
                for (const auto& [n, cs] : slots) {
                    auto& rel = o[n];
                    for (const auto& c : cs)
                        if (qm >> bit++ & 1)
                            rel.insert(c);
                }
                auto s = base;
                if (fo(st, o, s, phi.matrix))
                    return true;
            }
            return false;
        };
        bool ok = true;
        if (phi.guard.empty()) {
            ok = sat_with({});
        } else {
            for (const auto& t : ov[phi.free_relation]) {
                std::map<std::string, Element> s;
                for (std::size_t i = 0; i < phi.guard.size(); ++i)
                    s[phi.guard[i]] = t[i];
                if (!sat_with(s)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok)
            out.insert(ov[phi.free_relation]);
    }
    return out;
}

} // namespace naive
