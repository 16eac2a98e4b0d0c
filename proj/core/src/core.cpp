#include "teamlogic/core.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace teamlogic {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column)
{
}

void Vocabulary::add(const std::string& name, int arity)
{
    if (arity < 1)
        throw DomainError("relation symbol " + name + " must have positive arity");
    if (this->arity(name))
        throw DomainError("duplicate relation symbol " + name);
    symbols.emplace_back(name, arity);
}

std::optional<int> Vocabulary::arity(const std::string& name) const
{
    for (const auto& [n, a] : symbols)
        if (n == name)
            return a;
    return std::nullopt;
}

Relation::Relation(int arity) : arity_(arity)
{
    if (arity < 1)
        throw DomainError("relations of arity 0 are not supported");
}

Relation::Relation(int arity, std::set<Tuple> tuples) : Relation(arity)
{
    for (const auto& t : tuples)
        insert(t);
}

void Relation::insert(Tuple t)
{
    if (static_cast<int>(t.size()) != arity_)
        throw DomainError("tuple of length " + std::to_string(t.size()) + " in relation of arity " +
                          std::to_string(arity_));
    tuples_.insert(std::move(t));
}

Structure::Structure(std::vector<std::string> universe) : universe_(std::move(universe))
{
    if (universe_.empty())
        throw DomainError("universe must be non-empty");
    for (std::size_t i = 0; i < universe_.size(); ++i) {
        if (!index_.emplace(universe_[i], static_cast<Element>(i)).second)
            throw DomainError("duplicate element " + universe_[i]);
    }
}

Element Structure::element(std::string_view name) const
{
    auto e = find_element(name);
    if (!e)
        throw DomainError("unknown element " + std::string(name));
    return *e;
}

std::optional<Element> Structure::find_element(std::string_view name) const
{
    auto it = index_.find(std::string(name));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

void Structure::set_relation(const std::string& name, Relation rel)
{
    for (const auto& t : rel.tuples())
        for (Element e : t)
            if (e < 0 || static_cast<std::size_t>(e) >= universe_.size())
                throw DomainError("relation " + name + " mentions an element outside the universe");
    relations_[name] = std::move(rel);
}

const Relation* Structure::relation(const std::string& name) const
{
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
}

bool Structure::holds(const std::string& name, const Tuple& t) const
{
    const Relation* r = relation(name);
    if (!r)
        throw DomainError("unknown relation symbol " + name);
    return r->contains(t);
}

Vocabulary Structure::vocabulary() const
{
    Vocabulary v;
    for (const auto& [name, rel] : relations_)
        v.add(name, rel.arity());
    return v;
}

Team::Team(std::vector<std::string> domain) : domain_(std::move(domain))
{
    std::vector<std::string> sorted = domain_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("team domain lists a variable twice");
}

Team::Team(std::vector<std::string> domain, std::set<Tuple> rows) : Team(std::move(domain))
{
    for (const auto& r : rows)
        insert(r);
}

int Team::index_of(const std::string& var) const
{
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (domain_[i] == var)
            return static_cast<int>(i);
    return -1;
}

void Team::insert(Tuple row)
{
    if (row.size() != domain_.size())
        throw DomainError("row width does not match the team domain");
    rows_.insert(std::move(row));
}

void Team::insert(const Assignment& s)
{
    Tuple row;
    row.reserve(domain_.size());
    for (const auto& v : domain_) {
        auto it = s.find(v);
        if (it == s.end())
            throw DomainError("assignment is not total on the team domain (missing " + v + ")");
        row.push_back(it->second);
    }
    if (s.size() != domain_.size())
        throw DomainError("assignment binds variables outside the team domain");
    rows_.insert(std::move(row));
}

Assignment Team::assignment(const Tuple& row) const
{
    Assignment s;
    for (std::size_t i = 0; i < domain_.size(); ++i)
        s[domain_[i]] = row.at(i);
    return s;
}

bool Team::operator==(const Team& o) const
{
    if (domain_ == o.domain_)
        return rows_ == o.rows_;
    if (domain_.size() != o.domain_.size())
        return false;
    for (const auto& v : domain_)
        if (!o.has(v))
            return false;
    return reorder(o, domain_).rows_ == rows_;
}

bool Team::operator<(const Team& o) const
{
    if (domain_ != o.domain_)
        return domain_ < o.domain_;
    return rows_ < o.rows_;
}

namespace {

std::vector<int> column_indices(const Team& team, const std::vector<std::string>& vars)
{
    std::vector<int> idx;
    idx.reserve(vars.size());
    for (const auto& v : vars) {
        int i = team.index_of(v);
        if (i < 0)
            throw DomainError("variable " + v + " is not in the team domain");
        idx.push_back(i);
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

} // namespace

Relation project_team(const Team& team, const std::vector<std::string>& vars)
{
    if (vars.empty())
        throw DomainError("projection onto an empty variable tuple");
    auto idx = column_indices(team, vars);
    Relation r(static_cast<int>(vars.size()));
    for (const auto& row : team.rows())
        r.insert(pick(row, idx));
    return r;
}

Team project_columns(const Team& team, const std::vector<std::string>& vars)
{
    auto idx = column_indices(team, vars);
    Team out(vars);
    for (const auto& row : team.rows())
        out.insert(pick(row, idx));
    return out;
}

Team component_team(const Team& team, const std::vector<std::string>& anchor, const Tuple& value)
{
    if (anchor.size() != value.size())
        throw DomainError("anchor and value have different lengths");
    auto idx = column_indices(team, anchor);
    Team out(team.domain());
    for (const auto& row : team.rows())
        if (pick(row, idx) == value)
            out.insert(row);
    return out;
}

Team extend_universal(const Team& team, const std::string& var, const Structure& structure)
{
    if (team.has(var))
        throw DomainError("variable " + var + " already in the team domain");
    auto dom = team.domain();
    dom.push_back(var);
    Team out(dom);
    for (const auto& row : team.rows()) {
        for (std::size_t a = 0; a < structure.size(); ++a) {
            Tuple r = row;
            r.push_back(static_cast<Element>(a));
            out.insert(std::move(r));
        }
    }
    return out;
}

Team extend_choice(const Team& team, const std::string& var,
                   const std::function<std::set<Element>(const Tuple&)>& choice)
{
    if (team.has(var))
        throw DomainError("variable " + var + " already in the team domain");
    auto dom = team.domain();
    dom.push_back(var);
    Team out(dom);
    for (const auto& row : team.rows()) {
        auto image = choice(row);
        if (image.empty())
            throw InvalidInput("choice function maps a row to the empty set");
        for (Element a : image) {
            Tuple r = row;
            r.push_back(a);
            out.insert(std::move(r));
        }
    }
    return out;
}

Team extend_choice(const Team& team, const std::string& var, const std::map<Tuple, std::set<Element>>& choice)
{
    return extend_choice(team, var, [&](const Tuple& row) {
        auto it = choice.find(row);
        if (it == choice.end())
            throw InvalidInput("choice function is not total on the team");
        return it->second;
    });
}

Team reorder(const Team& team, const std::vector<std::string>& domain)
{
    if (domain.size() != team.domain().size())
        throw DomainError("reorder needs a permutation of the team domain");
    return project_columns(team, domain);
}

Team team_union(const Team& a, const Team& b)
{
    Team out = a;
    Team bb = a.domain() == b.domain() ? b : reorder(b, a.domain());
    for (const auto& r : bb.rows())
        out.insert(r);
    return out;
}

bool is_subteam(const Team& sub, const Team& super)
{
    Team s = sub.domain() == super.domain() ? sub : reorder(sub, super.domain());
    return std::includes(super.rows().begin(), super.rows().end(), s.rows().begin(), s.rows().end());
}

std::vector<Tuple> all_tuples(std::size_t m, std::size_t k)
{
    std::vector<Tuple> out;
    Tuple t(k, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (static_cast<std::size_t>(++t[i]) < m)
                break;
            t[i] = 0;
            if (i == 0) {
                return out;
            }
        }
        if (k == 0)
            return out;
    }
}

std::vector<Team> all_teams(const Structure& structure, const std::vector<std::string>& domain)
{
    auto rows = all_tuples(structure.size(), domain.size());
    if (rows.size() > 20)
        throw ResourceError("too many candidate rows to enumerate all teams");
    std::vector<Team> out;
    std::size_t n = rows.size();
    out.reserve(std::size_t{1} << n);
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Team t(domain);
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                t.insert(rows[i]);
        out.push_back(std::move(t));
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace teamlogic
