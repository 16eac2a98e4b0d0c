#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace teamlogic {

// Elements are indices into the universe of a structure, in declaration order.
using Element = int;
using Tuple = std::vector<Element>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unknown variables, arity mismatches, values outside the universe.
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A search exceeded its budget; the answer is unknown, not false.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Input violates an operation's precondition (wrong fragment, wrong shape).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// Verdict of a syntactic or structural check; the diagnostic explains a failure.
struct CheckResult {
    bool ok = true;
    std::string diagnostic;
};

struct Vocabulary {
    std::vector<std::pair<std::string, int>> symbols;

    void add(const std::string& name, int arity);
    std::optional<int> arity(const std::string& name) const;
};

class Relation {
public:
    Relation() = default;
    explicit Relation(int arity);
    Relation(int arity, std::set<Tuple> tuples);

    int arity() const { return arity_; }
    const std::set<Tuple>& tuples() const { return tuples_; }
    bool contains(const Tuple& t) const { return tuples_.count(t) != 0; }
    void insert(Tuple t);
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }

    bool operator==(const Relation& o) const { return arity_ == o.arity_ && tuples_ == o.tuples_; }
    bool operator<(const Relation& o) const
    {
        return arity_ != o.arity_ ? arity_ < o.arity_ : tuples_ < o.tuples_;
    }

private:
    int arity_ = 1;
    std::set<Tuple> tuples_;
};

class Structure {
public:
    explicit Structure(std::vector<std::string> universe);

    std::size_t size() const { return universe_.size(); }
    const std::vector<std::string>& universe() const { return universe_; }
    Element element(std::string_view name) const;
    std::optional<Element> find_element(std::string_view name) const;
    const std::string& name(Element e) const { return universe_.at(static_cast<std::size_t>(e)); }

    void set_relation(const std::string& name, Relation rel);
    const Relation* relation(const std::string& name) const;
    bool holds(const std::string& name, const Tuple& t) const;
    const std::map<std::string, Relation>& relations() const { return relations_; }
    Vocabulary vocabulary() const;

private:
    std::vector<std::string> universe_;
    std::unordered_map<std::string, Element> index_;
    std::map<std::string, Relation> relations_;
};

using Assignment = std::map<std::string, Element>;

class Team {
public:
    Team() = default;
    explicit Team(std::vector<std::string> domain);
    Team(std::vector<std::string> domain, std::set<Tuple> rows);

    const std::vector<std::string>& domain() const { return domain_; }
    const std::set<Tuple>& rows() const { return rows_; }
    int index_of(const std::string& var) const;
    bool has(const std::string& var) const { return index_of(var) >= 0; }

    void insert(Tuple row);
    void insert(const Assignment& s);
    Assignment assignment(const Tuple& row) const;

    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    // Set equality; domains may list the same variables in different order.
    bool operator==(const Team& o) const;
    bool operator!=(const Team& o) const { return !(*this == o); }
    bool operator<(const Team& o) const;

private:
    std::vector<std::string> domain_;
    std::set<Tuple> rows_;
};

// X(ȳ)
Relation project_team(const Team& team, const std::vector<std::string>& vars);
// X restricted to the columns ȳ, as a team over ȳ.
Team project_columns(const Team& team, const std::vector<std::string>& vars);
// X↾x̄=ā
Team component_team(const Team& team, const std::vector<std::string>& anchor, const Tuple& value);
// X[x↦A]
Team extend_universal(const Team& team, const std::string& var, const Structure& structure);
// X[x↦F]; every image must be non-empty.
Team extend_choice(const Team& team, const std::string& var,
                   const std::function<std::set<Element>(const Tuple&)>& choice);
Team extend_choice(const Team& team, const std::string& var, const std::map<Tuple, std::set<Element>>& choice);

Team team_union(const Team& a, const Team& b);
bool is_subteam(const Team& sub, const Team& super);
// Same team with columns reordered to `domain`.
Team reorder(const Team& team, const std::vector<std::string>& domain);

// All k-tuples over {0..m-1} in lexicographic order.
std::vector<Tuple> all_tuples(std::size_t m, std::size_t k);
// Every team over `domain` (2^(m^k) of them), ordered by bitmask.
std::vector<Team> all_teams(const Structure& structure, const std::vector<std::string>& domain);

Structure parse_structure(std::string_view text);
std::string print_structure(const Structure& structure);
Team parse_team(std::string_view text, const Structure& structure);
std::string print_team(const Team& team, const Structure& structure);
// "(a,b) (b,c)"; an empty text gives the empty relation of the given arity.
Relation parse_relation(std::string_view text, const Structure& structure, int arity);
std::string print_relation(const Relation& rel, const Structure& structure);
std::string print_tuple(const Tuple& t, const Structure& structure);

std::string read_file(const std::string& path);

} // namespace teamlogic
