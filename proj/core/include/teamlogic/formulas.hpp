#pragma once

#include "teamlogic/core.hpp"

#include <memory>

namespace teamlogic {

enum class Kind {
    Rel,      // R(t̄) or ¬R(t̄)
    Eq,       // t = t' or t ≠ t'
    Inc,      // left ⊆ right
    Exc,      // left | right
    Dep,      // dep(left; right[0])
    Indep,    // left ⊥ right
    UGame,    // ∪-game atom of width k with target tuple `left`
    And,
    Or,
    Not,      // only before negation normal form
    Exists,
    Forall,
    SOExists  // ∃R̄ inside a second-order formula; never part of a team formula
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Kind kind;
    bool positive = true;
    std::string name;
    std::vector<std::string> left;
    std::vector<std::string> right;
    int k = 0;
    std::vector<std::pair<std::string, int>> decls;
    Formula a;
    Formula b;

    // Derived at construction.
    std::vector<std::string> free;    // sorted
    std::vector<std::string> bound;   // sorted; every variable bound somewhere below
    bool team_atoms = false;          // contains a dependency atom
    bool has_inc = false;
    bool has_exc = false;
    bool has_dep = false;
    bool has_indep = false;
    bool has_ugame = false;
    bool has_not_over_atom = false;
    bool has_so = false;
    // Variables sitting at a common position on both sides of every inclusion/exclusion atom
    // (and among the determiners of every dependence atom). `guards_all` marks "no constraint".
    std::vector<std::string> guards;
    bool guards_all = true;

    bool flat() const { return !team_atoms && !has_so; }
    bool downward_closed() const { return !has_inc && !has_indep && !has_ugame && !has_so; }
    bool inclusion_only() const
    {
        return !has_exc && !has_dep && !has_indep && !has_ugame && !has_so && !has_not_over_atom;
    }
};

// Builders.
Formula rel(const std::string& symbol, std::vector<std::string> terms, bool positive = true);
Formula eq(const std::string& t1, const std::string& t2, bool positive = true);
Formula inc(std::vector<std::string> left, std::vector<std::string> right);
Formula exc(std::vector<std::string> left, std::vector<std::string> right);
Formula dep(std::vector<std::string> determiners, const std::string& determined);
Formula indep(std::vector<std::string> left, std::vector<std::string> right);
Formula ugame(int k, std::vector<std::string> targets);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula neg(Formula a);
Formula exists(const std::string& var, Formula body);
Formula forall(const std::string& var, Formula body);
Formula exists(const std::vector<std::string>& vars, Formula body);
Formula forall(const std::vector<std::string>& vars, Formula body);
Formula so_exists(std::vector<std::pair<std::string, int>> decls, Formula body);
// Left-nested conjunction of a non-empty list.
Formula conj(const std::vector<Formula>& parts);
Formula disj(const std::vector<Formula>& parts);
// Same node with new children.
Formula rebuild(const Node& n, Formula a, Formula b);

bool equal(const Formula& x, const Formula& y);
std::string print(const Formula& f);

// Variable names of the form "__fresh_*" are produced by transforms and rejected in user input.
inline constexpr const char* kFreshPrefix = "__fresh_";

struct ParseOptions {
    const Vocabulary* vocabulary = nullptr;
    bool allow_reserved = false;
    bool allow_so = false;
};

Formula parse_formula(std::string_view text, const ParseOptions& opts = {});

// ∃R̄ φ′ with one designated free relation X, or the guarded shape ∀x̄(Xx̄ → ∃R̄ φ′)
// when `guard` is non-empty.
struct SOFormula {
    std::vector<std::pair<std::string, int>> quantified;
    std::string free_relation = "X";
    int free_arity = 1;
    std::vector<std::string> guard;
    Formula matrix;
};

SOFormula parse_so_formula(std::string_view text, const std::string& free_relation = "X",
                           std::optional<int> free_arity = std::nullopt, const ParseOptions& opts = {});
std::string print_so(const SOFormula& phi);
bool equal(const SOFormula& x, const SOFormula& y);

// Negation normal form; throws InvalidInput when a negation covers a dependency atom.
Formula to_nnf(const Formula& f);
// nnf(¬guard) ∨ (guard ∧ body); guard must be first-order.
Formula arrow(const Formula& guard, const Formula& body);

std::set<std::string> free_variables(const Formula& f);
std::vector<std::pair<std::string, Formula>> subformula_multiset(const Formula& f);
// Child occurrence ids: root is "r", the i-th child of "p" is "p.i".
std::string child_id(const std::string& parent, int i);

// Capture-avoiding renaming of free variables.
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming);
// Renames bound variables that collide with `avoid` (or shadow an outer binder) to fresh names.
Formula rename_bound_apart(const Formula& f, const std::set<std::string>& avoid);
// Renames relation symbols.
Formula rename_relations(const Formula& f, const std::map<std::string, std::string>& renaming);
std::set<std::string> all_variables(const Formula& f);
std::set<std::string> relation_symbols(const Formula& f);
std::vector<Formula> conjuncts(const Formula& f);

CheckResult check_myopic_so(const SOFormula& phi);
CheckResult check_x_myopic(const Formula& phi, const std::vector<std::string>& anchor);

// Layout variable names of the ∪-game atom of width k.
std::vector<std::string> ugame_layout_variables(int k);

} // namespace teamlogic
