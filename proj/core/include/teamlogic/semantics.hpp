#pragma once

#include "teamlogic/formulas.hpp"

#include <chrono>
#include <cstdint>
#include <memory>

namespace teamlogic {

struct EvalBudget {
    // Largest team on which a disjunction may be split by enumeration.
    std::size_t max_split_rows = 12;
    // Largest per-row candidate set for the general choice-function search.
    std::size_t max_choice_universe = 4;
    // Work counter limit across one evaluation.
    std::uint64_t max_steps = 50'000'000;
    std::optional<std::chrono::milliseconds> time_limit;
    // Second-order search: cells of quantified relations, and tuples of the free relation.
    std::size_t max_so_bits = 24;
    std::size_t max_relation_tuples = 16;
    // Rows of A^k allowed when enumerating all teams.
    std::size_t max_team_rows = 20;
};

bool eval_classical(const Structure& structure, const Assignment& s, const Formula& f);

// X↾φ
Team restrict_team(const Structure& structure, const Team& team, const Formula& guard);

// Lax team semantics. Formulas are brought into negation normal form first.
bool eval_team(const Structure& structure, const Team& team, const Formula& f, const EvalBudget& budget = {});

// Reusable evaluator that keeps its memo table across queries on the same formula.
class TeamEvaluator {
public:
    TeamEvaluator(const Structure& structure, const Formula& f, const EvalBudget& budget = {});
    ~TeamEvaluator();
    TeamEvaluator(const TeamEvaluator&) = delete;
    TeamEvaluator& operator=(const TeamEvaluator&) = delete;

    bool eval(const Team& team);
    const Formula& formula() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

bool eval_so(const Structure& structure, const Relation& free_relation, const SOFormula& phi,
             const EvalBudget& budget = {});
std::vector<Relation> satisfying_relations(const Structure& structure, const SOFormula& phi,
                                           const EvalBudget& budget = {});
std::vector<Team> satisfying_teams(const Structure& structure, const Formula& phi,
                                   const std::vector<std::string>& domain, const EvalBudget& budget = {});

// Occurrence id -> team.
using Labelling = std::map<std::string, Team>;

std::optional<Labelling> find_witness_labelling(const Structure& structure, const Team& team, const Formula& phi,
                                                const EvalBudget& budget = {});
// Checks the witness conditions; the diagnostic names the first failing node.
CheckResult check_labelling(const Structure& structure, const Team& team, const Formula& phi,
                            const Labelling& labelling, const EvalBudget& budget = {});

struct UnionClosureVerdict {
    bool closed = true;
    std::optional<std::pair<Team, Team>> counterexample;
    std::size_t family_size = 0;
    std::string note;
};

// Binary unions suffice: a finite family closed under binary unions is closed under all unions.
UnionClosureVerdict check_union_closed_empirical(const Structure& structure, const Formula& phi,
                                                 const std::vector<std::string>& domain,
                                                 const EvalBudget& budget = {});

// φ = ∃s̄(s̄ ⊆ x̄ ∧ ψ): searches F with F(s) ⊆ X(x̄) so that the unguarded ψ′ holds on every x̄-component.
bool eval_normalform_myopic(const Structure& structure, const Team& team, const Formula& phi,
                            const std::vector<std::string>& anchor, const EvalBudget& budget = {});

// Family helpers.
// All unions of subfamilies, including the empty union.
std::vector<Team> union_closure(const std::vector<Team>& family, const std::vector<std::string>& domain);
std::vector<Relation> union_closure(const std::vector<Relation>& family, int arity);

} // namespace teamlogic
