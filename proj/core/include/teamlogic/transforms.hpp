#pragma once

#include "teamlogic/formulas.hpp"

namespace teamlogic {

// ∀x̄(Xx̄ → ∃R̄ φ′) as ∃R̄′ ∀x̄(¬Xx̄ ∨ (Xx̄ ∧ φ′[R ↦ R′(x̄, ·)])); unguarded inputs are returned unchanged.
SOFormula so_prenex(const SOFormula& phi);

// μ(X) = ∀x̄(Xx̄ → ∃Y(Y ⊆ X ∧ Yx̄ ∧ φ(Y))), with Y and x̄ fresh.
SOFormula myopic_companion_so(const SOFormula& phi);

// Every inclusion/exclusion atom ū ⊆ v̄ becomes x̄ū ⊆ x̄v̄.
Formula guard_atoms(const Formula& phi, const std::vector<std::string>& anchor);
// Strips the anchor prefix from every inclusion/exclusion atom.
Formula unguard_atoms(const Formula& phi, const std::vector<std::string>& anchor);

// dep(ū; z) ↦ ∀v(ūv | ūz ∨ z = v), recursively.
Formula expand_dependence(const Formula& phi);

struct CompanionOptions {
    bool expand_dependence = false;
};

// μ(x̄) = ∃ȳ(ȳ ⊆ x̄ ∧ x̄x̄ ⊆ x̄ȳ ∧ φ*(x̄, ȳ)) where φ* is the x̄-guarded version of φ(ȳ).
Formula team_myopic_companion(const Formula& phi, const std::vector<std::string>& anchor,
                              const CompanionOptions& options = {});

struct TransformReport {
    std::string input;
    std::string output;
    std::vector<std::string> fresh_symbols;
    CheckResult check;
};

// φ_win(W) over the vocabulary V0, V1, E, I, Eex; W is a unary relation symbol.
Formula template_phi_win();
// ψ_win(y), ψ_target(z) and θ_T(x) over V0, V1, E, I, T, Eex.
Formula template_psi_win();
Formula template_psi_target();
Formula template_theta_target();

} // namespace teamlogic
