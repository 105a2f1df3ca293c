#pragma once

#include <string>

#include "sahlq/fo.hpp"
#include "sahlq/syntax.hpp"

namespace sahlq {

// x ↦ □x, (φ→ψ) ↦ □(φ→ψ), ¬φ ↦ □¬φ; constants, ∧ and ∨ pointwise.
Formula gmt_translate(const Formula& f);
Quasiequation gmt_quasiequation(const Quasiequation& q);

// Predicate symbol standing for a propositional variable.
std::string predicate_name(const std::string& var);
FoFormula standard_translation(const Formula& m, const std::string& world);

// First-order frame condition over ≤ equivalent, on every poset X, to
// Up(X) validating q. Modal inputs skip the translation and keep R.
// Throws EliminationStuck when a premise falls outside the Sahlqvist shapes.
FoFormula correspondent(const Quasiequation& q);
// The same sentence before simplification.
FoFormula correspondent_raw(const Quasiequation& q);

// Equivalence-preserving cleanup over posets (≤ reflexive and transitive).
FoFormula simplify_fo(const FoFormula& f);
// Renames bound variables to x, y, z, u, v, w, x1, x2, ... by nesting depth.
FoFormula canonical_names(const FoFormula& f);

}  // namespace sahlq
