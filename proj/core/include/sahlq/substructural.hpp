#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sahlq/algebra.hpp"
#include "sahlq/fo.hpp"
#include "sahlq/metalogic.hpp"

namespace sahlq {

// An FL_e algebra from its order and product; meet, join and → are derived
// (→ as the residual of ·). Throws LawViolation when no residual exists.
FiniteAlgebra make_fle(const FinitePoset& order, std::vector<std::uint8_t> fus, int zero, int one);
FiniteAlgebra heyting_as_fle(const FiniteAlgebra& ha);

// First failing law (lattice, commutative monoid, residuation) with its witness.
std::optional<std::string> fle_violation(const FiniteAlgebra& a);
bool fle_validate(const FiniteAlgebra& a);

// 1 ∧ (1 → 0) ∧ (0 → 1) ∧ (1 → (1 → 1)) ∧ ((1 → 1) → 1)
Formula bot_formula();
int bot_element(const FiniteAlgebra& a);
Formula ill_neg(const Formula& f);  // f → ⊥

WitnessFamily ill_witnesses(int k);
LogicProfile ill_profile(int k);
Formula characteristic_formula_ill(const Quasiequation& q, int k = 1);

struct CongruenceLattice {
  int n = 0;
  std::vector<std::vector<int>> classes;  // class[i] = least element of i's block
  std::vector<Bits> pairs;                // bit i*n+j set iff i θ j
  int bottom = 0, top = 0;
  std::vector<int> meet_irreducible;

  int join(int a, int b) const;
  int meet(int a, int b) const;
  int index_of(Bits p) const;
};
std::string partition_label(const std::vector<int>& cls);
// Least congruence identifying each listed pair.
std::vector<int> congruence_generated(const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& pairs);
bool is_congruence(const FiniteAlgebra& a, const std::vector<int>& cls);
CongruenceLattice congruences(const FiniteAlgebra& a, int bound = 8);
FinitePoset spec_congruences(const FiniteAlgebra& a, int bound = 8);

// Whether the variety generated by A carries the k-witnesses that Φ's
// connectives need: DT for →, IL for ¬ and 0. PC always holds.
struct IllGate {
  bool needs_dt = false, dt = true;
  bool needs_il = false, il = true;
  std::string reason;
  bool ok() const { return (!needs_dt || dt) && (!needs_il || il); }
};
IllGate ill_gate(const FiniteAlgebra& a, const Quasiequation& q, int k);

struct LinearReport {
  Formula formula;
  bool lhs = false, rhs = false;
  IllGate gate;
  FinitePoset spec;
  bool sound() const { return !gate.ok() || !lhs || rhs; }
};
LinearReport check_linear_correspondence(const FiniteAlgebra& a, const Quasiequation& q, int k = 1);
LinearReport check_linear_correspondence(const FiniteAlgebra& a, const Quasiequation& q, int k,
                                         const FoFormula& correspondent);

// FL_e algebras of the given sizes, one per isomorphism type.
std::vector<FiniteAlgebra> enumerate_fle(int max_size, int min_size = 1);

}  // namespace sahlq
