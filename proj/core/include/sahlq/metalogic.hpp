#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sahlq/algebra.hpp"
#include "sahlq/duality.hpp"
#include "sahlq/syntax.hpp"

namespace sahlq {

using FormulaSet = std::vector<Formula>;  // ordered, duplicate-free

// Witness schemes for the inconsistency lemma, the deduction theorem and
// proof by cases. Absent schemes are empty functions.
struct WitnessFamily {
  std::function<FormulaSet(const FormulaSet&)> il;
  std::function<FormulaSet(const FormulaSet&, const FormulaSet&)> dt;
  std::function<FormulaSet(const FormulaSet&, const FormulaSet&)> pc;
};

struct LogicProfile {
  std::string name;
  WitnessFamily w;
  FormulaSet delta;                       // Δ(x1, x2)
  std::function<Formula(Formula)> top;    // a theorem ⊤(x)
  bool conjunction = false;
};

LogicProfile ipc_profile();
// Keeps only the named schemes.
LogicProfile restrict_profile(LogicProfile p, bool il, bool dt, bool pc);
// "ipc", "ill" (witness power k) or "ipc:<il,dt,pc subset>".
std::optional<LogicProfile> profile_by_name(const std::string& name, int k = 1);

// The first connective among 0, ¬, →, ∨ whose witness is missing.
std::optional<std::string> missing_witness(const Formula& f, const LogicProfile& l);
bool compatible(const Formula& f, const LogicProfile& l);
bool compatible(const Quasiequation& q, const LogicProfile& l);

FormulaSet insert_all(FormulaSet into, const FormulaSet& more);

// φ^k over the doubled variables x{i}_{j}.
FormulaSet phi_k(const Formula& f, int k, const LogicProfile& l);

// Fresh variable x{N+1} above every base index in q.
Formula fresh_y(const Quasiequation& q);
FormulaSet characteristic_theorems_dt(const Quasiequation& q, const LogicProfile& l, int k);
FormulaSet characteristic_theorems_pc(const Quasiequation& q, const LogicProfile& l, int k);
FormulaSet a_phi(const Quasiequation& q, int kmax);

struct Sequent {
  FormulaSet extra;  // formulas added to Γ
};

// Premises Γ, φ_i^k(γ) ▷ ψ for each i, concluding Γ ▷ ψ.
struct MetaRule {
  int k = 1;
  bool simplified = false;  // the k = 1 family suffices (profile has a conjunction)
  std::vector<std::string> context;  // empty: symbolic Γ
  std::vector<Sequent> premises;
};
std::vector<MetaRule> metarules(const Quasiequation& q, const LogicProfile& l, int kmax, int context_size = 0);
std::string to_text(const MetaRule& r);
bool same_rule(const MetaRule& a, const MetaRule& b);
// Rule families built directly from witnesses, for comparison.
MetaRule eml_rule(const LogicProfile& l, int n);
MetaRule btwl_rule(const LogicProfile& l, int n, int k);
// γ_i^j variables replace x_i^j.
Formula to_gamma(const Formula& f);

// Lattice-filter generation: ↑⋀X.
Bits ipc_filter_generate(const FiniteAlgebra& a, Bits x);
// Principal filters ordered by ⊇, operations synthesized from that order.
FiniteAlgebra compact_filter_semilattice(const FiniteAlgebra& a);
FilterPoset spec_ipc(const FiniteAlgebra& a);

// Checks Fg(φ^k(a⃗)) = φ^{Fic}(Fg(a_1⃗), ...) over every tuple; returns a
// description of the first failure.
std::optional<std::string> check_filter_generation(const FiniteAlgebra& a, const Formula& f, int k);

}  // namespace sahlq
