#pragma once

#include "sahlq/algebra.hpp"
#include "sahlq/syntax.hpp"

namespace sahlq::fixtures {

FinitePoset v_poset();  // a root below two incomparable points

FiniteAlgebra chain(int n);  // n-element Heyting chain
FiniteAlgebra diamond();     // Up of the 2-antichain
FiniteAlgebra n5();          // 0 < a < b < 1, 0 < c < 1, as a PSL

// Eight-element PSL with elements 0, a1, a2, a, c, b3, b, 1 that validates
// the context-free rule but refutes WEML at x=a, y=b, z=c. b3 covers a2.
FiniteAlgebra weml_counterexample();
// The same order with the right-hand atom placed only above 0; it has no
// pseudocomplement for a1.
FinitePoset weml_counterexample_unrepaired();
// ¬x ≤ z & ¬¬x ≤ z ⟹ z ≈ 1
QuasiInequality context_free_weml();

FiniteAlgebra godel_chain(int n);  // FL_e with · = ∧ on an n-chain
FiniteAlgebra boolean2();
FiniteAlgebra mv4();  // Łukasiewicz 4-chain
FiniteAlgebra heyting_fle(const FiniteAlgebra& ha);
FiniteAlgebra up_v_fle();
FiniteAlgebra broken_associativity();

}  // namespace sahlq::fixtures
