#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sahlq/algebra.hpp"

namespace sahlq {

// Filters of a finite semilattice are exactly the principal upsets.
std::vector<Bits> filters(const FiniteAlgebra& a);
bool is_filter(const FiniteAlgebra& a, Bits s);
bool is_prime_filter(const FiniteAlgebra& a, Bits s);

// A poset whose points are subsets of an algebra's carrier.
struct FilterPoset {
  FinitePoset poset;
  std::vector<Bits> sets;
  int index_of(Bits s) const;
};

// Meet-irreducible elements of a closure system given as a list of closed sets.
std::vector<Bits> meet_irreducibles(const std::vector<Bits>& closed, Bits whole);
FilterPoset inclusion_poset(std::vector<Bits> sets, const std::vector<std::string>& element_labels);

// A_*: meet-irreducible filters ordered by inclusion.
FilterPoset meet_irreducible_filters(const FiniteAlgebra& a);

// Sets containing 1 and closed under modus ponens. Needs only the → table;
// without a `one` constant, 1 is read off as a → a.
std::vector<Bits> implicative_filters(const FiniteAlgebra& a);
FilterPoset meet_irreducible_implicative_filters(const FiniteAlgebra& a);
// Order of a Hilbert algebra: a ≤ b iff a → b = 1.
FiniteAlgebra hilbert_algebra(std::vector<std::string> labels, std::vector<std::uint8_t> imp);

struct PartialMap {
  FinitePoset src, dst;
  Bits dom = 0;
  std::vector<int> map;  // map[x] for x in dom, -1 elsewhere

  bool defined(int x) const { return test_bit(dom, x); }
};

enum MapTag : unsigned {
  mOrderPreserving = 1u << 0,
  mPartialNegative = 1u << 1,
  mPartialPositive = 1u << 2,
  mPartialPMorphism = 1u << 3,
  mAlmostTotal = 1u << 4,
  mTotal = 1u << 5,
  mNegativePMorphism = 1u << 6,
  mPMorphism = 1u << 7,
};
std::vector<std::string> map_tag_names(unsigned tags);
unsigned check_partial_map_kind(const PartialMap& p);
// Arrow kind attached to each variety.
unsigned required_arrow(Variety v);
bool is_arrow(const PartialMap& p, Variety v);
bool surjective(const PartialMap& p);

struct LowerStar {
  FilterPoset a_star, b_star;
  PartialMap map;  // B_* ⇀ A_*
  unsigned tags = 0;
};
// f_* for a homomorphism f : A → B in the language of v.
LowerStar lower_star(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<int>& f, Variety v);

struct UpOfMap {
  FiniteAlgebra up_y, up_x;
  std::vector<int> map;  // Up(Y) → Up(X)
  std::optional<std::string> failure;  // homomorphism check
};
UpOfMap up_of_map(const PartialMap& p, Variety v);

// a ↦ {F ∈ A_* : a ∈ F} into Up(A_*), checked in the language of v.
struct CanonicalEmbedding {
  FilterPoset a_star;
  FiniteAlgebra up;
  std::vector<int> map;
  std::optional<std::string> failure;
};
CanonicalEmbedding canonical_embedding(const FiniteAlgebra& a, Variety v);

struct HomSearch {
  std::vector<std::vector<int>> homs;
  bool exhaustive = true;
};
// All homomorphisms when |B|^|A| <= limit, otherwise `samples` random maps
// drawn with `seed` and filtered.
HomSearch homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b, unsigned sig, double limit = 1e6,
                        std::uint64_t seed = 1, int samples = 20000);

}  // namespace sahlq
