#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sahlq/algebra.hpp"
#include "sahlq/fo.hpp"

namespace sahlq {

// Tarskian evaluation; R atoms read as ≤. Throws UnboundPredicateVariable on
// predicate atoms and Input on free variables missing from `env`.
bool check_fo(const FinitePoset& x, const FoFormula& s, const std::map<std::string, int>& env = {});

enum class ClassFilter { Posets, Lattice, PSL, ISL, bISL, PDL, IL, HA, FLe };
const char* to_string(ClassFilter c);
std::optional<ClassFilter> parse_class_filter(const std::string& s);

struct EnumerationConfig {
  int max_size = 4;
  int min_size = 1;
  ClassFilter cls = ClassFilter::Posets;
  bool dedup = true;
  std::uint64_t seed = 1;
};

// Minimal row-major order code over relabelings that keep (up, down) degrees sorted.
std::uint64_t canonical_code(const FinitePoset& p);
FinitePoset canonical_form(const FinitePoset& p);

// Canonical posets of exactly n elements (n <= 8), cached.
const std::vector<FinitePoset>& posets_of_size(int n);
std::vector<FinitePoset> enumerate_posets(const EnumerationConfig& cfg);
bool is_lattice(const FinitePoset& p);
std::vector<FinitePoset> lattices_of_size(int n);
std::vector<FiniteAlgebra> enumerate_algebras(const EnumerationConfig& cfg);

// A poset of at most `bound` elements (the empty one included) on which the
// sentences differ.
std::optional<FinitePoset> distinguishing_poset(const FoFormula& a, const FoFormula& b, int bound);
bool fo_equivalent(const FoFormula& a, const FoFormula& b, int bound);

}  // namespace sahlq
