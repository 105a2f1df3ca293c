#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sahlq/syntax.hpp"

namespace sahlq {

using Bits = std::uint64_t;
constexpr int kMaxElements = 64;

inline bool test_bit(Bits b, int i) { return (b >> i) & 1u; }
inline Bits bit(int i) { return Bits{1} << i; }
inline Bits all_bits(int n) { return n >= 64 ? ~Bits{0} : (Bits{1} << n) - 1; }
inline int popcount(Bits b) { return std::popcount(b); }
std::vector<int> members(Bits b);

std::string set_label(Bits s, const std::vector<std::string>& labels);

struct FinitePoset {
  int n = 0;
  std::vector<Bits> up;    // up[i] = {j : i <= j}
  std::vector<Bits> down;  // down[i] = {j : j <= i}
  std::vector<std::string> labels;

  bool leq(int i, int j) const { return test_bit(up[i], j); }
  Bits all() const { return all_bits(n); }
  Bits up_closure(Bits s) const;
  Bits down_closure(Bits s) const;
  bool is_upset(Bits s) const { return up_closure(s) == s; }
  bool is_downset(Bits s) const { return down_closure(s) == s; }
  Bits minimal(Bits s) const;
  Bits maximal(Bits s) const;
  std::vector<std::pair<int, int>> covers() const;
  std::string label(int i) const;

  // Reflexive-transitive closure of the given pairs; throws Input on cycles.
  static FinitePoset from_leq(int n, const std::vector<std::pair<int, int>>& leq,
                              std::vector<std::string> labels = {});
  static FinitePoset from_up(std::vector<Bits> up, std::vector<std::string> labels = {});
  static FinitePoset chain(int n);
  static FinitePoset antichain(int n);
};

bool operator==(const FinitePoset& a, const FinitePoset& b);
FinitePoset dual(const FinitePoset& p);
FinitePoset restrict(const FinitePoset& p, Bits keep);
std::optional<std::vector<int>> find_isomorphism(const FinitePoset& a, const FinitePoset& b);
bool isomorphic(const FinitePoset& a, const FinitePoset& b);

// Operation bits of an algebra's language.
enum Sig : unsigned {
  kAnd = 1u << 0,
  kOr = 1u << 1,
  kImp = 1u << 2,
  kNeg = 1u << 3,
  kZero = 1u << 4,
  kOne = 1u << 5,
  kFus = 1u << 6,
  kBox = 1u << 7,
  kDia = 1u << 8,
};
constexpr unsigned kHeyting = kAnd | kOr | kImp | kNeg | kZero | kOne;
constexpr unsigned kFLe = kAnd | kOr | kImp | kNeg | kZero | kOne | kFus;
std::string sig_to_string(unsigned sig);
unsigned sig_of(const Formula& f);

enum class Variety { PSL, ISL, bISL, PDL, IL, HA };
const char* to_string(Variety v);
unsigned signature(Variety v);
std::optional<Variety> variety_of_signature(unsigned sig);
std::optional<Variety> parse_variety(const std::string& s);

enum ClassTag : unsigned {
  tSemilattice = 1u << 0,
  tBounded = 1u << 1,
  tPSL = 1u << 2,
  tISL = 1u << 3,
  tbISL = 1u << 4,
  tLattice = 1u << 5,
  tDistributive = 1u << 6,
  tPDL = 1u << 7,
  tIL = 1u << 8,
  tHA = 1u << 9,
};
std::vector<std::string> tag_names(unsigned tags);
unsigned tag_of(Variety v);

struct FiniteAlgebra {
  int n = 0;
  std::vector<std::string> labels;
  // Row-major n*n tables; empty when the operation is absent.
  std::vector<std::uint8_t> meet, join, imp, fus;
  std::vector<std::uint8_t> neg, box, dia;
  int zero = -1;  // constant 0
  int one = -1;   // constant 1 (the designated unit)
  int bottom = -1, top = -1;
  unsigned sig = 0;
  std::vector<Bits> up;    // up[a] = {b : a <= b}
  std::vector<Bits> repr;  // optional set representation of each element

  int m(int a, int b) const { return meet[a * n + b]; }
  int j(int a, int b) const { return join[a * n + b]; }
  int i(int a, int b) const { return imp[a * n + b]; }
  int f(int a, int b) const { return fus[a * n + b]; }
  bool leq(int a, int b) const { return test_bit(up[a], b); }
  Bits all() const { return all_bits(n); }
  bool has(unsigned op) const;
  FinitePoset order() const;
  std::string label(int a) const;
  int find_repr(Bits s) const;
};

struct ClassReport {
  unsigned tags = 0;
  std::vector<std::uint8_t> neg, imp, join;  // synthesized when they exist
  int bottom = -1, top = -1;
  std::map<std::string, std::string> violations;  // tag -> first failing instance
  bool has(unsigned t) const { return (tags & t) == t; }
};

// Order-presented meet semilattice; throws Input when some meet is missing.
FiniteAlgebra algebra_from_order(const FinitePoset& p, unsigned sig = kAnd);
// Meet-table presented; throws LawViolation unless the table is a semilattice.
FiniteAlgebra algebra_from_meet(std::vector<std::string> labels, std::vector<std::uint8_t> meet,
                                unsigned sig = kAnd);
ClassReport detect_classes(const FiniteAlgebra& a);
// Fills every table the requested language needs from the order; throws
// MissingOperation when one does not exist.
FiniteAlgebra complete(FiniteAlgebra a, unsigned sig);
FiniteAlgebra reduct(FiniteAlgebra a, unsigned sig);
unsigned natural_signature(const ClassReport& r);

// ---- evaluation ---------------------------------------------------------

using Assignment = std::map<std::string, int>;

// Compiled term function over a fixed variable order. Not thread-safe.
class Term {
 public:
  Term(const FiniteAlgebra& a, const Formula& f, const std::vector<std::string>& vars);
  int operator()(const int* vals) const;

 private:
  struct Instr {
    std::uint8_t op;
    std::int32_t arg;
  };
  const FiniteAlgebra* a_;
  std::vector<Instr> prog_;
  mutable std::vector<int> stack_;
};

void require_language(const FiniteAlgebra& a, const Formula& f);
int eval_formula(const FiniteAlgebra& a, const Formula& f, const Assignment& s);
bool designated(const FiniteAlgebra& a, int v);
std::optional<Assignment> refute_formula(const FiniteAlgebra& a, const Formula& f);
bool validates_formula(const FiniteAlgebra& a, const Formula& f);

struct QeWitness {
  Assignment x;
  int y = -1, z = -1;
};
std::optional<QeWitness> refute_quasiequation(const FiniteAlgebra& a, const Quasiequation& q);
bool validates_quasiequation(const FiniteAlgebra& a, const Quasiequation& q);
bool is_counterexample(const FiniteAlgebra& a, const Quasiequation& q, const Assignment& x, int y, int z);
std::vector<QeWitness> all_counterexamples(const FiniteAlgebra& a, const Quasiequation& q);

// General universal Horn sentence s1 <= t1 & ... => s <= t (or s = t).
struct Inequality {
  Formula lhs, rhs;
  bool equality = false;
};
struct QuasiInequality {
  std::vector<Inequality> premises;
  Inequality conclusion;
};
QuasiInequality as_quasi_inequality(const Quasiequation& q);
std::optional<Assignment> refute(const FiniteAlgebra& a, const QuasiInequality& q);

// ---- constructions ------------------------------------------------------

FiniteAlgebra up_algebra(const FinitePoset& x, unsigned sig = kHeyting);
// ℘(X) with Boolean operations and □,◇ for R = ≤.
FiniteAlgebra complex_algebra(const FinitePoset& x);

FinitePoset join_irreducibles(const FiniteAlgebra& a, std::vector<int>* elements = nullptr);

struct APlus {
  FinitePoset j;
  std::vector<int> j_elements;  // indices in A
  FiniteAlgebra algebra;
  std::vector<int> eps;
  bool embedding = false;
  std::string failure;
};
APlus a_plus(const FiniteAlgebra& a);

std::optional<std::string> check_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                              const std::vector<int>& f, unsigned sig);
bool injective(const std::vector<int>& f);
bool surjective(const std::vector<int>& f, int codomain);

}  // namespace sahlq
