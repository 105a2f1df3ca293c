#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sahlq/error.hpp"

namespace sahlq {

// First-order formulas over {≤, R, =} with optional unary predicate
// variables (only present before elimination). And/Or are n-ary.
enum class FoOp : std::uint8_t { True, False, Leq, Rel, Eq, Pred, Not, And, Or, Imp, Forall, Exists };

struct FoNode;

class FoFormula {
 public:
  FoFormula() = default;

  static FoFormula top();
  static FoFormula bot();
  static FoFormula leq(std::string a, std::string b);
  static FoFormula rel(std::string a, std::string b);
  static FoFormula eq(std::string a, std::string b);
  static FoFormula pred(std::string name, std::string t);
  static FoFormula neg(FoFormula f);
  static FoFormula conj(std::vector<FoFormula> fs);  // flattened; empty is ⊤
  static FoFormula disj(std::vector<FoFormula> fs);  // flattened; empty is ⊥
  static FoFormula imp(FoFormula a, FoFormula b);
  static FoFormula forall(std::string v, FoFormula f);
  static FoFormula exists(std::string v, FoFormula f);

  FoOp op() const;
  bool is(FoOp o) const { return n_ && op() == o; }
  bool valid() const { return static_cast<bool>(n_); }
  bool atomic() const;   // ⊤, ⊥, relation, equality or predicate atom
  bool quantifier() const { return is(FoOp::Forall) || is(FoOp::Exists); }
  // Atom arguments; for Pred, `a` is the argument and `name` the predicate.
  const std::string& a() const;
  const std::string& b() const;
  const std::string& name() const;
  const std::string& var() const;  // bound variable
  const std::vector<FoFormula>& kids() const;
  const FoFormula& body() const { return kids().front(); }

  friend int compare(const FoFormula& x, const FoFormula& y);
  friend bool operator==(const FoFormula& x, const FoFormula& y) { return compare(x, y) == 0; }
  friend bool operator<(const FoFormula& x, const FoFormula& y) { return compare(x, y) < 0; }

 private:
  explicit FoFormula(std::shared_ptr<const FoNode> n) : n_(std::move(n)) {}
  static FoFormula make(FoNode n);
  std::shared_ptr<const FoNode> n_;
};

struct FoNode {
  FoOp op;
  std::string a, b, name;  // atom arguments / predicate / bound variable (in name)
  std::vector<FoFormula> kids;
};

std::set<std::string> free_vars(const FoFormula& f);
bool occurs_free(const FoFormula& f, const std::string& v);
bool has_predicates(const FoFormula& f);
std::set<std::string> predicates(const FoFormula& f);
std::size_t quantifier_count(const FoFormula& f);
std::size_t fo_size(const FoFormula& f);

// Capture-avoiding replacement of free occurrences of v by the variable t.
FoFormula substitute(const FoFormula& f, const std::string& v, const std::string& t);
// Replaces every atom P(t) by body[param := t].
FoFormula substitute_predicate(const FoFormula& f, const std::string& pred, const std::string& param,
                               const FoFormula& body);
// R(a,b) becomes a ≤ b.
FoFormula specialize_relation(const FoFormula& f);

std::string to_text(const FoFormula& f);  // ∀x∀y(x ≤ y → x = y)
std::string to_sexp(const FoFormula& f);  // (forall x (forall y (imp (leq x y) (eq x y))))
FoFormula parse_fo(std::string_view sexp);

}  // namespace sahlq
