#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sahlq/error.hpp"

namespace sahlq {

enum class Op : std::uint8_t { Var, Zero, One, And, Or, Imp, Not, Box, Dia, Fus };

struct Node;

// Immutable formula handle. Fus (the monoid product) only appears in
// substructural witnesses; the modal operators only when parsing with
// the modal flag.
class Formula {
 public:
  Formula() = default;

  static Formula var(std::string name);
  static Formula zero();
  static Formula one();
  static Formula make(Op op, Formula l, Formula r = {});

  Op op() const;
  const std::string& name() const;
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& arg() const { return lhs(); }

  bool is(Op o) const { return n_ && op() == o; }
  bool valid() const { return static_cast<bool>(n_); }
  bool unary() const;
  bool binary() const;
  std::size_t size() const;
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct Node {
  Op op;
  std::string name;
  Formula l, r;
};

Formula var(std::string name);
Formula x(int i);
Formula x(int i, int j);  // x{i}_{j}
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula imp(Formula a, Formula b);
Formula neg(Formula a);
Formula box(Formula a);
Formula dia(Formula a);
Formula fus(Formula a, Formula b);
Formula zero();
Formula one();
// Left folds; the empty fold yields `unit`.
Formula big_conj(const std::vector<Formula>& fs, Formula unit = one());
Formula big_disj(const std::vector<Formula>& fs, Formula unit = zero());
// a^k as a left-nested product, k >= 1.
Formula power(Formula a, int k);

// (base, sub) parsed from x<base> or x<base>_<sub>; sub is 0 when absent.
std::optional<std::pair<int, int>> var_index(std::string_view name);
bool var_less(const std::string& a, const std::string& b);

std::vector<std::string> variables(const Formula& f);
bool mentions(const Formula& f, Op op);
bool is_modal(const Formula& f);
Formula substitute(const Formula& f, const std::map<std::string, Formula>& s);
Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& s);

// ---- text grammar -------------------------------------------------------

// Tokens: 0 1 & | -> ~ [] <> * ( ), variables x<d>[_<d>], y, z.
// Binding: unary tightest, then *, then &, then |, then -> (right assoc).
Formula parse_formula(std::string_view text, bool modal = false);
std::string to_text(const Formula& f);
std::string to_unicode(const Formula& f);

nlohmann::json to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& j);

// ---- polarity -----------------------------------------------------------

enum class Polarity { Absent, Positive, Negative, Mixed };
const char* to_string(Polarity p);

Polarity polarity_of(const Formula& f, const std::string& v);
std::map<std::string, Polarity> polarities(const Formula& f);
bool is_positive(const Formula& f);
bool is_negative(const Formula& f);

// ---- Sahlqvist shapes ---------------------------------------------------

enum class SahlqvistKind { Antecedent, Implication, SahlqvistFormula, NotSahlqvist };
const char* to_string(SahlqvistKind k);

struct SahlqvistClass {
  SahlqvistKind kind = SahlqvistKind::NotSahlqvist;
  bool modal = false;
  bool antecedent = false;
  bool implication = false;
  bool formula = false;
  bool is_sahlqvist() const { return formula; }
};

bool is_boxed_atom(const Formula& f, bool modal);
bool is_sahlqvist_antecedent(const Formula& f, bool modal);
bool is_sahlqvist_implication(const Formula& f, bool modal);
bool is_sahlqvist_formula(const Formula& f, bool modal);
SahlqvistClass classify_sahlqvist(const Formula& f, bool modal = false);
// Human-readable derivation of the verdict, one step per line.
std::vector<std::string> classify_trace(const Formula& f, bool modal = false);

// ---- quasiequations -----------------------------------------------------

struct Quasiequation {
  std::vector<Formula> premises;
  std::string y = "y";
  std::string z = "z";
  bool modal = false;
  bool sahlqvist = false;
};

Quasiequation build_quasiequation(std::vector<Formula> premises, bool modal = false);
Formula premise_disjunction(const Quasiequation& q);
std::vector<std::string> variables(const Quasiequation& q);
std::string to_text(const Quasiequation& q);
// `;`-separated premise list, or one of @em @gd @weml @btw<n> @cyc3.
Quasiequation parse_quasiequation(std::string_view text, bool modal = false);

Formula btw(int n);
Formula excluded_middle();
Formula goedel_dummett();
Formula weml();
Quasiequation qe_btw(int n);
Quasiequation qe_em();
Quasiequation qe_gd();
Quasiequation qe_weml();
// (x1→x2) ∨ (x2→x3) ∨ (x3→x1) as premises; an implication-only extra.
Quasiequation qe_cyc3();

struct CorpusEntry {
  std::string name;
  Quasiequation q;
};
// btw1..btw3, em, gd, weml.
std::vector<CorpusEntry> corpus();

}  // namespace sahlq
