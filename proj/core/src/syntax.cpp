#include "sahlq/syntax.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

namespace sahlq {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Input: return "InputError";
    case ErrorKind::MissingOperation: return "MissingOperation";
    case ErrorKind::NotPSL: return "NotPSL";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::WrongArrowKind: return "WrongArrowKind";
    case ErrorKind::EliminationStuck: return "EliminationStuck";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NotCompatible: return "NotCompatible";
    case ErrorKind::UnboundPredicateVariable: return "UnboundPredicateVariable";
    case ErrorKind::LawViolation: return "LawViolation";
  }
  return "Error";
}

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Var, std::move(name), {}, {}}));
}
Formula Formula::zero() {
  static const Formula z(std::make_shared<const Node>(Node{Op::Zero, "", {}, {}}));
  return z;
}
Formula Formula::one() {
  static const Formula o(std::make_shared<const Node>(Node{Op::One, "", {}, {}}));
  return o;
}
Formula Formula::make(Op op, Formula l, Formula r) {
  return Formula(std::make_shared<const Node>(Node{op, "", std::move(l), std::move(r)}));
}

Op Formula::op() const { return n_->op; }
const std::string& Formula::name() const { return n_->name; }
const Formula& Formula::lhs() const { return n_->l; }
const Formula& Formula::rhs() const { return n_->r; }

bool Formula::unary() const {
  Op o = op();
  return o == Op::Not || o == Op::Box || o == Op::Dia;
}
bool Formula::binary() const {
  Op o = op();
  return o == Op::And || o == Op::Or || o == Op::Imp || o == Op::Fus;
}

std::size_t Formula::size() const {
  if (unary()) return 1 + lhs().size();
  if (binary()) return 1 + lhs().size() + rhs().size();
  return 1;
}

std::size_t Formula::depth() const {
  if (unary()) return 1 + lhs().depth();
  if (binary()) return 1 + std::max(lhs().depth(), rhs().depth());
  return 0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return true;
  if (!a.n_ || !b.n_) return false;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Var: return a.name() == b.name();
    case Op::Zero:
    case Op::One: return true;
    case Op::Not:
    case Op::Box:
    case Op::Dia: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.n_ == b.n_) return false;
  if (!a.n_ || !b.n_) return !a.n_;
  if (a.op() != b.op()) return a.op() < b.op();
  switch (a.op()) {
    case Op::Var: return var_less(a.name(), b.name());
    case Op::Zero:
    case Op::One: return false;
    case Op::Not:
    case Op::Box:
    case Op::Dia: return a.lhs() < b.lhs();
    default:
      if (a.lhs() != b.lhs()) return a.lhs() < b.lhs();
      return a.rhs() < b.rhs();
  }
}

Formula var(std::string name) { return Formula::var(std::move(name)); }
Formula x(int i) { return var("x" + std::to_string(i)); }
Formula x(int i, int j) { return var("x" + std::to_string(i) + "_" + std::to_string(j)); }
Formula conj(Formula a, Formula b) { return Formula::make(Op::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return Formula::make(Op::Or, std::move(a), std::move(b)); }
Formula imp(Formula a, Formula b) { return Formula::make(Op::Imp, std::move(a), std::move(b)); }
Formula neg(Formula a) { return Formula::make(Op::Not, std::move(a)); }
Formula box(Formula a) { return Formula::make(Op::Box, std::move(a)); }
Formula dia(Formula a) { return Formula::make(Op::Dia, std::move(a)); }
Formula fus(Formula a, Formula b) { return Formula::make(Op::Fus, std::move(a), std::move(b)); }
Formula zero() { return Formula::zero(); }
Formula one() { return Formula::one(); }

Formula big_conj(const std::vector<Formula>& fs, Formula unit) {
  if (fs.empty()) return unit;
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula big_disj(const std::vector<Formula>& fs, Formula unit) {
  if (fs.empty()) return unit;
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Formula power(Formula a, int k) {
  if (k < 1) throw Error(ErrorKind::Input, "power exponent must be positive");
  Formula acc = a;
  for (int i = 1; i < k; ++i) acc = fus(acc, a);
  return acc;
}

std::optional<std::pair<int, int>> var_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  auto us = name.find('_');
  std::string_view base = name.substr(1, us == std::string_view::npos ? std::string_view::npos : us - 1);
  int b = 0, s = 0;
  auto r = std::from_chars(base.data(), base.data() + base.size(), b);
  if (r.ec != std::errc() || r.ptr != base.data() + base.size() || base.empty()) return std::nullopt;
  if (us != std::string_view::npos) {
    std::string_view sub = name.substr(us + 1);
    auto r2 = std::from_chars(sub.data(), sub.data() + sub.size(), s);
    if (r2.ec != std::errc() || r2.ptr != sub.data() + sub.size() || sub.empty()) return std::nullopt;
  }
  return std::make_pair(b, s);
}

bool var_less(const std::string& a, const std::string& b) {
  auto ia = var_index(a), ib = var_index(b);
  if (ia && ib) return *ia < *ib;
  if (ia != ib) return ia.has_value();
  return a < b;
}

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.is(Op::Var)) {
    out.insert(f.name());
  } else if (f.unary()) {
    collect_vars(f.lhs(), out);
  } else if (f.binary()) {
    collect_vars(f.lhs(), out);
    collect_vars(f.rhs(), out);
  }
}

}  // namespace

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> s;
  collect_vars(f, s);
  std::vector<std::string> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), var_less);
  return v;
}

bool mentions(const Formula& f, Op op) {
  if (f.op() == op) return true;
  if (f.unary()) return mentions(f.lhs(), op);
  if (f.binary()) return mentions(f.lhs(), op) || mentions(f.rhs(), op);
  return false;
}

bool is_modal(const Formula& f) { return mentions(f, Op::Box) || mentions(f, Op::Dia); }

Formula substitute(const Formula& f, const std::map<std::string, Formula>& s) {
  switch (f.op()) {
    case Op::Var: {
      auto it = s.find(f.name());
      return it == s.end() ? f : it->second;
    }
    case Op::Zero:
    case Op::One: return f;
    case Op::Not:
    case Op::Box:
    case Op::Dia: return Formula::make(f.op(), substitute(f.lhs(), s));
    default: return Formula::make(f.op(), substitute(f.lhs(), s), substitute(f.rhs(), s));
  }
}

Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& s) {
  std::map<std::string, Formula> m;
  for (auto& [a, b] : s) m.emplace(a, var(b));
  return substitute(f, m);
}

// ---- polarity -----------------------------------------------------------

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::Absent: return "Absent";
    case Polarity::Positive: return "Positive";
    case Polarity::Negative: return "Negative";
    case Polarity::Mixed: return "Mixed";
  }
  return "?";
}

namespace {

Polarity combine(Polarity a, Polarity b) {
  if (a == Polarity::Absent) return b;
  if (b == Polarity::Absent || a == b) return a;
  return Polarity::Mixed;
}

void walk_polarity(const Formula& f, bool pos, std::map<std::string, Polarity>& out) {
  switch (f.op()) {
    case Op::Var: {
      auto& p = out[f.name()];
      p = combine(p, pos ? Polarity::Positive : Polarity::Negative);
      return;
    }
    case Op::Zero:
    case Op::One: return;
    case Op::Not: walk_polarity(f.lhs(), !pos, out); return;
    case Op::Box:
    case Op::Dia: walk_polarity(f.lhs(), pos, out); return;
    case Op::Imp:
      walk_polarity(f.lhs(), !pos, out);
      walk_polarity(f.rhs(), pos, out);
      return;
    default:
      walk_polarity(f.lhs(), pos, out);
      walk_polarity(f.rhs(), pos, out);
  }
}

}  // namespace

std::map<std::string, Polarity> polarities(const Formula& f) {
  std::map<std::string, Polarity> out;
  walk_polarity(f, true, out);
  return out;
}

Polarity polarity_of(const Formula& f, const std::string& v) {
  auto m = polarities(f);
  auto it = m.find(v);
  return it == m.end() ? Polarity::Absent : it->second;
}

bool is_positive(const Formula& f) {
  for (auto& [v, p] : polarities(f))
    if (p != Polarity::Positive) return false;
  return true;
}

bool is_negative(const Formula& f) {
  for (auto& [v, p] : polarities(f))
    if (p != Polarity::Negative) return false;
  return true;
}

// ---- Sahlqvist shapes ---------------------------------------------------

const char* to_string(SahlqvistKind k) {
  switch (k) {
    case SahlqvistKind::Antecedent: return "Antecedent";
    case SahlqvistKind::Implication: return "Implication";
    case SahlqvistKind::SahlqvistFormula: return "SahlqvistFormula";
    case SahlqvistKind::NotSahlqvist: return "NotSahlqvist";
  }
  return "?";
}

bool is_boxed_atom(const Formula& f, bool modal) {
  const Formula* g = &f;
  while (modal && g->is(Op::Box)) g = &g->arg();
  return g->is(Op::Var);
}

bool is_sahlqvist_antecedent(const Formula& f, bool modal) {
  if (!modal && is_modal(f)) return false;
  if (is_boxed_atom(f, modal)) return true;
  if (f.is(Op::Zero) || f.is(Op::One)) return true;
  if (!f.is(Op::Fus) && is_negative(f)) return true;
  if (f.is(Op::And) || f.is(Op::Or))
    return is_sahlqvist_antecedent(f.lhs(), modal) && is_sahlqvist_antecedent(f.rhs(), modal);
  if (modal && f.is(Op::Dia)) return is_sahlqvist_antecedent(f.arg(), modal);
  return false;
}

bool is_sahlqvist_implication(const Formula& f, bool modal) {
  if (!modal && is_modal(f)) return false;
  if (mentions(f, Op::Fus)) return false;
  if (is_positive(f)) return true;
  if (f.is(Op::Not)) return is_sahlqvist_antecedent(f.arg(), modal);
  if (f.is(Op::Imp)) return is_sahlqvist_antecedent(f.lhs(), modal) && is_positive(f.rhs());
  return false;
}

bool is_sahlqvist_formula(const Formula& f, bool modal) {
  if (is_sahlqvist_implication(f, modal)) return true;
  if (f.is(Op::And) || f.is(Op::Or))
    return is_sahlqvist_formula(f.lhs(), modal) && is_sahlqvist_formula(f.rhs(), modal);
  if (modal && f.is(Op::Box)) return is_sahlqvist_formula(f.arg(), modal);
  return false;
}

SahlqvistClass classify_sahlqvist(const Formula& f, bool modal) {
  SahlqvistClass c;
  c.modal = modal;
  c.antecedent = is_sahlqvist_antecedent(f, modal);
  c.implication = is_sahlqvist_implication(f, modal);
  c.formula = is_sahlqvist_formula(f, modal);
  if (c.implication)
    c.kind = SahlqvistKind::Implication;
  else if (c.formula)
    c.kind = SahlqvistKind::SahlqvistFormula;
  else if (c.antecedent)
    c.kind = SahlqvistKind::Antecedent;
  return c;
}

namespace {

void trace_formula(const Formula& f, bool modal, int indent, std::vector<std::string>& out) {
  std::string pad(indent * 2, ' ');
  std::string t = to_text(f);
  if (is_positive(f)) {
    out.push_back(pad + t + " : positive, hence an implication");
    return;
  }
  if (f.is(Op::Not)) {
    bool a = is_sahlqvist_antecedent(f.arg(), modal);
    out.push_back(pad + t + " : negation of " + (a ? "an antecedent" : "a non-antecedent"));
    return;
  }
  if (f.is(Op::Imp)) {
    bool a = is_sahlqvist_antecedent(f.lhs(), modal);
    bool p = is_positive(f.rhs());
    out.push_back(pad + t + " : antecedent " + (a ? "ok" : "fails") + ", consequent " +
                  (p ? "positive" : "not positive"));
    return;
  }
  if (f.is(Op::And) || f.is(Op::Or) || (modal && f.is(Op::Box))) {
    out.push_back(pad + t + " : combination, checking parts");
    trace_formula(f.lhs(), modal, indent + 1, out);
    if (f.binary()) trace_formula(f.rhs(), modal, indent + 1, out);
    return;
  }
  out.push_back(pad + t + " : no Sahlqvist shape applies");
}

}  // namespace

std::vector<std::string> classify_trace(const Formula& f, bool modal) {
  std::vector<std::string> out;
  if (!modal && is_modal(f)) {
    out.push_back("modal operator in non-modal mode");
    return out;
  }
  trace_formula(f, modal, 0, out);
  out.push_back(std::string("verdict: ") + to_string(classify_sahlqvist(f, modal).kind));
  return out;
}

// ---- quasiequations -----------------------------------------------------

Quasiequation build_quasiequation(std::vector<Formula> premises, bool modal) {
  std::set<std::string> used;
  for (auto& p : premises) collect_vars(p, used);
  if (used.count("y") || used.count("z")) {
    int top = 0;
    for (auto& v : used)
      if (auto ix = var_index(v)) top = std::max(top, ix->first);
    std::map<std::string, std::string> ren;
    if (used.count("y")) ren["y"] = "x" + std::to_string(++top);
    if (used.count("z")) ren["z"] = "x" + std::to_string(++top);
    for (auto& p : premises) p = rename_vars(p, ren);
  }
  Quasiequation q;
  q.premises = std::move(premises);
  q.modal = modal;
  q.sahlqvist = std::all_of(q.premises.begin(), q.premises.end(),
                            [&](const Formula& p) { return is_sahlqvist_formula(p, modal); });
  return q;
}

Formula premise_disjunction(const Quasiequation& q) { return big_disj(q.premises, zero()); }

std::vector<std::string> variables(const Quasiequation& q) {
  std::set<std::string> s;
  for (auto& p : q.premises) collect_vars(p, s);
  std::vector<std::string> v(s.begin(), s.end());
  std::sort(v.begin(), v.end(), var_less);
  return v;
}

std::string to_text(const Quasiequation& q) {
  std::ostringstream os;
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    if (i) os << " ; ";
    os << to_text(q.premises[i]);
  }
  return os.str();
}

Quasiequation parse_quasiequation(std::string_view text, bool modal) {
  std::string t(text);
  auto b = t.find_first_not_of(" \t\n");
  if (b != std::string::npos && t[b] == '@') {
    std::string name = t.substr(b + 1);
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    if (name == "em") return qe_em();
    if (name == "gd") return qe_gd();
    if (name == "weml") return qe_weml();
    if (name == "cyc3") return qe_cyc3();
    if (name.rfind("btw", 0) == 0) {
      int n = 0;
      auto r = std::from_chars(name.data() + 3, name.data() + name.size(), n);
      if (r.ec == std::errc() && r.ptr == name.data() + name.size() && n >= 1 && n <= 16) return qe_btw(n);
    }
    throw Error(ErrorKind::Input, "unknown builtin quasiequation @" + name, b);
  }
  std::vector<Formula> ps;
  std::size_t start = 0;
  while (start <= t.size()) {
    auto semi = t.find(';', start);
    std::string piece = t.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (piece.find_first_not_of(" \t\n") != std::string::npos) {
      try {
        ps.push_back(parse_formula(piece, modal));
      } catch (const Error& e) {
        std::size_t pos = e.position() == Error::npos ? Error::npos : e.position() + start;
        throw Error(e.kind(), e.what(), pos);
      }
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return build_quasiequation(std::move(ps), modal);
}

Formula btw(int n) {
  if (n < 1) throw Error(ErrorKind::Input, "btw(n) needs n >= 1");
  std::vector<Formula> ds;
  for (int i = 1; i <= n + 1; ++i) {
    std::vector<Formula> cs{neg(x(i))};
    for (int j = 1; j < i; ++j) cs.push_back(x(j));
    ds.push_back(neg(big_conj(cs)));
  }
  return big_disj(ds);
}

Formula excluded_middle() { return disj(x(1), neg(x(1))); }
Formula goedel_dummett() { return disj(imp(x(1), x(2)), imp(x(2), x(1))); }
Formula weml() { return disj(neg(x(1)), neg(neg(x(1)))); }

Quasiequation qe_btw(int n) {
  if (n < 1) throw Error(ErrorKind::Input, "btw(n) needs n >= 1");
  std::vector<Formula> ps;
  for (int i = 1; i <= n + 1; ++i) {
    std::vector<Formula> cs{neg(x(i))};
    for (int j = 1; j < i; ++j) cs.push_back(x(j));
    ps.push_back(neg(big_conj(cs)));
  }
  return build_quasiequation(std::move(ps));
}

Quasiequation qe_em() { return build_quasiequation({x(1), neg(x(1))}); }
Quasiequation qe_gd() { return build_quasiequation({imp(x(1), x(2)), imp(x(2), x(1))}); }
Quasiequation qe_weml() { return build_quasiequation({neg(x(1)), neg(neg(x(1)))}); }
Quasiequation qe_cyc3() {
  return build_quasiequation({imp(x(1), x(2)), imp(x(2), x(3)), imp(x(3), x(1))});
}

std::vector<CorpusEntry> corpus() {
  return {{"btw1", qe_btw(1)}, {"btw2", qe_btw(2)}, {"btw3", qe_btw(3)},
          {"em", qe_em()},     {"gd", qe_gd()},     {"weml", qe_weml()}};
}

}  // namespace sahlq
