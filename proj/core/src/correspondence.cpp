#include "sahlq/correspondence.hpp"

#include <map>
#include <utility>

namespace sahlq {

Formula gmt_translate(const Formula& f) {
  switch (f.op()) {
    case Op::Var: return box(f);
    case Op::Zero:
    case Op::One: return f;
    case Op::And: return conj(gmt_translate(f.lhs()), gmt_translate(f.rhs()));
    case Op::Or: return disj(gmt_translate(f.lhs()), gmt_translate(f.rhs()));
    case Op::Imp: return box(imp(gmt_translate(f.lhs()), gmt_translate(f.rhs())));
    case Op::Not: return box(neg(gmt_translate(f.arg())));
    default: throw Error(ErrorKind::Input, "translation expects a non-modal formula without products");
  }
}

Quasiequation gmt_quasiequation(const Quasiequation& q) {
  Quasiequation out;
  out.y = q.y;
  out.z = q.z;
  out.modal = true;
  out.sahlqvist = true;
  for (auto& p : q.premises) {
    out.premises.push_back(gmt_translate(p));
    out.sahlqvist = out.sahlqvist && is_sahlqvist_formula(out.premises.back(), true);
  }
  return out;
}

std::string predicate_name(const std::string& var) { return "P" + var; }

namespace {

class Translator {
 public:
  std::string fresh() { return "v" + std::to_string(++counter_); }

  FoFormula st(const Formula& m, const std::string& w) {
    switch (m.op()) {
      case Op::Var: return FoFormula::pred(predicate_name(m.name()), w);
      case Op::Zero: return FoFormula::bot();
      case Op::One: return FoFormula::top();
      case Op::And: return FoFormula::conj({st(m.lhs(), w), st(m.rhs(), w)});
      case Op::Or: return FoFormula::disj({st(m.lhs(), w), st(m.rhs(), w)});
      case Op::Imp: return FoFormula::imp(st(m.lhs(), w), st(m.rhs(), w));
      case Op::Not: return FoFormula::neg(st(m.arg(), w));
      case Op::Box: {
        std::string v = fresh();
        return FoFormula::forall(v, FoFormula::imp(FoFormula::rel(w, v), st(m.arg(), v)));
      }
      case Op::Dia: {
        std::string v = fresh();
        return FoFormula::exists(v, FoFormula::conj({FoFormula::rel(w, v), st(m.arg(), v)}));
      }
      case Op::Fus: throw Error(ErrorKind::Input, "products have no standard translation");
    }
    return FoFormula::bot();
  }

  // One disjunct of the negated translation: ∃vars (rel ∧ boxed ∧ rest).
  struct Block {
    std::vector<std::string> vars;
    std::vector<std::pair<std::string, std::string>> rel;
    std::map<std::string, std::vector<std::pair<std::string, int>>> boxed;
    std::vector<FoFormula> rest;
  };
  using Blocks = std::vector<Block>;

  static Blocks product(const Blocks& a, const Blocks& b) {
    Blocks out;
    for (auto& x : a)
      for (auto& y : b) {
        Block m = x;
        m.vars.insert(m.vars.end(), y.vars.begin(), y.vars.end());
        m.rel.insert(m.rel.end(), y.rel.begin(), y.rel.end());
        for (auto& [p, l] : y.boxed) m.boxed[p].insert(m.boxed[p].end(), l.begin(), l.end());
        m.rest.insert(m.rest.end(), y.rest.begin(), y.rest.end());
        out.push_back(std::move(m));
      }
    return out;
  }

  static Blocks join(Blocks a, const Blocks& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  static Blocks under(const std::string& w, const std::string& v, Blocks bs) {
    for (auto& b : bs) {
      b.vars.insert(b.vars.begin(), v);
      b.rel.insert(b.rel.begin(), {w, v});
    }
    return bs;
  }

  static Blocks leaf(FoFormula f) { return {Block{{}, {}, {}, {std::move(f)}}}; }

  // Blocks whose disjunction is ¬ST(f, w).
  Blocks neg_expand(const Formula& f, const std::string& w) {
    if (is_positive(f)) return leaf(FoFormula::neg(st(f, w)));
    switch (f.op()) {
      case Op::And: return join(neg_expand(f.lhs(), w), neg_expand(f.rhs(), w));
      case Op::Or: return product(neg_expand(f.lhs(), w), neg_expand(f.rhs(), w));
      case Op::Box: {
        std::string v = fresh();
        return under(w, v, neg_expand(f.arg(), v));
      }
      case Op::Not: return ante_expand(f.arg(), w);
      case Op::Imp: return product(ante_expand(f.lhs(), w), neg_expand(f.rhs(), w));
      default: break;
    }
    throw Error(ErrorKind::EliminationStuck, "EliminationStuck: cannot eliminate below " + to_text(f));
  }

  // Blocks whose disjunction is ST(f, w); f is a Sahlqvist antecedent.
  Blocks ante_expand(const Formula& f, const std::string& w) {
    int n = 0;
    Formula g = f;
    while (g.is(Op::Box)) g = g.arg(), ++n;
    if (g.is(Op::Var)) {
      Block b;
      b.boxed[predicate_name(g.name())].push_back({w, n});
      return {b};
    }
    if (f.is(Op::One)) return {Block{}};
    if (f.is(Op::Zero)) return {};
    if (is_negative(f)) return leaf(st(f, w));
    switch (f.op()) {
      case Op::And: return product(ante_expand(f.lhs(), w), ante_expand(f.rhs(), w));
      case Op::Or: return join(ante_expand(f.lhs(), w), ante_expand(f.rhs(), w));
      case Op::Dia: {
        std::string v = fresh();
        return under(w, v, ante_expand(f.arg(), v));
      }
      default: break;
    }
    throw Error(ErrorKind::EliminationStuck, "EliminationStuck: not an antecedent: " + to_text(f));
  }

 private:
  int counter_ = 0;
};

FoFormula eliminate(const Translator::Block& b) {
  std::vector<FoFormula> rest = b.rest;
  // Minimal valuation: P(u) holds exactly on the worlds reached by its boxed atoms.
  std::set<std::string> preds;
  for (auto& r : rest)
    for (auto& p : predicates(r)) preds.insert(p);
  for (auto& p : preds) {
    std::vector<FoFormula> paths;
    auto it = b.boxed.find(p);
    if (it != b.boxed.end())
      for (auto& [v, n] : it->second) paths.push_back(n == 0 ? FoFormula::eq(v, "_p") : FoFormula::rel(v, "_p"));
    FoFormula val = FoFormula::disj(paths);
    for (auto& r : rest) r = substitute_predicate(r, p, "_p", val);
  }
  std::vector<FoFormula> rel;
  for (auto& [a, c] : b.rel) rel.push_back(FoFormula::rel(a, c));
  FoFormula f = FoFormula::imp(FoFormula::conj(rel), FoFormula::neg(FoFormula::conj(rest)));
  for (auto it = b.vars.rbegin(); it != b.vars.rend(); ++it) f = FoFormula::forall(*it, f);
  return f;
}

}  // namespace

FoFormula standard_translation(const Formula& m, const std::string& world) { return Translator().st(m, world); }

FoFormula correspondent_raw(const Quasiequation& q) {
  Formula chi = premise_disjunction(q);
  Formula g = q.modal ? chi : gmt_translate(chi);
  Translator t;
  const std::string w0 = "w0";
  auto blocks = t.neg_expand(g, w0);
  std::vector<FoFormula> parts;
  for (auto& b : blocks) parts.push_back(eliminate(b));
  FoFormula out = FoFormula::forall(w0, FoFormula::conj(parts));
  return q.modal ? out : specialize_relation(out);
}

FoFormula correspondent(const Quasiequation& q) { return simplify_fo(correspondent_raw(q)); }

}  // namespace sahlq
