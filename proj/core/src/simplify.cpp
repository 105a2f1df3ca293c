#include <algorithm>
#include <functional>
#include <map>

#include "sahlq/correspondence.hpp"

namespace sahlq {

namespace {

using F = FoFormula;

F nnf(const F& f, bool negate) {
  switch (f.op()) {
    case FoOp::True: return negate ? F::bot() : f;
    case FoOp::False: return negate ? F::top() : f;
    case FoOp::Not: return nnf(f.body(), !negate);
    case FoOp::And:
    case FoOp::Or: {
      std::vector<F> ks;
      for (auto& k : f.kids()) ks.push_back(nnf(k, negate));
      return (f.is(FoOp::And) != negate) ? F::conj(ks) : F::disj(ks);
    }
    case FoOp::Imp: {
      F l = nnf(f.kids()[0], !negate), r = nnf(f.kids()[1], negate);
      return negate ? F::conj({l, r}) : F::disj({l, r});
    }
    case FoOp::Forall:
    case FoOp::Exists: {
      F b = nnf(f.body(), negate);
      return (f.is(FoOp::Forall) != negate) ? F::forall(f.var(), b) : F::exists(f.var(), b);
    }
    default: return negate ? F::neg(f) : f;
  }
}

// f is preserved when u moves up (upward) or down the order. f is in NNF.
bool persistent(const F& f, const std::string& u, bool upward) {
  switch (f.op()) {
    case FoOp::True:
    case FoOp::False: return true;
    case FoOp::Leq:
      if (f.a() == u && f.b() == u) return true;
      if (f.b() == u) return upward;
      if (f.a() == u) return !upward;
      return true;
    case FoOp::Rel:
    case FoOp::Eq: return f.a() != u && f.b() != u;
    case FoOp::Pred: return f.a() != u;
    case FoOp::Not: {
      const F& g = f.body();
      if (g.is(FoOp::Leq)) {
        if (g.a() == u && g.b() == u) return true;
        if (g.a() == u) return upward;
        if (g.b() == u) return !upward;
        return true;
      }
      return !occurs_free(g, u);
    }
    case FoOp::And:
    case FoOp::Or:
      return std::all_of(f.kids().begin(), f.kids().end(), [&](const F& k) { return persistent(k, u, upward); });
    case FoOp::Forall:
    case FoOp::Exists: return f.var() == u || persistent(f.body(), u, upward);
    case FoOp::Imp: return !occurs_free(f, u);
  }
  return false;
}

F negate_literal(const F& f) { return f.is(FoOp::Not) ? f.body() : F::neg(f); }

class Simplifier {
 public:
  F run(F f) {
    f = nnf(f, false);
    for (int round = 0; round < 32; ++round) {
      F g = simp(f, {}, true);
      if (g == f) break;
      f = g;
    }
    return f;
  }

 private:
  // `scope` lists the variables bound around f (so the domain is nonempty).
  F simp(const F& f, const std::vector<std::string>& scope, bool witness) {
    switch (f.op()) {
      case FoOp::Leq:
      case FoOp::Eq: return f.a() == f.b() ? F::top() : f;
      case FoOp::Not: {
        F b = simp(f.body(), scope, witness);
        if (b.is(FoOp::True)) return F::bot();
        if (b.is(FoOp::False)) return F::top();
        return F::neg(b);
      }
      case FoOp::And:
      case FoOp::Or: return junction(f, scope, witness);
      case FoOp::Forall:
      case FoOp::Exists: return quantifier(f, scope, witness);
      default: return f;
    }
  }

  F junction(const F& f, const std::vector<std::string>& scope, bool witness) {
    bool is_and = f.is(FoOp::And);
    std::vector<F> items;
    for (auto& k : f.kids()) {
      F s = simp(k, scope, witness);
      if (s.is(is_and ? FoOp::True : FoOp::False)) continue;
      if (s.is(is_and ? FoOp::False : FoOp::True)) return s;
      if (s.is(f.op())) {
        for (auto& g : s.kids()) items.push_back(g);
      } else {
        items.push_back(s);
      }
    }
    std::vector<F> uniq;
    for (auto& g : items)
      if (std::find(uniq.begin(), uniq.end(), g) == uniq.end()) uniq.push_back(g);
    for (auto& g : uniq)
      if (std::find(uniq.begin(), uniq.end(), negate_literal(g)) != uniq.end()) return is_and ? F::bot() : F::top();
    if (!is_and) {
      // Under a ≤ b, b ≤ a says a = b.
      for (auto& g : uniq) {
        if (!g.is(FoOp::Leq)) continue;
        F guard = F::neg(F::leq(g.b(), g.a()));
        if (std::find(uniq.begin(), uniq.end(), guard) != uniq.end()) g = F::eq(g.b(), g.a());
      }
      return F::disj(uniq);
    }
    return F::conj(uniq);
  }

  F quantifier(const F& f, const std::vector<std::string>& scope, bool witness) {
    const bool all = f.is(FoOp::Forall);
    const std::string& u = f.var();
    std::vector<std::string> inner = scope;
    inner.push_back(u);
    F body = simp(f.body(), inner, witness);
    auto wrap = [&](const F& b) { return all ? F::forall(u, b) : F::exists(u, b); };
    const FoOp dual = all ? FoOp::False : FoOp::True;
    if (body.is(all ? FoOp::True : FoOp::False)) return body;
    if (!occurs_free(body, u)) {
      // Dropping the binder needs a nonempty domain.
      if (!scope.empty()) return body;
      return wrap(body);
    }
    // ∀ distributes over ∧ and ∃ over ∨.
    if (body.is(all ? FoOp::And : FoOp::Or)) {
      std::vector<F> parts;
      for (auto& k : body.kids()) parts.push_back(simp(wrap(k), scope, witness));
      return all ? F::conj(parts) : F::disj(parts);
    }
    std::vector<F> items;
    if (body.is(all ? FoOp::Or : FoOp::And))
      items = body.kids();
    else
      items = {body};
    auto combine = [&](std::vector<F> v) { return all ? F::disj(std::move(v)) : F::conj(std::move(v)); };

    // Miniscoping: items without u leave the binder.
    std::vector<F> with, without;
    for (auto& k : items) (occurs_free(k, u) ? with : without).push_back(k);
    if (!without.empty()) {
      without.push_back(simp(wrap(combine(with)), scope, witness));
      return simp(combine(without), scope, witness);
    }

    // Guard elimination: ∀u(¬(a≤u) ∨ D) ≡ D[a] for D upward persistent, and duals.
    for (std::size_t i = 0; i < items.size(); ++i) {
      const F& g = items[i];
      F atom = all ? (g.is(FoOp::Not) ? g.body() : F()) : g;
      if (!atom.valid()) continue;
      std::vector<F> others;
      for (std::size_t j = 0; j < items.size(); ++j)
        if (j != i) others.push_back(items[j]);
      F rest = combine(others);
      std::string a;
      if (atom.is(FoOp::Eq) && (atom.a() == u) != (atom.b() == u)) {
        a = atom.a() == u ? atom.b() : atom.a();
      } else if (atom.is(FoOp::Leq) && atom.b() == u && atom.a() != u) {
        // ∀: guard a ≤ u wants D upward; ∃: a ≤ u ∧ C wants C downward.
        if (persistent(rest, u, all)) a = atom.a();
      } else if (atom.is(FoOp::Leq) && atom.a() == u && atom.b() != u) {
        if (persistent(rest, u, !all)) a = atom.b();
      }
      if (!a.empty()) return simp(substitute(rest, u, a), scope, witness);
    }

    // A variable in scope that decides the quantifier.
    if (witness && fo_size(body) < 160) {
      std::set<std::string> cands = free_vars(body);
      cands.erase(u);
      for (auto& t : cands) {
        F inst = simp(substitute(body, u, t), scope, false);
        if (inst.is(dual)) return inst;
      }
    }
    return wrap(body);
  }
};

bool free_in_any(const std::vector<F>& fs, const std::string& v) {
  return std::any_of(fs.begin(), fs.end(), [&](const F& g) { return occurs_free(g, v); });
}

std::string fresh_for(const std::vector<F>& fs, const std::string& base) {
  for (int k = 0;; ++k) {
    std::string c = base + "_" + std::to_string(k);
    bool clash = std::any_of(fs.begin(), fs.end(), [&](const F& g) {
      return occurs_free(g, c) || to_sexp(g).find(c) != std::string::npos;
    });
    if (!clash) return c;
  }
}

// ∀ out of ∨ and ∃ out of ∧; both hold on every domain, empty included.
F prenex(const F& f) {
  switch (f.op()) {
    case FoOp::Forall: return F::forall(f.var(), prenex(f.body()));
    case FoOp::Exists: return F::exists(f.var(), prenex(f.body()));
    case FoOp::Not: return F::neg(prenex(f.body()));
    case FoOp::And:
    case FoOp::Or: {
      const FoOp pull = f.is(FoOp::Or) ? FoOp::Forall : FoOp::Exists;
      std::vector<F> ks;
      for (auto& k : f.kids()) ks.push_back(prenex(k));
      for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!ks[i].is(pull)) continue;
        std::vector<F> others;
        for (std::size_t j = 0; j < ks.size(); ++j)
          if (j != i) others.push_back(ks[j]);
        std::string v = ks[i].var();
        F b = ks[i].body();
        if (free_in_any(others, v)) {
          std::string nv = fresh_for(ks, v);
          b = substitute(b, v, nv);
          v = nv;
        }
        others.insert(others.begin() + static_cast<std::ptrdiff_t>(i), b);
        F inner = f.is(FoOp::Or) ? F::disj(others) : F::conj(others);
        F out = prenex(inner);
        return pull == FoOp::Forall ? F::forall(v, out) : F::exists(v, out);
      }
      return f.is(FoOp::Or) ? F::disj(ks) : F::conj(ks);
    }
    default: return f;
  }
}

// ¬A ∨ ¬B ∨ C ∨ D reads as A ∧ B → C ∨ D.
F prettify(const F& f) {
  switch (f.op()) {
    case FoOp::Forall: return F::forall(f.var(), prettify(f.body()));
    case FoOp::Exists: return F::exists(f.var(), prettify(f.body()));
    case FoOp::And: {
      std::vector<F> ks;
      for (auto& k : f.kids()) ks.push_back(prettify(k));
      return F::conj(ks);
    }
    case FoOp::Or: {
      std::vector<F> neg, pos;
      for (auto& k : f.kids()) {
        if (k.is(FoOp::Not))
          neg.push_back(k.body());
        else
          pos.push_back(prettify(k));
      }
      if (neg.empty() || pos.empty()) {
        std::vector<F> ks;
        for (auto& k : f.kids()) ks.push_back(prettify(k));
        return F::disj(ks);
      }
      return F::imp(F::conj(neg), F::disj(pos));
    }
    default: return f;
  }
}

std::string depth_name(std::size_t d) {
  static const char* base[] = {"x", "y", "z", "u", "v", "w"};
  if (d < 6) return base[d];
  return "x" + std::to_string(d - 5);
}

F rename(const F& f, std::size_t depth, const std::set<std::string>& avoid) {
  switch (f.op()) {
    case FoOp::Forall:
    case FoOp::Exists: {
      std::size_t d = depth;
      std::string nv;
      do nv = depth_name(d++);
      while (avoid.count(nv));
      F b = substitute(f.body(), f.var(), "_n" + std::to_string(depth));
      b = substitute(b, "_n" + std::to_string(depth), nv);
      b = rename(b, d, avoid);
      return f.is(FoOp::Forall) ? F::forall(nv, b) : F::exists(nv, b);
    }
    case FoOp::Not: return F::neg(rename(f.body(), depth, avoid));
    case FoOp::And:
    case FoOp::Or: {
      std::vector<F> ks;
      for (auto& k : f.kids()) ks.push_back(rename(k, depth, avoid));
      return f.is(FoOp::And) ? F::conj(ks) : F::disj(ks);
    }
    case FoOp::Imp: return F::imp(rename(f.kids()[0], depth, avoid), rename(f.kids()[1], depth, avoid));
    default: return f;
  }
}

}  // namespace

FoFormula canonical_names(const FoFormula& f) { return rename(f, 0, free_vars(f)); }

FoFormula simplify_fo(const FoFormula& f) {
  if (has_predicates(f)) throw Error(ErrorKind::UnboundPredicateVariable, "simplification expects a predicate-free sentence");
  F g = Simplifier().run(f);
  return canonical_names(prettify(prenex(g)));
}

}  // namespace sahlq
