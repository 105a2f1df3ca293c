#include "sahlq/substructural.hpp"

#include <algorithm>
#include <numeric>

#include "sahlq/correspondence.hpp"
#include "sahlq/fomodel.hpp"

namespace sahlq {

namespace {

std::string triple(const FiniteAlgebra& a, int x, int y, int z) {
  return "(" + a.label(x) + ", " + a.label(y) + ", " + a.label(z) + ")";
}

int stable_power(const FiniteAlgebra& a, int c) {
  int p = c;
  for (int i = 0; i <= a.n; ++i) p = a.f(p, c);
  return p;
}

int npow(const FiniteAlgebra& a, int c, int k) {
  int p = c;
  for (int i = 1; i < k; ++i) p = a.f(p, c);
  return p;
}

}  // namespace

FiniteAlgebra make_fle(const FinitePoset& order, std::vector<std::uint8_t> fus, int zero, int one) {
  const int n = order.n;
  if (static_cast<int>(fus.size()) != n * n) throw Error(ErrorKind::Input, "product table has the wrong size");
  if (zero < 0 || zero >= n || one < 0 || one >= n) throw Error(ErrorKind::Input, "constant out of range");
  FiniteAlgebra a = complete(algebra_from_order(order, kAnd), kAnd | kOr);
  a.fus = std::move(fus);
  a.zero = zero;
  a.one = one;
  a.imp.assign(n * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int r = -1;
      for (int c = 0; c < n; ++c)
        if (a.leq(a.f(c, x), y)) r = r < 0 ? c : a.j(r, c);
      if (r < 0 || !a.leq(a.f(r, x), y))
        throw Error(ErrorKind::LawViolation, "no residual for " + a.label(x) + " → " + a.label(y));
      a.imp[x * n + y] = static_cast<std::uint8_t>(r);
    }
  a.neg.assign(n, 0);
  for (int x = 0; x < n; ++x) a.neg[x] = a.imp[x * n + zero];
  a.sig = kFLe;
  return a;
}

FiniteAlgebra heyting_as_fle(const FiniteAlgebra& ha) {
  FiniteAlgebra a = complete(ha, kHeyting);
  if (!detect_classes(a).has(tHA)) throw Error(ErrorKind::Input, "not a Heyting algebra");
  a.fus = a.meet;
  a.sig = kFLe;
  return a;
}

std::optional<std::string> fle_violation(const FiniteAlgebra& a) {
  const int n = a.n;
  for (unsigned op : {kAnd, kOr, kImp, kFus})
    if (!a.has(op)) return "missing table " + sig_to_string(op);
  if (a.zero < 0 || a.one < 0) return std::string("missing constant");
  if (n == 0) return std::string("empty carrier");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int m = a.m(x, y), j = a.j(x, y);
      if (!a.leq(m, x) || !a.leq(m, y) || !a.leq(x, j) || !a.leq(y, j))
        return "lattice bounds fail at " + triple(a, x, y, m);
      for (int z = 0; z < n; ++z) {
        if (a.leq(z, x) && a.leq(z, y) && !a.leq(z, m)) return "meet is not greatest at " + triple(a, x, y, z);
        if (a.leq(x, z) && a.leq(y, z) && !a.leq(j, z)) return "join is not least at " + triple(a, x, y, z);
      }
    }
  for (int x = 0; x < n; ++x) {
    if (a.f(x, a.one) != x) return "1 is not a unit at " + a.label(x);
    for (int y = 0; y < n; ++y) {
      if (a.f(x, y) != a.f(y, x)) return "product is not commutative at (" + a.label(x) + ", " + a.label(y) + ")";
      for (int z = 0; z < n; ++z) {
        if (a.f(a.f(x, y), z) != a.f(x, a.f(y, z))) return "product is not associative at " + triple(a, x, y, z);
        if (a.leq(a.f(x, y), z) != a.leq(x, a.i(y, z))) return "residuation fails at " + triple(a, x, y, z);
      }
    }
  }
  return std::nullopt;
}

bool fle_validate(const FiniteAlgebra& a) { return !fle_violation(a); }

Formula bot_formula() {
  Formula o = one(), z = zero();
  return big_conj({o, imp(o, z), imp(z, o), imp(o, imp(o, o)), imp(imp(o, o), o)});
}

int bot_element(const FiniteAlgebra& a) { return eval_formula(a, bot_formula(), {}); }

Formula ill_neg(const Formula& f) { return imp(f, bot_formula()); }

namespace {
Formula unit_conj(const FormulaSet& xs) {
  Formula acc = one();
  for (auto& x : xs) acc = conj(acc, x);
  return acc;
}
}  // namespace

WitnessFamily ill_witnesses(int k) {
  if (k < 1) throw Error(ErrorKind::Input, "witness power must be positive");
  WitnessFamily w;
  w.il = [k](const FormulaSet& xs) { return FormulaSet{ill_neg(power(unit_conj(xs), k))}; };
  w.dt = [k](const FormulaSet& xs, const FormulaSet& ys) {
    if (xs.empty()) return ys;
    return FormulaSet{imp(power(unit_conj(xs), k), big_conj(ys))};
  };
  w.pc = [](const FormulaSet& xs, const FormulaSet& ys) { return FormulaSet{disj(unit_conj(xs), unit_conj(ys))}; };
  return w;
}

LogicProfile ill_profile(int k) {
  LogicProfile p;
  p.name = "ILL[k=" + std::to_string(k) + "]";
  p.w = ill_witnesses(k);
  p.delta = {imp(x(1), x(2)), imp(x(2), x(1))};
  p.top = [](Formula v) { return imp(v, v); };
  p.conjunction = true;
  return p;
}

Formula characteristic_formula_ill(const Quasiequation& q, int k) {
  if (q.premises.empty()) throw Error(ErrorKind::Input, "the characteristic formula needs at least one premise");
  LogicProfile l = ill_profile(k);
  FormulaSet ds;
  for (auto& p : q.premises) ds.push_back(conj(one(), big_conj(phi_k(p, 1, l))));
  return big_disj(ds);
}

// ---- congruences --------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    p[b] = a;
    return true;
  }
};

std::vector<const std::vector<std::uint8_t>*> binary_tables(const FiniteAlgebra& a) {
  std::vector<const std::vector<std::uint8_t>*> t;
  for (auto* v : {&a.meet, &a.join, &a.imp, &a.fus})
    if (!v->empty()) t.push_back(v);
  return t;
}

std::vector<const std::vector<std::uint8_t>*> unary_tables(const FiniteAlgebra& a) {
  std::vector<const std::vector<std::uint8_t>*> t;
  for (auto* v : {&a.neg, &a.box, &a.dia})
    if (!v->empty()) t.push_back(v);
  return t;
}

std::vector<int> close(const FiniteAlgebra& a, UnionFind& uf) {
  const int n = a.n;
  auto bins = binary_tables(a);
  auto uns = unary_tables(a);
  for (bool changed = true; changed;) {
    changed = false;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (uf.find(u) != uf.find(v)) continue;
        for (auto* t : uns) changed |= uf.unite((*t)[u], (*t)[v]);
        for (auto* t : bins)
          for (int c = 0; c < n; ++c) {
            changed |= uf.unite((*t)[u * n + c], (*t)[v * n + c]);
            changed |= uf.unite((*t)[c * n + u], (*t)[c * n + v]);
          }
      }
  }
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = uf.find(i);
  return cls;
}

Bits pair_bits(const std::vector<int>& cls) {
  const int n = static_cast<int>(cls.size());
  Bits b = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cls[i] == cls[j]) b |= bit(i * n + j);
  return b;
}

}  // namespace

std::string partition_label(const std::vector<int>& cls) {
  std::string out;
  for (int r = 0; r < static_cast<int>(cls.size()); ++r) {
    if (cls[r] != r) continue;
    if (!out.empty()) out += '|';
    bool first = true;
    for (int i = 0; i < static_cast<int>(cls.size()); ++i)
      if (cls[i] == r) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(i);
      }
  }
  return out;
}

std::vector<int> congruence_generated(const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& pairs) {
  UnionFind uf(a.n);
  for (auto [u, v] : pairs) {
    if (u < 0 || v < 0 || u >= a.n || v >= a.n) throw Error(ErrorKind::Input, "pair out of range");
    uf.unite(u, v);
  }
  return close(a, uf);
}

bool is_congruence(const FiniteAlgebra& a, const std::vector<int>& cls) {
  const int n = a.n;
  auto bins = binary_tables(a);
  auto uns = unary_tables(a);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (cls[u] != cls[v]) continue;
      for (auto* t : uns)
        if (cls[(*t)[u]] != cls[(*t)[v]]) return false;
      for (auto* t : bins)
        for (int c = 0; c < n; ++c)
          if (cls[(*t)[u * n + c]] != cls[(*t)[v * n + c]] || cls[(*t)[c * n + u]] != cls[(*t)[c * n + v]])
            return false;
    }
  return true;
}

int CongruenceLattice::index_of(Bits p) const {
  auto it = std::find(pairs.begin(), pairs.end(), p);
  return it == pairs.end() ? -1 : static_cast<int>(it - pairs.begin());
}

int CongruenceLattice::meet(int a, int b) const { return index_of(pairs[a] & pairs[b]); }

int CongruenceLattice::join(int a, int b) const {
  Bits want = pairs[a] | pairs[b];
  int best = -1;
  for (int c = 0; c < static_cast<int>(pairs.size()); ++c)
    if ((want & ~pairs[c]) == 0 && (best < 0 || (pairs[c] & ~pairs[best]) == 0)) best = c;
  return best;
}

CongruenceLattice congruences(const FiniteAlgebra& a, int bound) {
  if (a.n > bound || a.n > 8) throw Error(ErrorKind::BoundExceeded, "congruence search is limited to " + std::to_string(std::min(bound, 8)) + " elements");
  CongruenceLattice L;
  L.n = a.n;
  std::vector<int> delta(a.n);
  std::iota(delta.begin(), delta.end(), 0);
  auto add = [&](std::vector<int> cls) {
    Bits b = pair_bits(cls);
    if (L.index_of(b) >= 0) return false;
    L.classes.push_back(std::move(cls));
    L.pairs.push_back(b);
    return true;
  };
  add(delta);
  std::vector<std::vector<int>> principal;
  for (int u = 0; u < a.n; ++u)
    for (int v = u + 1; v < a.n; ++v) {
      auto c = congruence_generated(a, {{u, v}});
      principal.push_back(c);
      add(c);
    }
  // Every congruence of a finite algebra is a join of principal ones.
  for (std::size_t i = 0; i < L.classes.size(); ++i)
    for (auto& p : principal) {
      UnionFind uf(a.n);
      for (int e = 0; e < a.n; ++e) {
        uf.unite(e, L.classes[i][e]);
        uf.unite(e, p[e]);
      }
      add(close(a, uf));
    }
  std::vector<std::size_t> order(L.pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    int px = popcount(L.pairs[x]), py = popcount(L.pairs[y]);
    return px != py ? px < py : L.classes[x] < L.classes[y];
  });
  CongruenceLattice S;
  S.n = L.n;
  for (auto i : order) {
    S.classes.push_back(L.classes[i]);
    S.pairs.push_back(L.pairs[i]);
  }
  S.bottom = 0;
  S.top = static_cast<int>(S.pairs.size()) - 1;
  Bits whole = S.pairs[S.top];
  for (Bits m : meet_irreducibles(S.pairs, whole)) S.meet_irreducible.push_back(S.index_of(m));
  std::sort(S.meet_irreducible.begin(), S.meet_irreducible.end());
  return S;
}

FinitePoset spec_congruences(const FiniteAlgebra& a, int bound) {
  CongruenceLattice L = congruences(a, bound);
  const auto& mi = L.meet_irreducible;
  std::vector<Bits> up(mi.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < mi.size(); ++i) {
    labels.push_back(partition_label(L.classes[mi[i]]));
    for (std::size_t j = 0; j < mi.size(); ++j)
      if ((L.pairs[mi[i]] & ~L.pairs[mi[j]]) == 0) up[i] |= bit(static_cast<int>(j));
  }
  return FinitePoset::from_up(std::move(up), std::move(labels));
}

// ---- the linear correspondence check ------------------------------------

IllGate ill_gate(const FiniteAlgebra& a, const Quasiequation& q, int k) {
  IllGate g;
  for (auto& p : q.premises) {
    g.needs_dt |= mentions(p, Op::Imp);
    g.needs_il |= mentions(p, Op::Not) || mentions(p, Op::Zero);
  }
  const int n = a.n;
  for (int x = 0; x < n && g.dt; ++x) {
    int c = a.m(a.one, x);
    if (!a.leq(npow(a, c, k), npow(a, c, k + 1))) {
      g.dt = false;
      g.reason = "(1 ∧ x)^k ≰ (1 ∧ x)^(k+1) at x = " + a.label(x);
    }
  }
  int bot = bot_element(a);
  if (npow(a, bot, k) != a.bottom) {
    g.il = false;
    if (g.reason.empty()) g.reason = "⊥^k is not the least element";
  }
  auto lneg = [&](int v) { return a.i(v, bot); };
  for (int m = 1; m <= n + 1 && g.il; ++m)
    for (int x = 0; x < n && g.il; ++x) {
      int c = a.m(a.one, x);
      int lhs = stable_power(a, a.m(a.one, lneg(npow(a, c, m))));
      if (!a.leq(lhs, lneg(npow(a, c, k)))) {
        g.il = false;
        if (g.reason.empty()) g.reason = "no power of 1 ∧ ¬(1 ∧ x)^m lies below ¬(1 ∧ x)^k at x = " + a.label(x);
      }
    }
  return g;
}

LinearReport check_linear_correspondence(const FiniteAlgebra& a, const Quasiequation& q, int k,
                                         const FoFormula& corr) {
  if (auto v = fle_violation(a)) throw Error(ErrorKind::LawViolation, "not an FL_e algebra: " + *v);
  LinearReport r;
  r.formula = characteristic_formula_ill(q, k);
  r.lhs = validates_formula(a, r.formula);
  r.gate = ill_gate(a, q, k);
  r.spec = spec_congruences(a);
  r.rhs = check_fo(r.spec, corr);
  return r;
}

LinearReport check_linear_correspondence(const FiniteAlgebra& a, const Quasiequation& q, int k) {
  return check_linear_correspondence(a, q, k, correspondent(q));
}

}  // namespace sahlq
