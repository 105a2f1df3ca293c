#include "sahlq/duality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace sahlq {

std::vector<Bits> filters(const FiniteAlgebra& a) {
  std::set<Bits> s(a.up.begin(), a.up.end());
  return {s.begin(), s.end()};
}

bool is_filter(const FiniteAlgebra& a, Bits s) {
  if (!s) return false;
  for (int x : members(s)) {
    if ((a.up[x] & ~s) != 0) return false;
    for (int y : members(s))
      if (!test_bit(s, a.m(x, y))) return false;
  }
  return true;
}

bool is_prime_filter(const FiniteAlgebra& a, Bits s) {
  if (a.join.empty()) throw Error(ErrorKind::MissingOperation, "MissingOperation(∨)");
  Bits rest = a.all() & ~s;
  if (!is_filter(a, s) || !rest) return false;
  for (int x : members(rest))
    for (int y : members(rest))
      if (test_bit(s, a.j(x, y))) return false;
  return true;
}

int FilterPoset::index_of(Bits s) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), s);
  return it != sets.end() && *it == s ? static_cast<int>(it - sets.begin()) : -1;
}

std::vector<Bits> meet_irreducibles(const std::vector<Bits>& closed, Bits whole) {
  std::vector<Bits> out;
  for (Bits f : closed) {
    if (f == whole) continue;
    Bits inter = whole;
    for (Bits g : closed)
      if (g != f && (f & ~g) == 0) inter &= g;
    if (inter != f) out.push_back(f);
  }
  return out;
}

FilterPoset inclusion_poset(std::vector<Bits> sets, const std::vector<std::string>& element_labels) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  if (static_cast<int>(sets.size()) > kMaxElements) throw Error(ErrorKind::BoundExceeded, "too many filters");
  std::vector<Bits> up(sets.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    labels.push_back(set_label(sets[i], element_labels));
    for (std::size_t j = 0; j < sets.size(); ++j)
      if ((sets[i] & ~sets[j]) == 0) up[i] |= bit(static_cast<int>(j));
  }
  FilterPoset fp;
  fp.poset = FinitePoset::from_up(std::move(up), std::move(labels));
  fp.sets = std::move(sets);
  return fp;
}

FilterPoset meet_irreducible_filters(const FiniteAlgebra& a) {
  return inclusion_poset(meet_irreducibles(filters(a), a.all()), a.labels);
}

namespace {

int unit_of(const FiniteAlgebra& a) {
  if (a.imp.empty()) throw Error(ErrorKind::MissingOperation, "MissingOperation(→)");
  return a.one >= 0 ? a.one : a.i(0, 0);
}

Bits mp_closure(const FiniteAlgebra& a, Bits s, int one) {
  s |= bit(one);
  for (bool grew = true; grew;) {
    grew = false;
    for (int x : members(s))
      for (int y = 0; y < a.n; ++y)
        if (!test_bit(s, y) && test_bit(s, a.i(x, y))) {
          s |= bit(y);
          grew = true;
        }
  }
  return s;
}

}  // namespace

std::vector<Bits> implicative_filters(const FiniteAlgebra& a) {
  if (a.n == 0) return {};
  int one = unit_of(a);
  std::set<Bits> seen;
  std::vector<Bits> todo{mp_closure(a, 0, one)};
  seen.insert(todo.front());
  while (!todo.empty()) {
    Bits f = todo.back();
    todo.pop_back();
    for (int x = 0; x < a.n; ++x) {
      if (test_bit(f, x)) continue;
      Bits g = mp_closure(a, f | bit(x), one);
      if (seen.insert(g).second) todo.push_back(g);
    }
  }
  return {seen.begin(), seen.end()};
}

FilterPoset meet_irreducible_implicative_filters(const FiniteAlgebra& a) {
  return inclusion_poset(meet_irreducibles(implicative_filters(a), a.all()), a.labels);
}

FiniteAlgebra hilbert_algebra(std::vector<std::string> labels, std::vector<std::uint8_t> imp) {
  FiniteAlgebra a;
  a.n = static_cast<int>(labels.size());
  if (a.n == 0 || static_cast<int>(imp.size()) != a.n * a.n) throw Error(ErrorKind::Input, "implication table has the wrong size");
  for (auto v : imp)
    if (v >= a.n) throw Error(ErrorKind::Input, "implication table entry out of range");
  a.labels = std::move(labels);
  a.imp = std::move(imp);
  a.one = a.i(0, 0);
  for (int x = 0; x < a.n; ++x)
    if (a.i(x, x) != a.one) throw Error(ErrorKind::LawViolation, "a → a is not constant at " + a.label(x));
  a.up.assign(a.n, 0);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.i(x, y) == a.one) a.up[x] |= bit(y);
  FinitePoset::from_up(a.up);  // validates the order
  a.top = a.one;
  a.sig = kImp | kOne;
  return a;
}

std::vector<std::string> map_tag_names(unsigned tags) {
  static const std::pair<unsigned, const char*> names[] = {
      {mOrderPreserving, "OrderPreserving"},     {mPartialNegative, "PartialNegativePMorphism"},
      {mPartialPositive, "PartialPositivePMorphism"}, {mPartialPMorphism, "PartialPMorphism"},
      {mAlmostTotal, "AlmostTotal"},             {mTotal, "Total"},
      {mNegativePMorphism, "NegativePMorphism"}, {mPMorphism, "PMorphism"}};
  std::vector<std::string> out;
  for (auto& [b, n] : names)
    if (tags & b) out.push_back(n);
  return out;
}

unsigned check_partial_map_kind(const PartialMap& p) {
  const FinitePoset &X = p.src, &Y = p.dst;
  auto dom = members(p.dom);
  bool op = true, neg_back = true, pos_back = true;
  for (int x : dom)
    for (int z : dom)
      if (X.leq(x, z) && !Y.leq(p.map[x], p.map[z])) op = false;
  for (int x : dom)
    for (int y : members(Y.up[p.map[x]])) {
      bool weak = false, strong = false;
      for (int z : members(X.up[x] & p.dom)) {
        if (Y.leq(y, p.map[z])) weak = true;
        if (p.map[z] == y) strong = true;
      }
      neg_back = neg_back && weak;
      pos_back = pos_back && strong;
    }
  Bits inner = 0;
  for (int x = 0; x < X.n; ++x)
    if ((X.up[x] & ~p.dom) == 0) inner |= bit(x);
  bool covered = X.down_closure(inner) == X.all();

  unsigned t = 0;
  if (op) t |= mOrderPreserving;
  if (op && covered && neg_back) t |= mPartialNegative;
  if (op && pos_back) t |= mPartialPositive;
  if ((t & mPartialNegative) && (t & mPartialPositive)) t |= mPartialPMorphism;
  if (X.is_downset(p.dom)) t |= mAlmostTotal;
  if (p.dom == X.all()) t |= mTotal;
  if ((t & mPartialNegative) && (t & mTotal)) t |= mNegativePMorphism;
  if ((t & mPartialPMorphism) && (t & mTotal)) t |= mPMorphism;
  return t;
}

unsigned required_arrow(Variety v) {
  switch (v) {
    case Variety::PSL: return mPartialNegative;
    case Variety::ISL: return mPartialPositive;
    case Variety::bISL: return mPartialPMorphism;
    case Variety::PDL: return mNegativePMorphism;
    case Variety::IL: return mAlmostTotal | mPartialPositive;
    case Variety::HA: return mPMorphism;
  }
  return 0;
}

bool is_arrow(const PartialMap& p, Variety v) {
  unsigned need = required_arrow(v);
  return (check_partial_map_kind(p) & need) == need;
}

bool surjective(const PartialMap& p) {
  Bits hit = 0;
  for (int x : members(p.dom)) hit |= bit(p.map[x]);
  return hit == p.dst.all();
}

LowerStar lower_star(const FiniteAlgebra& a0, const FiniteAlgebra& b0, const std::vector<int>& f, Variety v) {
  unsigned sig = signature(v);
  FiniteAlgebra a = complete(a0, sig), b = complete(b0, sig);
  if (auto bad = check_homomorphism(a, b, f, sig)) throw Error(ErrorKind::NotHomomorphism, "NotHomomorphism: " + *bad);
  LowerStar out;
  out.a_star = meet_irreducible_filters(a);
  out.b_star = meet_irreducible_filters(b);
  out.map.src = out.b_star.poset;
  out.map.dst = out.a_star.poset;
  out.map.map.assign(out.map.src.n, -1);
  for (int t = 0; t < out.map.src.n; ++t) {
    Bits pre = 0;
    for (int x = 0; x < a.n; ++x)
      if (test_bit(out.b_star.sets[t], f[x])) pre |= bit(x);
    int k = out.a_star.index_of(pre);
    if (k >= 0) {
      out.map.dom |= bit(t);
      out.map.map[t] = k;
    }
  }
  out.tags = check_partial_map_kind(out.map);
  return out;
}

UpOfMap up_of_map(const PartialMap& p, Variety v) {
  if (!is_arrow(p, v))
    throw Error(ErrorKind::WrongArrowKind, std::string("WrongArrowKind: not an arrow for ") + to_string(v));
  unsigned sig = signature(v);
  UpOfMap out;
  out.up_y = up_algebra(p.dst, sig);
  out.up_x = up_algebra(p.src, sig);
  for (int i = 0; i < out.up_y.n; ++i) {
    Bits outside = p.dst.all() & ~out.up_y.repr[i];
    Bits pre = 0;
    for (int x : members(p.dom))
      if (test_bit(outside, p.map[x])) pre |= bit(x);
    out.map.push_back(out.up_x.find_repr(p.src.all() & ~p.src.down_closure(pre)));
  }
  out.failure = check_homomorphism(out.up_y, out.up_x, out.map, sig);
  return out;
}

CanonicalEmbedding canonical_embedding(const FiniteAlgebra& a0, Variety v) {
  unsigned sig = signature(v);
  FiniteAlgebra a = complete(a0, sig);
  CanonicalEmbedding out;
  out.a_star = meet_irreducible_filters(a);
  out.up = up_algebra(out.a_star.poset, sig);
  for (int e = 0; e < a.n; ++e) {
    Bits s = 0;
    for (std::size_t t = 0; t < out.a_star.sets.size(); ++t)
      if (test_bit(out.a_star.sets[t], e)) s |= bit(static_cast<int>(t));
    int k = out.up.find_repr(s);
    if (k < 0) {
      out.failure = "image of " + a.label(e) + " is not an upset";
      return out;
    }
    out.map.push_back(k);
  }
  out.failure = check_homomorphism(a, out.up, out.map, sig);
  if (!out.failure && !injective(out.map)) out.failure = "not injective";
  return out;
}

HomSearch homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b, unsigned sig, double limit, std::uint64_t seed,
                        int samples) {
  HomSearch out;
  if (a.n == 0 || b.n == 0) return out;
  struct Bin {
    const std::vector<std::uint8_t>* ta;
    const std::vector<std::uint8_t>* tb;
  };
  std::vector<Bin> bins, uns;
  for (unsigned op : {kAnd, kOr, kImp, kFus, kNeg, kBox, kDia}) {
    if (!(sig & op)) continue;
    if (!a.has(op) || !b.has(op)) throw Error(ErrorKind::MissingOperation, "MissingOperation(" + sig_to_string(op) + ")");
  }
  if (sig & kAnd) bins.push_back({&a.meet, &b.meet});
  if (sig & kOr) bins.push_back({&a.join, &b.join});
  if (sig & kImp) bins.push_back({&a.imp, &b.imp});
  if (sig & kFus) bins.push_back({&a.fus, &b.fus});
  if (sig & kNeg) uns.push_back({&a.neg, &b.neg});
  if (sig & kBox) uns.push_back({&a.box, &b.box});
  if (sig & kDia) uns.push_back({&a.dia, &b.dia});
  if (((sig & kZero) && (a.zero < 0 || b.zero < 0)) || ((sig & kOne) && (a.one < 0 || b.one < 0)))
    throw Error(ErrorKind::MissingOperation, "MissingOperation(constant)");

  std::vector<int> f(a.n, -1);
  // Checks every constraint whose elements are all assigned among 0..i.
  auto consistent = [&](int i) {
    if ((sig & kZero) && a.zero <= i && f[a.zero] != b.zero) return false;
    if ((sig & kOne) && a.one <= i && f[a.one] != b.one) return false;
    for (auto& u : uns)
      for (int x = 0; x <= i; ++x) {
        int t = (*u.ta)[x];
        if (t <= i && (x == i || t == i) && f[t] != (*u.tb)[f[x]]) return false;
      }
    for (auto& bn : bins)
      for (int x = 0; x <= i; ++x)
        for (int y = 0; y <= i; ++y) {
          int t = (*bn.ta)[x * a.n + y];
          if (t <= i && (x == i || y == i || t == i) && f[t] != (*bn.tb)[f[x] * b.n + f[y]]) return false;
        }
    return true;
  };

  if (std::pow(double(b.n), double(a.n)) <= limit) {
    std::function<void(int)> go = [&](int i) {
      if (i == a.n) {
        out.homs.push_back(f);
        return;
      }
      for (int c = 0; c < b.n; ++c) {
        f[i] = c;
        if (consistent(i)) go(i + 1);
      }
      f[i] = -1;
    };
    go(0);
    return out;
  }
  out.exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, b.n - 1);
  std::set<std::vector<int>> seen;
  for (int s = 0; s < samples; ++s) {
    for (auto& v : f) v = pick(rng);
    if (!check_homomorphism(a, b, f, sig) && seen.insert(f).second) out.homs.push_back(f);
  }
  return out;
}

}  // namespace sahlq
