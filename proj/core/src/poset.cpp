#include <algorithm>
#include <functional>

#include "sahlq/algebra.hpp"

namespace sahlq {

std::vector<int> members(Bits b) {
  std::vector<int> out;
  while (b) {
    out.push_back(std::countr_zero(b));
    b &= b - 1;
  }
  return out;
}

std::string set_label(Bits s, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (int i : members(s)) {
    if (!first) out += ',';
    first = false;
    out += i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i);
  }
  return out + "}";
}

Bits FinitePoset::up_closure(Bits s) const {
  Bits r = 0;
  for (int i : members(s)) r |= up[i];
  return r;
}

Bits FinitePoset::down_closure(Bits s) const {
  Bits r = 0;
  for (int i : members(s)) r |= down[i];
  return r;
}

Bits FinitePoset::minimal(Bits s) const {
  Bits r = 0;
  for (int i : members(s))
    if ((down[i] & s) == bit(i)) r |= bit(i);
  return r;
}

Bits FinitePoset::maximal(Bits s) const {
  Bits r = 0;
  for (int i : members(s))
    if ((up[i] & s) == bit(i)) r |= bit(i);
  return r;
}

std::vector<std::pair<int, int>> FinitePoset::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    Bits above = up[i] & ~bit(i);
    for (int j : members(minimal(above))) out.emplace_back(i, j);
  }
  return out;
}

std::string FinitePoset::label(int i) const {
  return i < static_cast<int>(labels.size()) ? labels[i] : std::to_string(i);
}

FinitePoset FinitePoset::from_leq(int n, const std::vector<std::pair<int, int>>& leq,
                                  std::vector<std::string> labels) {
  if (n < 0 || n > kMaxElements) throw Error(ErrorKind::BoundExceeded, "poset too large");
  std::vector<Bits> up(n);
  for (int i = 0; i < n; ++i) up[i] = bit(i);
  for (auto [a, b] : leq) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::Input, "order pair out of range");
    up[a] |= bit(b);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (test_bit(up[i], k)) up[i] |= up[k];
  return from_up(std::move(up), std::move(labels));
}

FinitePoset FinitePoset::from_up(std::vector<Bits> up, std::vector<std::string> labels) {
  FinitePoset p;
  p.n = static_cast<int>(up.size());
  p.up = std::move(up);
  p.down.assign(p.n, 0);
  for (int i = 0; i < p.n; ++i) {
    if (!test_bit(p.up[i], i)) throw Error(ErrorKind::Input, "order is not reflexive");
    for (int j : members(p.up[i])) {
      if (j >= p.n) throw Error(ErrorKind::Input, "order pair out of range");
      p.down[j] |= bit(i);
    }
  }
  for (int i = 0; i < p.n; ++i)
    for (int j : members(p.up[i])) {
      if (i != j && test_bit(p.up[j], i))
        throw Error(ErrorKind::Input, "order is not antisymmetric: " + std::to_string(i) + ", " + std::to_string(j));
      if ((p.up[j] & ~p.up[i]) != 0) throw Error(ErrorKind::Input, "order is not transitive");
    }
  if (!labels.empty() && static_cast<int>(labels.size()) != p.n)
    throw Error(ErrorKind::Input, "label count does not match poset size");
  p.labels = std::move(labels);
  return p;
}

FinitePoset FinitePoset::chain(int n) {
  std::vector<std::pair<int, int>> r;
  for (int i = 0; i + 1 < n; ++i) r.emplace_back(i, i + 1);
  return from_leq(n, r);
}

FinitePoset FinitePoset::antichain(int n) { return from_leq(n, {}); }

bool operator==(const FinitePoset& a, const FinitePoset& b) { return a.n == b.n && a.up == b.up; }

FinitePoset dual(const FinitePoset& p) {
  FinitePoset d = p;
  std::swap(d.up, d.down);
  return d;
}

FinitePoset restrict(const FinitePoset& p, Bits keep) {
  auto idx = members(keep);
  std::vector<Bits> up(idx.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b)
      if (p.leq(idx[a], idx[b])) up[a] |= bit(static_cast<int>(b));
    labels.push_back(p.label(idx[a]));
  }
  return FinitePoset::from_up(std::move(up), std::move(labels));
}

std::optional<std::vector<int>> find_isomorphism(const FinitePoset& a, const FinitePoset& b) {
  if (a.n != b.n) return std::nullopt;
  int n = a.n;
  auto sig = [](const FinitePoset& p, int i) { return std::make_pair(popcount(p.up[i]), popcount(p.down[i])); };
  std::vector<int> map(n, -1);
  Bits used = 0;
  std::function<bool(int)> go = [&](int i) {
    if (i == n) return true;
    for (int c = 0; c < n; ++c) {
      if (test_bit(used, c) || sig(a, i) != sig(b, c)) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k)
        ok = a.leq(i, k) == b.leq(c, map[k]) && a.leq(k, i) == b.leq(map[k], c);
      if (!ok) continue;
      map[i] = c;
      used |= bit(c);
      if (go(i + 1)) return true;
      used &= ~bit(c);
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return map;
}

bool isomorphic(const FinitePoset& a, const FinitePoset& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace sahlq
