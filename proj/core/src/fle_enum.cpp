#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "sahlq/fomodel.hpp"
#include "sahlq/substructural.hpp"

namespace sahlq {

namespace {

std::vector<std::vector<int>> automorphisms(const FinitePoset& p) {
  std::vector<std::vector<int>> out;
  std::vector<int> perm(p.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::function<void(int, Bits)> go = [&](int i, Bits used) {
    if (i == p.n) {
      out.push_back(perm);
      return;
    }
    for (int c = 0; c < p.n; ++c) {
      if (test_bit(used, c)) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) ok = p.leq(i, k) == p.leq(c, perm[k]) && p.leq(k, i) == p.leq(perm[k], c);
      if (!ok) continue;
      perm[i] = c;
      go(i + 1, used | bit(c));
    }
  };
  go(0, 0);
  return out;
}

// Commutative monoid products with unit e on a finite lattice that preserve
// all finite joins (so ⊥ is absorbing), hence are residuated.
void products(const FiniteAlgebra& lat, int e, const std::function<void(const std::vector<std::uint8_t>&)>& emit) {
  const int n = lat.n, bot = lat.bottom;
  std::vector<int> t(n * n, -1);
  auto set = [&](int a, int b, int v) { t[a * n + b] = t[b * n + a] = v; };
  for (int a = 0; a < n; ++a) {
    set(a, bot, bot);
    set(a, e, a);
  }
  if (t[e * n + bot] != bot) return;  // e = ⊥ forces a one-element algebra
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (t[a * n + b] < 0) cells.emplace_back(a, b);
  auto monotone = [&](int a, int b, int v) {
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) {
        int w = t[c * n + d];
        if (w < 0) continue;
        if (lat.leq(c, a) && lat.leq(d, b) && !lat.leq(w, v)) return false;
        if (lat.leq(a, c) && lat.leq(b, d) && !lat.leq(v, w)) return false;
      }
    return true;
  };
  std::vector<std::uint8_t> out(n * n);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == cells.size()) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            if (t[a * n + lat.j(b, c)] != lat.j(t[a * n + b], t[a * n + c])) return;
            if (t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]]) return;
          }
      for (int k = 0; k < n * n; ++k) out[k] = static_cast<std::uint8_t>(t[k]);
      emit(out);
      return;
    }
    auto [a, b] = cells[i];
    for (int v = 0; v < n; ++v) {
      if (!monotone(a, b, v)) continue;
      set(a, b, v);
      go(i + 1);
      set(a, b, -1);
    }
  };
  go(0);
}

}  // namespace

std::vector<FiniteAlgebra> enumerate_fle(int max_size, int min_size) {
  if (max_size > 8) throw Error(ErrorKind::BoundExceeded, "FL_e enumeration is limited to 8 elements");
  std::vector<FiniteAlgebra> out;
  for (int n = std::max(1, min_size); n <= max_size; ++n)
    for (auto& p : lattices_of_size(n)) {
      FiniteAlgebra lat = complete(algebra_from_order(p, kAnd), kAnd | kOr);
      auto autos = automorphisms(p);
      std::set<std::vector<int>> seen;
      for (int e = 0; e < n; ++e) {
        if (n > 1 && e == lat.bottom) continue;
        products(lat, e, [&](const std::vector<std::uint8_t>& prod) {
          for (int z = 0; z < n; ++z) {
            std::vector<int> best;
            for (auto& s : autos) {
              std::vector<int> key{s[e], s[z]};
              key.resize(2 + n * n);
              for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) key[2 + s[a] * n + s[b]] = s[prod[a * n + b]];
              if (best.empty() || key < best) best = std::move(key);
            }
            if (!seen.insert(best).second) continue;
            FiniteAlgebra a = make_fle(p, prod, z, e);
            out.push_back(std::move(a));
          }
        });
      }
    }
  return out;
}

}  // namespace sahlq
