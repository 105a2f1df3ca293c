#include "sahlq/fomodel.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

#include "sahlq/substructural.hpp"

namespace sahlq {

namespace {

// Flattened formula with variables resolved to environment slots.
struct Compiled {
  struct Node {
    FoOp op;
    int a = -1, b = -1;
    std::vector<int> kids;
  };
  std::vector<Node> nodes;
  int slots = 0;

  int add(const FoFormula& f, std::vector<std::pair<std::string, int>>& scope,
          const std::map<std::string, int>& free_slots) {
    auto lookup = [&](const std::string& v) {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == v) return it->second;
      auto it = free_slots.find(v);
      if (it == free_slots.end()) throw Error(ErrorKind::Input, "free variable " + v + " has no value");
      return it->second;
    };
    Node n{f.op(), -1, -1, {}};
    switch (f.op()) {
      case FoOp::Pred:
        throw Error(ErrorKind::UnboundPredicateVariable, "UnboundPredicateVariable: " + f.name());
      case FoOp::Leq:
      case FoOp::Rel:
      case FoOp::Eq:
        n.a = lookup(f.a());
        n.b = lookup(f.b());
        break;
      case FoOp::Forall:
      case FoOp::Exists: {
        int s = slots++;
        n.a = s;
        scope.emplace_back(f.var(), s);
        int k = add(f.body(), scope, free_slots);
        scope.pop_back();
        n.kids.push_back(k);
        break;
      }
      default:
        for (auto& k : f.kids()) n.kids.push_back(add(k, scope, free_slots));
    }
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  bool eval(const FinitePoset& x, int i, std::vector<int>& env) const {
    const Node& n = nodes[i];
    switch (n.op) {
      case FoOp::True: return true;
      case FoOp::False: return false;
      case FoOp::Leq:
      case FoOp::Rel: return x.leq(env[n.a], env[n.b]);
      case FoOp::Eq: return env[n.a] == env[n.b];
      case FoOp::Not: return !eval(x, n.kids[0], env);
      case FoOp::And:
        for (int k : n.kids)
          if (!eval(x, k, env)) return false;
        return true;
      case FoOp::Or:
        for (int k : n.kids)
          if (eval(x, k, env)) return true;
        return false;
      case FoOp::Imp: return !eval(x, n.kids[0], env) || eval(x, n.kids[1], env);
      case FoOp::Forall:
        for (int e = 0; e < x.n; ++e) {
          env[n.a] = e;
          if (!eval(x, n.kids[0], env)) return false;
        }
        return true;
      case FoOp::Exists:
        for (int e = 0; e < x.n; ++e) {
          env[n.a] = e;
          if (eval(x, n.kids[0], env)) return true;
        }
        return false;
      case FoOp::Pred: break;
    }
    return false;
  }
};

}  // namespace

bool check_fo(const FinitePoset& x, const FoFormula& s, const std::map<std::string, int>& env) {
  Compiled c;
  std::map<std::string, int> free_slots;
  std::vector<int> init;
  for (auto& [v, e] : env) {
    if (e < 0 || e >= x.n) throw Error(ErrorKind::Input, "value of " + v + " out of range");
    free_slots[v] = c.slots++;
    init.push_back(e);
  }
  std::vector<std::pair<std::string, int>> scope;
  int root = c.add(s, scope, free_slots);
  init.resize(c.slots, 0);
  return c.eval(x, root, init);
}

const char* to_string(ClassFilter c) {
  switch (c) {
    case ClassFilter::Posets: return "posets";
    case ClassFilter::Lattice: return "lattice";
    case ClassFilter::PSL: return "PSL";
    case ClassFilter::ISL: return "ISL";
    case ClassFilter::bISL: return "bISL";
    case ClassFilter::PDL: return "PDL";
    case ClassFilter::IL: return "IL";
    case ClassFilter::HA: return "HA";
    case ClassFilter::FLe: return "FLe";
  }
  return "?";
}

std::optional<ClassFilter> parse_class_filter(const std::string& s) {
  for (ClassFilter c : {ClassFilter::Posets, ClassFilter::Lattice, ClassFilter::PSL, ClassFilter::ISL, ClassFilter::bISL,
                        ClassFilter::PDL, ClassFilter::IL, ClassFilter::HA, ClassFilter::FLe})
    if (s == to_string(c)) return c;
  if (s == "poset") return ClassFilter::Posets;
  return std::nullopt;
}

namespace {

std::uint64_t code_under(const FinitePoset& p, const std::vector<int>& order) {
  // order[k] = vertex placed at position k
  std::uint64_t c = 0;
  int n = p.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(order[i], order[j])) c |= std::uint64_t{1} << (i * n + j);
  return c;
}

std::vector<int> canonical_order(const FinitePoset& p) {
  int n = p.n;
  if (n > 8) throw Error(ErrorKind::BoundExceeded, "canonical form limited to 8 elements");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int v) { return std::make_pair(popcount(p.down[v]), popcount(p.up[v])); };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  // Groups of equal key permute among themselves.
  std::vector<std::pair<int, int>> groups;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && key(order[j]) == key(order[i])) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  std::vector<int> best = order, cur = order;
  std::uint64_t best_code = code_under(p, order);
  std::function<void(std::size_t)> go = [&](std::size_t g) {
    if (g == groups.size()) {
      std::uint64_t c = code_under(p, cur);
      if (c < best_code) best_code = c, best = cur;
      return;
    }
    auto [b, e] = groups[g];
    std::sort(cur.begin() + b, cur.begin() + e);
    do go(g + 1);
    while (std::next_permutation(cur.begin() + b, cur.begin() + e));
  };
  go(0);
  return best;
}

}  // namespace

std::uint64_t canonical_code(const FinitePoset& p) { return code_under(p, canonical_order(p)); }

FinitePoset canonical_form(const FinitePoset& p) {
  auto order = canonical_order(p);
  int n = p.n;
  std::vector<Bits> up(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.leq(order[i], order[j])) up[i] |= bit(j);
  return FinitePoset::from_up(std::move(up));
}

const std::vector<FinitePoset>& posets_of_size(int n) {
  static std::mutex mu;
  static std::vector<std::vector<FinitePoset>> cache;
  if (n < 0 || n > 8) throw Error(ErrorKind::BoundExceeded, "poset enumeration limited to 8 elements");
  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) cache.push_back({FinitePoset::from_up({})});
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    std::map<std::uint64_t, FinitePoset> found;
    for (const FinitePoset& q : cache[m - 1]) {
      for (Bits d = 0; d <= q.all(); ++d) {
        if (!q.is_downset(d)) continue;
        std::vector<Bits> up(q.up);
        for (int x : members(d)) up[x] |= bit(m - 1);
        up.push_back(bit(m - 1));
        FinitePoset p = FinitePoset::from_up(std::move(up));
        std::uint64_t c = canonical_code(p);
        if (!found.count(c)) found.emplace(c, canonical_form(p));
        if (d == q.all()) break;
      }
    }
    std::vector<FinitePoset> level;
    for (auto& [c, p] : found) level.push_back(std::move(p));
    cache.push_back(std::move(level));
  }
  return cache[n];
}

std::vector<FinitePoset> enumerate_posets(const EnumerationConfig& cfg) {
  std::vector<FinitePoset> out;
  for (int n = std::max(0, cfg.min_size); n <= cfg.max_size; ++n) {
    const auto& level = posets_of_size(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

bool is_lattice(const FinitePoset& p) {
  if (p.n == 0) return false;
  for (int a = 0; a < p.n; ++a)
    for (int b = 0; b < p.n; ++b) {
      Bits ub = p.up[a] & p.up[b], lb = p.down[a] & p.down[b];
      bool has_join = false, has_meet = false;
      for (int c : members(ub))
        if ((p.up[c] & ub) == ub) has_join = true;
      for (int c : members(lb))
        if ((p.down[c] & lb) == lb) has_meet = true;
      if (!has_join || !has_meet) return false;
    }
  return true;
}

std::vector<FinitePoset> lattices_of_size(int n) {
  std::vector<FinitePoset> out;
  for (auto& p : posets_of_size(n))
    if (is_lattice(p)) out.push_back(p);
  return out;
}

std::vector<FiniteAlgebra> enumerate_algebras(const EnumerationConfig& cfg) {
  if (cfg.cls == ClassFilter::Posets) throw Error(ErrorKind::Input, "use enumerate_posets for plain posets");
  if (cfg.cls == ClassFilter::FLe) return enumerate_fle(cfg.max_size, std::max(1, cfg.min_size));
  std::optional<Variety> v;
  unsigned tag = tLattice;
  switch (cfg.cls) {
    case ClassFilter::PSL: v = Variety::PSL; break;
    case ClassFilter::ISL: v = Variety::ISL; break;
    case ClassFilter::bISL: v = Variety::bISL; break;
    case ClassFilter::PDL: v = Variety::PDL; break;
    case ClassFilter::IL: v = Variety::IL; break;
    case ClassFilter::HA: v = Variety::HA; break;
    default: break;
  }
  if (v) tag = tag_of(*v);
  std::vector<FiniteAlgebra> out;
  // Every finite meet-semilattice with a top is a lattice, so lattices cover all these classes.
  for (int n = std::max(1, cfg.min_size); n <= cfg.max_size; ++n)
    for (auto& p : lattices_of_size(n)) {
      FiniteAlgebra a = algebra_from_order(p, kAnd);
      if (!detect_classes(a).has(tag)) continue;
      out.push_back(complete(std::move(a), v ? signature(*v) : (kAnd | kOr | kZero | kOne)));
    }
  return out;
}

std::optional<FinitePoset> distinguishing_poset(const FoFormula& a, const FoFormula& b, int bound) {
  for (int n = 0; n <= bound; ++n)
    for (auto& p : posets_of_size(n))
      if (check_fo(p, a) != check_fo(p, b)) return p;
  return std::nullopt;
}

bool fo_equivalent(const FoFormula& a, const FoFormula& b, int bound) { return !distinguishing_poset(a, b, bound); }

}  // namespace sahlq
