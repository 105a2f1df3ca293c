#include "sahlq/fixtures.hpp"

#include "sahlq/substructural.hpp"

namespace sahlq::fixtures {

FinitePoset v_poset() { return FinitePoset::from_leq(3, {{0, 1}, {0, 2}}, {"r", "p", "q"}); }

FiniteAlgebra chain(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(i == 0 ? "0" : i == n - 1 ? "1" : std::string(1, char('a' + i - 1)));
  auto p = FinitePoset::chain(n);
  p.labels = labels;
  return complete(algebra_from_order(p, kAnd), kHeyting);
}

FiniteAlgebra diamond() {
  auto p = FinitePoset::from_leq(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {"0", "a", "b", "1"});
  return complete(algebra_from_order(p, kAnd), kHeyting);
}

FiniteAlgebra n5() {
  auto p = FinitePoset::from_leq(5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}, {"0", "a", "b", "c", "1"});
  return complete(algebra_from_order(p, kAnd), signature(Variety::PSL) | kOr);
}

namespace {
const std::vector<std::string> kWcLabels = {"0", "a1", "a2", "a", "c", "b3", "b", "1"};
std::vector<std::pair<int, int>> wc_edges(bool repaired) {
  // 0 a1 a2 a c b3 b 1
  std::vector<std::pair<int, int>> e = {{0, 1}, {1, 3}, {1, 4}, {2, 4}, {4, 6}, {6, 7}, {3, 7}, {5, 7}, {0, 2}};
  e.emplace_back(repaired ? 2 : 0, 5);
  return e;
}
}  // namespace

FiniteAlgebra weml_counterexample() {
  auto p = FinitePoset::from_leq(8, wc_edges(true), kWcLabels);
  return complete(algebra_from_order(p, kAnd), signature(Variety::PSL));
}

FinitePoset weml_counterexample_unrepaired() { return FinitePoset::from_leq(8, wc_edges(false), kWcLabels); }

QuasiInequality context_free_weml() {
  Formula x = var("x1"), z = var("z");
  return {{{neg(x), z, false}, {neg(neg(x)), z, false}}, {z, one(), true}};
}

FiniteAlgebra godel_chain(int n) { return heyting_fle(chain(n)); }

FiniteAlgebra boolean2() { return heyting_fle(chain(2)); }

FiniteAlgebra mv4() {
  // a·b = max(0, a + b - 3) on 0 < 1 < 2 < 3
  std::vector<std::uint8_t> fus(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) fus[a * 4 + b] = static_cast<std::uint8_t>(std::max(0, a + b - 3));
  auto p = FinitePoset::chain(4);
  p.labels = {"0", "1/3", "2/3", "1"};
  return make_fle(p, fus, 0, 3);
}

FiniteAlgebra heyting_fle(const FiniteAlgebra& ha) { return heyting_as_fle(ha); }

FiniteAlgebra up_v_fle() { return heyting_as_fle(up_algebra(v_poset())); }

FiniteAlgebra broken_associativity() {
  // Gödel 5-chain with b·c forced to 0: (a·b)·c = a but a·(b·c) = 0.
  FiniteAlgebra a = godel_chain(5);
  a.fus[2 * 5 + 3] = a.fus[3 * 5 + 2] = 0;
  return a;
}

}  // namespace sahlq::fixtures
