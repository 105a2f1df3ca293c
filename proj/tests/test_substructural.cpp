#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "sahlq/correspondence.hpp"
#include "sahlq/fixtures.hpp"
#include "sahlq/fomodel.hpp"
#include "sahlq/substructural.hpp"

using namespace sahlq;

namespace {

// Restricted growth strings: every set partition of {0..n-1}, each class
// labelled by its least member.
void partitions(int n, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> rgs(n, 0), cls(n);
  std::function<void(int, int)> go = [&](int i, int blocks) {
    if (i == n) {
      std::vector<int> first(blocks, -1);
      for (int t = 0; t < n; ++t) {
        if (first[rgs[t]] < 0) first[rgs[t]] = t;
        cls[t] = first[rgs[t]];
      }
      emit(cls);
      return;
    }
    for (int b = 0; b <= blocks && b < n; ++b) {
      rgs[i] = b;
      go(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) {
    emit({});
    return;
  }
  go(0, 0);
}

bool respects(const FiniteAlgebra& a, const std::vector<int>& c) {
  const std::vector<std::uint8_t>* bins[] = {&a.meet, &a.join, &a.imp, &a.fus};
  for (auto* t : bins) {
    if (t->empty()) continue;
    for (int x = 0; x < a.n; ++x)
      for (int x2 = 0; x2 < a.n; ++x2)
        if (c[x] == c[x2])
          for (int y = 0; y < a.n; ++y)
            for (int y2 = 0; y2 < a.n; ++y2)
              if (c[y] == c[y2] && c[(*t)[x * a.n + y]] != c[(*t)[x2 * a.n + y2]]) return false;
  }
  if (!a.neg.empty())
    for (int x = 0; x < a.n; ++x)
      for (int x2 = 0; x2 < a.n; ++x2)
        if (c[x] == c[x2] && c[a.neg[x]] != c[a.neg[x2]]) return false;
  return true;
}

std::set<std::vector<int>> slow_congruences(const FiniteAlgebra& a) {
  std::set<std::vector<int>> out;
  partitions(a.n, [&](const std::vector<int>& c) {
    if (respects(a, c)) out.insert(c);
  });
  return out;
}

// FL_e algebras on n points by scanning every commutative table over every
// lattice order, unit and zero; residuation holds when {b : a·b ≤ c} is the
// principal down-set of its greatest element. Isomorphism classes via order automorphisms.
std::size_t brute_fle_count(int n) {
  std::size_t total = 0;
  for (auto& p : posets_of_size(n)) {
    if (!is_lattice(p)) continue;
    std::vector<std::vector<int>> autos;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j) ok = p.leq(i, j) == p.leq(perm[i], perm[j]);
      if (ok) autos.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) cells.emplace_back(i, j);
    std::vector<int> t(n * n, 0);
    std::set<std::vector<int>> seen;
    std::vector<int> digits(cells.size(), 0);
    for (;;) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        auto [i, j] = cells[c];
        t[i * n + j] = t[j * n + i] = digits[c];
      }
      bool ok = true;
      for (int x = 0; x < n && ok; ++x)
        for (int y = 0; y < n && ok; ++y)
          for (int z = 0; z < n && ok; ++z) ok = t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]];
      if (ok)
        for (int x = 0; x < n && ok; ++x)
          for (int c = 0; c < n && ok; ++c) {
            int best = -1;
            for (int b = 0; b < n; ++b)
              if (p.leq(t[x * n + b], c) && (best < 0 || p.leq(best, b))) best = b;
            ok = best >= 0;
            for (int b = 0; b < n && ok; ++b) ok = p.leq(t[x * n + b], c) == p.leq(b, best);
          }
      if (ok)
        for (int e = 0; e < n; ++e) {
          bool unit = true;
          for (int x = 0; x < n; ++x) unit = unit && t[e * n + x] == x;
          if (!unit) continue;
          for (int z = 0; z < n; ++z) {
            std::vector<int> best;
            for (auto& s : autos) {
              std::vector<int> key{s[e], s[z]};
              std::vector<int> img(n * n);
              for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y) img[s[x] * n + s[y]] = s[t[x * n + y]];
              key.insert(key.end(), img.begin(), img.end());
              if (best.empty() || key < best) best = key;
            }
            seen.insert(best);
          }
        }
      std::size_t c = 0;
      while (c < digits.size() && ++digits[c] == n) digits[c++] = 0;
      if (c == digits.size()) break;
    }
    total += seen.size();
  }
  return total;
}

std::vector<FiniteAlgebra> fixtures_fle() {
  return {fixtures::godel_chain(1), fixtures::godel_chain(3), fixtures::godel_chain(4), fixtures::boolean2(),
          fixtures::mv4(), fixtures::up_v_fle(), fixtures::heyting_fle(fixtures::diamond())};
}

Formula u(Formula f) { return conj(one(), f); }

}  // namespace

TEST_SUITE("substructural") {
  TEST_CASE("fixtures satisfy the FL_e laws") {
    for (auto& a : fixtures_fle()) CHECK_MESSAGE(fle_validate(a), fle_violation(a).value_or(""));
    auto broken = fle_violation(fixtures::broken_associativity());
    REQUIRE(broken);
    CHECK(broken->find("associative") != std::string::npos);
    CHECK_THROWS_AS(make_fle(FinitePoset::chain(2), {1, 1, 1, 1}, 0, 1), Error);
  }

  TEST_CASE("the bottom term") {
    CHECK(bot_element(fixtures::godel_chain(3)) == 0);
    CHECK(bot_element(fixtures::boolean2()) == 0);
    CHECK(bot_element(fixtures::mv4()) == 0);
    for (int n = 1; n <= 6; ++n) CHECK(bot_element(fixtures::godel_chain(n)) == fixtures::godel_chain(n).bottom);
  }

  TEST_CASE("product is monotone and the residual is a Galois adjoint") {
    for (auto& a : enumerate_fle(5))
      for (int x = 0; x < a.n; ++x)
        for (int y = 0; y < a.n; ++y)
          for (int z = 0; z < a.n; ++z) {
            if (a.leq(x, y)) CHECK(a.leq(a.f(x, z), a.f(y, z)));
            CHECK(a.leq(a.f(x, y), z) == a.leq(x, a.i(y, z)));
          }
  }

  TEST_CASE("witness schemes") {
    auto w1 = ill_witnesses(1), w2 = ill_witnesses(2);
    CHECK(w1.il({x(1)}) == FormulaSet{imp(u(x(1)), bot_formula())});
    CHECK(w1.pc({x(1)}, {var("y")}) == FormulaSet{disj(u(x(1)), u(var("y")))});
    CHECK(w2.dt({x(1)}, {var("y")}) == FormulaSet{imp(fus(u(x(1)), u(x(1))), var("y"))});
    CHECK(w1.dt({}, {var("y")}) == FormulaSet{var("y")});
    CHECK(ill_profile(3).delta.size() == 2);
  }

  TEST_CASE("characteristic formulas") {
    Formula x11 = x(1, 1), x21 = x(2, 1);
    CHECK(characteristic_formula_ill(qe_gd()) == disj(u(imp(u(x11), x21)), u(imp(u(x21), x11))));
    Formula btw1 = disj(u(ill_neg(u(ill_neg(u(x11))))), u(ill_neg(conj(conj(one(), ill_neg(u(x21))), x11))));
    CHECK(characteristic_formula_ill(qe_btw(1)) == btw1);
    Formula top = characteristic_formula_ill(build_quasiequation({one()}));
    for (auto& a : fixtures_fle()) CHECK(validates_formula(a, top));
    CHECK_THROWS_AS(characteristic_formula_ill(build_quasiequation({})), Error);
  }

  TEST_CASE("congruences match a brute-force partition scan") {
    auto algebras = fixtures_fle();
    for (auto& a : enumerate_fle(5)) algebras.push_back(a);
    for (auto& a : algebras) {
      auto L = congruences(a);
      std::set<std::vector<int>> got(L.classes.begin(), L.classes.end());
      CHECK(got.size() == L.classes.size());
      CHECK(got == slow_congruences(a));
      for (auto& c : L.classes) CHECK(is_congruence(a, c));
    }
    CHECK_THROWS_AS(congruences(fixtures::godel_chain(9)), Error);
  }

  TEST_CASE("spectra") {
    auto g3 = fixtures::godel_chain(3);
    auto L = congruences(g3);
    std::set<std::string> labels;
    for (auto& c : L.classes) labels.insert(partition_label(c));
    CHECK(labels == std::set<std::string>{"0|1|2", "0|1,2", "0,1,2"});
    CHECK(isomorphic(spec_congruences(g3), FinitePoset::chain(2)));
    CHECK(spec_congruences(fixtures::boolean2()).n == 1);
    CHECK(isomorphic(spec_congruences(fixtures::heyting_fle(fixtures::diamond())), FinitePoset::antichain(2)));
    CHECK(isomorphic(spec_congruences(fixtures::up_v_fle()), fixtures::v_poset()));
  }

  TEST_CASE("linear correspondence instances") {
    auto g = check_linear_correspondence(fixtures::godel_chain(3), qe_gd());
    CHECK(g.lhs);
    CHECK(g.rhs);
    auto v = check_linear_correspondence(fixtures::up_v_fle(), qe_gd());
    CHECK_FALSE(v.lhs);
    CHECK_FALSE(v.rhs);
    for (auto& e : corpus()) {
      auto t = check_linear_correspondence(fixtures::godel_chain(1), e.q);
      CHECK(t.lhs);
      CHECK(t.rhs);
    }
    CHECK_THROWS_AS(check_linear_correspondence(fixtures::broken_associativity(), qe_gd()), Error);
  }

  TEST_CASE("the witness gate") {
    auto g3 = fixtures::godel_chain(3);
    CHECK(ill_gate(g3, qe_em(), 1).ok());
    auto mv = ill_gate(fixtures::mv4(), qe_gd(), 1);
    CHECK(mv.needs_dt);
    CHECK_FALSE(mv.needs_il);
    // The 0 constant moved to the top leaves ⊥ at the top too.
    auto odd = make_fle(g3.order(), g3.fus, 2, 2);
    CHECK(bot_element(odd) == 2);
    auto gate = ill_gate(odd, qe_em(), 1);
    CHECK_FALSE(gate.il);
    CHECK_FALSE(gate.ok());
  }

  TEST_CASE("enumeration counts match brute force") {
    std::vector<std::size_t> known = {0, 1, 2, 9, 63, 492, 4676};
    for (int n = 1; n <= 6; ++n) CHECK(enumerate_fle(n, n).size() == known[n]);
    for (int n = 1; n <= 4; ++n) CHECK(brute_fle_count(n) == known[n]);
    for (auto& a : enumerate_fle(5)) CHECK(fle_validate(a));
  }

  TEST_CASE("Heyting algebras as FL_e agree with the IPC proof-by-cases set") {
    auto ipc = ipc_profile();
    EnumerationConfig cfg;
    cfg.cls = ClassFilter::HA;
    cfg.max_size = 5;
    for (auto& h : enumerate_algebras(cfg)) {
      auto a = heyting_as_fle(h);
      for (auto& e : corpus()) {
        bool pc = true;
        for (auto& f : characteristic_theorems_pc(e.q, ipc, 1)) pc = pc && validates_formula(h, f);
        CHECK_MESSAGE(validates_formula(a, characteristic_formula_ill(e.q)) == pc, e.name);
      }
    }
  }
}
