#include <doctest.h>

#include "sahlq/correspondence.hpp"
#include "sahlq/fixtures.hpp"
#include "sahlq/fomodel.hpp"
#include "sahlq/metalogic.hpp"

using namespace sahlq;

namespace {

Formula p(const std::string& s) { return parse_formula(s); }

std::vector<FiniteAlgebra> has_upto(int n) {
  EnumerationConfig cfg;
  cfg.cls = ClassFilter::HA;
  cfg.max_size = n;
  return enumerate_algebras(cfg);
}

bool validates_all(const FiniteAlgebra& a, const FormulaSet& fs) {
  for (auto& f : fs)
    if (!validates_formula(a, f)) return false;
  return true;
}

}  // namespace

TEST_SUITE("metalogic") {
  TEST_CASE("IPC witnesses") {
    auto l = ipc_profile();
    CHECK(l.w.il({x(1), x(2)}) == FormulaSet{p("x1 -> x2 -> 0")});
    CHECK(l.w.pc({x(1)}, {var("y")}) == FormulaSet{disj(x(1), var("y"))});
    CHECK(l.w.dt({x(1), x(2)}, {var("y")}) == FormulaSet{p("x1 -> x2 -> y")});
    CHECK(l.delta == FormulaSet{imp(x(1), x(2))});
    CHECK(l.top(x(3)) == imp(x(3), x(3)));
    CHECK(l.conjunction);
  }

  TEST_CASE("profiles by name") {
    CHECK(profile_by_name("ipc"));
    CHECK(profile_by_name("ill", 2));
    auto il = profile_by_name("ipc:il");
    REQUIRE(il);
    CHECK(il->w.il);
    CHECK_FALSE(il->w.dt);
    CHECK_FALSE(profile_by_name("ipc:xx"));
    CHECK_FALSE(profile_by_name("k4"));
  }

  TEST_CASE("compatibility") {
    auto il = restrict_profile(ipc_profile(), true, false, false);
    CHECK_FALSE(compatible(btw(1), il));
    CHECK(compatible(qe_btw(1), il));
    CHECK_FALSE(compatible(imp(x(1), x(2)), restrict_profile(ipc_profile(), true, false, true)));
    CHECK(compatible(conj(x(1), x(2)), restrict_profile(ipc_profile(), false, false, false)));
    CHECK(missing_witness(neg(x(1)), restrict_profile(ipc_profile(), false, true, true)) == std::optional<std::string>("¬"));
    CHECK_THROWS_AS(phi_k(neg(x(1)), 1, restrict_profile(ipc_profile(), false, true, true)), Error);
  }

  TEST_CASE("phi^k") {
    auto l = ipc_profile();
    CHECK(phi_k(x(1), 2, l) == FormulaSet{x(1, 1), x(1, 2)});
    CHECK(phi_k(neg(x(1)), 1, l) == FormulaSet{imp(x(1, 1), zero())});
    for (int k = 1; k <= 4; ++k) {
      FormulaSet want;
      for (int i = 1; i <= k; ++i) {
        Formula t = x(2, i);
        for (int j = k; j >= 1; --j) t = imp(x(1, j), t);
        want.push_back(t);
      }
      CHECK(phi_k(imp(x(1), x(2)), k, l) == want);
    }
    CHECK(phi_k(one(), 1, l) == FormulaSet{imp(x(1, 1), x(1, 1))});
    CHECK(phi_k(zero(), 1, l) == FormulaSet{x(1, 1), imp(x(1, 1), zero())});
    CHECK(phi_k(conj(x(1), x(1)), 1, l) == FormulaSet{x(1, 1)});
  }

  TEST_CASE("characteristic sets") {
    auto l = ipc_profile();
    CHECK(fresh_y(qe_em()) == x(2));
    CHECK(fresh_y(qe_btw(2)) == x(4));
    CHECK(characteristic_theorems_dt(qe_em(), l, 1) == FormulaSet{p("(x1_1 -> x2) -> ((x1_1 -> 0) -> x2) -> x2")});
    auto one_premise = characteristic_theorems_dt(build_quasiequation({one()}), l, 1);
    REQUIRE(one_premise.size() == 1);
    CHECK(validates_formula(fixtures::chain(4), one_premise[0]));
    CHECK(characteristic_theorems_pc(qe_gd(), l, 1) == FormulaSet{p("(x1_1 -> x2_1) | (x2_1 -> x1_1)")});
    CHECK(characteristic_theorems_pc(qe_em(), l, 1) == FormulaSet{p("x1_1 | (x1_1 -> 0)")});
  }

  TEST_CASE("A(Phi)") {
    CHECK(a_phi(qe_gd(), 1) == FormulaSet{p("((x1_1 -> x2_1) -> x3) -> ((x2_1 -> x1_1) -> x3) -> x3")});
    CHECK(a_phi(qe_gd(), 0).empty());
    auto em = a_phi(qe_em(), 1);
    CHECK(em.size() == 1);
    CHECK(a_phi(qe_em(), 3).size() == 3);
    for (int n = 2; n <= 5; ++n) {
      auto c = fixtures::chain(n);
      CHECK(validates_formula(c, em[0]) == validates_quasiequation(c, qe_em()));
    }
  }

  TEST_CASE("metarules") {
    auto l = ipc_profile();
    auto em = metarules(qe_em(), l, 1);
    REQUIRE(em.size() == 1);
    CHECK(em[0].simplified);
    REQUIRE(em[0].premises.size() == 2);
    CHECK(em[0].premises[0].extra == FormulaSet{var("g1_1")});
    CHECK(em[0].premises[1].extra == FormulaSet{imp(var("g1_1"), zero())});
    CHECK(to_text(em[0]).find("Γ, g1_1 -> 0 ▷ ψ") != std::string::npos);
    auto none = metarules(build_quasiequation({}), l, 1);
    REQUIRE(none.size() == 1);
    CHECK(none[0].premises.empty());
    CHECK(metarules(qe_gd(), l, 1, 2)[0].context == std::vector<std::string>{"δ1", "δ2"});
    CHECK_THROWS_AS(metarules(qe_gd(), restrict_profile(l, true, false, true), 1), Error);
  }

  TEST_CASE("EML and BTWL decompositions") {
    auto il = restrict_profile(ipc_profile(), true, false, false);
    for (int k = 1; k <= 3; ++k) {
      CHECK(same_rule(metarules(qe_em(), il, k).back(), eml_rule(il, k)));
      for (int n = 1; n <= 3; ++n) CHECK(same_rule(metarules(qe_btw(n), il, k).back(), btwl_rule(il, n, k)));
    }
    CHECK_FALSE(same_rule(eml_rule(il, 1), btwl_rule(il, 1, 1)));
    CHECK(to_gamma(x(3, 2)) == var("g3_2"));
  }

  TEST_CASE("filter generation in Heyting algebras") {
    auto c3 = fixtures::chain(3);
    CHECK(ipc_filter_generate(c3, bit(1)) == 0b110);
    CHECK(ipc_filter_generate(c3, 0) == 0b100);
    auto d = fixtures::diamond();
    auto fic = compact_filter_semilattice(d);
    CHECK(isomorphic(fic.order(), d.order()));
    for (auto& a : has_upto(5)) CHECK(isomorphic(compact_filter_semilattice(a).order(), a.order()));
  }

  TEST_CASE("filter generation lemma on HA up to 4") {
    std::vector<Formula> fs = {p("~x1"), p("x1 -> x2"), p("x1 | ~x1"), goedel_dummett(), weml(), p("~(~x2 & x1)")};
    for (auto& a : has_upto(4))
      for (auto& f : fs)
        for (int k = 1; k <= 2; ++k) {
          auto bad = check_filter_generation(a, f, k);
          CHECK_MESSAGE(!bad, to_text(f), " k=", k, ": ", bad.value_or(""));
        }
  }

  TEST_CASE("spectra") {
    CHECK(isomorphic(spec_ipc(fixtures::chain(3)).poset, FinitePoset::chain(2)));
    CHECK(spec_ipc(fixtures::chain(1)).poset.n == 0);
    CHECK(isomorphic(spec_ipc(fixtures::diamond()).poset, FinitePoset::antichain(2)));
  }

  TEST_CASE("characteristic theorems match the spectrum's frame condition on HA up to 5") {
    auto l = ipc_profile();
    for (auto& e : corpus()) {
      auto dt = characteristic_theorems_dt(e.q, l, 1);
      auto corr = correspondent(e.q);
      for (auto& a : has_upto(5)) {
        bool lhs = validates_all(a, dt);
        CHECK_MESSAGE(lhs == check_fo(spec_ipc(a).poset, corr), e.name, " |A|=", a.n);
        CHECK(lhs == validates_quasiequation(a, e.q));
      }
    }
  }
}
