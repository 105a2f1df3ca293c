#include <doctest.h>

#include <random>

#include "sahlq/correspondence.hpp"
#include "sahlq/fixtures.hpp"
#include "sahlq/fomodel.hpp"

using namespace sahlq;

namespace {

using F = FoFormula;

F discrete() { return F::forall("x", F::forall("y", F::imp(F::leq("x", "y"), F::eq("x", "y")))); }

F root_system() {
  return F::forall("x", F::forall("y", F::forall("z", F::imp(F::conj({F::leq("x", "y"), F::leq("x", "z")}),
                                                          F::disj({F::leq("y", "z"), F::leq("z", "y")})))));
}

F up_directed() {
  return F::forall(
      "x", F::forall("y", F::forall("z", F::imp(F::conj({F::leq("x", "y"), F::leq("x", "z")}),
                                                F::exists("u", F::conj({F::leq("y", "u"), F::leq("z", "u")}))))));
}

// Every point has at most two maximal points above it, phrased as: among any
// three points above x, two share an upper bound.
F top_width_2() {
  auto common = [](const char* a, const char* b) { return F::exists("u", F::conj({F::leq(a, "u"), F::leq(b, "u")})); };
  return F::forall(
      "x", F::forall("y1", F::forall("y2", F::forall("y3", F::imp(F::conj({F::leq("x", "y1"), F::leq("x", "y2"), F::leq("x", "y3")}),
                                                                  F::disj({common("y1", "y2"), common("y1", "y3"), common("y2", "y3")}))))));
}

F random_fo(std::mt19937& rng, int depth, std::vector<std::string>& bound) {
  auto atom = [&]() {
    if (bound.empty()) return rng() % 2 ? F::top() : F::bot();
    auto& a = bound[rng() % bound.size()];
    auto& b = bound[rng() % bound.size()];
    return rng() % 3 ? F::leq(a, b) : F::eq(a, b);
  };
  if (depth <= 0) return atom();
  switch (rng() % 7) {
    case 0: return atom();
    case 1: return F::neg(random_fo(rng, depth - 1, bound));
    case 2: return F::conj({random_fo(rng, depth - 1, bound), random_fo(rng, depth - 1, bound)});
    case 3: return F::disj({random_fo(rng, depth - 1, bound), random_fo(rng, depth - 1, bound)});
    case 4: return F::imp(random_fo(rng, depth - 1, bound), random_fo(rng, depth - 1, bound));
    default: {
      std::string v = "v" + std::to_string(bound.size());
      bound.push_back(v);
      F body = random_fo(rng, depth - 1, bound);
      bound.pop_back();
      return rng() % 2 ? F::forall(v, body) : F::exists(v, body);
    }
  }
}

}  // namespace

TEST_SUITE("correspondence") {
  TEST_CASE("Goedel-McKinsey-Tarski clauses") {
    CHECK(gmt_translate(excluded_middle()) == disj(box(x(1)), box(neg(box(x(1))))));
    CHECK(gmt_translate(one()) == one());
    CHECK(gmt_translate(imp(x(1), x(2))) == box(imp(box(x(1)), box(x(2)))));
    auto em = gmt_quasiequation(qe_em());
    CHECK(em.modal);
    CHECK(em.sahlqvist);
    CHECK(em.premises == std::vector<Formula>{box(x(1)), box(neg(box(x(1))))});
    CHECK(gmt_quasiequation(build_quasiequation({})).premises.empty());
    CHECK(gmt_quasiequation(qe_gd()).premises[1] == box(imp(box(x(2)), box(x(1)))));
    for (auto& e : corpus()) CHECK(gmt_quasiequation(e.q).sahlqvist);
  }

  TEST_CASE("standard translation") {
    CHECK(standard_translation(box(x(1)), "w") == F::forall("v1", F::imp(F::rel("w", "v1"), F::pred("Px1", "v1"))));
    CHECK(standard_translation(x(1), "w") == F::pred("Px1", "w"));
    CHECK(standard_translation(dia(conj(x(1), x(2))), "w") ==
          F::exists("v1", F::conj({F::rel("w", "v1"), F::pred("Px1", "v1"), F::pred("Px2", "v1")})));
  }

  TEST_CASE("Up(X) and the complex algebra agree through the translation on posets up to 4") {
    std::vector<Formula> fs;
    for (auto& e : corpus()) fs.push_back(premise_disjunction(e.q));
    for (int n = 0; n <= 4; ++n)
      for (auto& p : posets_of_size(n)) {
        auto up = up_algebra(p);
        auto cx = complex_algebra(p);
        for (auto& f : fs) CHECK(validates_formula(up, f) == validates_formula(cx, gmt_translate(f)));
        for (auto& e : corpus())
          CHECK(validates_quasiequation(up, e.q) == validates_quasiequation(cx, gmt_quasiequation(e.q)));
      }
  }

  TEST_CASE("correspondents agree with Up(X) on every poset up to 5") {
    auto qs = corpus();
    qs.push_back({"cyc3", qe_cyc3()});
    for (auto& e : qs) {
      F c = correspondent(e.q);
      CHECK_FALSE(has_predicates(c));
      CHECK(free_vars(c).empty());
      for (int n = 0; n <= 5; ++n)
        for (auto& p : posets_of_size(n))
          CHECK_MESSAGE(check_fo(p, c) == validates_quasiequation(up_algebra(p), e.q), e.name, " n=", n);
    }
  }

  TEST_CASE("modal quasiequations keep their own relation") {
    auto q = parse_quasiequation("[]x1 ; []~[]x1", true);
    F c = correspondent(q);
    for (int n = 0; n <= 4; ++n)
      for (auto& p : posets_of_size(n)) CHECK(check_fo(p, c) == validates_quasiequation(complex_algebra(p), q));
  }

  TEST_CASE("named frame conditions") {
    CHECK(fo_equivalent(correspondent(qe_em()), discrete(), 5));
    CHECK(fo_equivalent(correspondent(qe_gd()), root_system(), 5));
    CHECK(fo_equivalent(correspondent(qe_btw(1)), up_directed(), 5));
    CHECK(fo_equivalent(correspondent(qe_weml()), up_directed(), 5));
    CHECK(fo_equivalent(correspondent(qe_btw(2)), top_width_2(), 5));
    CHECK(quantifier_count(correspondent(qe_em())) <= 3);
  }

  TEST_CASE("raw and simplified correspondents are equivalent") {
    for (auto& e : corpus()) CHECK(fo_equivalent(correspondent_raw(e.q), correspondent(e.q), 4));
  }

  TEST_CASE("simplification preserves meaning on random sentences") {
    std::mt19937 rng(5);
    for (int i = 0; i < 300; ++i) {
      std::vector<std::string> bound;
      F f = random_fo(rng, 5, bound);
      F s = simplify_fo(f);
      CHECK_MESSAGE(fo_equivalent(f, s, 4), to_text(f), "  ~>  ", to_text(s));
    }
  }

  TEST_CASE("reflexivity rewrites") {
    F a = F::forall("x", F::imp(F::leq("x", "x"), F::leq("x", "x")));
    CHECK(simplify_fo(a) == F::top());
    CHECK(simplify_fo(F::forall("x", F::exists("y", F::conj({F::leq("x", "y"), F::leq("y", "x")})))) == F::top());
  }

  TEST_CASE("correspondents are deterministic and fail loudly outside the shapes") {
    CHECK(to_sexp(correspondent(qe_gd())) == to_sexp(correspondent(qe_gd())));
    CHECK(parse_fo(to_sexp(correspondent(qe_btw(2)))) == correspondent(qe_btw(2)));
    try {
      correspondent(build_quasiequation({parse_formula("~~x1 -> x1")}));
      FAIL("expected EliminationStuck");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EliminationStuck);
    }
  }
}
