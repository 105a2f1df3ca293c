#include <doctest.h>

#include "sahlq/duality.hpp"
#include "sahlq/fixtures.hpp"
#include "sahlq/fomodel.hpp"

using namespace sahlq;

namespace {

// Filters by brute force over every subset.
std::vector<Bits> slow_filters(const FiniteAlgebra& a) {
  std::vector<Bits> out;
  for (Bits s = 1; s <= a.all(); ++s) {
    bool ok = true;
    for (int x = 0; x < a.n && ok; ++x) {
      if (!test_bit(s, x)) continue;
      for (int y = 0; y < a.n && ok; ++y) {
        if (a.leq(x, y) && !test_bit(s, y)) ok = false;
        if (test_bit(s, y) && !test_bit(s, a.m(x, y))) ok = false;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

// Meet-irreducible: proper and not the intersection of two strictly larger filters.
std::vector<Bits> slow_irreducible(const std::vector<Bits>& fs, Bits whole) {
  std::vector<Bits> out;
  for (Bits f : fs) {
    if (f == whole) continue;
    bool split = false;
    for (Bits g : fs)
      for (Bits h : fs)
        if (g != f && h != f && (g & h) == f) split = true;
    if (!split) out.push_back(f);
  }
  return out;
}

std::vector<Bits> slow_prime(const FiniteAlgebra& a) {
  std::vector<Bits> out;
  for (Bits f : slow_filters(a)) {
    if (f == a.all()) continue;
    bool prime = true;
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < a.n; ++y)
        if (test_bit(f, a.j(x, y)) && !test_bit(f, x) && !test_bit(f, y)) prime = false;
    if (prime) out.push_back(f);
  }
  return out;
}

std::vector<Bits> slow_mp_filters(const FiniteAlgebra& a) {
  std::vector<Bits> out;
  for (Bits s = 0; s <= a.all(); ++s) {
    if (!test_bit(s, a.one)) continue;
    bool ok = true;
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < a.n; ++y)
        if (test_bit(s, x) && test_bit(s, a.i(x, y)) && !test_bit(s, y)) ok = false;
    if (ok) out.push_back(s);
  }
  return out;
}

std::vector<Bits> sorted(std::vector<Bits> v) {
  std::sort(v.begin(), v.end());
  return v;
}

PartialMap pmap(FinitePoset src, FinitePoset dst, Bits dom, std::vector<int> map) {
  PartialMap p;
  p.src = std::move(src);
  p.dst = std::move(dst);
  p.dom = dom;
  p.map = std::move(map);
  return p;
}

std::vector<FiniteAlgebra> small_algebras(ClassFilter c, int max) {
  EnumerationConfig cfg;
  cfg.cls = c;
  cfg.max_size = max;
  return enumerate_algebras(cfg);
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("filters of small algebras") {
    auto c3 = fixtures::chain(3);
    CHECK(filters(c3) == sorted({0b100, 0b110, 0b111}));
    auto star = meet_irreducible_filters(c3);
    CHECK(star.poset.n == 2);
    CHECK(isomorphic(star.poset, FinitePoset::chain(2)));
    CHECK(meet_irreducible_filters(fixtures::chain(1)).poset.n == 0);
    CHECK(isomorphic(meet_irreducible_filters(fixtures::diamond()).poset, FinitePoset::antichain(2)));
  }

  TEST_CASE("filters and irreducibles agree with brute force on every PSL up to 6") {
    for (auto& a : small_algebras(ClassFilter::PSL, 6)) {
      auto fs = slow_filters(a);
      CHECK(filters(a) == fs);
      for (Bits f : fs) CHECK(is_filter(a, f));
      CHECK(meet_irreducible_filters(a).sets == sorted(slow_irreducible(fs, a.all())));
    }
  }

  TEST_CASE("on distributive lattices the irreducible filters are the prime ones") {
    for (auto& a : small_algebras(ClassFilter::PDL, 6)) {
      auto star = meet_irreducible_filters(a);
      CHECK(star.sets == sorted(slow_prime(a)));
      for (Bits f : star.sets) CHECK(is_prime_filter(a, f));
    }
  }

  TEST_CASE("implicative filters") {
    auto c3 = fixtures::chain(3);
    CHECK(implicative_filters(c3) == filters(c3));
    CHECK(meet_irreducible_implicative_filters(fixtures::chain(2)).poset.n == 1);
    auto h = hilbert_algebra(c3.labels, c3.imp);
    CHECK(h.up == c3.up);
    CHECK(implicative_filters(h) == filters(c3));
    for (auto& a : small_algebras(ClassFilter::HA, 6)) CHECK(implicative_filters(a) == slow_mp_filters(a));
    CHECK_THROWS_AS(implicative_filters(fixtures::n5()), Error);
    CHECK_THROWS_AS(hilbert_algebra({"a", "b"}, {0, 0, 0, 0}), Error);
  }

  TEST_CASE("partial map tags") {
    auto c2 = FinitePoset::chain(2);
    auto pt = FinitePoset::chain(1);
    unsigned id = check_partial_map_kind(pmap(c2, c2, 0b11, {0, 1}));
    CHECK(id == 0xFFu);

    unsigned top_only = check_partial_map_kind(pmap(c2, pt, 0b10, {-1, 0}));
    CHECK((top_only & mPartialNegative) != 0);
    CHECK((top_only & mPartialPositive) != 0);
    CHECK_FALSE((top_only & mAlmostTotal) != 0);

    unsigned bottom_only = check_partial_map_kind(pmap(c2, pt, 0b01, {0, -1}));
    CHECK((bottom_only & mPartialPositive) != 0);
    CHECK((bottom_only & mAlmostTotal) != 0);
    CHECK_FALSE((bottom_only & mTotal) != 0);

    unsigned flip = check_partial_map_kind(pmap(c2, c2, 0b11, {1, 0}));
    CHECK_FALSE((flip & mOrderPreserving) != 0);
    CHECK(map_tag_names(mTotal | mPMorphism) == std::vector<std::string>{"Total", "PMorphism"});
  }

  TEST_CASE("f_* of the inclusion of the 2-chain into the 3-chain") {
    auto ls = lower_star(fixtures::chain(2), fixtures::chain(3), {0, 2}, Variety::HA);
    CHECK(surjective(ls.map));
    CHECK((ls.tags & mPMorphism) != 0);
    auto id = lower_star(fixtures::chain(3), fixtures::chain(3), {0, 1, 2}, Variety::HA);
    for (int t = 0; t < id.map.src.n; ++t) CHECK(id.map.map[t] == t);
    CHECK_THROWS_AS(lower_star(fixtures::chain(2), fixtures::chain(3), {0, 1}, Variety::HA), Error);
  }

  TEST_CASE("Up of a map") {
    auto c2 = FinitePoset::chain(2), pt = FinitePoset::chain(1);
    auto collapse = up_of_map(pmap(c2, pt, 0b11, {0, 0}), Variety::HA);
    CHECK_FALSE(collapse.failure);
    CHECK(collapse.up_y.n == 2);
    CHECK(collapse.up_x.n == 3);
    CHECK(injective(collapse.map));

    auto ident = up_of_map(pmap(c2, c2, 0b11, {0, 1}), Variety::HA);
    for (int i = 0; i < ident.up_y.n; ++i) CHECK(ident.map[i] == i);

    auto partial = up_of_map(pmap(c2, pt, 0b01, {0, -1}), Variety::ISL);
    CHECK_FALSE(partial.failure);
    CHECK_THROWS_AS(up_of_map(pmap(c2, pt, 0b01, {0, -1}), Variety::HA), Error);
  }

  TEST_CASE("canonical embedding into Up(A_*)") {
    for (auto v : {Variety::PSL, Variety::ISL, Variety::HA}) {
      ClassFilter c = v == Variety::PSL ? ClassFilter::PSL : v == Variety::ISL ? ClassFilter::ISL : ClassFilter::HA;
      for (auto& a : small_algebras(c, 6)) {
        auto e = canonical_embedding(a, v);
        CHECK_MESSAGE(!e.failure, to_string(v), " ", a.n, ": ", e.failure.value_or(""));
      }
    }
  }

  TEST_CASE("homomorphism search is complete on small pairs") {
    auto c3 = fixtures::chain(3), c2 = fixtures::chain(2);
    auto hs = homomorphisms(c3, c2, kHeyting);
    CHECK(hs.exhaustive);
    REQUIRE(hs.homs.size() == 1);
    CHECK(hs.homs[0] == std::vector<int>{0, 1, 1});
    // {0, 1} sits inside the 3-chain as a Heyting subalgebra.
    auto up = homomorphisms(c2, c3, kHeyting);
    REQUIRE(up.homs.size() == 1);
    CHECK(up.homs[0] == std::vector<int>{0, 2});
    CHECK(homomorphisms(c2, c3, kAnd | kZero | kOne).homs.size() == 1);
  }
}
