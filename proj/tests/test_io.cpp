#include <doctest.h>

#include "sahlq/fixtures.hpp"
#include "sahlq/io.hpp"
#include "sahlq/substructural.hpp"

using namespace sahlq;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

bool same_tables(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  return a.n == b.n && a.up == b.up && a.meet == b.meet && a.join == b.join && a.imp == b.imp && a.fus == b.fus &&
         a.zero == b.zero && a.one == b.one;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("fixture files load into the expected algebras") {
    auto n5 = load_algebra(fixture("n5.json"));
    CHECK(same_tables(n5, fixtures::n5()));
    CHECK(n5.has(kNeg));
    auto f1 = load_algebra(fixture("weml_counterexample.json"));
    CHECK(f1.up == fixtures::weml_counterexample().up);
    CHECK(f1.sig == signature(Variety::PSL));
    auto c3 = load_algebra(fixture("chain3.json"));
    CHECK(same_tables(c3, fixtures::chain(3)));
    CHECK(detect_classes(load_algebra(fixture("diamond.json"))).has(tHA));
  }

  TEST_CASE("FL_e files") {
    auto g3 = load_algebra(fixture("godel3.json"));
    CHECK(fle_validate(g3));
    CHECK(same_tables(g3, fixtures::godel_chain(3)));
    auto mv = load_algebra(fixture("mv4.json"));
    CHECK(same_tables(mv, fixtures::mv4()));
    auto v = load_algebra(fixture("upv_fle.json"));
    CHECK(fle_validate(v));
    CHECK(isomorphic(spec_congruences(v), fixtures::v_poset()));
    bool rejected = false;
    try {
      rejected = !fle_validate(load_algebra(fixture("broken_assoc.json")));
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::LawViolation;
    }
    CHECK(rejected);
  }

  TEST_CASE("round trips") {
    for (auto a : {fixtures::n5(), fixtures::weml_counterexample(), fixtures::chain(4), fixtures::diamond(), fixtures::mv4(),
                   fixtures::godel_chain(3), fixtures::up_v_fle()}) {
      auto b = algebra_from_json(nlohmann::json::parse(algebra_to_json(a).dump()));
      CHECK(same_tables(a, b));
      CHECK(b.sig == a.sig);
    }
    for (auto p : {fixtures::v_poset(), FinitePoset::chain(3), FinitePoset::antichain(0), fixtures::weml_counterexample_unrepaired()}) {
      auto q = poset_from_json(nlohmann::json::parse(poset_to_json(p).dump()));
      CHECK(q == p);
      CHECK(q.labels == p.labels);
    }
  }

  TEST_CASE("poset and partial map files") {
    auto v = poset_from_json(read_json_file(fixture("v_poset.json")));
    CHECK(v == fixtures::v_poset());
    auto c2 = poset_from_json(read_json_file(fixture("chain2.json")));
    auto pt = poset_from_json(read_json_file(fixture("point.json")));
    auto m = partial_map_from_json(read_json_file(fixture("collapse_top.json")), c2, pt);
    CHECK(m.dom == 0b10);
    CHECK(m.map[1] == 0);
    CHECK(partial_map_to_json(m).dump() == R"({"dom":[1],"map":{"1":0}})");
    auto listed = partial_map_from_json(nlohmann::json::parse(R"({"map": [[0, 0], [1, 0]]})"), c2, pt);
    CHECK(listed.dom == 0b11);
    CHECK_THROWS_AS(partial_map_from_json(nlohmann::json::parse(R"({"dom": [0], "map": {"1": 0}})"), c2, pt), Error);
    CHECK_THROWS_AS(partial_map_from_json(nlohmann::json::parse(R"({"map": {"1": 3}})"), c2, pt), Error);
  }

  TEST_CASE("malformed inputs") {
    CHECK_THROWS_AS(load_algebra(fixture("bad_meet.json")), Error);
    CHECK_THROWS_AS(load_algebra(fixture("missing.json")), Error);
    CHECK_THROWS_AS(algebra_from_json(nlohmann::json::parse(R"({"elements": ["a"]})")), Error);
    CHECK_THROWS_AS(algebra_from_json(nlohmann::json::parse(R"({"elements": ["a", "b"], "leq": [["a", "c"]]})")), Error);
    CHECK_THROWS_AS(algebra_from_json(nlohmann::json::parse(R"({"elements": ["a", "b"], "leq": [[0, 1], [1, 0]]})")), Error);
    // A supplied negation table that is not the pseudocomplement.
    CHECK_THROWS_AS(algebra_from_json(nlohmann::json::parse(R"({"elements": ["0", "1"], "leq": [[0, 1]], "neg": [0, 0]})")),
                    Error);
    CHECK_THROWS_AS(poset_from_json(nlohmann::json::parse(R"({"leq": []})")), Error);
  }

  TEST_CASE("digests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    EnumerationConfig a, b;
    b.max_size = 5;
    CHECK(enumeration_cache_key(a) == enumeration_cache_key(EnumerationConfig{}));
    CHECK(enumeration_cache_key(a) != enumeration_cache_key(b));
  }
}
