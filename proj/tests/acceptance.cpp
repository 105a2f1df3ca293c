// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "sahlq/correspondence.hpp"
#include "sahlq/duality.hpp"
#include "sahlq/fixtures.hpp"
#include "sahlq/fomodel.hpp"
#include "sahlq/metalogic.hpp"
#include "sahlq/substructural.hpp"

#ifdef HAVE_CLI
#include "../tools/cli.hpp"
#endif

using namespace sahlq;
using F = FoFormula;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

void criterion(int n, const std::string& what, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  detail << "; " << static_cast<long>(ms) << " ms";
  report(n, ok, what, detail.str());
}

std::vector<FiniteAlgebra> algebras(ClassFilter c, int max) {
  EnumerationConfig cfg;
  cfg.cls = c;
  cfg.max_size = max;
  return enumerate_algebras(cfg);
}

std::vector<FinitePoset> posets_upto(int n) {
  EnumerationConfig cfg;
  cfg.min_size = 0;
  cfg.max_size = n;
  return enumerate_posets(cfg);
}

bool in_language(const Quasiequation& q, unsigned sig) {
  for (auto& p : q.premises)
    if (sig_of(p) & ~sig) return false;
  return true;
}

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
F top_width_2() {
  auto common = [](const char* a, const char* b) { return F::exists("u", F::conj({F::leq(a, "u"), F::leq(b, "u")})); };
  return F::forall(
      "x", F::forall("y1", F::forall("y2", F::forall("y3", F::imp(F::conj({F::leq("x", "y1"), F::leq("x", "y2"), F::leq("x", "y3")}),
                                                                  F::disj({common("y1", "y2"), common("y1", "y3"), common("y2", "y3")}))))));
}

const char* variety_name(Variety v) { return to_string(v); }

}  // namespace

int main() {
  criterion(1, "recognizer on the corpus", [](std::ostringstream& d) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (auto& e : corpus()) {
      bool f = classify_sahlqvist(premise_disjunction(e.q)).is_sahlqvist();
      bool q = e.q.sahlqvist;
      for (auto& p : e.q.premises) q = q && classify_sahlqvist(p).is_sahlqvist();
      if (!f || !q) d << e.name << " misclassified; ";
      ok = ok && f && q;
    }
    bool neg = classify_sahlqvist(parse_formula("~~x1 -> x1")).kind == SahlqvistKind::NotSahlqvist;
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    d << "6 corpus entries Sahlqvist, ~~x1 -> x1 " << (neg ? "rejected" : "ACCEPTED") << ", " << s << " s";
    return ok && neg && s < 1.0;
  });

  criterion(2, "GMT sweep, posets up to 4", [](std::ostringstream& d) {
    int checks = 0, bad = 0;
    for (auto& p : posets_upto(4)) {
      auto up = up_algebra(p);
      auto cx = complex_algebra(p);
      for (auto& e : corpus()) {
        Formula f = premise_disjunction(e.q);
        ++checks;
        bad += validates_formula(up, f) != validates_formula(cx, gmt_translate(f));
      }
    }
    d << checks << " checks, " << bad << " disagreements";
    return bad == 0;
  });

  criterion(3, "correspondence oracle, posets up to 5, named conditions", [](std::ostringstream& d) {
    auto ps = posets_upto(5);
    int bad = 0;
    std::vector<std::pair<std::string, Quasiequation>> qs = {
        {"em", qe_em()}, {"gd", qe_gd()}, {"btw1", qe_btw(1)}, {"btw2", qe_btw(2)}, {"weml", qe_weml()}};
    for (auto& [name, q] : qs) {
      F c = correspondent(q);
      for (auto& p : ps) bad += check_fo(p, c) != validates_quasiequation(up_algebra(p), q);
    }
    bool named = fo_equivalent(correspondent(qe_em()), discrete(), 5) &&
                 fo_equivalent(correspondent(qe_gd()), root_system(), 5) &&
                 fo_equivalent(correspondent(qe_btw(1)), up_directed(), 5) &&
                 fo_equivalent(correspondent(qe_btw(2)), top_width_2(), 5);
    d << ps.size() << " posets x 5 quasiequations, " << bad << " mismatches; named conditions "
      << (named ? "equivalent" : "NOT equivalent");
    return bad == 0 && named;
  });

  criterion(4, "canonicity over PSL and ISL up to 6", [](std::ostringstream& d) {
    int algs = 0, pairs = 0, not_canonical = 0, disagree = 0;
    for (auto [cls, v] : {std::pair{ClassFilter::PSL, Variety::PSL}, std::pair{ClassFilter::ISL, Variety::ISL}}) {
      unsigned sig = signature(v);
      for (auto& a0 : algebras(cls, 6)) {
        FiniteAlgebra a = complete(a0, sig);
        ++algs;
        auto star = meet_irreducible_filters(a);
        auto up = up_algebra(star.poset, sig);
        for (auto& e : corpus()) {
          if (!in_language(e.q, sig)) continue;
          ++pairs;
          bool va = validates_quasiequation(a, e.q);
          if (va && !validates_quasiequation(up, e.q)) ++not_canonical;
          if (va != check_fo(star.poset, correspondent(e.q))) {
            if (disagree++ < 3) d << variety_name(v) << " |A|=" << a.n << " " << e.name << " disagrees; ";
          }
        }
      }
    }
    d << algs << " algebras, " << pairs << " (A, Φ) pairs, " << not_canonical << " canonicity failures, " << disagree
      << " correspondence disagreements";
    return not_canonical == 0 && disagree == 0;
  });

  criterion(5, "A+ over PSL up to 6", [](std::ostringstream& d) {
    int algs = 0, bad_eps = 0, bad_tags = 0, lost = 0;
    unsigned need = tPSL | tPDL | tHA;
    for (auto& a0 : algebras(ClassFilter::PSL, 6)) {
      FiniteAlgebra a = complete(a0, signature(Variety::PSL));
      ++algs;
      auto ap = a_plus(a);
      bad_eps += !ap.embedding;
      bad_tags += (detect_classes(ap.algebra).tags & need) != need;
      for (auto& e : corpus())
        if (in_language(e.q, signature(Variety::PSL)) && validates_quasiequation(a, e.q) &&
            !validates_quasiequation(ap.algebra, e.q))
          ++lost;
    }
    d << algs << " algebras; embedding failures " << bad_eps << ", missing tags " << bad_tags << ", validity lost "
      << lost;
    return bad_eps == 0 && bad_tags == 0 && lost == 0;
  });

  criterion(6, "the eight-element PSL", [](std::ostringstream& d) {
    auto a = fixtures::weml_counterexample();
    auto label = [&](const std::string& s) {
      for (int i = 0; i < a.n; ++i)
        if (a.label(i) == s) return i;
      return -1;
    };
    bool psi = !refute(a, fixtures::context_free_weml());
    bool w = is_counterexample(a, qe_weml(), {{"x1", label("a")}}, label("b"), label("c"));
    d << "Ψ " << (psi ? "valid" : "refuted") << ", WEML counterexample at x=a, y=b, z=c " << (w ? "found" : "missing");
    return psi && w && !validates_quasiequation(a, qe_weml());
  });

  criterion(7, "duality over sampled homomorphisms up to 5", [](std::ostringstream& d) {
    std::vector<std::pair<ClassFilter, Variety>> vs = {{ClassFilter::PSL, Variety::PSL},
                                                       {ClassFilter::ISL, Variety::ISL},
                                                       {ClassFilter::bISL, Variety::bISL},
                                                       {ClassFilter::PDL, Variety::PDL},
                                                       {ClassFilter::HA, Variety::HA}};
    long homs = 0, bad_tag = 0, bad_surj = 0, bad_inj = 0, injective_homs = 0, surjective_duals = 0;
    for (auto& [cls, v] : vs) {
      unsigned sig = signature(v);
      std::vector<FiniteAlgebra> as;
      for (auto& a : algebras(cls, 5)) as.push_back(complete(a, sig));
      for (auto& a : as)
        for (auto& b : as) {
          auto hs = homomorphisms(a, b, sig);
          for (auto& f : hs.homs) {
            ++homs;
            auto ls = lower_star(a, b, f, v);
            unsigned need = required_arrow(v);
            bad_tag += (ls.tags & need) != need;
            if (injective(f)) {
              ++injective_homs;
              bad_surj += !surjective(ls.map);
            }
            if (surjective(ls.map) && is_arrow(ls.map, v)) {
              ++surjective_duals;
              auto u = up_of_map(ls.map, v);
              bad_inj += u.failure.has_value() || !injective(u.map);
            }
          }
        }
    }
    d << homs << " homomorphisms (" << injective_homs << " injective, " << surjective_duals
      << " with surjective duals); tag failures " << bad_tag << ", f_* not surjective " << bad_surj
      << ", Up(p) not an injective homomorphism " << bad_inj;
    return bad_tag == 0 && bad_surj == 0 && bad_inj == 0 && homs > 0;
  });

  criterion(8, "IPC instance over HA up to 5", [](std::ostringstream& d) {
    auto ipc = ipc_profile();
    int algs = 0, fg_checks = 0, fg_bad = 0, thm_bad = 0;
    for (auto& a : algebras(ClassFilter::HA, 5)) {
      ++algs;
      auto spec = spec_ipc(a);
      for (auto& e : corpus()) {
        Formula f = premise_disjunction(e.q);
        for (int k = 1; k <= 2; ++k) {
          ++fg_checks;
          if (auto bad = check_filter_generation(a, f, k)) {
            if (fg_bad++ < 2) d << e.name << " k=" << k << ": " << *bad << "; ";
          }
        }
        bool lhs = true;
        for (auto& t : characteristic_theorems_dt(e.q, ipc, 1)) lhs = lhs && validates_formula(a, t);
        thm_bad += lhs != check_fo(spec.poset, correspondent(e.q));
      }
    }
    d << algs << " algebras; filter generation " << fg_checks << " checks, " << fg_bad << " failures; characteristic theorems "
      << thm_bad << " disagreements";
    return fg_bad == 0 && thm_bad == 0;
  });

  criterion(9, "linear logic suite", [](std::ostringstream& d) {
    bool fixtures_ok = true;
    for (auto& a : {fixtures::godel_chain(2), fixtures::godel_chain(3), fixtures::godel_chain(4), fixtures::boolean2(),
                    fixtures::mv4(), fixtures::up_v_fle(), fixtures::heyting_fle(fixtures::diamond())})
      fixtures_ok = fixtures_ok && fle_validate(a);
    bool bot = true;
    for (int n = 1; n <= 6; ++n) bot = bot && bot_element(fixtures::godel_chain(n)) == 0;

    std::map<std::string, FoFormula> corr;
    for (auto& e : corpus()) corr[e.name] = correspondent(e.q);
    long instances = 0, lhs_true = 0, unsound = 0, gated = 0, gated_violations = 0;
    for (auto& a : enumerate_fle(6))
      for (auto& e : corpus()) {
        auto r = check_linear_correspondence(a, e.q, 1, corr[e.name]);
        ++instances;
        lhs_true += r.lhs;
        if (!r.gate.ok()) {
          ++gated;
          gated_violations += r.lhs && !r.rhs;
        }
        unsound += !r.sound();
      }
    bool upv = !validates_formula(up_algebra(fixtures::v_poset()), goedel_dummett()) &&
               !check_fo(spec_congruences(fixtures::up_v_fle()), root_system());
    d << "fixtures " << (fixtures_ok ? "valid" : "INVALID") << ", ⊥ = 0 on Gödel chains " << (bot ? "yes" : "NO") << "; "
      << instances << " (A, Φ) instances, lhs true in " << lhs_true << ", lhs without rhs " << unsound
      << " among witness-compatible algebras; " << gated << " instances outside a compatible variety ("
      << gated_violations << " of them with lhs but not rhs); Up(V) and its Spec refute GD: " << (upv ? "yes" : "NO");
    return fixtures_ok && bot && unsound == 0 && upv;
  });

#ifdef HAVE_CLI
  criterion(10, "deterministic reports", [](std::ostringstream& d) {
    std::vector<std::vector<std::string>> cmds = {{"oracle", "@btw2", "--size", "5", "--seed", "42"},
                                                  {"oracle", "@gd", "--size", "6", "--seed", "42", "--sample", "100"},
                                                  {"correspond", "@btw3", "--seed", "42"},
                                                  {"correspond", "@gd", "--seed", "42"}};
    bool ok = true;
    const char* sep = "";
    for (auto& c : cmds) {
      std::ostringstream o1, o2, e1, e2;
      int r1 = cli::dispatch(c, o1, e1), r2 = cli::dispatch(c, o2, e2);
      bool same = o1.str() == o2.str() && r1 == r2 && !o1.str().empty();
      ok = ok && same;
      d << sep << c[0] << " " << c[1] << (same ? " identical" : " DIFFERS");
      sep = "; ";
    }
    return ok;
  });
#else
  report(10, false, "deterministic reports", "built without the command-line tool");
#endif

  return failures ? 1 : 0;
}
