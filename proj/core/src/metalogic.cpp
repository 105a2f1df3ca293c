#include "sahlq/metalogic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "sahlq/substructural.hpp"

namespace sahlq {

namespace {

Formula curry(const FormulaSet& xs, Formula tail) {
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) tail = imp(*it, tail);
  return tail;
}

}  // namespace

FormulaSet insert_all(FormulaSet into, const FormulaSet& more) {
  for (auto& f : more)
    if (std::find(into.begin(), into.end(), f) == into.end()) into.push_back(f);
  return into;
}

LogicProfile ipc_profile() {
  LogicProfile p;
  p.name = "IPC";
  p.w.il = [](const FormulaSet& xs) { return FormulaSet{curry(xs, zero())}; };
  p.w.dt = [](const FormulaSet& xs, const FormulaSet& ys) {
    FormulaSet out;
    for (auto& y : ys) out = insert_all(out, {curry(xs, y)});
    return out;
  };
  p.w.pc = [](const FormulaSet& xs, const FormulaSet& ys) {
    FormulaSet out;
    for (auto& a : xs)
      for (auto& b : ys) out = insert_all(out, {disj(a, b)});
    return out;
  };
  p.delta = {imp(x(1), x(2))};
  p.top = [](Formula v) { return imp(v, v); };
  p.conjunction = true;
  return p;
}

LogicProfile restrict_profile(LogicProfile p, bool il, bool dt, bool pc) {
  if (!il) p.w.il = nullptr;
  if (!dt) p.w.dt = nullptr;
  if (!pc) p.w.pc = nullptr;
  std::string tag;
  if (il) tag += "il";
  if (dt) tag += tag.empty() ? "dt" : "+dt";
  if (pc) tag += tag.empty() ? "pc" : "+pc";
  p.name += "[" + tag + "]";
  return p;
}

std::optional<LogicProfile> profile_by_name(const std::string& name, int k) {
  if (name == "ipc" || name == "IPC") return ipc_profile();
  if (name == "ill" || name == "ILL") return ill_profile(k);
  if (name.rfind("ipc:", 0) != 0) return std::nullopt;
  bool il = false, dt = false, pc = false;
  std::stringstream in(name.substr(4));
  for (std::string part; std::getline(in, part, ',');) {
    if (part == "il") il = true;
    else if (part == "dt") dt = true;
    else if (part == "pc") pc = true;
    else return std::nullopt;
  }
  return restrict_profile(ipc_profile(), il, dt, pc);
}

std::optional<std::string> missing_witness(const Formula& f, const LogicProfile& l) {
  switch (f.op()) {
    case Op::Zero: return l.w.il ? std::nullopt : std::optional<std::string>("0");
    case Op::Not:
      if (!l.w.il) return "¬";
      return missing_witness(f.arg(), l);
    case Op::Imp:
    case Op::Or:
      if (f.is(Op::Imp) && !l.w.dt) return "→";
      if (f.is(Op::Or) && !l.w.pc) return "∨";
      [[fallthrough]];
    case Op::And:
      if (auto m = missing_witness(f.lhs(), l)) return m;
      return missing_witness(f.rhs(), l);
    case Op::Box:
    case Op::Dia:
    case Op::Fus: return "modal or product connective";
    default: return std::nullopt;
  }
}

bool compatible(const Formula& f, const LogicProfile& l) { return !missing_witness(f, l); }

bool compatible(const Quasiequation& q, const LogicProfile& l) {
  return std::all_of(q.premises.begin(), q.premises.end(), [&](const Formula& p) { return compatible(p, l); });
}

FormulaSet phi_k(const Formula& f, int k, const LogicProfile& l) {
  if (k < 1) throw Error(ErrorKind::Input, "k must be positive");
  if (auto m = missing_witness(f, l)) throw Error(ErrorKind::NotCompatible, "NotCompatible(" + *m + ")");
  switch (f.op()) {
    case Op::Var: {
      auto ix = var_index(f.name());
      if (!ix || ix->second != 0) throw Error(ErrorKind::Input, "φ^k expects variables x<i>, got " + f.name());
      FormulaSet out;
      for (int j = 1; j <= k; ++j) out.push_back(x(ix->first, j));
      return out;
    }
    case Op::One: return {l.top(x(1, 1))};
    case Op::Zero: return insert_all({x(1, 1)}, l.w.il({x(1, 1)}));
    case Op::And: return insert_all(phi_k(f.lhs(), k, l), phi_k(f.rhs(), k, l));
    case Op::Not: return l.w.il(phi_k(f.arg(), k, l));
    case Op::Imp: return l.w.dt(phi_k(f.lhs(), k, l), phi_k(f.rhs(), k, l));
    case Op::Or: return l.w.pc(phi_k(f.lhs(), k, l), phi_k(f.rhs(), k, l));
    default: throw Error(ErrorKind::Input, "φ^k is defined for non-modal formulas only");
  }
}

Formula fresh_y(const Quasiequation& q) {
  int top = 0;
  for (auto& v : variables(q))
    if (auto ix = var_index(v)) top = std::max(top, ix->first);
  return x(top + 1);
}

namespace {
void need(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::NotCompatible, std::string("NotCompatible(") + what + " witness missing)");
}
}  // namespace

FormulaSet characteristic_theorems_dt(const Quasiequation& q, const LogicProfile& l, int k) {
  need(static_cast<bool>(l.w.dt), "DT");
  Formula y = fresh_y(q);
  FormulaSet mid;
  for (auto& p : q.premises) mid = insert_all(mid, l.w.dt(phi_k(p, k, l), {y}));
  if (mid.empty()) return {y};
  return l.w.dt(mid, {y});
}

FormulaSet characteristic_theorems_pc(const Quasiequation& q, const LogicProfile& l, int k) {
  need(static_cast<bool>(l.w.pc), "PC");
  if (q.premises.empty()) return {fresh_y(q)};
  FormulaSet acc = phi_k(q.premises.front(), k, l);
  for (std::size_t i = 1; i < q.premises.size(); ++i) acc = l.w.pc(acc, phi_k(q.premises[i], k, l));
  return acc;
}

FormulaSet a_phi(const Quasiequation& q, int kmax) {
  FormulaSet out;
  LogicProfile ipc = ipc_profile();
  for (int k = 1; k <= kmax; ++k) out = insert_all(out, characteristic_theorems_dt(q, ipc, k));
  return out;
}

Formula to_gamma(const Formula& f) {
  std::map<std::string, std::string> ren;
  for (auto& v : variables(f))
    if (auto ix = var_index(v); ix && ix->second > 0)
      ren[v] = "g" + std::to_string(ix->first) + "_" + std::to_string(ix->second);
  return rename_vars(f, ren);
}

std::vector<MetaRule> metarules(const Quasiequation& q, const LogicProfile& l, int kmax, int context_size) {
  for (auto& p : q.premises)
    if (auto m = missing_witness(p, l)) throw Error(ErrorKind::NotCompatible, "NotCompatible(" + *m + ")");
  std::vector<MetaRule> out;
  for (int k = 1; k <= kmax; ++k) {
    MetaRule r;
    r.k = k;
    r.simplified = k == 1 && l.conjunction;
    for (int c = 1; c <= context_size; ++c) r.context.push_back("δ" + std::to_string(c));
    for (auto& p : q.premises) {
      Sequent s;
      for (auto& f : phi_k(p, k, l)) s.extra.push_back(to_gamma(f));
      r.premises.push_back(std::move(s));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_text(const MetaRule& r) {
  std::string gamma;
  if (r.context.empty()) {
    gamma = "Γ";
  } else {
    for (std::size_t i = 0; i < r.context.size(); ++i) gamma += (i ? ", " : "") + r.context[i];
  }
  std::string top;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (i) top += "    ";
    top += gamma;
    for (auto& f : r.premises[i].extra) top += ", " + to_text(f);
    top += " ▷ ψ";
  }
  if (r.premises.empty()) top = "(no premises)";
  std::string bottom = gamma + " ▷ ψ";
  std::size_t width = 0;
  for (unsigned char c : top) width += (c & 0xC0) != 0x80;
  return top + "\n" + std::string(std::max<std::size_t>(width, 8), '-') + "\n" + bottom;
}

bool same_rule(const MetaRule& a, const MetaRule& b) {
  if (a.premises.size() != b.premises.size()) return false;
  for (std::size_t i = 0; i < a.premises.size(); ++i) {
    auto x = a.premises[i].extra, y = b.premises[i].extra;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  return true;
}

MetaRule eml_rule(const LogicProfile& l, int n) {
  need(static_cast<bool>(l.w.il), "IL");
  FormulaSet phis;
  for (int j = 1; j <= n; ++j) phis.push_back(var("g1_" + std::to_string(j)));
  MetaRule r;
  r.k = n;
  r.premises.push_back({phis});
  r.premises.push_back({l.w.il(phis)});
  return r;
}

MetaRule btwl_rule(const LogicProfile& l, int n, int k) {
  need(static_cast<bool>(l.w.il), "IL");
  auto g = [](int i, int t) { return var("g" + std::to_string(i) + "_" + std::to_string(t)); };
  MetaRule r;
  r.k = k;
  for (int i = 1; i <= n + 1; ++i) {
    FormulaSet gi;
    for (int t = 1; t <= k; ++t) gi.push_back(g(i, t));
    FormulaSet inner = l.w.il(gi);
    for (int j = 1; j < i; ++j)
      for (int t = 1; t <= k; ++t) inner = insert_all(inner, {g(j, t)});
    r.premises.push_back({l.w.il(inner)});
  }
  return r;
}

Bits ipc_filter_generate(const FiniteAlgebra& a, Bits xs) {
  if (a.meet.empty()) throw Error(ErrorKind::MissingOperation, "MissingOperation(∧)");
  if (a.top < 0) throw Error(ErrorKind::Input, "filter generation needs a top element");
  int m = a.top;
  for (int e : members(xs)) m = a.m(m, e);
  return a.up[m];
}

FiniteAlgebra compact_filter_semilattice(const FiniteAlgebra& a) {
  std::vector<Bits> fs;
  for (int e = 0; e < a.n; ++e) fs.push_back(a.up[e]);
  std::vector<Bits> up(a.n, 0);
  std::vector<std::string> labels;
  for (int i = 0; i < a.n; ++i) {
    labels.push_back("↑" + a.label(i));
    for (int j = 0; j < a.n; ++j)
      if ((fs[j] & ~fs[i]) == 0) up[i] |= bit(j);  // F ≤ G iff F ⊇ G
  }
  FiniteAlgebra c = algebra_from_order(FinitePoset::from_up(up, labels), kAnd);
  c.repr = fs;
  return complete(std::move(c), natural_signature(detect_classes(c)));
}

FilterPoset spec_ipc(const FiniteAlgebra& a) { return meet_irreducible_filters(a); }

std::optional<std::string> check_filter_generation(const FiniteAlgebra& a0, const Formula& f, int k) {
  const LogicProfile ipc = ipc_profile();
  FiniteAlgebra a = complete(a0, kHeyting);
  FiniteAlgebra fic = compact_filter_semilattice(a);
  FormulaSet set = phi_k(f, k, ipc);
  auto fvars = variables(f);
  // Doubled variables x{i}_{j}, plus anything the set mentions (such as x1_1 for constants).
  std::vector<std::string> vars;
  for (auto& v : fvars)
    for (int j = 1; j <= k; ++j) vars.push_back("x" + std::to_string(var_index(v)->first) + "_" + std::to_string(j));
  for (auto& g : set)
    for (auto& v : variables(g))
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  std::vector<Term> terms;
  for (auto& g : set) terms.emplace_back(a, g, vars);
  Term lift(fic, f, fvars);
  std::vector<int> vals(vars.size(), 0), gen(fvars.size());
  if (a.n == 0) return std::nullopt;
  for (;;) {
    int m = a.top;
    for (auto& t : terms) m = a.m(m, t(vals.data()));
    Bits lhs = a.up[m];
    for (std::size_t i = 0; i < fvars.size(); ++i) {
      int g = a.top;
      for (int j = 0; j < k; ++j) g = a.m(g, vals[i * k + j]);
      gen[i] = fic.find_repr(a.up[g]);
    }
    Bits rhs = fic.repr[lift(gen.data())];
    if (lhs != rhs) {
      std::string where;
      for (std::size_t i = 0; i < vars.size(); ++i) where += (i ? ", " : "") + vars[i] + "=" + a.label(vals[i]);
      return "filter generation fails for " + to_text(f) + " at " + where;
    }
    std::size_t i = vals.size();
    while (i > 0 && ++vals[i - 1] == a.n) vals[--i] = 0;
    if (i == 0) break;
  }
  return std::nullopt;
}

}  // namespace sahlq
