#include "sahlq/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sahlq {

std::string sig_to_string(unsigned sig) {
  static const std::pair<unsigned, const char*> names[] = {{kAnd, "and"}, {kOr, "or"},   {kImp, "imp"},
                                                           {kNeg, "not"}, {kZero, "0"},  {kOne, "1"},
                                                           {kFus, "fus"}, {kBox, "box"}, {kDia, "dia"}};
  std::string out;
  for (auto& [b, n] : names)
    if (sig & b) {
      if (!out.empty()) out += ',';
      out += n;
    }
  return out;
}

unsigned sig_of(const Formula& f) {
  switch (f.op()) {
    case Op::Var: return 0;
    case Op::Zero: return kZero;
    case Op::One: return kOne;
    case Op::And: return kAnd | sig_of(f.lhs()) | sig_of(f.rhs());
    case Op::Or: return kOr | sig_of(f.lhs()) | sig_of(f.rhs());
    case Op::Imp: return kImp | sig_of(f.lhs()) | sig_of(f.rhs());
    case Op::Fus: return kFus | sig_of(f.lhs()) | sig_of(f.rhs());
    case Op::Not: return kNeg | sig_of(f.arg());
    case Op::Box: return kBox | sig_of(f.arg());
    case Op::Dia: return kDia | sig_of(f.arg());
  }
  return 0;
}

const char* to_string(Variety v) {
  switch (v) {
    case Variety::PSL: return "PSL";
    case Variety::ISL: return "ISL";
    case Variety::bISL: return "bISL";
    case Variety::PDL: return "PDL";
    case Variety::IL: return "IL";
    case Variety::HA: return "HA";
  }
  return "?";
}

unsigned signature(Variety v) {
  switch (v) {
    case Variety::PSL: return kAnd | kNeg | kZero | kOne;
    case Variety::ISL: return kAnd | kImp | kOne;
    case Variety::bISL: return kAnd | kImp | kZero | kOne;
    case Variety::PDL: return kAnd | kOr | kNeg | kZero | kOne;
    case Variety::IL: return kAnd | kOr | kImp | kOne;
    case Variety::HA: return kHeyting;
  }
  return 0;
}

std::optional<Variety> variety_of_signature(unsigned sig) {
  for (Variety v : {Variety::PSL, Variety::ISL, Variety::bISL, Variety::PDL, Variety::IL, Variety::HA})
    if (signature(v) == sig) return v;
  return std::nullopt;
}

std::optional<Variety> parse_variety(const std::string& s) {
  for (Variety v : {Variety::PSL, Variety::ISL, Variety::bISL, Variety::PDL, Variety::IL, Variety::HA})
    if (s == to_string(v)) return v;
  return std::nullopt;
}

namespace {
const std::pair<unsigned, const char*> kTagNames[] = {
    {tSemilattice, "Semilattice"}, {tBounded, "Bounded"},   {tPSL, "PSL"}, {tISL, "ISL"},
    {tbISL, "bISL"},               {tLattice, "Lattice"},   {tDistributive, "Distributive"},
    {tPDL, "PDL"},                 {tIL, "IL"},             {tHA, "HA"}};
}

std::vector<std::string> tag_names(unsigned tags) {
  std::vector<std::string> out;
  for (auto& [b, n] : kTagNames)
    if (tags & b) out.push_back(n);
  return out;
}

unsigned tag_of(Variety v) {
  switch (v) {
    case Variety::PSL: return tPSL;
    case Variety::ISL: return tISL;
    case Variety::bISL: return tbISL;
    case Variety::PDL: return tPDL;
    case Variety::IL: return tIL;
    case Variety::HA: return tHA;
  }
  return 0;
}

bool FiniteAlgebra::has(unsigned op) const {
  switch (op) {
    case kAnd: return !meet.empty();
    case kOr: return !join.empty();
    case kImp: return !imp.empty();
    case kNeg: return !neg.empty();
    case kZero: return zero >= 0;
    case kOne: return one >= 0;
    case kFus: return !fus.empty();
    case kBox: return !box.empty();
    case kDia: return !dia.empty();
  }
  return false;
}

FinitePoset FiniteAlgebra::order() const { return FinitePoset::from_up(up, labels); }

std::string FiniteAlgebra::label(int a) const {
  return a >= 0 && a < static_cast<int>(labels.size()) ? labels[a] : std::to_string(a);
}

int FiniteAlgebra::find_repr(Bits s) const {
  for (int a = 0; a < n; ++a)
    if (repr[a] == s) return a;
  return -1;
}

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> l;
  for (int i = 0; i < n; ++i) l.push_back(std::to_string(i));
  return l;
}

void set_bounds(FiniteAlgebra& a) {
  a.bottom = a.top = -1;
  for (int e = 0; e < a.n; ++e) {
    if (a.up[e] == a.all()) a.bottom = e;
    bool is_top = true;
    for (int b = 0; b < a.n && is_top; ++b) is_top = a.leq(b, e);
    if (is_top) a.top = e;
  }
}

// Least upper bound in the induced order, or -1.
int lub(const FiniteAlgebra& a, int x, int y) {
  Bits ub = a.up[x] & a.up[y];
  for (int c : members(ub))
    if ((a.up[c] & ub) == ub) return c;
  return -1;
}

// Largest element of `cands` in the induced order, or -1.
int greatest(const FiniteAlgebra& a, Bits cands) {
  for (int c : members(cands)) {
    bool ok = true;
    for (int d : members(cands))
      if (!a.leq(d, c)) {
        ok = false;
        break;
      }
    if (ok) return c;
  }
  return -1;
}

}  // namespace

FiniteAlgebra algebra_from_order(const FinitePoset& p, unsigned sig) {
  if (p.n > kMaxElements) throw Error(ErrorKind::BoundExceeded, "algebra too large");
  FiniteAlgebra a;
  a.n = p.n;
  a.labels = p.labels.empty() ? default_labels(p.n) : p.labels;
  a.up = p.up;
  a.meet.assign(a.n * a.n, 0);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      Bits lb = p.down[x] & p.down[y];
      int g = -1;
      for (int c : members(lb))
        if ((p.down[c] & lb) == lb) g = c;
      if (g < 0) throw Error(ErrorKind::Input, "no meet of " + a.label(x) + " and " + a.label(y));
      a.meet[x * a.n + y] = static_cast<std::uint8_t>(g);
    }
  set_bounds(a);
  return complete(std::move(a), sig);
}

FiniteAlgebra algebra_from_meet(std::vector<std::string> labels, std::vector<std::uint8_t> meet, unsigned sig) {
  FiniteAlgebra a;
  a.n = static_cast<int>(labels.size());
  if (a.n > kMaxElements) throw Error(ErrorKind::BoundExceeded, "algebra too large");
  if (static_cast<int>(meet.size()) != a.n * a.n) throw Error(ErrorKind::Input, "meet table has the wrong size");
  a.labels = std::move(labels);
  a.meet = std::move(meet);
  for (auto v : a.meet)
    if (v >= a.n) throw Error(ErrorKind::Input, "meet table entry out of range");
  auto r = detect_classes(a);
  if (!r.has(tSemilattice)) throw Error(ErrorKind::LawViolation, r.violations["Semilattice"]);
  a.up.assign(a.n, 0);
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y)
      if (a.m(x, y) == x) a.up[x] |= bit(y);
  set_bounds(a);
  return complete(std::move(a), sig);
}

ClassReport detect_classes(const FiniteAlgebra& a) {
  ClassReport r;
  int n = a.n;
  if (a.meet.empty()) {
    r.violations["Semilattice"] = "no meet table";
    return r;
  }
  auto L = [&](int e) { return a.label(e); };
  auto m = [&](int x, int y) { return int(a.meet[x * n + y]); };
  std::string bad;
  for (int x = 0; x < n && bad.empty(); ++x) {
    if (m(x, x) != x) bad = "idempotence fails at " + L(x);
    for (int y = 0; y < n && bad.empty(); ++y) {
      if (m(x, y) != m(y, x)) bad = "commutativity fails at " + L(x) + ", " + L(y);
      for (int z = 0; z < n && bad.empty(); ++z)
        if (m(m(x, y), z) != m(x, m(y, z))) bad = "associativity fails at " + L(x) + ", " + L(y) + ", " + L(z);
    }
  }
  if (!bad.empty()) {
    r.violations["Semilattice"] = bad;
    return r;
  }
  r.tags |= tSemilattice;

  FiniteAlgebra o;  // order-only view
  o.n = n;
  o.labels = a.labels;
  o.up.assign(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (m(x, y) == x) o.up[x] |= bit(y);
  set_bounds(o);
  r.bottom = o.bottom;
  r.top = o.top;
  if (o.bottom >= 0 && o.top >= 0)
    r.tags |= tBounded;
  else
    r.violations["Bounded"] = o.bottom < 0 ? "no minimum" : "no maximum";

  bool lattice = true;
  r.join.assign(n * n, 0);
  for (int x = 0; x < n && lattice; ++x)
    for (int y = 0; y < n && lattice; ++y) {
      int c = lub(o, x, y);
      if (c < 0) {
        lattice = false;
        r.violations["Lattice"] = "no join of " + L(x) + " and " + L(y);
      } else {
        r.join[x * n + y] = static_cast<std::uint8_t>(c);
      }
    }
  if (lattice) {
    r.tags |= tLattice;
    bool dist = true;
    for (int x = 0; x < n && dist; ++x)
      for (int y = 0; y < n && dist; ++y)
        for (int z = 0; z < n && dist; ++z)
          if (m(x, r.join[y * n + z]) != r.join[m(x, y) * n + m(x, z)]) {
            dist = false;
            r.violations["Distributive"] = "distributivity fails at " + L(x) + ", " + L(y) + ", " + L(z);
          }
    if (dist) r.tags |= tDistributive;
  } else {
    r.join.clear();
    r.violations["Distributive"] = "not a lattice";
  }

  bool psl = o.bottom >= 0;
  if (!psl) r.violations["PSL"] = "no minimum";
  if (psl) {
    r.neg.assign(n, 0);
    for (int x = 0; x < n && psl; ++x) {
      Bits cands = 0;
      for (int c = 0; c < n; ++c)
        if (m(c, x) == o.bottom) cands |= bit(c);
      int g = greatest(o, cands);
      if (g < 0) {
        psl = false;
        r.violations["PSL"] = "no largest c with c ∧ " + L(x) + " = 0";
      } else {
        r.neg[x] = static_cast<std::uint8_t>(g);
      }
    }
    if (psl && !a.neg.empty()) {
      for (int x = 0; x < n && psl; ++x)
        for (int c = 0; c < n && psl; ++c)
          if ((m(c, x) == o.bottom) != o.leq(c, a.neg[x])) {
            psl = false;
            r.violations["PSL"] = "c ∧ a = 0 iff c ≤ ¬a fails at c=" + L(c) + ", a=" + L(x);
          }
    }
    if (!psl) r.neg.clear();
  }
  if (psl) r.tags |= tPSL;

  bool isl = true;
  r.imp.assign(n * n, 0);
  for (int x = 0; x < n && isl; ++x)
    for (int y = 0; y < n && isl; ++y) {
      Bits cands = 0;
      for (int c = 0; c < n; ++c)
        if (o.leq(m(c, x), y)) cands |= bit(c);
      int g = greatest(o, cands);
      if (g < 0) {
        isl = false;
        r.violations["ISL"] = "no largest c with c ∧ " + L(x) + " ≤ " + L(y);
      } else {
        r.imp[x * n + y] = static_cast<std::uint8_t>(g);
      }
    }
  if (isl && !a.imp.empty() && a.fus.empty()) {
    for (int x = 0; x < n && isl; ++x)
      for (int y = 0; y < n && isl; ++y)
        for (int c = 0; c < n && isl; ++c)
          if (o.leq(m(c, x), y) != o.leq(c, a.imp[x * n + y])) {
            isl = false;
            r.violations["ISL"] = "c ∧ a ≤ b iff c ≤ a → b fails at c=" + L(c) + ", a=" + L(x) + ", b=" + L(y);
          }
  }
  if (!isl) r.imp.clear();
  if (isl) r.tags |= tISL;
  if (isl && o.bottom >= 0) r.tags |= tbISL;
  if (psl && r.has(tDistributive)) r.tags |= tPDL;
  if (isl && lattice) r.tags |= tIL;
  if (r.has(tIL) && r.has(tBounded)) r.tags |= tHA;
  if (!r.has(tbISL) && !r.violations.count("bISL"))
    r.violations["bISL"] = isl ? "no minimum" : r.violations["ISL"];
  if (!r.has(tPDL)) r.violations["PDL"] = psl ? r.violations["Distributive"] : r.violations["PSL"];
  if (!r.has(tIL)) r.violations["IL"] = isl ? r.violations["Lattice"] : r.violations["ISL"];
  if (!r.has(tHA)) r.violations["HA"] = r.has(tIL) ? r.violations["Bounded"] : r.violations["IL"];
  return r;
}

FiniteAlgebra complete(FiniteAlgebra a, unsigned sig) {
  if (a.up.empty() || (int)a.up.size() != a.n) throw Error(ErrorKind::Input, "algebra without an order");
  set_bounds(a);
  if (a.labels.empty()) a.labels = default_labels(a.n);
  ClassReport r;
  bool need = ((sig & kOr) && a.join.empty()) || ((sig & kImp) && a.imp.empty()) ||
              ((sig & kNeg) && a.neg.empty());
  if (need) r = detect_classes(a);
  if ((sig & kAnd) && a.meet.empty()) throw Error(ErrorKind::MissingOperation, "MissingOperation(∧)");
  if ((sig & kOr) && a.join.empty()) {
    if (!r.has(tLattice)) throw Error(ErrorKind::MissingOperation, "MissingOperation(∨): " + r.violations["Lattice"]);
    a.join = r.join;
  }
  if ((sig & kImp) && a.imp.empty()) {
    if (!r.has(tISL)) throw Error(ErrorKind::MissingOperation, "MissingOperation(→): " + r.violations["ISL"]);
    a.imp = r.imp;
  }
  if ((sig & kNeg) && a.neg.empty()) {
    if (!r.has(tPSL)) throw Error(ErrorKind::MissingOperation, "MissingOperation(¬): " + r.violations["PSL"]);
    a.neg = r.neg;
  }
  if ((sig & kZero) && a.zero < 0) {
    if (a.bottom < 0) throw Error(ErrorKind::MissingOperation, "MissingOperation(0): no minimum");
    a.zero = a.bottom;
  }
  if ((sig & kOne) && a.one < 0) {
    if (a.top < 0) throw Error(ErrorKind::MissingOperation, "MissingOperation(1): no maximum");
    a.one = a.top;
  }
  for (unsigned op : {kFus, kBox, kDia})
    if ((sig & op) && !a.has(op)) throw Error(ErrorKind::MissingOperation, "MissingOperation(" + sig_to_string(op) + ")");
  a.sig = sig;
  return a;
}

FiniteAlgebra reduct(FiniteAlgebra a, unsigned sig) {
  for (unsigned op : {kAnd, kOr, kImp, kNeg, kZero, kOne, kFus, kBox, kDia})
    if ((sig & op) && !a.has(op)) throw Error(ErrorKind::MissingOperation, "MissingOperation(" + sig_to_string(op) + ")");
  a.sig = sig;
  return a;
}

unsigned natural_signature(const ClassReport& r) {
  if (r.has(tHA)) return kHeyting;
  if (r.has(tPSL)) return signature(Variety::PSL) | (r.has(tLattice) ? kOr : 0u);
  if (r.has(tbISL)) return signature(Variety::bISL);
  if (r.has(tISL)) return signature(Variety::ISL);
  unsigned s = kAnd;
  if (r.has(tLattice)) s |= kOr;
  if (r.bottom >= 0) s |= kZero;
  if (r.top >= 0) s |= kOne;
  return s;
}

// ---- evaluation ---------------------------------------------------------

namespace {
enum : std::uint8_t { iVar, iConst, iMeet, iJoin, iImp, iFus, iNeg, iBox, iDia };

const char* glyph(unsigned op) {
  switch (op) {
    case kAnd: return "∧";
    case kOr: return "∨";
    case kImp: return "→";
    case kNeg: return "¬";
    case kZero: return "0";
    case kOne: return "1";
    case kFus: return "·";
    case kBox: return "□";
    case kDia: return "◇";
  }
  return "?";
}
}  // namespace

void require_language(const FiniteAlgebra& a, const Formula& f) {
  unsigned need = sig_of(f);
  for (unsigned op : {kAnd, kOr, kImp, kNeg, kZero, kOne, kFus, kBox, kDia})
    if ((need & op) && (!(a.sig & op) || !a.has(op)))
      throw Error(ErrorKind::MissingOperation, std::string("MissingOperation(") + glyph(op) + ")");
}

Term::Term(const FiniteAlgebra& a, const Formula& f, const std::vector<std::string>& vars) : a_(&a) {
  require_language(a, f);
  std::size_t depth = 0, cur = 0;
  auto push = [&](std::uint8_t op, int arg) {
    prog_.push_back({op, arg});
    if (op == iVar || op == iConst) {
      depth = std::max(depth, ++cur);
    } else if (op != iNeg && op != iBox && op != iDia) {
      --cur;
    }
  };
  std::function<void(const Formula&)> emit = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Var: {
        auto it = std::find(vars.begin(), vars.end(), g.name());
        if (it == vars.end()) throw Error(ErrorKind::Input, "unassigned variable " + g.name());
        push(iVar, static_cast<int>(it - vars.begin()));
        return;
      }
      case Op::Zero: push(iConst, a.zero); return;
      case Op::One: push(iConst, a.one); return;
      case Op::Not: emit(g.arg()); push(iNeg, 0); return;
      case Op::Box: emit(g.arg()); push(iBox, 0); return;
      case Op::Dia: emit(g.arg()); push(iDia, 0); return;
      default:
        emit(g.lhs());
        emit(g.rhs());
        push(g.is(Op::And) ? iMeet : g.is(Op::Or) ? iJoin : g.is(Op::Imp) ? iImp : iFus, 0);
    }
  };
  emit(f);
  stack_.assign(depth + 1, 0);
}

int Term::operator()(const int* vals) const {
  const FiniteAlgebra& a = *a_;
  const int n = a.n;
  int* sp = stack_.data();
  for (const Instr& in : prog_) {
    switch (in.op) {
      case iVar: *sp++ = vals[in.arg]; break;
      case iConst: *sp++ = in.arg; break;
      case iNeg: sp[-1] = a.neg[sp[-1]]; break;
      case iBox: sp[-1] = a.box[sp[-1]]; break;
      case iDia: sp[-1] = a.dia[sp[-1]]; break;
      default: {
        int r = *--sp;
        int l = sp[-1];
        const std::uint8_t* t = in.op == iMeet ? a.meet.data()
                                : in.op == iJoin ? a.join.data()
                                : in.op == iImp  ? a.imp.data()
                                                 : a.fus.data();
        sp[-1] = t[l * n + r];
      }
    }
  }
  return sp[-1];
}

int eval_formula(const FiniteAlgebra& a, const Formula& f, const Assignment& s) {
  auto vars = variables(f);
  Term t(a, f, vars);
  std::vector<int> vals;
  for (auto& v : vars) {
    auto it = s.find(v);
    if (it == s.end()) throw Error(ErrorKind::Input, "unassigned variable " + v);
    if (it->second < 0 || it->second >= a.n) throw Error(ErrorKind::Input, "assignment out of range for " + v);
    vals.push_back(it->second);
  }
  return t(vals.data());
}

bool designated(const FiniteAlgebra& a, int v) {
  if (a.one >= 0) return a.leq(a.one, v);
  return v == a.top;
}

namespace {

// Odometer over [0,n)^k; returns false once exhausted.
bool advance(std::vector<int>& v, int n) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (++v[i] < n) return true;
    v[i] = 0;
  }
  return false;
}

Assignment to_assignment(const std::vector<std::string>& vars, const std::vector<int>& vals) {
  Assignment s;
  for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = vals[i];
  return s;
}

}  // namespace

std::optional<Assignment> refute_formula(const FiniteAlgebra& a, const Formula& f) {
  auto vars = variables(f);
  Term t(a, f, vars);
  if (a.n == 0) return std::nullopt;
  std::vector<int> vals(vars.size(), 0);
  do {
    if (!designated(a, t(vals.data()))) return to_assignment(vars, vals);
  } while (advance(vals, a.n));
  return std::nullopt;
}

bool validates_formula(const FiniteAlgebra& a, const Formula& f) { return !refute_formula(a, f); }

namespace {

template <class Visit>
void scan_quasiequation(const FiniteAlgebra& a, const Quasiequation& q, Visit visit) {
  if (a.meet.empty() || !(a.sig & kAnd)) throw Error(ErrorKind::MissingOperation, "MissingOperation(∧)");
  auto vars = variables(q);
  std::vector<Term> terms;
  for (auto& p : q.premises) terms.emplace_back(a, p, vars);
  std::vector<int> vals(vars.size(), 0), pv(terms.size());
  do {
    for (std::size_t i = 0; i < terms.size(); ++i) pv[i] = terms[i](vals.data());
    for (int y = 0; y < a.n; ++y) {
      Bits ub = a.all();
      for (int p : pv) ub &= a.up[a.m(p, y)];
      Bits bad = ub & ~a.up[y];
      if (bad && !visit(vars, vals, y, bad)) return;
    }
  } while (advance(vals, a.n));
}

}  // namespace

std::optional<QeWitness> refute_quasiequation(const FiniteAlgebra& a, const Quasiequation& q) {
  std::optional<QeWitness> w;
  scan_quasiequation(a, q, [&](const std::vector<std::string>& vars, const std::vector<int>& vals, int y, Bits bad) {
    w = QeWitness{to_assignment(vars, vals), y, std::countr_zero(bad)};
    return false;
  });
  return w;
}

bool validates_quasiequation(const FiniteAlgebra& a, const Quasiequation& q) { return !refute_quasiequation(a, q); }

std::vector<QeWitness> all_counterexamples(const FiniteAlgebra& a, const Quasiequation& q) {
  std::vector<QeWitness> out;
  scan_quasiequation(a, q, [&](const std::vector<std::string>& vars, const std::vector<int>& vals, int y, Bits bad) {
    for (int z : members(bad)) out.push_back(QeWitness{to_assignment(vars, vals), y, z});
    return true;
  });
  return out;
}

bool is_counterexample(const FiniteAlgebra& a, const Quasiequation& q, const Assignment& x, int y, int z) {
  if (a.leq(y, z)) return false;
  for (auto& p : q.premises)
    if (!a.leq(a.m(eval_formula(a, p, x), y), z)) return false;
  return true;
}

QuasiInequality as_quasi_inequality(const Quasiequation& q) {
  QuasiInequality out;
  for (auto& p : q.premises) out.premises.push_back({conj(p, var(q.y)), var(q.z), false});
  out.conclusion = {var(q.y), var(q.z), false};
  return out;
}

std::optional<Assignment> refute(const FiniteAlgebra& a, const QuasiInequality& q) {
  std::set<std::string> vs;
  auto add = [&](const Formula& f) {
    for (auto& v : variables(f)) vs.insert(v);
  };
  for (auto& p : q.premises) add(p.lhs), add(p.rhs);
  add(q.conclusion.lhs);
  add(q.conclusion.rhs);
  std::vector<std::string> vars(vs.begin(), vs.end());
  std::sort(vars.begin(), vars.end(), var_less);
  struct Compiled {
    Term l, r;
    bool eq;
  };
  std::vector<Compiled> ps;
  for (auto& p : q.premises) ps.push_back({Term(a, p.lhs, vars), Term(a, p.rhs, vars), p.equality});
  Compiled c{Term(a, q.conclusion.lhs, vars), Term(a, q.conclusion.rhs, vars), q.conclusion.equality};
  auto holds = [&](const Compiled& k, const int* v) {
    int l = k.l(v), r = k.r(v);
    return k.eq ? l == r : a.leq(l, r);
  };
  if (a.n == 0) return std::nullopt;
  std::vector<int> vals(vars.size(), 0);
  do {
    bool prem = true;
    for (auto& p : ps)
      if (!holds(p, vals.data())) {
        prem = false;
        break;
      }
    if (prem && !holds(c, vals.data())) return to_assignment(vars, vals);
  } while (advance(vals, a.n));
  return std::nullopt;
}

// ---- constructions ------------------------------------------------------

FiniteAlgebra up_algebra(const FinitePoset& x, unsigned sig) {
  if (sig & ~kHeyting) throw Error(ErrorKind::Input, "up_algebra language must be within {∧,∨,→,¬,0,1}");
  if (x.n > 24) throw Error(ErrorKind::BoundExceeded, "poset too large for Up(X)");
  std::vector<Bits> ups;
  for (Bits s = 0;; ++s) {
    if (x.is_upset(s)) {
      ups.push_back(s);
      if (static_cast<int>(ups.size()) > kMaxElements) throw Error(ErrorKind::BoundExceeded, "Up(X) has more than 64 elements");
    }
    if (s == x.all()) break;
  }
  FiniteAlgebra a;
  a.n = static_cast<int>(ups.size());
  a.repr = ups;
  for (Bits u : ups) a.labels.push_back(set_label(u, x.labels));
  auto idx = [&](Bits s) { return static_cast<std::uint8_t>(std::lower_bound(ups.begin(), ups.end(), s) - ups.begin()); };
  int n = a.n;
  a.meet.resize(n * n);
  a.join.resize(n * n);
  a.imp.resize(n * n);
  a.neg.resize(n);
  a.up.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Bits u = ups[i], v = ups[j];
      a.meet[i * n + j] = idx(u & v);
      a.join[i * n + j] = idx(u | v);
      a.imp[i * n + j] = idx(x.all() & ~x.down_closure(u & ~v));
      if ((u & ~v) == 0) a.up[i] |= bit(j);
    }
    a.neg[i] = idx(x.all() & ~x.down_closure(ups[i]));
  }
  a.zero = 0;
  a.one = n - 1;
  a.bottom = 0;
  a.top = n - 1;
  a.sig = sig;
  return a;
}

FiniteAlgebra complex_algebra(const FinitePoset& x) {
  if (x.n > 6) throw Error(ErrorKind::BoundExceeded, "complex algebra limited to 6 points");
  FiniteAlgebra a;
  a.n = 1 << x.n;
  int n = a.n;
  a.meet.resize(n * n);
  a.join.resize(n * n);
  a.imp.resize(n * n);
  a.neg.resize(n);
  a.box.resize(n);
  a.dia.resize(n);
  a.up.assign(n, 0);
  a.repr.resize(n);
  Bits all = x.all();
  for (int i = 0; i < n; ++i) {
    a.repr[i] = static_cast<Bits>(i);
    a.labels.push_back(set_label(static_cast<Bits>(i), x.labels));
    for (int j = 0; j < n; ++j) {
      a.meet[i * n + j] = static_cast<std::uint8_t>(i & j);
      a.join[i * n + j] = static_cast<std::uint8_t>(i | j);
      a.imp[i * n + j] = static_cast<std::uint8_t>((all & ~Bits(i)) | Bits(j));
      if ((i & ~j) == 0) a.up[i] |= bit(j);
    }
    a.neg[i] = static_cast<std::uint8_t>(all & ~Bits(i));
    Bits b = 0, d = 0;
    for (int p = 0; p < x.n; ++p) {
      if ((x.up[p] & ~Bits(i)) == 0) b |= bit(p);
      if (x.up[p] & Bits(i)) d |= bit(p);
    }
    a.box[i] = static_cast<std::uint8_t>(b);
    a.dia[i] = static_cast<std::uint8_t>(d);
  }
  a.zero = a.bottom = 0;
  a.one = a.top = n - 1;
  a.sig = kHeyting | kBox | kDia;
  return a;
}

FinitePoset join_irreducibles(const FiniteAlgebra& a, std::vector<int>* elements) {
  std::vector<int> js;
  for (int e = 0; e < a.n; ++e) {
    if (e == a.bottom) continue;
    bool irreducible = true;
    for (int b = 0; b < a.n && irreducible; ++b)
      for (int c = 0; c < a.n && irreducible; ++c) {
        if (b == e || c == e || !a.leq(b, e) || !a.leq(c, e)) continue;
        if (lub(a, b, c) == e) irreducible = false;
      }
    if (irreducible) js.push_back(e);
  }
  std::vector<Bits> up(js.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < js.size(); ++i) {
    labels.push_back(a.label(js[i]));
    for (std::size_t k = 0; k < js.size(); ++k)
      if (a.leq(js[i], js[k])) up[i] |= bit(static_cast<int>(k));
  }
  if (elements) *elements = js;
  return FinitePoset::from_up(std::move(up), std::move(labels));
}

APlus a_plus(const FiniteAlgebra& a0) {
  auto rep = detect_classes(a0);
  if (!rep.has(tPSL)) {
    auto it = rep.violations.find("PSL");
    throw Error(ErrorKind::NotPSL, "NotPSL: " + (it == rep.violations.end() ? std::string("?") : it->second));
  }
  const unsigned psl = signature(Variety::PSL);
  FiniteAlgebra a = complete(a0, psl);
  APlus out;
  out.j = join_irreducibles(a, &out.j_elements);
  const FinitePoset& J = out.j;
  if (J.n > 20) throw Error(ErrorKind::BoundExceeded, "too many join-irreducibles");
  std::vector<Bits> dws;
  for (Bits s = 0;; ++s) {
    if (J.is_downset(s)) {
      dws.push_back(s);
      if (static_cast<int>(dws.size()) > kMaxElements) throw Error(ErrorKind::BoundExceeded, "A+ has more than 64 elements");
    }
    if (s == J.all()) break;
  }
  FiniteAlgebra& p = out.algebra;
  p.n = static_cast<int>(dws.size());
  int n = p.n;
  p.repr = dws;
  for (Bits d : dws) p.labels.push_back(set_label(d, J.labels));
  auto idx = [&](Bits s) { return static_cast<std::uint8_t>(std::lower_bound(dws.begin(), dws.end(), s) - dws.begin()); };
  p.meet.resize(n * n);
  p.join.resize(n * n);
  p.imp.resize(n * n);
  p.neg.resize(n);
  p.up.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Bits d = dws[i], e = dws[k];
      p.meet[i * n + k] = idx(d & e);
      p.join[i * n + k] = idx(d | e);
      Bits r = 0;
      for (int t = 0; t < J.n; ++t)
        if ((J.down[t] & d & ~e) == 0) r |= bit(t);
      p.imp[i * n + k] = idx(r);
      if ((d & ~e) == 0) p.up[i] |= bit(k);
    }
    Bits nd = 0;
    for (int t = 0; t < J.n; ++t)
      if ((J.down[t] & dws[i]) == 0) nd |= bit(t);
    p.neg[i] = idx(nd);
  }
  p.zero = p.bottom = 0;
  p.one = p.top = n - 1;
  p.sig = psl;

  out.eps.resize(a.n);
  for (int e = 0; e < a.n; ++e) {
    Bits s = 0;
    for (int t = 0; t < J.n; ++t)
      if (a.leq(out.j_elements[t], e)) s |= bit(t);
    out.eps[e] = idx(s);
    if (dws[out.eps[e]] != s) {
      out.failure = "ε(" + a.label(e) + ") is not a downset";
      return out;
    }
  }
  if (auto bad = check_homomorphism(a, p, out.eps, psl)) {
    out.failure = *bad;
  } else if (!injective(out.eps)) {
    out.failure = "ε is not injective";
  } else {
    for (int e = 0; e < a.n && out.failure.empty(); ++e)
      for (int f = 0; f < a.n && out.failure.empty(); ++f)
        if (a.leq(e, f) != p.leq(out.eps[e], out.eps[f]))
          out.failure = "ε does not reflect the order at " + a.label(e) + ", " + a.label(f);
  }
  out.embedding = out.failure.empty();
  return out;
}

std::optional<std::string> check_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<int>& f,
                                              unsigned sig) {
  if (static_cast<int>(f.size()) != a.n) return "map has the wrong length";
  for (int v : f)
    if (v < 0 || v >= b.n) return "map value out of range";
  for (unsigned op : {kAnd, kOr, kImp, kNeg, kZero, kOne, kFus, kBox, kDia})
    if ((sig & op) && (!a.has(op) || !b.has(op)))
      return std::string("MissingOperation(") + glyph(op) + ")";
  auto L = [&](int e) { return a.label(e); };
  if ((sig & kZero) && f[a.zero] != b.zero) return "0 not preserved";
  if ((sig & kOne) && f[a.one] != b.one) return "1 not preserved";
  auto unary = [&](unsigned op, const std::vector<std::uint8_t>& ta, const std::vector<std::uint8_t>& tb,
                   const char* name) -> std::optional<std::string> {
    if (!(sig & op)) return std::nullopt;
    for (int x = 0; x < a.n; ++x)
      if (f[ta[x]] != tb[f[x]]) return std::string(name) + "(" + L(x) + ") not preserved";
    return std::nullopt;
  };
  auto binary = [&](unsigned op, const std::vector<std::uint8_t>& ta, const std::vector<std::uint8_t>& tb,
                    const char* name) -> std::optional<std::string> {
    if (!(sig & op)) return std::nullopt;
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < a.n; ++y)
        if (f[ta[x * a.n + y]] != tb[f[x] * b.n + f[y]])
          return std::string(name) + "(" + L(x) + ", " + L(y) + ") not preserved";
    return std::nullopt;
  };
  if (auto e = binary(kAnd, a.meet, b.meet, "meet")) return e;
  if (auto e = binary(kOr, a.join, b.join, "join")) return e;
  if (auto e = binary(kImp, a.imp, b.imp, "imp")) return e;
  if (auto e = binary(kFus, a.fus, b.fus, "fus")) return e;
  if (auto e = unary(kNeg, a.neg, b.neg, "neg")) return e;
  if (auto e = unary(kBox, a.box, b.box, "box")) return e;
  if (auto e = unary(kDia, a.dia, b.dia, "dia")) return e;
  return std::nullopt;
}

bool injective(const std::vector<int>& f) {
  std::vector<int> s = f;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool surjective(const std::vector<int>& f, int codomain) {
  std::vector<bool> hit(codomain, false);
  for (int v : f)
    if (v >= 0 && v < codomain) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

}  // namespace sahlq
