#include "sahlq/fo.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace sahlq {

FoFormula FoFormula::make(FoNode n) { return FoFormula(std::make_shared<const FoNode>(std::move(n))); }

FoFormula FoFormula::top() {
  static const FoFormula t = make({FoOp::True, {}, {}, {}, {}});
  return t;
}
FoFormula FoFormula::bot() {
  static const FoFormula f = make({FoOp::False, {}, {}, {}, {}});
  return f;
}
FoFormula FoFormula::leq(std::string a, std::string b) { return make({FoOp::Leq, std::move(a), std::move(b), {}, {}}); }
FoFormula FoFormula::rel(std::string a, std::string b) { return make({FoOp::Rel, std::move(a), std::move(b), {}, {}}); }
FoFormula FoFormula::eq(std::string a, std::string b) { return make({FoOp::Eq, std::move(a), std::move(b), {}, {}}); }
FoFormula FoFormula::pred(std::string name, std::string t) { return make({FoOp::Pred, std::move(t), {}, std::move(name), {}}); }
FoFormula FoFormula::neg(FoFormula f) { return make({FoOp::Not, {}, {}, {}, {std::move(f)}}); }
FoFormula FoFormula::imp(FoFormula a, FoFormula b) { return make({FoOp::Imp, {}, {}, {}, {std::move(a), std::move(b)}}); }
FoFormula FoFormula::forall(std::string v, FoFormula f) { return make({FoOp::Forall, {}, {}, std::move(v), {std::move(f)}}); }
FoFormula FoFormula::exists(std::string v, FoFormula f) { return make({FoOp::Exists, {}, {}, std::move(v), {std::move(f)}}); }

namespace {
std::vector<FoFormula> flatten(FoOp op, std::vector<FoFormula> fs) {
  std::vector<FoFormula> flat;
  for (auto& f : fs) {
    if (f.is(op))
      flat.insert(flat.end(), f.kids().begin(), f.kids().end());
    else
      flat.push_back(std::move(f));
  }
  return flat;
}
}  // namespace

FoFormula FoFormula::conj(std::vector<FoFormula> fs) {
  auto flat = flatten(FoOp::And, std::move(fs));
  if (flat.empty()) return top();
  if (flat.size() == 1) return flat.front();
  return make({FoOp::And, {}, {}, {}, std::move(flat)});
}

FoFormula FoFormula::disj(std::vector<FoFormula> fs) {
  auto flat = flatten(FoOp::Or, std::move(fs));
  if (flat.empty()) return bot();
  if (flat.size() == 1) return flat.front();
  return make({FoOp::Or, {}, {}, {}, std::move(flat)});
}

FoOp FoFormula::op() const { return n_->op; }
bool FoFormula::atomic() const {
  switch (op()) {
    case FoOp::True:
    case FoOp::False:
    case FoOp::Leq:
    case FoOp::Rel:
    case FoOp::Eq:
    case FoOp::Pred: return true;
    default: return false;
  }
}
const std::string& FoFormula::a() const { return n_->a; }
const std::string& FoFormula::b() const { return n_->b; }
const std::string& FoFormula::name() const { return n_->name; }
const std::string& FoFormula::var() const { return n_->name; }
const std::vector<FoFormula>& FoFormula::kids() const { return n_->kids; }

int compare(const FoFormula& x, const FoFormula& y) {
  if (x.n_ == y.n_) return 0;
  if (x.op() != y.op()) return x.op() < y.op() ? -1 : 1;
  if (int c = x.n_->a.compare(y.n_->a)) return c;
  if (int c = x.n_->b.compare(y.n_->b)) return c;
  if (int c = x.n_->name.compare(y.n_->name)) return c;
  const auto &kx = x.kids(), &ky = y.kids();
  if (kx.size() != ky.size()) return kx.size() < ky.size() ? -1 : 1;
  for (std::size_t i = 0; i < kx.size(); ++i)
    if (int c = compare(kx[i], ky[i])) return c;
  return 0;
}

namespace {

void collect_free(const FoFormula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.op()) {
    case FoOp::True:
    case FoOp::False: return;
    case FoOp::Leq:
    case FoOp::Rel:
    case FoOp::Eq:
      if (!bound.count(f.a())) out.insert(f.a());
      if (!bound.count(f.b())) out.insert(f.b());
      return;
    case FoOp::Pred:
      if (!bound.count(f.a())) out.insert(f.a());
      return;
    case FoOp::Forall:
    case FoOp::Exists: {
      bool fresh = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
    default:
      for (auto& k : f.kids()) collect_free(k, bound, out);
  }
}

void collect_names(const FoFormula& f, std::set<std::string>& out) {
  switch (f.op()) {
    case FoOp::Leq:
    case FoOp::Rel:
    case FoOp::Eq: out.insert(f.a()), out.insert(f.b()); return;
    case FoOp::Pred: out.insert(f.a()); return;
    case FoOp::Forall:
    case FoOp::Exists: out.insert(f.var()); break;
    default: break;
  }
  for (auto& k : f.kids()) collect_names(k, out);
}

FoFormula rebuild(const FoFormula& f, std::vector<FoFormula> kids) {
  switch (f.op()) {
    case FoOp::Not: return FoFormula::neg(kids[0]);
    case FoOp::And: return FoFormula::conj(std::move(kids));
    case FoOp::Or: return FoFormula::disj(std::move(kids));
    case FoOp::Imp: return FoFormula::imp(kids[0], kids[1]);
    case FoOp::Forall: return FoFormula::forall(f.var(), kids[0]);
    case FoOp::Exists: return FoFormula::exists(f.var(), kids[0]);
    default: return f;
  }
}

}  // namespace

std::set<std::string> free_vars(const FoFormula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool occurs_free(const FoFormula& f, const std::string& v) { return free_vars(f).count(v) > 0; }

std::set<std::string> predicates(const FoFormula& f) {
  std::set<std::string> out;
  std::function<void(const FoFormula&)> go = [&](const FoFormula& g) {
    if (g.is(FoOp::Pred)) out.insert(g.name());
    for (auto& k : g.kids()) go(k);
  };
  go(f);
  return out;
}

bool has_predicates(const FoFormula& f) { return !predicates(f).empty(); }

std::size_t quantifier_count(const FoFormula& f) {
  std::size_t n = f.quantifier() ? 1 : 0;
  for (auto& k : f.kids()) n += quantifier_count(k);
  return n;
}

std::size_t fo_size(const FoFormula& f) {
  std::size_t n = 1;
  for (auto& k : f.kids()) n += fo_size(k);
  return n;
}

FoFormula substitute(const FoFormula& f, const std::string& v, const std::string& t) {
  if (v == t) return f;
  auto r = [&](const std::string& s) { return s == v ? t : s; };
  switch (f.op()) {
    case FoOp::True:
    case FoOp::False: return f;
    case FoOp::Leq: return FoFormula::leq(r(f.a()), r(f.b()));
    case FoOp::Rel: return FoFormula::rel(r(f.a()), r(f.b()));
    case FoOp::Eq: return FoFormula::eq(r(f.a()), r(f.b()));
    case FoOp::Pred: return FoFormula::pred(f.name(), r(f.a()));
    case FoOp::Forall:
    case FoOp::Exists: {
      if (f.var() == v) return f;
      if (f.var() == t && occurs_free(f.body(), v)) {
        std::set<std::string> names;
        collect_names(f, names);
        names.insert(t);
        names.insert(v);
        std::string fresh;
        for (int k = 0;; ++k)
          if (!names.count(fresh = "_c" + std::to_string(k))) break;
        FoFormula body = substitute(substitute(f.body(), f.var(), fresh), v, t);
        return f.is(FoOp::Forall) ? FoFormula::forall(fresh, body) : FoFormula::exists(fresh, body);
      }
      return rebuild(f, {substitute(f.body(), v, t)});
    }
    default: {
      std::vector<FoFormula> ks;
      for (auto& k : f.kids()) ks.push_back(substitute(k, v, t));
      return rebuild(f, std::move(ks));
    }
  }
}

FoFormula substitute_predicate(const FoFormula& f, const std::string& pred, const std::string& param,
                               const FoFormula& body) {
  if (f.is(FoOp::Pred)) return f.name() == pred ? substitute(body, param, f.a()) : f;
  if (f.atomic()) return f;
  std::set<std::string> bfree = free_vars(body);
  bfree.erase(param);
  if (f.quantifier() && bfree.count(f.var())) {
    // Rename the binder so the body's free variables stay free.
    std::set<std::string> names;
    collect_names(f, names);
    collect_names(body, names);
    std::string fresh;
    for (int k = 0;; ++k)
      if (!names.count(fresh = "_c" + std::to_string(k))) break;
    FoFormula renamed = substitute(f.body(), f.var(), fresh);
    FoFormula nb = substitute_predicate(renamed, pred, param, body);
    return f.is(FoOp::Forall) ? FoFormula::forall(fresh, nb) : FoFormula::exists(fresh, nb);
  }
  std::vector<FoFormula> ks;
  for (auto& k : f.kids()) ks.push_back(substitute_predicate(k, pred, param, body));
  return rebuild(f, std::move(ks));
}

FoFormula specialize_relation(const FoFormula& f) {
  if (f.is(FoOp::Rel)) return FoFormula::leq(f.a(), f.b());
  if (f.atomic()) return f;
  std::vector<FoFormula> ks;
  for (auto& k : f.kids()) ks.push_back(specialize_relation(k));
  return rebuild(f, std::move(ks));
}

// ---- printing -----------------------------------------------------------

namespace {

int prec(const FoFormula& f) {
  switch (f.op()) {
    case FoOp::Imp: return 1;
    case FoOp::Or: return 2;
    case FoOp::And: return 3;
    case FoOp::Not: return 4;
    case FoOp::Forall:
    case FoOp::Exists: return 0;
    default: return 5;
  }
}

void print(const FoFormula& f, std::string& out) {
  auto sub = [&](const FoFormula& k, bool paren) {
    if (paren) out += '(';
    print(k, out);
    if (paren) out += ')';
  };
  switch (f.op()) {
    case FoOp::True: out += "⊤"; return;
    case FoOp::False: out += "⊥"; return;
    case FoOp::Leq: out += f.a() + " ≤ " + f.b(); return;
    case FoOp::Rel: out += "R(" + f.a() + "," + f.b() + ")"; return;
    case FoOp::Eq: out += f.a() + " = " + f.b(); return;
    case FoOp::Pred: out += f.name() + "(" + f.a() + ")"; return;
    case FoOp::Not:
      if (f.body().is(FoOp::Leq) || f.body().is(FoOp::Eq)) {
        out += f.body().a() + (f.body().is(FoOp::Leq) ? " ≰ " : " ≠ ") + f.body().b();
        return;
      }
      out += "¬";
      sub(f.body(), prec(f.body()) < 4 && !f.body().quantifier());
      return;
    case FoOp::Forall:
    case FoOp::Exists: {
      out += f.is(FoOp::Forall) ? "∀" : "∃";
      out += f.var();
      const FoFormula& b = f.body();
      sub(b, !b.quantifier());
      return;
    }
    default: {
      int p = prec(f);
      const char* glyph = f.is(FoOp::And) ? " ∧ " : f.is(FoOp::Or) ? " ∨ " : " → ";
      for (std::size_t i = 0; i < f.kids().size(); ++i) {
        if (i) out += glyph;
        const FoFormula& k = f.kids()[i];
        bool paren = k.quantifier() || prec(k) < p || (f.is(FoOp::Imp) && prec(k) == p);
        sub(k, paren);
      }
    }
  }
}

void sexp(const FoFormula& f, std::string& out) {
  switch (f.op()) {
    case FoOp::True: out += "true"; return;
    case FoOp::False: out += "false"; return;
    case FoOp::Leq: out += "(leq " + f.a() + " " + f.b() + ")"; return;
    case FoOp::Rel: out += "(R " + f.a() + " " + f.b() + ")"; return;
    case FoOp::Eq: out += "(eq " + f.a() + " " + f.b() + ")"; return;
    case FoOp::Pred: out += "(pred " + f.name() + " " + f.a() + ")"; return;
    case FoOp::Forall:
    case FoOp::Exists:
      out += f.is(FoOp::Forall) ? "(forall " : "(exists ";
      out += f.var() + " ";
      sexp(f.body(), out);
      out += ")";
      return;
    default:
      out += f.is(FoOp::Not) ? "(not" : f.is(FoOp::And) ? "(and" : f.is(FoOp::Or) ? "(or" : "(imp";
      for (auto& k : f.kids()) {
        out += ' ';
        sexp(k, out);
      }
      out += ')';
  }
}

class SexpParser {
 public:
  explicit SexpParser(std::string_view s) : s_(s) {}

  FoFormula run() {
    FoFormula f = form();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& m) {
    throw Error(ErrorKind::Parse, m + " at offset " + std::to_string(i_), i_);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string word() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') ++i_;
    if (b == i_) fail("expected a symbol");
    return std::string(s_.substr(b, i_ - b));
  }
  void close() {
    skip();
    if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
    ++i_;
  }
  FoFormula form() {
    skip();
    if (i_ < s_.size() && s_[i_] != '(') {
      std::string w = word();
      if (w == "true") return FoFormula::top();
      if (w == "false") return FoFormula::bot();
      fail("unexpected symbol " + w);
    }
    if (i_ >= s_.size()) fail("unexpected end of input");
    ++i_;
    std::string head = word();
    FoFormula out;
    if (head == "leq" || head == "R" || head == "eq") {
      std::string a = word(), b = word();
      out = head == "leq" ? FoFormula::leq(a, b) : head == "R" ? FoFormula::rel(a, b) : FoFormula::eq(a, b);
    } else if (head == "pred") {
      std::string p = word(), t = word();
      out = FoFormula::pred(p, t);
    } else if (head == "forall" || head == "exists") {
      std::string v = word();
      FoFormula b = form();
      out = head == "forall" ? FoFormula::forall(v, b) : FoFormula::exists(v, b);
    } else if (head == "not") {
      out = FoFormula::neg(form());
    } else if (head == "imp") {
      FoFormula a = form();
      out = FoFormula::imp(a, form());
    } else if (head == "and" || head == "or") {
      std::vector<FoFormula> ks;
      for (skip(); i_ < s_.size() && s_[i_] != ')'; skip()) ks.push_back(form());
      out = head == "and" ? FoFormula::conj(ks) : FoFormula::disj(ks);
    } else {
      fail("unknown head " + head);
    }
    close();
    return out;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

std::string to_text(const FoFormula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::string to_sexp(const FoFormula& f) {
  std::string out;
  sexp(f, out);
  return out;
}

FoFormula parse_fo(std::string_view s) { return SexpParser(s).run(); }

}  // namespace sahlq
