#include <cctype>
#include <string>

#include "sahlq/syntax.hpp"

namespace sahlq {

namespace {

class Parser {
 public:
  Parser(std::string_view s, bool modal) : s_(s), modal_(modal) {}

  Formula run() {
    Formula f = implication();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(i_), i_);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  Formula implication() {
    Formula l = disjunction();
    if (eat("->")) return imp(l, implication());
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (eat("|")) l = disj(l, conjunction());
    return l;
  }

  Formula conjunction() {
    Formula l = product();
    while (eat("&")) l = conj(l, product());
    return l;
  }

  Formula product() {
    Formula l = unary();
    while (eat("*")) l = fus(l, unary());
    return l;
  }

  Formula unary() {
    skip();
    std::size_t at = i_;
    if (eat("~")) return neg(unary());
    if (eat("[]")) {
      if (!modal_) {
        i_ = at;
        fail("modal operator [] in non-modal formula");
      }
      return box(unary());
    }
    if (eat("<>")) {
      if (!modal_) {
        i_ = at;
        fail("modal operator <> in non-modal formula");
      }
      return dia(unary());
    }
    return atom();
  }

  Formula atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Formula f = implication();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (c == '0' || c == '1') {
      ++i_;
      if (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) fail("malformed constant");
      return c == '0' ? zero() : one();
    }
    if (c == 'y' || c == 'z') {
      ++i_;
      if (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        fail("malformed variable");
      return var(std::string(1, c));
    }
    if (c == 'x') {
      std::size_t b = i_++;
      std::size_t digits = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_, ++digits;
      if (!digits) fail("variable x needs an index");
      if (i_ < s_.size() && s_[i_] == '_') {
        ++i_;
        std::size_t sub = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_, ++sub;
        if (!sub) fail("variable subscript needs digits");
      }
      if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) fail("malformed variable");
      return var(std::string(s_.substr(b, i_ - b)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  bool modal_;
  std::size_t i_ = 0;
};

int level(const Formula& f) {
  switch (f.op()) {
    case Op::Imp: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Fus: return 4;
    case Op::Not:
    case Op::Box:
    case Op::Dia: return 5;
    default: return 6;
  }
}

struct Glyphs {
  const char* zero;
  const char* one;
  const char* land;
  const char* lor;
  const char* limp;
  const char* lnot;
  const char* lbox;
  const char* ldia;
  const char* lfus;
};

constexpr Glyphs kAscii{"0", "1", " & ", " | ", " -> ", "~", "[]", "<>", " * "};
constexpr Glyphs kUnicode{"0", "1", " ∧ ", " ∨ ", " → ", "¬", "□", "◇", " · "};

void print(const Formula& f, const Glyphs& g, std::string& out) {
  auto sub = [&](const Formula& c, bool paren) {
    if (paren) out += '(';
    print(c, g, out);
    if (paren) out += ')';
  };
  switch (f.op()) {
    case Op::Var: out += f.name(); return;
    case Op::Zero: out += g.zero; return;
    case Op::One: out += g.one; return;
    case Op::Not:
    case Op::Box:
    case Op::Dia:
      out += f.is(Op::Not) ? g.lnot : f.is(Op::Box) ? g.lbox : g.ldia;
      sub(f.arg(), level(f.arg()) < 5);
      return;
    default: {
      int L = level(f);
      bool right_assoc = f.is(Op::Imp);
      sub(f.lhs(), level(f.lhs()) < L || (right_assoc && level(f.lhs()) == L));
      out += f.is(Op::And) ? g.land : f.is(Op::Or) ? g.lor : f.is(Op::Imp) ? g.limp : g.lfus;
      sub(f.rhs(), level(f.rhs()) < L || (!right_assoc && level(f.rhs()) == L));
    }
  }
}

const char* json_tag(Op op) {
  switch (op) {
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Imp: return "imp";
    case Op::Not: return "not";
    case Op::Box: return "box";
    case Op::Dia: return "dia";
    case Op::Fus: return "fus";
    default: return "";
  }
}

}  // namespace

Formula parse_formula(std::string_view text, bool modal) { return Parser(text, modal).run(); }

std::string to_text(const Formula& f) {
  std::string out;
  print(f, kAscii, out);
  return out;
}

std::string to_unicode(const Formula& f) {
  std::string out;
  print(f, kUnicode, out);
  return out;
}

nlohmann::json to_json(const Formula& f) {
  switch (f.op()) {
    case Op::Var: return f.name();
    case Op::Zero: return "0";
    case Op::One: return "1";
    case Op::Not:
    case Op::Box:
    case Op::Dia: return nlohmann::json::array({json_tag(f.op()), to_json(f.arg())});
    default: return nlohmann::json::array({json_tag(f.op()), to_json(f.lhs()), to_json(f.rhs())});
  }
}

Formula formula_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "0") return zero();
    if (s == "1") return one();
    if (s == "y" || s == "z" || var_index(s)) return var(s);
    throw Error(ErrorKind::Input, "bad atom in formula JSON: " + s);
  }
  if (!j.is_array() || j.empty() || !j[0].is_string())
    throw Error(ErrorKind::Input, "formula JSON must be a string or a tagged array");
  std::string tag = j[0].get<std::string>();
  auto want = [&](std::size_t n) {
    if (j.size() != n + 1) throw Error(ErrorKind::Input, "wrong arity for '" + tag + "'");
  };
  static const std::pair<const char*, Op> table[] = {{"and", Op::And}, {"or", Op::Or},   {"imp", Op::Imp},
                                                     {"not", Op::Not}, {"box", Op::Box}, {"dia", Op::Dia},
                                                     {"fus", Op::Fus}};
  for (auto& [name, op] : table) {
    if (tag != name) continue;
    if (op == Op::Not || op == Op::Box || op == Op::Dia) {
      want(1);
      return Formula::make(op, formula_from_json(j[1]));
    }
    want(2);
    return Formula::make(op, formula_from_json(j[1]), formula_from_json(j[2]));
  }
  throw Error(ErrorKind::Input, "unknown formula tag '" + tag + "'");
}

}  // namespace sahlq
