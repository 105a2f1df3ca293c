#include "sahlq/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sahlq/substructural.hpp"

namespace sahlq {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

int element_ref(const json& v, const std::vector<std::string>& names, int n) {
  if (v.is_number_integer()) {
    int i = v.get<int>();
    if (i < 0 || i >= n) throw Error(ErrorKind::Input, "element index out of range: " + std::to_string(i));
    return i;
  }
  if (v.is_string()) {
    auto s = v.get<std::string>();
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
      if (names[i] == s) return i;
    throw Error(ErrorKind::Input, "unknown element '" + s + "'");
  }
  throw Error(ErrorKind::Input, "element must be an index or a name");
}

std::vector<std::uint8_t> square(const json& t, const std::vector<std::string>& names, int n, const char* what) {
  if (!t.is_array() || static_cast<int>(t.size()) != n)
    throw Error(ErrorKind::Input, std::string(what) + " table must have " + std::to_string(n) + " rows");
  std::vector<std::uint8_t> out;
  for (auto& row : t) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::Input, std::string(what) + " rows must have " + std::to_string(n) + " entries");
    for (auto& v : row) out.push_back(static_cast<std::uint8_t>(element_ref(v, names, n)));
  }
  return out;
}

std::vector<std::uint8_t> vec(const json& t, const std::vector<std::string>& names, int n, const char* what) {
  if (!t.is_array() || static_cast<int>(t.size()) != n)
    throw Error(ErrorKind::Input, std::string(what) + " table must have " + std::to_string(n) + " entries");
  std::vector<std::uint8_t> out;
  for (auto& v : t) out.push_back(static_cast<std::uint8_t>(element_ref(v, names, n)));
  return out;
}

std::vector<std::pair<int, int>> pairs(const json& t, const std::vector<std::string>& names, int n) {
  if (!t.is_array()) throw Error(ErrorKind::Input, "leq must be a list of pairs");
  std::vector<std::pair<int, int>> out;
  for (auto& p : t) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::Input, "leq entries must be pairs");
    out.emplace_back(element_ref(p[0], names, n), element_ref(p[1], names, n));
  }
  return out;
}

ordered_json table_json(const std::vector<std::uint8_t>& t, int n) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < n; ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < n; ++k) row.push_back(t[i * n + k]);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

FiniteAlgebra algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array())
    throw Error(ErrorKind::Input, "algebra JSON needs an 'elements' list");
  std::vector<std::string> names;
  for (auto& e : j["elements"]) {
    if (!e.is_string()) throw Error(ErrorKind::Input, "element names must be strings");
    names.push_back(e.get<std::string>());
  }
  const int n = static_cast<int>(names.size());
  if (n == 0) throw Error(ErrorKind::Input, "an algebra needs at least one element");
  if (n > kMaxElements) throw Error(ErrorKind::BoundExceeded, "algebra too large");
  FiniteAlgebra a;
  if (j.contains("meet")) {
    a = algebra_from_meet(names, square(j["meet"], names, n, "meet"), kAnd);
  } else if (j.contains("leq")) {
    a = algebra_from_order(FinitePoset::from_leq(n, pairs(j["leq"], names, n), names), kAnd);
  } else {
    throw Error(ErrorKind::Input, "algebra JSON needs 'leq' or 'meet'");
  }
  auto constant = [&](const char* key) { return j.contains(key) ? element_ref(j[key], names, n) : -1; };
  if (j.contains("fus")) {
    int z = constant("zero"), o = constant("one");
    if (z < 0 || o < 0) throw Error(ErrorKind::Input, "an FL_e algebra needs 'zero' and 'one'");
    auto fus = square(j["fus"], names, n, "fus");
    if (!j.contains("imp")) return make_fle(a.order(), std::move(fus), z, o);
    a = complete(std::move(a), kAnd | kOr);
    if (j.contains("join")) a.join = square(j["join"], names, n, "join");
    a.fus = std::move(fus);
    a.imp = square(j["imp"], names, n, "imp");
    a.zero = z;
    a.one = o;
    a.neg.assign(n, 0);
    for (int x = 0; x < n; ++x) a.neg[x] = a.imp[x * n + z];
    a.sig = kFLe;
    return a;
  }
  unsigned extra = 0;
  if (j.contains("join")) a.join = square(j["join"], names, n, "join"), extra |= kOr;
  if (j.contains("imp")) a.imp = square(j["imp"], names, n, "imp"), extra |= kImp;
  if (j.contains("neg")) a.neg = vec(j["neg"], names, n, "neg"), extra |= kNeg;
  if (j.contains("box")) a.box = vec(j["box"], names, n, "box"), extra |= kBox;
  if (j.contains("dia")) a.dia = vec(j["dia"], names, n, "dia"), extra |= kDia;
  if (j.contains("zero")) a.zero = constant("zero"), extra |= kZero;
  if (j.contains("one")) a.one = constant("one"), extra |= kOne;
  ClassReport r = detect_classes(a);
  for (auto [tag, key] : {std::pair{tPSL, "PSL"}, std::pair{tISL, "ISL"}, std::pair{tLattice, "Lattice"}}) {
    bool given = (tag == tPSL && !a.neg.empty()) || (tag == tISL && !a.imp.empty()) || (tag == tLattice && !a.join.empty());
    if (given && !r.has(tag)) throw Error(ErrorKind::LawViolation, "supplied table is wrong: " + r.violations[key]);
  }
  unsigned sig = natural_signature(r) | extra;
  if (j.contains("signature")) {
    auto s = j["signature"].get<std::string>();
    if (auto v = parse_variety(s)) {
      sig = signature(*v) | (extra & (kBox | kDia));
    } else {
      // Otherwise a comma-separated operation list, as written for
      // signatures that are not one of the named varieties.
      sig = 0;
      std::stringstream in(s);
      for (std::string op; std::getline(in, op, ',');) {
        unsigned bit = 0;
        for (unsigned b = 1; b <= kDia; b <<= 1)
          if (sig_to_string(b) == op) bit = b;
        if (!bit) throw Error(ErrorKind::Input, "unknown signature '" + s + "'");
        sig |= bit;
      }
    }
  }
  return complete(std::move(a), sig);
}

ordered_json algebra_to_json(const FiniteAlgebra& a) {
  ordered_json j;
  j["elements"] = a.labels.empty() ? ordered_json::array() : ordered_json(a.labels);
  if (a.labels.empty())
    for (int i = 0; i < a.n; ++i) j["elements"].push_back(std::to_string(i));
  ordered_json leq = ordered_json::array();
  for (auto [x, y] : a.order().covers()) leq.push_back({x, y});
  j["leq"] = leq;
  auto named = variety_of_signature(a.sig & ~(kBox | kDia));
  j["signature"] = named ? std::string(to_string(*named)) : sig_to_string(a.sig);
  if (!a.meet.empty()) j["meet"] = table_json(a.meet, a.n);
  if (!a.join.empty() && (a.sig & kOr)) j["join"] = table_json(a.join, a.n);
  if (!a.fus.empty()) j["fus"] = table_json(a.fus, a.n);
  if (!a.imp.empty() && (a.sig & kImp)) j["imp"] = table_json(a.imp, a.n);
  if (!a.neg.empty() && (a.sig & kNeg) && a.fus.empty()) j["neg"] = a.neg;
  if (!a.box.empty()) j["box"] = a.box;
  if (!a.dia.empty()) j["dia"] = a.dia;
  if (a.zero >= 0 && (a.sig & kZero)) j["zero"] = a.zero;
  if (a.one >= 0 && (a.sig & kOne)) j["one"] = a.one;
  return j;
}

FinitePoset poset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw Error(ErrorKind::Input, "poset JSON needs an integer 'n'");
  int n = j["n"].get<int>();
  if (n < 0) throw Error(ErrorKind::Input, "poset size must be non-negative");
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (auto& l : j["labels"]) labels.push_back(l.get<std::string>());
  return FinitePoset::from_leq(n, j.contains("leq") ? pairs(j["leq"], labels, n) : std::vector<std::pair<int, int>>{},
                               labels);
}

ordered_json poset_to_json(const FinitePoset& p) {
  ordered_json j;
  j["n"] = p.n;
  ordered_json leq = ordered_json::array();
  for (auto [x, y] : p.covers()) leq.push_back({x, y});
  j["leq"] = leq;
  if (!p.labels.empty()) j["labels"] = p.labels;
  return j;
}

PartialMap partial_map_from_json(const json& j, const FinitePoset& src, const FinitePoset& dst) {
  PartialMap p;
  p.src = src;
  p.dst = dst;
  p.map.assign(src.n, -1);
  if (!j.contains("map")) throw Error(ErrorKind::Input, "partial map JSON needs 'map'");
  auto assign = [&](int x, int y) {
    if (p.defined(x)) throw Error(ErrorKind::Input, "map assigns a point twice");
    p.dom |= bit(x);
    p.map[x] = y;
  };
  const json& m = j["map"];
  if (m.is_object()) {
    for (auto& [key, val] : m.items()) {
      json ref = json(key);
      if (!key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isdigit(c); }))
        ref = std::stoi(key);
      assign(element_ref(ref, src.labels, src.n), element_ref(val, dst.labels, dst.n));
    }
  } else if (m.is_array()) {
    for (auto& e : m) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::Input, "map entries must be pairs");
      assign(element_ref(e[0], src.labels, src.n), element_ref(e[1], dst.labels, dst.n));
    }
  } else {
    throw Error(ErrorKind::Input, "'map' must be an object or a list of pairs");
  }
  if (j.contains("dom")) {
    Bits dom = 0;
    for (auto& e : j["dom"]) dom |= bit(element_ref(e, src.labels, src.n));
    if (dom != p.dom) throw Error(ErrorKind::Input, "'dom' disagrees with the points of 'map'");
  }
  return p;
}

ordered_json partial_map_to_json(const PartialMap& p) {
  ordered_json j;
  j["dom"] = members(p.dom);
  ordered_json m = ordered_json::object();
  for (int x : members(p.dom)) m[std::to_string(x)] = p.map[x];
  j["map"] = m;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Input, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Input, path + ": " + e.what());
  }
}

FiniteAlgebra load_algebra(const std::string& path) { return algebra_from_json(read_json_file(path)); }

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string enumeration_cache_key(const EnumerationConfig& cfg) {
  std::ostringstream s;
  s << to_string(cfg.cls) << ':' << cfg.min_size << ':' << cfg.max_size << ':' << cfg.dedup << ':' << cfg.seed;
  return fnv1a_hex(s.str());
}

}  // namespace sahlq
