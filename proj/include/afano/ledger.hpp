#pragma once

#include "afano/rational.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace afano {

// A named value attached to a candidate: either an exact number or a tag.
using Value = std::variant<Rational, std::string>;

inline std::string to_string(const Value& v) {
  if (auto r = std::get_if<Rational>(&v)) return r->str();
  return std::get<std::string>(v);
}

// Ordered key/value view of a candidate; keys are unique.
class Record {
 public:
  void set(const std::string& k, Value v) {
    for (auto& [key, val] : items_)
      if (key == k) { val = std::move(v); return; }
    items_.emplace_back(k, std::move(v));
  }
  const Value* get(const std::string& k) const {
    for (const auto& [key, val] : items_)
      if (key == k) return &val;
    return nullptr;
  }
  std::optional<Rational> num(const std::string& k) const {
    const Value* v = get(k);
    if (!v) return std::nullopt;
    if (auto r = std::get_if<Rational>(v)) return *r;
    return std::nullopt;
  }
  const std::vector<std::pair<std::string, Value>>& items() const { return items_; }

  std::string str() const {
    std::string s;
    for (const auto& [k, v] : items_) {
      if (!s.empty()) s += ' ';
      s += k + "=" + to_string(v);
    }
    return s;
  }

 private:
  std::vector<std::pair<std::string, Value>> items_;
};

struct LedgerError : std::runtime_error {
  explicit LedgerError(const std::string& m) : std::runtime_error(m) {}
};

// Conjunction of clauses "key op value"; op in = != < <= > >= in.
// "in" takes a brace list: "alpha in {4 5}".
class Matcher {
 public:
  Matcher() = default;

  static Matcher parse(const std::string& text) {
    Matcher m;
    m.text_ = text;
    std::size_t i = 0;
    while (i < text.size()) {
      std::size_t j = i;
      int depth = 0;
      while (j < text.size() && !(text[j] == ',' && depth == 0)) {
        if (text[j] == '{') ++depth;
        if (text[j] == '}') --depth;
        ++j;
      }
      std::string clause = trim(text.substr(i, j - i));
      if (!clause.empty()) m.clauses_.push_back(parse_clause(clause));
      i = j + 1;
    }
    if (m.clauses_.empty()) throw LedgerError("empty matcher");
    return m;
  }

  bool matches(const Record& rec) const {
    for (const auto& c : clauses_)
      if (!eval(c, rec)) return false;
    return true;
  }

  const std::string& text() const { return text_; }

 private:
  enum class Op { EQ, NE, LT, LE, GT, GE, IN };
  struct Clause {
    std::string key;
    Op op;
    std::vector<Value> values;
  };

  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
  }

  static Value literal(const std::string& s) {
    try {
      return Rational::parse(s);
    } catch (const std::exception&) {
      return s;
    }
  }

  static Clause parse_clause(const std::string& c) {
    std::istringstream in(c);
    Clause out;
    std::string op;
    if (!(in >> out.key >> op)) throw LedgerError("bad clause '" + c + "'");
    static const std::pair<const char*, Op> ops[] = {{"=", Op::EQ}, {"!=", Op::NE}, {"<", Op::LT}, {"<=", Op::LE},
                                                     {">", Op::GT}, {">=", Op::GE}, {"in", Op::IN}};
    bool found = false;
    for (auto [name, o] : ops)
      if (op == name) { out.op = o; found = true; }
    if (!found) throw LedgerError("unknown operator '" + op + "' in '" + c + "'");
    std::string rest;
    std::getline(in, rest);
    rest = trim(rest);
    if (out.op == Op::IN) {
      if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}')
        throw LedgerError("'in' needs a {..} list in '" + c + "'");
      std::istringstream vs(rest.substr(1, rest.size() - 2));
      for (std::string tok; vs >> tok;) out.values.push_back(literal(tok));
    } else {
      if (rest.empty()) throw LedgerError("missing value in '" + c + "'");
      out.values.push_back(literal(rest));
    }
    return out;
  }

  static bool eval(const Clause& c, const Record& rec) {
    const Value* v = rec.get(c.key);
    if (!v) return false;
    auto eq = [&](const Value& w) { return *v == w; };
    switch (c.op) {
      case Op::EQ: return eq(c.values[0]);
      case Op::NE: return !eq(c.values[0]);
      case Op::IN:
        for (const auto& w : c.values)
          if (eq(w)) return true;
        return false;
      default: break;
    }
    auto a = std::get_if<Rational>(v);
    auto b = std::get_if<Rational>(&c.values[0]);
    if (!a || !b) return false;
    switch (c.op) {
      case Op::LT: return *a < *b;
      case Op::LE: return *a <= *b;
      case Op::GT: return *a > *b;
      case Op::GE: return *a >= *b;
      default: return false;
    }
  }

  std::string text_;
  std::vector<Clause> clauses_;
};

struct LedgerEntry {
  std::string id;
  std::string family;  // dp, cb, bc, bp
  Matcher matcher;
  std::string anchor;
  std::string summary;
};

class Ledger {
 public:
  Ledger() = default;
  explicit Ledger(std::vector<LedgerEntry> e) : entries_(std::move(e)) { validate(); }

  const std::vector<LedgerEntry>& entries() const { return entries_; }

  const LedgerEntry* find(const std::string& id) const {
    for (const auto& e : entries_)
      if (e.id == id) return &e;
    return nullptr;
  }

  // First entry of the family whose matcher accepts the record.
  const LedgerEntry* match(const std::string& family, const Record& rec) const {
    for (const auto& e : entries_)
      if (e.family == family && e.matcher.matches(rec)) return &e;
    return nullptr;
  }

 private:
  void validate() const {
    std::set<std::string> ids, anchors;
    for (const auto& e : entries_) {
      if (e.id.empty() || e.family.empty() || e.anchor.empty() || e.summary.empty())
        throw LedgerError("ledger entry '" + e.id + "' has an empty field");
      if (!ids.insert(e.id).second) throw LedgerError("duplicate ledger id '" + e.id + "'");
      if (!anchors.insert(e.anchor).second) throw LedgerError("duplicate ledger anchor '" + e.anchor + "'");
    }
  }

  std::vector<LedgerEntry> entries_;
};

// Blocks of the form
//   [id]
//   family  = bc
//   match   = branch = main, r = 1, H3 = 10
//   anchor  = ...
//   summary = ...
inline Ledger parse_ledger(std::istream& in, const std::string& name = "ledger") {
  std::vector<LedgerEntry> out;
  std::optional<LedgerEntry> cur;
  std::string match_text;
  int no = 0;
  auto flush = [&]() {
    if (!cur) return;
    if (match_text.empty()) throw LedgerError(name + ": entry '" + cur->id + "' has no match line");
    cur->matcher = Matcher::parse(match_text);
    out.push_back(std::move(*cur));
    cur.reset();
    match_text.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    ++no;
    std::string where = name + ":" + std::to_string(no);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (line.front() == '[') {
      if (line.back() != ']') throw LedgerError(where + ": unterminated section header");
      flush();
      cur = LedgerEntry{};
      cur->id = line.substr(1, line.size() - 2);
      continue;
    }
    if (!cur) throw LedgerError(where + ": field outside an entry");
    auto eq = line.find('=');
    if (eq == std::string::npos) throw LedgerError(where + ": expected 'key = value'");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    key = key.substr(0, key.find_last_not_of(" \t") + 1);
    val = val.substr(std::min(val.size(), val.find_first_not_of(" \t")));
    if (key == "family") cur->family = val;
    else if (key == "match") match_text = val;
    else if (key == "anchor") cur->anchor = val;
    else if (key == "summary") cur->summary = val;
    else throw LedgerError(where + ": unknown field '" + key + "'");
  }
  flush();
  try {
    return Ledger(std::move(out));
  } catch (const LedgerError& e) {
    throw LedgerError(name + ": " + e.what());
  }
}

inline Ledger load_ledger(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LedgerError("cannot open ledger '" + path + "'");
  return parse_ledger(in, path);
}

}  // namespace afano
