#pragma once

#include "afano/enumerators.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace afano {

struct CatalogError : std::runtime_error {
  explicit CatalogError(const std::string& m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------- csv

// One RFC 4180 record per line; embedded newlines are not supported.
inline std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      if (!cur.empty() || was_quoted) throw CatalogError(where + ": stray quote");
      quoted = was_quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      if (was_quoted) throw CatalogError(where + ": text after closing quote");
      cur += ch;
    }
  }
  if (quoted) throw CatalogError(where + ": unterminated quote");
  out.push_back(std::move(cur));
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += csv_field(cells[i]);
  }
  return s;
}

// ---------------------------------------------------------------- golden rows

inline const std::vector<std::string>& golden_header(const std::string& table) {
  static const std::map<std::string, std::vector<std::string>> h = {
      {"A1", {"g", "k3", "model"}},
      {"A2", {"no", "k3", "KF2", "dB", "gB", "dB_unit", "alpha", "beta", "flags", "model", "note"}},
      {"A3", {"no", "k3", "d", "c1", "c2", "dB", "gB", "dB_unit", "alpha", "beta", "flags", "model", "note"}},
      {"A4", {"no", "kind", "k3", "Y", "d", "gC", "dB", "gB", "alpha", "beta", "model", "note"}},
      {"A5", {"no", "k3", "Y", "case", "dB", "gB", "dB_unit", "alpha", "beta", "flags", "model", "note"}},
  };
  auto it = h.find(table);
  if (it == h.end()) throw CatalogError("unknown table '" + table + "'");
  return it->second;
}

inline const std::vector<std::string>& golden_tables() {
  static const std::vector<std::string> t = {"A1", "A2", "A3", "A4", "A5"};
  return t;
}

inline std::optional<Family> table_family(const std::string& table) {
  for (Family f : all_families())
    if (table == table_id(f)) return f;
  return std::nullopt;
}

// Cells of row 25 of A4; the row stands for one case per 1 <= r' < r.
namespace parametric {
inline const char* k3 = "r(r-r')^2H3";
inline const char* d = "rr'H3";
inline const char* gC = "(2+rr'^2H3)/2";
inline const char* alpha = "r'";
}  // namespace parametric

struct GoldenRow {
  std::string table;
  int no = 0;  // genus g for A1
  int line = 0;
  std::vector<std::string> header;
  std::vector<std::string> cells;

  const std::string& cell(const std::string& col) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == col) return cells[i];
    throw CatalogError(table + "-" + std::to_string(no) + ": no column '" + col + "'");
  }
  bool has(const std::string& col) const { return std::find(header.begin(), header.end(), col) != header.end(); }
  std::string id() const { return table + "-" + std::to_string(no); }

  bool parametric() const { return table == "A4" && cell("kind") == "parametric"; }
  bool point() const { return has("dB") && cell("dB") == "-"; }

  std::set<std::string> flags() const {
    std::set<std::string> out;
    if (!has("flags")) return out;
    std::string f = cell("flags");
    std::size_t i = 0;
    while (i <= f.size()) {
      std::size_t j = f.find(';', i);
      if (j == std::string::npos) j = f.size();
      if (j > i) out.insert(f.substr(i, j - i));
      i = j + 1;
    }
    return out;
  }
  bool open() const { return flags().count("open") > 0; }
  int half() const {
    auto f = flags();
    if (f.count("half3")) return 3;
    if (f.count("half2")) return 2;
    return 1;
  }

  Rational num(const std::string& col) const {
    try {
      return Rational::parse(cell(col));
    } catch (const std::exception&) {
      throw CatalogError(id() + ": column " + col + " is not a number: '" + cell(col) + "'");
    }
  }
};

// "V_{r,H}" with the two shorthands used by the tables.
inline std::pair<int, long long> parse_y_label(const std::string& y, const std::string& where) {
  if (y == "Q3") return {3, 2};
  if (y == "P3") return {4, 1};
  if (y.rfind("V_{", 0) == 0 && y.back() == '}') {
    auto comma = y.find(',');
    if (comma != std::string::npos) {
      try {
        return {std::stoi(y.substr(3, comma - 3)), std::stoll(y.substr(comma + 1, y.size() - comma - 2))};
      } catch (const std::exception&) {
      }
    }
  }
  throw CatalogError(where + ": bad Y label '" + y + "'");
}

namespace detail {

inline void validate_golden_row(const GoldenRow& row, const std::string& where) {
  auto even_k3 = [&](const Rational& k3) {
    if (!positive_even(k3)) throw CatalogError(where + ": row " + row.id() + " has (-K)^3 = " + k3.str() + ", not positive and even");
  };
  if (row.table == "A1") {
    even_k3(row.num("k3"));
    return;
  }
  static const std::set<std::string> known_flags = {"open", "half2", "half3"};
  for (const auto& f : row.flags())
    if (!known_flags.count(f)) throw CatalogError(where + ": unknown flag '" + f + "'");
  if (row.parametric()) {
    if (row.cell("k3") != parametric::k3 || row.cell("d") != parametric::d || row.cell("gC") != parametric::gC ||
        row.cell("alpha") != parametric::alpha || row.cell("beta") != "1" || !row.point())
      throw CatalogError(where + ": parametric row " + row.id() + " does not carry the expected formulas");
    return;
  }
  even_k3(row.num("k3"));
  for (const char* col : {"alpha", "beta"}) row.num(col);
  if (row.point() != (row.cell("gB") == "-")) throw CatalogError(where + ": dB and gB must both be '-' or both numbers");
  if (!row.point()) {
    row.num("dB");
    row.num("gB");
  }
  if (row.table == "A4") {
    if (row.cell("kind") != "fixed") throw CatalogError(where + ": kind must be fixed or parametric");
    parse_y_label(row.cell("Y"), where);
  }
  if (row.table == "A5") {
    parse_y_label(row.cell("Y"), where);
    const auto& c = row.cell("case");
    if (c != "P2_O1" && c != "P2_O2" && c != "QUADRIC") throw CatalogError(where + ": unknown case '" + c + "'");
  }
}

}  // namespace detail

inline std::vector<GoldenRow> parse_golden(std::istream& in, const std::string& table, const std::string& name) {
  const auto& expect = golden_header(table);
  std::vector<GoldenRow> rows;
  std::set<int> seen;
  std::string line;
  int no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string where = name + ":" + std::to_string(no);
    if (line.empty()) continue;
    auto cells = split_csv_line(line, where);
    if (!have_header) {
      if (cells != expect) throw CatalogError(where + ": header does not match table " + table);
      have_header = true;
      continue;
    }
    if (cells.size() != expect.size())
      throw CatalogError(where + ": expected " + std::to_string(expect.size()) + " fields, got " +
                         std::to_string(cells.size()));
    GoldenRow row{table, 0, no, expect, std::move(cells)};
    try {
      row.no = static_cast<int>(Rational::parse(row.cells[0]).to_int());
    } catch (const std::exception&) {
      throw CatalogError(where + ": bad row number '" + row.cells[0] + "'");
    }
    if (!seen.insert(row.no).second) throw CatalogError(where + ": duplicate row " + row.id());
    detail::validate_golden_row(row, where);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<GoldenRow> load_golden(const std::string& path, const std::string& table) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open golden file '" + path + "'");
  return parse_golden(in, table, path);
}

inline std::string default_golden_dir() { return std::string(AFANO_DATA_DIR) + "/golden"; }

inline std::vector<GoldenRow> load_golden_table(const std::string& dir, const std::string& table) {
  return load_golden(dir + "/" + table + ".csv", table);
}

// FNV-1a over the raw bytes of A1..A5, in table order.
inline std::uint64_t golden_checksum(const std::string& dir) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& t : golden_tables()) {
    std::ifstream in(dir + "/" + t + ".csv", std::ios::binary);
    if (!in) throw CatalogError("cannot open golden file '" + dir + "/" + t + ".csv'");
    for (char ch; in.get(ch);) {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

// ---------------------------------------------------------------- tuples

namespace detail {

inline void set_bdata(Record& t, const std::optional<DerivedInvariants>& inv) {
  if (!inv) {
    t.set("degB", std::string("?"));
    t.set("gB", std::string("?"));
  } else if (inv->point()) {
    t.set("degB", std::string("point"));
    t.set("gB", std::string("point"));
  } else {
    t.set("degB", inv->degB);
    t.set("gB", inv->gB);
  }
}

}  // namespace detail

// Invariant tuple compared against the golden tables; the key order is fixed per family.
inline Record candidate_tuple(const CandidateCase& c) {
  Record f = c.fields();
  Record t;
  auto copy = [&](const char* k) {
    if (const Value* v = f.get(k)) t.set(k, *v);
    else t.set(k, std::string("?"));
  };
  copy("k3");
  switch (c.family) {
    case Family::DEL_PEZZO:
      copy("KF2");
      detail::set_bdata(t, c.derived);
      copy("alpha");
      copy("beta");
      t.set("half", Rational(c.half));
      t.set("open", std::string(c.open ? "yes" : "no"));
      break;
    case Family::CONIC:
      for (const char* k : {"d", "c1", "c2"}) copy(k);
      detail::set_bdata(t, c.derived);
      copy("alpha");
      copy("beta");
      t.set("half", Rational(c.half));
      break;
    case Family::BLOWUP_CURVE:
      for (const char* k : {"r", "H3", "d", "gC"}) copy(k);
      detail::set_bdata(t, c.derived);
      copy("alpha");
      copy("beta");
      break;
    case Family::BLOWUP_POINT:
      for (const char* k : {"r", "H3", "case"}) copy(k);
      detail::set_bdata(t, c.derived);
      copy("alpha");
      copy("beta");
      t.set("half", Rational(c.half));
      break;
  }
  return t;
}

// Tuple of a fixed golden row, in the same key order as candidate_tuple.
inline Record golden_tuple(const GoldenRow& g) {
  if (g.parametric()) throw CatalogError(g.id() + " is parametric and has no fixed tuple");
  Record t;
  t.set("k3", g.num("k3"));
  auto bdata = [&]() {
    if (g.point()) {
      t.set("degB", std::string("point"));
      t.set("gB", std::string("point"));
      return;
    }
    Rational unit = g.has("dB_unit") ? g.num("dB_unit") : Rational(1);
    t.set("degB", g.num("dB") * unit);
    t.set("gB", g.num("gB"));
  };
  auto ab = [&]() {
    t.set("alpha", g.num("alpha"));
    t.set("beta", g.num("beta"));
  };
  if (g.table == "A2") {
    t.set("KF2", g.num("KF2"));
    bdata();
    ab();
    t.set("half", Rational(g.half()));
    t.set("open", std::string(g.open() ? "yes" : "no"));
  } else if (g.table == "A3") {
    for (const char* k : {"d", "c1", "c2"}) t.set(k, g.num(k));
    bdata();
    ab();
    t.set("half", Rational(g.half()));
  } else if (g.table == "A4") {
    auto [r, H3] = parse_y_label(g.cell("Y"), g.id());
    t.set("r", Rational(r));
    t.set("H3", Rational(H3));
    t.set("d", g.num("d"));
    t.set("gC", g.num("gC"));
    bdata();
    ab();
  } else if (g.table == "A5") {
    auto [r, H3] = parse_y_label(g.cell("Y"), g.id());
    t.set("r", Rational(r));
    t.set("H3", Rational(H3));
    t.set("case", g.cell("case"));
    bdata();
    ab();
    t.set("half", Rational(g.half()));
  } else {
    throw CatalogError("table " + g.table + " has no invariant tuple");
  }
  return t;
}

// Whether a divpoint candidate is an instance of the parametric row.
inline bool parametric_instance(const CandidateCase& c) {
  if (c.family != Family::BLOWUP_CURVE || c.branch != "divpoint" || !c.derived) return false;
  Record f = c.fields();
  auto r = f.num("r"), rp = f.num("rprime"), H3 = f.num("H3");
  if (!r || !rp || !H3) return false;
  if (*rp < 1 || *rp >= *r) return false;
  DivpointRow row = divpoint_row(static_cast<int>(r->to_int()), static_cast<int>(rp->to_int()), H3->to_int());
  return c.derived->point() && c.derived->k3 == Rational(row.k3) && f.num("d") == Rational(row.d) &&
         f.num("gC") == row.gC && f.num("alpha") == Rational(row.alpha) && f.num("beta") == Rational(row.beta);
}

// ---------------------------------------------------------------- diff

// Multiset difference of two tuple lists; indices into each side.
struct TupleDiff {
  std::vector<std::pair<std::size_t, std::size_t>> matched;  // (left, right)
  std::vector<std::size_t> only_left;
  std::vector<std::size_t> only_right;

  bool empty() const { return only_left.empty() && only_right.empty(); }
};

inline TupleDiff diff_tuples(const std::vector<Record>& left, const std::vector<Record>& right) {
  std::multimap<std::string, std::size_t> pool;
  for (std::size_t j = 0; j < right.size(); ++j) pool.emplace(right[j].str(), j);
  TupleDiff d;
  for (std::size_t i = 0; i < left.size(); ++i) {
    auto it = pool.find(left[i].str());
    if (it == pool.end()) {
      d.only_left.push_back(i);
    } else {
      d.matched.emplace_back(i, it->second);
      pool.erase(it);
    }
  }
  for (const auto& [k, j] : pool) d.only_right.push_back(j);
  std::sort(d.only_right.begin(), d.only_right.end());
  return d;
}

struct FieldMismatch {
  int row_no = 0;
  std::size_t candidate = 0;
  std::vector<std::string> fields;  // keys whose values differ
};

struct ModelWarning {
  int row_no = 0;
  std::string text;
};

struct DiffReport {
  std::string table;
  std::size_t golden_rows = 0;
  std::vector<std::pair<int, std::size_t>> matched;  // (row no, candidate index)
  std::vector<int> missing;                          // golden rows without output
  std::vector<std::size_t> extra;                    // candidates without a golden row
  std::vector<FieldMismatch> mismatches;             // nearest golden row for each extra
  std::vector<ModelWarning> warnings;                // metadata only

  bool clean() const { return missing.empty() && extra.empty(); }
  std::size_t matched_rows() const {
    std::set<int> s;
    for (const auto& [no, i] : matched) s.insert(no);
    return s.size();
  }
};

namespace detail {

inline std::vector<std::string> differing_keys(const Record& a, const Record& b) {
  std::vector<std::string> out;
  for (const auto& [k, v] : a.items()) {
    const Value* w = b.get(k);
    if (!w || !(*w == v)) out.push_back(k);
  }
  return out;
}

}  // namespace detail

// Compares surviving candidates of one family with the rows of its table.
inline DiffReport diff(const std::vector<CandidateCase>& candidates, const std::vector<GoldenRow>& golden) {
  DiffReport rep;
  rep.table = golden.empty() ? "" : golden.front().table;
  rep.golden_rows = golden.size();

  std::vector<std::size_t> fixed_rows;
  const GoldenRow* param = nullptr;
  for (std::size_t j = 0; j < golden.size(); ++j) {
    if (golden[j].parametric()) param = &golden[j];
    else fixed_rows.push_back(j);
  }

  std::vector<std::size_t> open_cands;
  bool param_hit = false;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (param && parametric_instance(candidates[i])) {
      rep.matched.emplace_back(param->no, i);
      param_hit = true;
    } else {
      open_cands.push_back(i);
    }
  }

  std::vector<Record> left, right;
  for (std::size_t i : open_cands) left.push_back(candidate_tuple(candidates[i]));
  for (std::size_t j : fixed_rows) right.push_back(golden_tuple(golden[j]));
  TupleDiff td = diff_tuples(left, right);

  for (auto [l, r] : td.matched) rep.matched.emplace_back(golden[fixed_rows[r]].no, open_cands[l]);
  for (std::size_t r : td.only_right) rep.missing.push_back(golden[fixed_rows[r]].no);
  if (param && !param_hit) rep.missing.push_back(param->no);
  std::sort(rep.missing.begin(), rep.missing.end());
  for (std::size_t l : td.only_left) {
    std::size_t ci = open_cands[l];
    rep.extra.push_back(ci);
    // Nearest unmatched golden row: fewest differing keys, ties to the lower row number.
    std::optional<FieldMismatch> best;
    for (std::size_t r : td.only_right) {
      auto keys = detail::differing_keys(left[l], right[r]);
      if (!best || keys.size() < best->fields.size()) best = FieldMismatch{golden[fixed_rows[r]].no, ci, keys};
    }
    if (best) rep.mismatches.push_back(*best);
  }
  std::sort(rep.matched.begin(), rep.matched.end());

  for (const auto& g : golden)
    if (g.cell("model").empty()) rep.warnings.push_back({g.no, "empty model description"});
  return rep;
}

// ---------------------------------------------------------------- export

enum class Format { JSON, CSV, TEX };

inline std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::JSON;
  if (s == "csv") return Format::CSV;
  if (s == "tex") return Format::TEX;
  return std::nullopt;
}

// Flat candidate columns shared by every family; blank where a field does not apply.
inline const std::vector<std::string>& candidate_csv_header() {
  static const std::vector<std::string> h = {"family", "branch", "k3", "KF2", "d", "c1", "c2", "r", "H3",
                                             "gC", "case", "degB", "gB", "alpha", "beta", "half", "open",
                                             "verdict"};
  return h;
}

namespace detail {

inline std::vector<std::string> candidate_cells(const CandidateCase& c) {
  Record f = c.fields();
  Record t = candidate_tuple(c);
  std::vector<std::string> row;
  for (const auto& col : candidate_csv_header()) {
    if (col == "family" || col == "branch") row.push_back(to_string(*f.get(col)));
    else if (col == "open") row.push_back(c.open ? "yes" : "no");
    else if (col == "half") row.push_back(std::to_string(c.half));
    else if (col == "verdict") row.push_back(to_string(c.verdict.kind));
    else if (const Value* v = t.get(col)) row.push_back(to_string(*v));
    else if (const Value* w = f.get(col)) row.push_back(to_string(*w));
    else row.push_back("");
  }
  return row;
}

// Integers become JSON numbers, other rationals "p/q" strings.
inline nlohmann::ordered_json json_value(const Value& v) {
  if (auto r = std::get_if<Rational>(&v)) {
    if (r->is_integer()) return r->to_int();
    return r->str();
  }
  return std::get<std::string>(v);
}

inline std::string tex_escape(const std::string& s) {
  std::string o;
  for (char ch : s) {
    switch (ch) {
      case '_': o += "\\_"; break;
      case '^': o += "\\^{}"; break;
      case '{': o += "\\{"; break;
      case '}': o += "\\}"; break;
      case '&': o += "\\&"; break;
      case '%': o += "\\%"; break;
      case '#': o += "\\#"; break;
      default: o += ch;
    }
  }
  return o;
}

inline std::string tex_frac(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return s;
  return "\\frac{" + s.substr(0, slash) + "}{" + s.substr(slash + 1) + "}";
}

inline std::string tex_y(const std::string& y) {
  if (y == "Q3") return "$Q_3$";
  if (y == "P3") return "${\\mathbb P}_3$";
  return "$" + y + "$";
}

inline std::string tex_case(const std::string& c) {
  if (c == "P2_O1") return "$({\\mathbb P}_2, \\sO(1))$";
  if (c == "P2_O2") return "$({\\mathbb P}_2, \\sO(2))$";
  return "$(Q, \\sO(1))$";
}

inline std::string tex_model(const GoldenRow& g) {
  std::string m = tex_escape(g.cell("model"));
  if (g.has("flags")) {
    int h = g.half();
    if (h > 1) m += " \\hfill $(" + std::to_string(h) + ")$";
    if (g.open()) m += " \\hfill $(?)$";
  }
  return m;
}

}  // namespace detail

// Column titles of the appendix layout, one per TEX column.
inline std::vector<std::string> tex_columns(const std::string& table) {
  if (table == "A1") return {"$g$", "Anticanonical model"};
  if (table == "A2") return {"No.", "$({-}K_X)^3$", "$K_F^2$", "$X'$", "$d_B/g_B$", "$(\\alpha, \\beta)$"};
  if (table == "A3")
    return {"No.", "$({-}K_X)^3$", "$d$", "$(c_1,c_2)$", "$X'$", "$d_B/g_B$", "$(\\alpha, \\beta)$"};
  if (table == "A4") return {"No.", "$({-}K_X)^3$", "$Y$", "$d/g_C$", "$X'$", "$d/g_B$", "$(\\alpha, \\beta)$"};
  if (table == "A5")
    return {"No.", "$({-}K_X)^3$", "$Y$", "$(E, -E|_E)$", "$X'$", "$d/g_B$", "$(\\alpha, \\beta)$"};
  throw CatalogError("unknown table '" + table + "'");
}

inline std::string export_golden(const std::vector<GoldenRow>& rows, const std::string& table, Format fmt) {
  const auto& header = golden_header(table);
  std::ostringstream out;
  switch (fmt) {
    case Format::CSV:
      out << csv_line(header) << '\n';
      for (const auto& r : rows) out << csv_line(r.cells) << '\n';
      break;
    case Format::JSON: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["table"] = r.table;
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r.cells[i];
        arr.push_back(std::move(o));
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::TEX: {
      auto cols = tex_columns(table);
      out << "\\begin{tabular}{" << std::string(cols.size(), 'c') << "}\n";
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? " & " : "  ") << cols[i];
      out << "\\\\\\hline\n";
      for (const auto& r : rows) {
        std::vector<std::string> c;
        auto bd = [&]() { return r.point() ? std::string("--") : "$" + r.cell("dB") + "/" + r.cell("gB") + "$"; };
        auto ab = [&]() {
          return "$(" + detail::tex_frac(r.cell("alpha")) + ", " + detail::tex_frac(r.cell("beta")) + ")$";
        };
        if (table == "A1") {
          c = {"$" + r.cell("g") + "$", detail::tex_escape(r.cell("model"))};
        } else if (table == "A2") {
          c = {r.cell("no"), r.cell("k3"), r.cell("KF2"), detail::tex_model(r), bd(), ab()};
        } else if (table == "A3") {
          c = {r.cell("no"), r.cell("k3"), r.cell("d"), "$(" + r.cell("c1") + "," + r.cell("c2") + ")$",
               detail::tex_model(r), bd(), ab()};
        } else if (table == "A4") {
          std::string dg = r.parametric() ? "$rr'H^3/\\frac{2+rr'^2H^3}{2}$" : "$" + r.cell("d") + "/" + r.cell("gC") + "$";
          std::string k3 = r.parametric() ? "$r(r{-}r')^2H^3$" : r.cell("k3");
          c = {r.cell("no"), k3, detail::tex_y(r.cell("Y")), dg, detail::tex_model(r), bd(),
               r.parametric() ? "$(r', 1)$" : ab()};
        } else {
          c = {r.cell("no"), r.cell("k3"), detail::tex_y(r.cell("Y")), detail::tex_case(r.cell("case")),
               detail::tex_model(r), bd(), ab()};
        }
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " & " : "  ") << c[i];
        out << "\\\\\n";
      }
      out << "\\end{tabular}\n";
      break;
    }
  }
  return out.str();
}

inline nlohmann::ordered_json candidate_json(const CandidateCase& c) {
  nlohmann::ordered_json o;
  Record f = c.fields();
  for (const auto& [k, v] : f.items()) o[k] = detail::json_value(v);
  o["open"] = c.open;
  o["verdict"] = to_string(c.verdict.kind);
  o["verdict_id"] = c.verdict.id;
  auto trail = nlohmann::ordered_json::array();
  for (const auto& s : c.trail) {
    nlohmann::ordered_json t;
    t["id"] = s.id;
    t["pass"] = s.pass;
    t["residual"] = s.residual ? detail::json_value(*s.residual) : nlohmann::ordered_json(nullptr);
    t["detail"] = s.detail;
    trail.push_back(std::move(t));
  }
  o["trail"] = std::move(trail);
  return o;
}

inline std::string export_candidates(const std::vector<CandidateCase>& rows, Format fmt) {
  std::ostringstream out;
  switch (fmt) {
    case Format::CSV:
      out << csv_line(candidate_csv_header()) << '\n';
      for (const auto& c : rows) out << csv_line(detail::candidate_cells(c)) << '\n';
      break;
    case Format::JSON: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& c : rows) arr.push_back(candidate_json(c));
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::TEX: {
      const auto& h = candidate_csv_header();
      out << "\\begin{tabular}{" << std::string(h.size(), 'c') << "}\n";
      for (std::size_t i = 0; i < h.size(); ++i) out << (i ? " & " : "  ") << detail::tex_escape(h[i]);
      out << "\\\\\\hline\n";
      for (const auto& c : rows) {
        auto cells = detail::candidate_cells(c);
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? " & " : "  ") << detail::tex_escape(cells[i]);
        out << "\\\\\n";
      }
      out << "\\end{tabular}\n";
      break;
    }
  }
  return out.str();
}

}  // namespace afano
