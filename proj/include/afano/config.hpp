#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace afano {

struct Range {
  long long lo = 0;
  long long hi = 0;

  bool contains(long long v) const { return lo <= v && v <= hi; }
  // Scale both ends away from zero.
  Range scaled(long long k) const { return {lo < 0 ? lo * k : lo, hi > 0 ? hi * k : hi}; }
  friend bool operator==(const Range&, const Range&) = default;
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

struct GridBounds {
  Range alpha{1, 12};   // dp/bp sweep alpha over half-integers in this range
  Range beta{1, 6};     // |beta| for the conic family
  Range r{1, 4};
  Range H3{1, 64};      // only for blowups of singular Y, where no degree table applies
  Range d{1, 24};
  Range gC{0, 30};
  Range KF2{1, 9};
  Range c1{-8, 8};
  Range c2{-40, 40};
  Range lambda{0, 4};

  GridBounds scaled(long long k) const {
    GridBounds g = *this;
    for (Range* x : {&g.alpha, &g.beta, &g.r, &g.H3, &g.d, &g.gC, &g.c1, &g.c2, &g.lambda}) *x = x->scaled(k);
    // Index and fibre degree are bounded by geometry, not by the grid.
    g.r = r;
    g.KF2 = KF2;
    return g;
  }
  friend bool operator==(const GridBounds&, const GridBounds&) = default;
};

// Allowed (r, H^3) for smooth Fano threefolds of Picard rank one.
using FanoDegreeTable = std::map<int, std::vector<long long>>;

inline FanoDegreeTable default_fano_table() {
  return {{1, {2, 4, 6, 8, 10, 12, 14, 16, 18, 22}}, {2, {1, 2, 3, 4, 5}}, {3, {2}}, {4, {1}}};
}

inline bool in_table(const FanoDegreeTable& t, int r, long long H3) {
  auto it = t.find(r);
  return it != t.end() && std::find(it->second.begin(), it->second.end(), H3) != it->second.end();
}

struct ParsedConfig {
  GridBounds bounds;
  FanoDegreeTable fano = default_fano_table();
  bool use_ledger = true;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline long long parse_ll(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(where + ": not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw ConfigError(where + ": not an integer: '" + s + "'");
  return v;
}

inline Range parse_range(const std::string& s, const std::string& where) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    long long v = parse_ll(s, where);
    return {v, v};
  }
  Range r{parse_ll(trim(s.substr(0, dots)), where), parse_ll(trim(s.substr(dots + 2)), where)};
  if (r.lo > r.hi) throw ConfigError(where + ": empty range '" + s + "'");
  return r;
}

}  // namespace detail

// key = value per line; '#' starts a comment; ranges are "lo..hi";
// fano.<r> = list of H^3 values.
inline ParsedConfig parse_config(std::istream& in, const std::string& name = "config") {
  ParsedConfig cfg;
  bool fano_seen = false;
  std::map<std::string, Range*> ranges = {
      {"alpha", &cfg.bounds.alpha}, {"beta", &cfg.bounds.beta}, {"r", &cfg.bounds.r},
      {"H3", &cfg.bounds.H3},       {"d", &cfg.bounds.d},       {"gC", &cfg.bounds.gC},
      {"KF2", &cfg.bounds.KF2},     {"c1", &cfg.bounds.c1},     {"c2", &cfg.bounds.c2},
      {"lambda", &cfg.bounds.lambda}};
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    std::string where = name + ":" + std::to_string(no);
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    std::string key = detail::trim(line.substr(0, eq));
    std::string val = detail::trim(line.substr(eq + 1));
    if (auto it = ranges.find(key); it != ranges.end()) {
      *it->second = detail::parse_range(val, where);
    } else if (key.rfind("fano.", 0) == 0) {
      if (!fano_seen) cfg.fano.clear();
      fano_seen = true;
      int r = static_cast<int>(detail::parse_ll(key.substr(5), where));
      std::istringstream vs(val);
      std::vector<long long> hs;
      for (std::string tok; vs >> tok;) hs.push_back(detail::parse_ll(tok, where));
      cfg.fano[r] = hs;
    } else if (key == "ledger") {
      if (val != "on" && val != "off") throw ConfigError(where + ": ledger must be on or off");
      cfg.use_ledger = val == "on";
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

inline ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in, path);
}

}  // namespace afano
