#pragma once

#include "afano/config.hpp"
#include "afano/invariants.hpp"
#include "afano/ledger.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#ifndef AFANO_DATA_DIR
#define AFANO_DATA_DIR "data"
#endif

namespace afano {

enum class Family { DEL_PEZZO, CONIC, BLOWUP_CURVE, BLOWUP_POINT };

inline const char* short_name(Family f) {
  switch (f) {
    case Family::DEL_PEZZO: return "dp";
    case Family::CONIC: return "cb";
    case Family::BLOWUP_CURVE: return "bc";
    case Family::BLOWUP_POINT: return "bp";
  }
  return "?";
}

// Appendix table holding the family.
inline const char* table_id(Family f) {
  switch (f) {
    case Family::DEL_PEZZO: return "A2";
    case Family::CONIC: return "A3";
    case Family::BLOWUP_CURVE: return "A4";
    case Family::BLOWUP_POINT: return "A5";
  }
  return "?";
}

inline const std::vector<Family>& all_families() {
  static const std::vector<Family> v = {Family::DEL_PEZZO, Family::CONIC, Family::BLOWUP_CURVE,
                                        Family::BLOWUP_POINT};
  return v;
}

inline std::optional<Family> parse_family(const std::string& s) {
  for (Family f : all_families())
    if (s == short_name(f) || s == table_id(f)) return f;
  return std::nullopt;
}

enum class VerdictKind { ACCEPTED, EXCLUDED_NUMERIC, EXCLUDED_LEDGER, EXISTENCE_OPEN };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::ACCEPTED: return "ACCEPTED";
    case VerdictKind::EXCLUDED_NUMERIC: return "EXCLUDED_NUMERIC";
    case VerdictKind::EXCLUDED_LEDGER: return "EXCLUDED_LEDGER";
    case VerdictKind::EXISTENCE_OPEN: return "EXISTENCE_OPEN";
  }
  return "?";
}

struct Verdict {
  VerdictKind kind = VerdictKind::ACCEPTED;
  std::string id;  // failing filter or ledger entry

  bool survives() const { return kind == VerdictKind::ACCEPTED || kind == VerdictKind::EXISTENCE_OPEN; }
};

struct TrailStep {
  std::string id;
  bool pass = true;
  std::optional<Rational> residual;
  std::string detail;
};

// A broken invariant of the enumerator itself, not of the candidate.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& m) : std::logic_error(m) {}
};

using Params = std::variant<DelPezzoParams, ConicParams, BlowupCurveParams, BlowupPointParams>;

struct CandidateCase {
  Family family = Family::DEL_PEZZO;
  std::string branch;
  Params params;
  Record extra;
  std::optional<DerivedInvariants> derived;
  int half = 1;
  bool open = false;
  Verdict verdict;
  std::vector<TrailStep> trail;

  Record fields() const;
};

namespace detail {

// Signed numbers with a typographic minus, for trail details.
inline std::string u(const Rational& x) {
  std::string s = x.str();
  if (!s.empty() && s[0] == '-') s = "−" + s.substr(1);
  return s;
}

inline bool positive_even(const Rational& x) {
  return x.is_integer() && x.sign() > 0 && x.to_int() % 2 == 0;
}

inline bool nonneg_int(const Rational& x) { return x.is_integer() && x.sign() >= 0; }

class Trail {
 public:
  explicit Trail(CandidateCase& c) : c_(c) {}

  bool check(const std::string& id, bool pass, const std::string& detail) {
    c_.trail.push_back({id, pass, std::nullopt, detail});
    if (!pass && c_.verdict.survives()) c_.verdict = {VerdictKind::EXCLUDED_NUMERIC, id};
    return pass;
  }
  bool zero(const std::string& id, const Rational& residual, const std::string& detail) {
    bool pass = residual.is_zero();
    c_.trail.push_back({id, pass, residual, detail});
    if (!pass && c_.verdict.survives()) c_.verdict = {VerdictKind::EXCLUDED_NUMERIC, id};
    return pass;
  }
  void note(const std::string& id, const std::string& detail) { c_.trail.push_back({id, true, std::nullopt, detail}); }

 private:
  CandidateCase& c_;
};

inline Rational half_value(long long n) { return Rational(n, 2); }

}  // namespace detail

inline Record CandidateCase::fields() const {
  Record r;
  r.set("family", std::string(short_name(family)));
  r.set("branch", branch);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DelPezzoParams>) {
          r.set("KF2", Rational(p.KF2));
          r.set("alpha", p.alpha);
          r.set("beta", p.beta);
          if (p.split) {
            r.set("a1", Rational(p.split->first));
            r.set("a2", Rational(p.split->second));
          }
        } else if constexpr (std::is_same_v<T, ConicParams>) {
          r.set("alpha", p.alpha);
          r.set("beta", p.beta);
          r.set("c1", Rational(p.c1));
          r.set("c2", Rational(p.c2));
          r.set("d", Rational(p.d));
          if (p.p1) {
            r.set("a", Rational(p.p1->a));
            r.set("b", Rational(p.p1->b));
            if (p.p1->lambda) r.set("lambda", Rational(*p.p1->lambda));
          }
        } else if constexpr (std::is_same_v<T, BlowupCurveParams>) {
          r.set("r", Rational(p.r));
          r.set("H3", Rational(p.H3));
          r.set("d", Rational(p.d));
          r.set("gC", Rational(p.gC));
          r.set("alpha", Rational(p.alpha));
          r.set("beta", Rational(p.beta));
          r.set("eps", Rational(p.epsilon()));
        } else {
          r.set("case", std::string(to_string(p.kase)));
          r.set("r", Rational(p.r));
          r.set("H3", Rational(p.H3));
          r.set("alpha", p.alpha);
          r.set("beta", p.beta);
        }
      },
      params);
  for (const auto& [k, v] : extra.items()) r.set(k, v);
  if (derived) {
    r.set("k3", derived->k3);
    r.set("eps", derived->epsilon);
    r.set("KD2", derived->KD2);
    r.set("D3", derived->D3);
    r.set("degB", derived->degB);
    r.set("gB", derived->gB);
    r.set("gX", derived->gX);
    r.set("point", std::string(derived->point() ? "yes" : "no"));
  }
  r.set("half", Rational(half));
  return r;
}

// Divisibility index of -K: k when -K = k L for a class L with L^3 >= 2.
inline int half_index(int k, const Rational& k3) {
  if (k > 1 && k3 / pow(Rational(k), 3) >= 2) return k;
  return 1;
}

struct SweepConfig {
  std::optional<Family> family;
  GridBounds bounds;
  FanoDegreeTable fano = default_fano_table();
  bool use_ledger = true;
  Ledger ledger;

  static SweepConfig defaults() {
    SweepConfig c;
    c.ledger = load_ledger(std::string(AFANO_DATA_DIR) + "/ledger/ledger.txt");
    return c;
  }
  static SweepConfig from(const ParsedConfig& p, Ledger l) {
    SweepConfig c;
    c.bounds = p.bounds;
    c.fano = p.fano;
    c.use_ledger = p.use_ledger;
    c.ledger = std::move(l);
    return c;
  }
};

// Applies the ledger and the open flag to a case that passed every numeric filter.
inline void finalize(CandidateCase& c, const SweepConfig& cfg) {
  if (!c.verdict.survives()) return;
  if (cfg.use_ledger) {
    if (const LedgerEntry* e = cfg.ledger.match(short_name(c.family), c.fields())) {
      c.verdict = {VerdictKind::EXCLUDED_LEDGER, e->id};
      c.trail.push_back({"ledger", false, std::nullopt, e->id + ": " + e->summary});
      return;
    }
  }
  c.verdict = {c.open ? VerdictKind::EXISTENCE_OPEN : VerdictKind::ACCEPTED, ""};
  if (!c.derived || !detail::positive_even(c.derived->k3))
    throw InternalError(std::string(short_name(c.family)) + " survivor without positive even (-K)^3: " +
                        c.fields().str());
}

// ---------------------------------------------------------------- dp

namespace dp {

inline std::optional<CandidateCase> p2_bundle(long long a1, long long a2) {
  CandidateCase c;
  c.family = Family::DEL_PEZZO;
  c.branch = "p2-bundle";
  DelPezzoParams p = p2_bundle_params(a1, a2);
  c.params = p;
  detail::Trail t(c);
  if (!t.zero("dp-p2-nef", Rational(a1 + a2 - 2), "a1 + a2 = 2 makes ξ = −K/3: " +
                                                        std::to_string(a1) + " + " + std::to_string(a2)))
    return c;
  if (!t.zero("dp-p2-divisor", Rational(9 * a2), "K²·D = 9a2 = " + std::to_string(9 * a2))) return c;
  c.derived = dp_invariants(p);
  const auto& inv = *c.derived;
  c.half = half_index(3, inv.k3);
  if (!t.check("dp-k3", detail::positive_even(inv.k3), "(−K)³ = " + detail::u(inv.k3))) return c;
  if (!t.check("dp-degB", inv.KD2.sign() > 0, "−K·D² = " + detail::u(inv.KD2))) return c;
  t.check("dp-gB", detail::nonneg_int(inv.gB), "g_B = " + detail::u(inv.gB));
  return c;
}

// Genus of a smooth complete intersection curve from 2g - 2 = prod(d)(sum(d) - n - 1).
inline long long ci_curve_genus(long long n, const std::vector<long long>& degs) {
  long long prod = 1, sum = 0;
  for (long long x : degs) prod *= x, sum += x;
  return (prod * (sum - n - 1) + 2) / 2;
}

inline std::optional<CandidateCase> fibration(long long KF2, const Rational& alpha, const Rational& beta) {
  using detail::u;
  CandidateCase c;
  c.family = Family::DEL_PEZZO;
  c.branch = alpha.is_integer() ? "integral" : "half";
  DelPezzoParams p{alpha, beta, KF2, std::nullopt};
  c.params = p;
  detail::Trail t(c);
  if (!t.check("dp-kf7", KF2 != 7, "K_F² = " + std::to_string(KF2))) return c;
  if (!t.check("dp-alpha-half", alpha.is_integer() || KF2 == 8,
               "α = " + u(alpha) + " needs K_F² = 8, got " + std::to_string(KF2)))
    return c;
  if (!t.check("dp-beta", beta == Rational(1, 2) || beta == 1 || beta == 2, "β = " + u(beta))) return c;
  if (!t.check("dp-beta-integral", !alpha.is_integer() || beta.is_integer(),
               "α = " + u(alpha) + ", β = " + u(beta)))
    return c;
  Rational k3 = dp_k3(p);
  if (!t.check("dp-k3", detail::positive_even(k3),
               "(−K)³ = βK_F²/α = " + u(beta) + "·" + std::to_string(KF2) + "/" + u(alpha) + " = " + u(k3)))
    return c;
  c.derived = dp_invariants(p);
  const auto& inv = *c.derived;
  c.half = half_index(KF2 == 8 || !alpha.is_integer() ? 2 : 1, k3);
  c.open = alpha == 1 && beta == 2 && (KF2 == 5 || KF2 == 6);

  if (alpha.is_integer() && beta == 2) {
    long long a = alpha.to_int();
    if (a >= 2 && !t.zero("dp-consistency", dp_consistency(a, k3),
                          "(α³−α)(−K)³/12 − 2α + 2 at α = " + u(alpha)))
      return c;
    if (!t.check("dp-k3-max", k3 <= 16, "(−K)³ = " + u(k3) + " ≤ 16")) return c;
    auto [gA, gB] = dp_genus_beta2(a, k3);
    if (gA != gB) throw InternalError("dp: genus routes disagree (" + gA.str() + " vs " + gB.str() + ")");
    if (inv.gB != gB) throw InternalError("dp: Riemann-Roch genus " + inv.gB.str() + " vs " + gB.str());
    t.note("dp-genus", "g_B = " + u(gB) + " by both routes");
  } else if (alpha.is_integer() && beta == 1) {
    long long a = alpha.to_int();
    Rational g = dp_genus_beta1(a, k3);
    if (inv.gB != g) throw InternalError("dp: Riemann-Roch genus " + inv.gB.str() + " vs " + g.str());
    std::optional<long long> gci;
    if (a == 2 && k3 == 4) gci = ci_curve_genus(4, {2, 2, 2});
    if (a == 3 && k3 == 2) gci = ci_curve_genus(3, {3, 3});
    if (a == 4 && k3 == 2) gci = ci_curve_genus(3, {4, 4});
    if (gci && !t.zero("dp-ci-genus", g - Rational(*gci),
                       "g_B = " + u(g) + " vs complete intersection genus " + std::to_string(*gci)))
      return c;
  }
  if (!t.check("dp-degB", inv.KD2.sign() > 0, "−K·D² = " + u(inv.KD2))) return c;
  t.check("dp-gB", detail::nonneg_int(inv.gB), "g_B = " + u(inv.gB));
  return c;
}

inline std::vector<CandidateCase> sweep(const SweepConfig& cfg) {
  const GridBounds& g = cfg.bounds;
  std::vector<CandidateCase> out;
  for (long long a1 = 0; a1 <= g.beta.hi; ++a1)
    for (long long a2 = 0; a2 <= a1; ++a2)
      if (auto c = p2_bundle(a1, a2)) out.push_back(std::move(*c));
  for (long long kf = std::max<long long>(g.KF2.lo, 1); kf <= std::min<long long>(g.KF2.hi, 8); ++kf)
    for (long long n = g.alpha.lo; n <= 2 * g.alpha.hi; ++n)
      for (long long m = 1; m <= 2 * g.beta.hi; ++m)
        if (auto c = fibration(kf, detail::half_value(n), detail::half_value(m))) out.push_back(std::move(*c));
  return out;
}

}  // namespace dp

// ---------------------------------------------------------------- cb

namespace cb {

struct StaticRow {
  const char* name;
  ChernData E;
  long long alpha, beta;
};

// E as Whitney sums or a quotient of a split bundle.
inline std::vector<StaticRow> static_rows() {
  auto line = [](long long a) { return ChernData{Base::P2, 1, a, 0}; };
  ChernData ip1{Base::P2, 2, 2, 2};     // O(1) + I_p(1) extension class
  ChernData tp{Base::P2, 2, 2, 3};      // O^4 / O(-1)^2
  return {
      {"O(-2)+O+O(1)", chern_sum(chern_sum(line(-2), line(0)), line(1)), 1, -1},
      {"O(-1)+G, c(G)=(2,2)", chern_sum(line(-1), ip1), 1, -1},
      {"O(-1)+G, c(G)=(2,3)", chern_sum(line(-1), tp), 2, -1},
      {"O(-1)+O+O(2)", chern_sum(chern_sum(line(-1), line(0)), line(2)), 1, -2},
  };
}

inline CandidateCase static_case(const StaticRow& row) {
  CandidateCase c;
  c.family = Family::CONIC;
  c.branch = "static";
  ConicParams p{Rational(row.alpha), Rational(row.beta), row.E.c1, row.E.c2, 9 - row.E.c1, std::nullopt};
  c.params = p;
  c.extra.set("E", std::string(row.name));
  detail::Trail t(c);
  Rational k3 = cb_k3(p), kc = cb_k3_from_chern(p.c1, p.c2);
  if (!t.zero("cb-static-k3", k3 - kc,
              "−β(12−d)/α = " + detail::u(k3) + " vs c1² − 2c2 + 3c1 = " + detail::u(kc)))
    return c;
  c.derived = cb_invariants(p);
  t.check("cb-gB", detail::nonneg_int(c.derived->gB), "g_B = " + detail::u(c.derived->gB));
  return c;
}

inline void tail_checks(detail::Trail& t, const DerivedInvariants& inv) {
  using detail::u;
  if (!t.check("cb-k3", detail::positive_even(inv.k3), "(−K)³ = " + u(inv.k3))) return;
  if (!t.check("cb-degB", inv.KD2.sign() > 0, "−K·D² = " + u(inv.KD2))) return;
  t.check("cb-gB", detail::nonneg_int(inv.gB), "g_B = " + u(inv.gB));
}

// P(F) with c1(F) = -1 and D = a eta + b h; lambda is the splitting type bound on the fibre.
inline std::optional<CandidateCase> p1_bundle(long long a, long long b, long long lambda) {
  using detail::u;
  CandidateCase c;
  c.family = Family::CONIC;
  c.branch = "p1-bundle";
  const long long c1F = -1;
  Rational alpha(a, 2), beta = Rational(b) - Rational(a * (3 - c1F), 2);
  ConicParams p{alpha, beta, c1F, 0, 0, P1BundleData{a, b, lambda}};
  c.params = p;
  detail::Trail t(c);
  c.half = 2;
  if (!t.check("cb-p1-lpsi", b == 2 * a - 1 || b == 2 * a - 2, "b ∈ {2a−1, 2a−2}: a = " + std::to_string(a) +
                                                                    ", b = " + std::to_string(b)))
    return c;
  Rational c2 = Rational(3 * b, a) + 1;
  if (!t.check("cb-p1-c2", c2.is_integer(), "c2 = 3b/a + 1 = " + u(c2))) return c;
  p.c2 = c2.to_int();
  c.params = p;
  if (!t.check("cb-p1-h0", 9 - p.c2 >= 3, "h⁰(F(1)) = 9 − c2 = " + std::to_string(9 - p.c2))) return c;
  if (!t.check("cb-p1-lambda", lambda <= 2, "λ = " + std::to_string(lambda))) return c;
  if (!t.check("cb-p1-cone", Rational(lambda) >= Rational(b, a), "λ ≥ b/a = " + u(Rational(b, a)))) return c;
  if (!t.check("cb-p1-minimal", a != 1 || lambda == b, "a = 1 forces λ = b")) return c;
  if (!t.check("cb-p1-zeros", p.c2 - lambda + lambda * lambda >= 0,
               "c2 − λ + λ² = " + std::to_string(p.c2 - lambda + lambda * lambda)))
    return c;
  long long g = std::gcd(a, b);
  if (!t.check("cb-divisible", !(g > 1 && a / g == 1 && Rational(b / g) >= lambda),
               "gcd(a, b) = " + std::to_string(g)))
    return c;
  c.derived = p1_bundle_invariants(c1F, p.c2, {a, b, lambda});
  tail_checks(t, *c.derived);
  return c;
}

inline std::optional<CandidateCase> p1_c1_zero(long long a, long long b) {
  using detail::u;
  CandidateCase c;
  c.family = Family::CONIC;
  c.branch = "p1-c1-zero";
  Rational alpha(a, 2), beta = Rational(b) - Rational(3 * a, 2);
  ConicParams p{alpha, beta, 0, 0, 0, P1BundleData{a, b, std::nullopt}};
  c.params = p;
  c.half = 2;
  detail::Trail t(c);
  if (!t.zero("cb-c0-lpsi", Rational(-3 * a + 2 * b + 2), "−3a + 2b + 2")) return c;
  Rational c2(9 * a + 12 * b, 4 * a);
  if (!t.check("cb-c0-c2", c2.is_integer(), "c2 = (9a + 12b)/4a = " + u(c2))) return c;
  p.c2 = c2.to_int();
  c.params = p;
  c.derived = p1_bundle_invariants(0, p.c2, {a, b, std::nullopt});
  tail_checks(t, *c.derived);
  return c;
}

// D a section of P(F) -> P2 contracted to a point.
inline CandidateCase point(long long s) {
  CandidateCase c;
  c.family = Family::CONIC;
  c.branch = "point";
  long long c1F = s % 2 ? -1 : 0;
  long long c2F = s % 2 ? -(s * s - 1) / 4 : -(s * s) / 4;
  long long b = -(s / 2);
  ConicParams p{Rational(1, 2), -Rational(s + 3, 2), c1F, c2F, 0, P1BundleData{1, b, std::nullopt}};
  c.params = p;
  c.extra.set("s", Rational(s));
  c.half = 2;
  detail::Trail t(c);
  if (!t.zero("cb-point-section", Rational(3 - s), "normal bundle O(−s) of a contracted plane needs s = 3"))
    return c;
  c.derived = p1_bundle_invariants(c1F, c2F, {1, b, std::nullopt});
  t.check("cb-k3", detail::positive_even(c.derived->k3), "(−K)³ = " + detail::u(c.derived->k3));
  return c;
}

// X in |2 zeta + (3 - c1) h| inside P(E), E = phi_*(-K) of rank 3.
inline std::optional<CandidateCase> delta(long long beta, long long c1, long long c2, const GridBounds& g) {
  using detail::u;
  CandidateCase c;
  c.family = Family::CONIC;
  c.branch = "delta";
  long long d = 9 - c1;
  ConicParams p{0, Rational(beta), c1, c2, d, std::nullopt};
  c.params = p;
  detail::Trail t(c);
  if (!t.check("cb-beta", beta == -1 || beta == -2, "β = " + u(Rational(beta)))) return c;
  if (!t.check("cb-disc", d >= 1, "d = 9 − c1 = " + u(Rational(d)))) return c;
  Rational k3 = cb_k3_from_chern(c1, c2);
  if (!t.check("cb-k3", detail::positive_even(k3), "(−K)³ = c1² − 2c2 + 3c1 = " + u(k3))) return c;
  Rational alpha = Rational(-beta * (12 - d)) / k3;
  if (!t.check("cb-alpha", alpha.is_integer() && alpha.sign() > 0, "α = −β(12−d)/(−K)³ = " + u(alpha)))
    return c;
  if (alpha > g.alpha.hi) return std::nullopt;
  p.alpha = alpha;
  c.params = p;
  c.derived = cb_invariants(p);
  const auto& inv = *c.derived;
  auto [r1, r2] = cb_divisorial_residuals(p);
  long long a = alpha.to_int();

  if (k3 < 4) {
    c.extra.set("route", std::string("nonbirational"));
    if (!t.check("cb-nonbirational", c1 * c1 == c2 && c1 <= 2,
                 "(−K)³ = 2 needs c1² = c2, c1 ≤ 2: c1 = " + u(Rational(c1)) + ", c2 = " + u(Rational(c2))))
      return c;
  } else if (c1 <= 3 && r1.is_zero() && r2.is_zero() && c1 * c1 > c2) {
    c.extra.set("route", std::string("divisorial"));
    t.note("cb-divisorial", "both contraction residuals vanish");
  } else {
    c.extra.set("route", std::string("small"));
    if (a >= 3) {
      bool ok = (k3 >= 6 && a == 3) || (k3 == 4 && a >= 3 && a <= 5);
      if (!t.check("cb-small-h0", ok, "h⁰(E) = " + u(k3 / 2 + 3) + " with α = " + u(alpha))) return c;
      if (a == 3) {
        Rational gadj = Rational(1) - (2 * inv.KD2 + inv.D3) / 8;
        ChernData e1 = chern_twist({Base::P2, 3, c1, c2}, -1);
        Rational gh1 = -rr_p2(sym2_chern_rank3(e1)) + Rational(h0_p2(c1 - 5));
        if (!t.zero("cb-small-genus", gadj - gh1,
                    "8(1−g) = K_D² gives g = " + u(gadj) + ", h¹(S²E(−1)) gives " + u(gh1)))
          return c;
      }
    } else {
      if (!t.check("cb-small-c1", c1 >= 4, "X·l < 0 needs c1 ≥ 4, got " + u(Rational(c1)))) return c;
      if (!t.zero("cb-extend", r2, "extension residual")) return c;
      if (beta == -2) {
        Rational gadj = Rational(1) - (2 * inv.KD2 + inv.D3) / 8;
        Rational chi = rr_p2(chern_twist({Base::P2, 3, c1, c2}, -2));
        // h^0(E(-2)) is 0 for alpha = 2 and 1 for alpha = 1; h^2 vanishes.
        Rational want = a == 2 ? -gadj : Rational(1) - gadj;
        if (!t.zero("cb-small-chi", chi - want, "χ(E(−2)) = " + u(chi) + ", g = " + u(gadj))) return c;
      }
    }
  }
  if (!t.check("cb-degB", inv.KD2.sign() > 0, "−K·D² = " + u(inv.KD2))) return c;
  t.check("cb-gB", detail::nonneg_int(inv.gB), "g_B = " + u(inv.gB));
  return c;
}

inline std::vector<CandidateCase> sweep(const SweepConfig& cfg) {
  const GridBounds& g = cfg.bounds;
  std::vector<CandidateCase> out;
  for (const auto& row : static_rows()) out.push_back(static_case(row));
  for (long long a = 1; a <= 2 * g.alpha.hi; ++a)
    for (long long b = 0; b <= 4 * g.alpha.hi; ++b) {
      for (long long l = g.lambda.lo; l <= g.lambda.hi; ++l)
        if (auto c = p1_bundle(a, b, l)) out.push_back(std::move(*c));
      if (auto c = p1_c1_zero(a, b)) out.push_back(std::move(*c));
    }
  for (long long s = 0; s <= g.c1.hi; ++s) out.push_back(point(s));
  for (long long beta = -g.beta.hi; beta <= -1; ++beta)
    for (long long c1 = g.c1.lo; c1 <= g.c1.hi; ++c1)
      for (long long c2 = g.c2.lo; c2 <= g.c2.hi; ++c2)
        if (auto c = delta(beta, c1, c2, g)) out.push_back(std::move(*c));
  return out;
}

}  // namespace cb

// ---------------------------------------------------------------- bc

namespace bc {

inline std::string ab1_detail(const BlowupCurveParams& p, const DerivedInvariants& inv) {
  using detail::u;
  Rational lhs = Rational(p.beta) * inv.k3;
  return "β(−K)³ = ε(r²H³ − d): " + u(lhs) + " = " + u(inv.epsilon) + "·(" +
         u(Rational(p.r * p.r * p.H3)) + "−" + u(Rational(p.d)) + ")";
}

inline bool common_checks(detail::Trail& t, CandidateCase& c, const BlowupCurveParams& p) {
  using detail::u;
  DerivedInvariants inv;
  try {
    inv = bc_invariants(p);
  } catch (const RelationViolated& e) {
    throw InternalError(std::string("bc: ") + e.what());
  }
  c.derived = inv;
  t.note("bc-ab1", ab1_detail(p, inv));
  if (!t.check("bc-k3", detail::positive_even(inv.k3), "(−K)³ = " + u(inv.k3))) return false;
  if (!t.check("bc-degB", inv.KD2.sign() > 0, "−K·D² = " + u(inv.KD2))) return false;
  return t.check("bc-gB", detail::nonneg_int(inv.gB), "g_B = " + u(inv.gB));
}

inline std::optional<CandidateCase> candidate(int r, long long H3, long long beta, long long eps, long long d,
                                              const GridBounds& g) {
  using detail::u;
  long long alpha = beta * r - eps;
  if (alpha <= 0) return std::nullopt;
  CandidateCase c;
  c.family = Family::BLOWUP_CURVE;
  BlowupCurveParams p{r, H3, d, 0, alpha, beta};
  detail::Trail t(c);
  long long rhs = (beta * r + alpha) * d - alpha * r * r * H3;  // = beta (2 gC - 2)
  if (d <= 2) {
    c.branch = d == 1 ? "line" : "conic";
    c.params = p;
    if (!t.zero(d == 1 ? "bc-line-5b7" : "bc-conic-ab", Rational(-2 * beta - rhs),
                "β(2g_C−2) = (βr+α)d − αr²H³ at g_C = 0: " + u(Rational(-2 * beta)) + " vs " + u(Rational(rhs))))
      return c;
  } else {
    c.branch = "main";
    Rational gC = Rational(rhs, beta) / 2 + 1;
    c.params = p;
    if (!gC.is_integer()) c.extra.set("gC_solved", gC);
    if (!t.check("bc-gC-integral", gC.is_integer(), "g_C = " + u(gC))) return c;
    if (!t.check("bc-gC-nonneg", gC.sign() >= 0, "g_C = " + u(gC))) return c;
    if (!g.gC.contains(gC.to_int())) return std::nullopt;
    p.gC = gC.to_int();
    c.params = p;
  }
  if (!t.check("bc-ineq", 2 * p.gC - 2 < r * d && d < r * r * H3,
               "2g_C − 2 < rd and d < r²H³: " + u(Rational(2 * p.gC - 2)) + " < " + u(Rational(r * d)) + ", " +
                   u(Rational(d)) + " < " + u(Rational(r * r * H3))))
    return c;
  if (!common_checks(t, c, p)) return c;
  const auto& inv = *c.derived;
  if (eps == 2 && !t.zero("bc-eps2", 2 * inv.KD2 + inv.D3 - 8 * (1 - inv.gB), "D ruled: K_D² = 8(1 − g_B)"))
    return c;
  if (c.branch != "main") return c;
  if (!t.check("bc-r1-degree", r != 1 || H3 >= 10, "r = 1 needs H³ ≥ 10, got " + std::to_string(H3))) return c;
  long long k3 = inv.k3.to_int();
  if (!t.check("beta-bound", beta <= 3 || (beta == 4 && k3 == 2 && eps == r),
               "β = " + std::to_string(beta) + ", (−K)³ = " + std::to_string(k3) + ", ε = " + std::to_string(eps)))
    return c;
  if (beta >= 2 && k3 <= 8) {
    auto res = [&](CiTag tag) { return bc_ci_residual(k3, tag, eps, H3, beta, inv.degB, inv.gB); };
    switch (k3) {
      case 2: t.zero("h2", res(CiTag::H2), "double cover residual"); break;
      case 4: t.zero("n4", res(CiTag::N4), "quartic residual"); break;
      case 6: {
        Rational a = res(CiTag::N5A), b = res(CiTag::N5B);
        t.check("n5", a.is_zero() || b.is_zero(), "(2)∩(3) residuals " + u(a) + ", " + u(b));
        break;
      }
      case 8: t.zero("n6", res(CiTag::N6), "(2)∩(2)∩(2) residual"); break;
      default: break;
    }
  }
  return c;
}

// D the strict transform of a divisor in |r' H| through C; D is contracted to a point.
inline std::optional<CandidateCase> divpoint(int r, long long H3, long long alpha, long long beta,
                                             const GridBounds& g) {
  using detail::u;
  CandidateCase c;
  c.family = Family::BLOWUP_CURVE;
  c.branch = "divpoint";
  c.extra.set("rprime", Rational(alpha));
  detail::Trail t(c);
  Rational d(alpha * r * H3, beta);
  Rational gC = Rational(1) + Rational(alpha * alpha * r * H3, 2 * beta * beta);
  BlowupCurveParams p{r, H3, 0, 0, alpha, beta};
  c.params = p;
  if (!t.check("divpoint-d-integral", d.is_integer(), "d = αrH³/β = " + u(d))) return c;
  p.d = d.to_int();
  c.params = p;
  if (!g.d.contains(p.d)) return std::nullopt;
  if (!t.check("divpoint-gC-integral", gC.is_integer(), "g_C = 1 + α²rH³/2β² = " + u(gC))) return c;
  p.gC = gC.to_int();
  c.params = p;
  if (!g.gC.contains(p.gC)) return std::nullopt;
  if (!t.check("divpoint-alpha", alpha < r, "r' = " + std::to_string(alpha) + " < r = " + std::to_string(r)))
    return c;
  if (!t.check("divpoint-beta", beta <= 2, "β = " + std::to_string(beta))) return c;
  Rational k3 = Rational(r * H3) * pow(Rational(r) - Rational(alpha, beta), 2);
  if (!t.check("divpoint-hyperelliptic", beta == 1 || k3 == 2 || k3 == 4 || k3 == 8,
               "β = 2 needs (−K)³ ∈ {2, 4, 8}, got " + u(k3)))
    return c;
  if (!t.check("bc-ineq", 2 * p.gC - 2 < r * p.d && p.d < r * r * H3,
               "2g_C − 2 < rd and d < r²H³: " + u(Rational(2 * p.gC - 2)) + " < " + u(Rational(r * p.d)) + ", " +
                   u(Rational(p.d)) + " < " + u(Rational(r * r * H3))))
    return c;
  DerivedInvariants inv;
  try {
    inv = bc_invariants(p);
  } catch (const RelationViolated& e) {
    throw InternalError(std::string("divpoint: ") + e.what());
  }
  c.derived = inv;
  t.note("bc-ab1", ab1_detail(p, inv));
  if (!inv.point()) throw InternalError("divpoint: D is not contracted to a point");
  t.check("bc-k3", detail::positive_even(inv.k3), "(−K)³ = " + u(inv.k3));
  return c;
}

inline std::vector<CandidateCase> sweep(const SweepConfig& cfg) {
  const GridBounds& g = cfg.bounds;
  std::vector<CandidateCase> out;
  for (const auto& [r, hs] : cfg.fano) {
    if (!g.r.contains(r)) continue;
    for (long long H3 : hs) {
      for (long long beta = 1; beta <= g.beta.hi; ++beta)
        for (long long eps = 1; eps <= 2; ++eps)
          for (long long d = g.d.lo; d <= g.d.hi; ++d)
            if (auto c = candidate(r, H3, beta, eps, d, g)) out.push_back(std::move(*c));
      for (long long beta = 1; beta <= g.beta.hi; ++beta)
        for (long long alpha = 1; alpha <= g.alpha.hi; ++alpha)
          if (auto c = divpoint(r, H3, alpha, beta, g)) out.push_back(std::move(*c));
    }
  }
  return out;
}

}  // namespace bc

// ---------------------------------------------------------------- bp

namespace bp {

inline std::vector<long long> allowed_eps(PointCase k) {
  if (k == PointCase::QUADRIC) return {1, 2};
  return {1, 2, 4};
}

// Degree 8 weighted double covers that still carry a Veronese-type embedding.
inline bool veronese_admissible(const Rational& beta, int r, const Rational& eps) {
  if (beta <= 3) return true;
  return beta == 4 && Rational(r) <= eps && eps.is_integer() && (eps.to_int() - r) % 2 == 0;
}

inline std::optional<CandidateCase> candidate(PointCase k, int r, long long H3, const Rational& alpha,
                                              const FanoDegreeTable& fano) {
  using detail::u;
  CandidateCase c;
  c.family = Family::BLOWUP_POINT;
  c.branch = to_string(k);
  Rational beta = bp_beta(k, r, H3, alpha);
  BlowupPointParams p{k, r, H3, alpha, beta};
  c.params = p;
  detail::Trail t(c);
  bool integral = k == PointCase::P2_O2 ? (2 * alpha).is_integer() && (2 * beta).is_integer()
                                        : alpha.is_integer() && beta.is_integer();
  if (!t.check("bp-integral", integral, "α = " + u(alpha) + ", β = " + u(beta))) return c;
  if (k == PointCase::P2_O1 &&
      !t.check("bp-fano-degree", in_table(fano, r, H3),
               "(r, H³) = (" + std::to_string(r) + ", " + std::to_string(H3) + ")"))
    return c;
  Rational k3 = bp_k3(k, r, H3);
  Rational eps = bp_epsilon(k, alpha, k3);
  auto epss = allowed_eps(k);
  bool eok = eps.is_integer() && std::find(epss.begin(), epss.end(), eps.to_int()) != epss.end();
  if (!t.check("bp-eps", eok, "ε = " + u(eps))) return c;
  if (!t.check("bp-k3", detail::positive_even(k3), "(−K)³ = " + u(k3))) return c;
  c.half = k == PointCase::P2_O1 && r % 2 == 0 ? half_index(2, k3) : 1;
  try {
    c.derived = bp_invariants(p);
  } catch (const RelationViolated& e) {
    t.check("bp-genus", false, e.what());
    return c;
  }
  const auto& inv = *c.derived;
  long long kk = k3.to_int();
  if (k == PointCase::P2_O1 && r == 1 &&
      !t.check("beta-bound", beta <= 6 || (kk == 2 && beta == 7 && Rational(r) <= eps),
               "β = " + u(beta) + ", (−K)³ = " + u(k3)))
    return c;
  long long e = eps.to_int();
  // The complete-intersection constraints are derived for E = P^2 with normal bundle O(-1).
  if (k == PointCase::P2_O1 && kk == 2 && !t.zero("p2", bp_ci_residual(2, e, H3, beta, inv.degB, inv.gB), "sextic double solid residual"))
    return c;
  if (k == PointCase::P2_O1 && kk == 4 && !t.zero("p4", bp_ci_residual(4, e, H3, beta, inv.degB, inv.gB), "quartic residual")) return c;
  if (k == PointCase::P2_O1 && kk == 8 && !veronese_admissible(beta, r, eps) &&
      !t.zero("p6", bp_ci_residual(8, e, H3, beta, inv.degB, inv.gB), "(2)∩(2)∩(2) residual"))
    return c;
  if (!t.check("bp-degB", inv.KD2.sign() > 0, "−K·D² = " + u(inv.KD2))) return c;
  t.check("bp-gB", detail::nonneg_int(inv.gB), "g_B = " + u(inv.gB));
  return c;
}

inline std::vector<CandidateCase> sweep(const SweepConfig& cfg) {
  const GridBounds& g = cfg.bounds;
  std::vector<CandidateCase> out;
  for (PointCase k : {PointCase::P2_O1, PointCase::P2_O2, PointCase::QUADRIC})
    for (long long r = g.r.lo; r <= g.r.hi; ++r)
      for (long long H3 = g.H3.lo; H3 <= g.H3.hi; ++H3)
        for (long long n = g.alpha.lo; n <= 2 * g.alpha.hi; ++n)
          if (auto c = candidate(k, static_cast<int>(r), H3, detail::half_value(n), cfg.fano))
            out.push_back(std::move(*c));
  return out;
}

}  // namespace bp

// ---------------------------------------------------------------- driver

namespace detail {

inline auto sort_key(const CandidateCase& c) {
  Record f = c.fields();
  auto n = [&](const char* k) { return f.num(k); };
  return std::make_tuple(static_cast<int>(c.family), n("k3"), n("alpha"), n("beta"), n("H3"), n("d"), f.str());
}

}  // namespace detail

// Every grid point of the selected families with its verdict and trail.
inline std::vector<CandidateCase> enumerate(const SweepConfig& cfg) {
  std::vector<CandidateCase> out;
  for (Family f : all_families()) {
    if (cfg.family && *cfg.family != f) continue;
    std::vector<CandidateCase> part;
    switch (f) {
      case Family::DEL_PEZZO: part = dp::sweep(cfg); break;
      case Family::CONIC: part = cb::sweep(cfg); break;
      case Family::BLOWUP_CURVE: part = bc::sweep(cfg); break;
      case Family::BLOWUP_POINT: part = bp::sweep(cfg); break;
    }
    for (auto& c : part) {
      finalize(c, cfg);
      out.push_back(std::move(c));
    }
  }
  std::vector<std::pair<decltype(detail::sort_key(out.front())), std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) keys.emplace_back(detail::sort_key(out[i]), i);
  std::sort(keys.begin(), keys.end());
  std::vector<CandidateCase> sorted;
  sorted.reserve(out.size());
  for (auto& [k, i] : keys) sorted.push_back(std::move(out[i]));
  return sorted;
}

inline std::vector<CandidateCase> survivors(const std::vector<CandidateCase>& all) {
  std::vector<CandidateCase> s;
  for (const auto& c : all)
    if (c.verdict.survives()) s.push_back(c);
  return s;
}

struct AuditItem {
  CandidateCase candidate;
  std::string ledger_id;  // empty for a gap
};

struct AuditReport {
  Family family;
  std::size_t survivors_off = 0;
  std::size_t survivors_on = 0;
  std::vector<AuditItem> explained;
  std::vector<CandidateCase> gaps;
  std::vector<std::string> unused;

  bool complete() const { return gaps.empty() && unused.empty(); }
};

// Compares the ledger-free sweep with the ledgered one.
inline AuditReport audit(Family f, const SweepConfig& base) {
  SweepConfig off = base, on = base;
  off.family = on.family = f;
  off.use_ledger = false;
  on.use_ledger = true;
  auto s_off = survivors(enumerate(off));
  auto s_on = survivors(enumerate(on));
  AuditReport rep;
  rep.family = f;
  rep.survivors_off = s_off.size();
  rep.survivors_on = s_on.size();
  std::vector<std::string> on_keys;
  for (const auto& c : s_on) on_keys.push_back(c.fields().str());
  std::sort(on_keys.begin(), on_keys.end());
  std::set<std::string> used;
  for (const auto& c : s_off) {
    if (std::binary_search(on_keys.begin(), on_keys.end(), c.fields().str())) continue;
    if (const LedgerEntry* e = base.ledger.match(short_name(f), c.fields())) {
      rep.explained.push_back({c, e->id});
      used.insert(e->id);
    } else {
      rep.gaps.push_back(c);
    }
  }
  for (const auto& e : base.ledger.entries())
    if (e.family == short_name(f) && !used.count(e.id)) rep.unused.push_back(e.id);
  return rep;
}

}  // namespace afano
