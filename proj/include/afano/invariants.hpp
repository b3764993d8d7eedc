#pragma once

#include "afano/exact_core.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace afano {

struct DelPezzoParams {
  Rational alpha;
  Rational beta;
  long long KF2 = 0;
  // Set on the P^2-bundle branch: X = P(O(a1) + O(a2) + O).
  std::optional<std::pair<long long, long long>> split;

  friend bool operator==(const DelPezzoParams&, const DelPezzoParams&) = default;
};

// D = a*eta + b*h on P(F), F normalized rank 2 on P2.
struct P1BundleData {
  long long a = 0;
  long long b = 0;
  std::optional<long long> lambda;

  friend bool operator==(const P1BundleData&, const P1BundleData&) = default;
};

// alpha, beta are rational: the P^1-bundle rows have alpha in (1/2)Z.
// c1, c2 are the Chern numbers of E = phi_*(-K) or, on the P^1-bundle
// branch, of the normalized F.
struct ConicParams {
  Rational alpha;
  Rational beta;
  long long c1 = 0;
  long long c2 = 0;
  long long d = 0;
  std::optional<P1BundleData> p1;

  friend bool operator==(const ConicParams&, const ConicParams&) = default;
};

struct BlowupCurveParams {
  int r = 1;
  long long H3 = 0;
  long long d = 0;
  long long gC = 0;
  long long alpha = 0;
  long long beta = 0;

  long long epsilon() const { return beta * r - alpha; }
  friend bool operator==(const BlowupCurveParams&, const BlowupCurveParams&) = default;
};

struct BlowupPointParams {
  PointCase kase = PointCase::P2_O1;
  int r = 1;
  long long H3 = 0;
  Rational alpha;
  Rational beta;

  friend bool operator==(const BlowupPointParams&, const BlowupPointParams&) = default;
};

struct DerivedInvariants {
  Rational k3;
  Rational epsilon;
  Rational KD2;
  Rational D3;
  Rational degB;
  Rational gB;
  Rational gX;

  // D is contracted to a point: K.D^2 = 0, B does not exist.
  bool point() const { return KD2.is_zero(); }
  friend bool operator==(const DerivedInvariants&, const DerivedInvariants&) = default;
};

struct RelationViolated : std::domain_error {
  explicit RelationViolated(const std::string& what) : std::domain_error(what) {}
};

inline long long x_genus(const Rational& k3) {
  if (!k3.is_integer() || k3.sign() <= 0 || k3.to_int() % 2 != 0)
    throw std::domain_error("x_genus: (-K)^3 must be a positive even integer, got " + k3.str());
  return k3.to_int() / 2 + 1;
}

// Genus of B from chi(O_D) = 1 - g_B when K^2.D = 0:
// chi(O_D) = c2.D/12 + K.D^2/4 + D^3/6 (Riemann-Roch on X, K.D^2 with K = K_X).
inline Rational rr_curve_genus(const Rational& c2D, const Rational& KD2, const Rational& D3) {
  return Rational(1) - c2D / 12 - KD2 / 4 - D3 / 6;
}

// Same, computed on a lattice: c2 is given on the basis.
inline Rational rr_curve_genus(const IntersectionForm& f, const Rational& c2_b1, const Rational& c2_b2,
                               const DivisorClass& minusK, const DivisorClass& D) {
  Rational KD2 = -triple(f, minusK, D, D);
  return rr_curve_genus(c2_b1 * D.a + c2_b2 * D.b, KD2, cube(f, D));
}

inline DerivedInvariants finish(Rational k3, Rational eps, Rational KD2, Rational D3, Rational gB) {
  DerivedInvariants inv;
  inv.k3 = std::move(k3);
  inv.epsilon = std::move(eps);
  inv.KD2 = std::move(KD2);
  inv.D3 = std::move(D3);
  inv.degB = inv.KD2 / 2;
  inv.gB = inv.point() ? Rational(0) : std::move(gB);
  inv.gX = inv.k3 / 2 + 1;
  return inv;
}

// ---- del Pezzo fibrations, D = -alpha K - beta F ----

inline Rational dp_k3(const DelPezzoParams& p) {
  if (p.alpha.is_zero()) throw std::domain_error("dp_k3: alpha = 0");
  return p.beta * Rational(p.KF2) / p.alpha;
}

inline Rational dp_consistency(long long alpha, const Rational& k3) {
  Rational a(alpha);
  return (pow(a, 3) / 12 - a / 12) * k3 - 2 * a + 2;
}

inline std::pair<Rational, Rational> dp_genus_beta2(long long alpha, const Rational& k3) {
  Rational a(alpha);
  Rational gA = (pow(a, 3) / 3 - pow(a, 2) / 4 - a / 12) * k3 - 2 * a + 3;
  Rational gB = pow(a, 2) * (a - 1) / 4 * k3 + 1;
  return {gA, gB};
}

inline Rational dp_genus_beta1(long long alpha, const Rational& k3) {
  Rational a(alpha);
  return (pow(a, 3) / 3 - pow(a, 2) / 4 - a / 12) * k3 - 2 * a + 2;
}

// c2.F = 12 - K_F^2, c2.(-K) = 24.
inline DerivedInvariants dp_invariants(const DelPezzoParams& p) {
  Rational k3 = dp_k3(p);
  const Rational& a = p.alpha;
  const Rational& b = p.beta;
  Rational kf2(p.KF2);
  Rational KD2 = a * a * k3;
  Rational D3 = pow(a, 3) * k3 - 3 * a * a * b * kf2;
  Rational c2D = 24 * a - b * (12 - kf2);
  return finish(k3, b, KD2, D3, rr_curve_genus(c2D, KD2, D3));
}

// P(O(a1) + O(a2) + O) over P1 with a1 + a2 = 2, D = xi - a1 F.
inline DelPezzoParams p2_bundle_params(long long a1, long long a2) {
  // -K = 3 xi + (2 - a1 - a2) F; with a1 + a2 = 2, xi = -K/3 and D = -K/3 - a1 F.
  return {Rational(1, 3), Rational(a1), 9, std::make_pair(a1, a2)};
}

// ---- conic bundles over P2, D = alpha(-K) + beta h ----

inline Rational cb_k3(const ConicParams& p) {
  if (p.alpha.is_zero()) throw std::domain_error("cb_k3: alpha = 0");
  return -p.beta * Rational(12 - p.d) / p.alpha;
}

// k3 of X in |2 zeta + (3 - c1) h| inside P(E).
inline Rational cb_k3_from_chern(long long c1, long long c2) { return Rational(c1 * c1 - 2 * c2 + 3 * c1); }

inline std::pair<Rational, Rational> cb_divisorial_residuals(const ConicParams& p) {
  Rational c1(p.c1), c2(p.c2);
  Rational r1 = p.alpha * (c1 * c1 - c2) + p.beta * c1;
  Rational r2 = 2 * p.alpha * (c1 * c1 - c2) + (p.alpha * (3 - c1) + 2 * p.beta) * c1 + (3 - c1) * p.beta;
  return {r1, r2};
}

// Uses the k3 relation; c2.h = 6 + d, c2.(-K) = 24.
inline DerivedInvariants cb_invariants(const ConicParams& p) {
  Rational k3 = cb_k3(p);
  const Rational& a = p.alpha;
  const Rational& b = p.beta;
  Rational KD2 = a * a * k3 - 2 * b * b;
  Rational D3 = pow(a, 3) * k3 + 3 * a * a * b * Rational(12 - p.d) + 6 * a * b * b;
  Rational c2D = 24 * a + b * Rational(6 + p.d);
  return finish(k3, -b, KD2, D3, rr_curve_genus(c2D, KD2, D3));
}

// P^1-bundle P(F) with -K = 2 eta + (3 - c1F) h; c2.h = 6, c2.eta = 3 + 3 c1F.
inline DerivedInvariants p1_bundle_invariants(long long c1F, long long c2F, const P1BundleData& q) {
  IntersectionForm f = p1_bundle_form(c1F, c2F);
  DivisorClass mK = f.cls(2, 3 - c1F);
  DivisorClass D = f.cls(q.a, q.b);
  Rational k3 = cube(f, mK);
  Rational KD2 = -triple(f, mK, D, D);
  Rational D3 = cube(f, D);
  Rational gB = rr_curve_genus(f, Rational(3 + 3 * c1F), 6, mK, D);
  return finish(k3, 0, KD2, D3, gB);
}

// ---- blowup of a curve, D = alpha phi*H - beta E ----

inline DerivedInvariants bc_invariants(const BlowupCurveParams& p) {
  Rational r(p.r), H3(p.H3), d(p.d), gC(p.gC), a(p.alpha), b(p.beta);
  Rational eps(p.epsilon());
  Rational k3 = pow(r, 3) * H3 - 2 * r * d + 2 * gC - 2;
  if (b * k3 != eps * (r * r * H3 - d))
    throw RelationViolated("bc_invariants: line 1 (beta k3 = eps (r^2 H3 - d)) fails");
  Rational KD2 = eps * (a * r * H3 - b * d);
  IntersectionForm f = blowup_curve_form(p.r, p.H3, p.d, p.gC);
  if (-triple(f, f.cls(r, -1), f.cls(a, -b), f.cls(a, -b)) != KD2)
    throw RelationViolated("bc_invariants: line 2 (K.D^2 = eps (alpha r H3 - beta d)) fails");
  if (b * (2 * gC - 2) != (b * r + a) * d - a * r * r * H3)
    throw RelationViolated("bc_invariants: line 3 (beta (2gC - 2) = (beta r + alpha) d - alpha r^2 H3) fails");
  Rational D3 = pow(a, 3) * H3 + b * b * (b * r - 3 * a) * d + 2 * pow(b, 3) * (gC - 1);
  Rational gB = Rational(1) - 2 * a / r + eps * d / 12 - KD2 / 4 - D3 / 6;
  return finish(k3, eps, KD2, D3, gB);
}

// Residuals of the complete-intersection / double-cover constraints.
enum class CiTag { N4, N5A, N5B, N6, H2 };

inline const char* to_string(CiTag t) {
  switch (t) {
    case CiTag::N4: return "n4";
    case CiTag::N5A: return "n5a";
    case CiTag::N5B: return "n5b";
    case CiTag::N6: return "n6";
    case CiTag::H2: return "h2";
  }
  return "?";
}

inline Rational bc_ci_residual(long long k3, CiTag tag, long long eps, long long H3, long long beta,
                               const Rational& degB, const Rational& gB) {
  Rational e(eps), b(beta);
  Rational lhs = pow(e, 3) * Rational(H3);
  Rational tail = 4 * (gB - 1);
  auto need = [&](long long want) {
    if (k3 != want)
      throw std::invalid_argument("bc_ci_residual: tag " + std::string(to_string(tag)) + " needs k3 = " +
                                  std::to_string(want));
  };
  switch (tag) {
    case CiTag::N4: need(4); return lhs - (4 * pow(b, 3) - (6 * b - 6) * degB + tail);
    case CiTag::N5A: need(6); return lhs - (6 * pow(b, 3) - (6 * b - 5) * degB + tail);
    case CiTag::N5B: need(6); return lhs - (6 * pow(b, 3) - (6 * b - 4) * degB + tail);
    case CiTag::N6: need(8); return lhs - (8 * pow(b, 3) - (6 * b - 4) * degB + tail);
    case CiTag::H2: need(2); return lhs - (2 * pow(b, 3) - (6 * b - 8) * degB + tail);
  }
  throw std::invalid_argument("bc_ci_residual: unsupported tag");
}

// ---- blowup of a point, D = alpha phi*H - beta E ----

// -K in the (phi*H, E) basis, up to the factor that makes it integral:
// P2_O1: rP - 2E; P2_O2: (rP - E)/2; QUADRIC: rP - E.
inline DivisorClass bp_minus_k(const IntersectionForm& f, PointCase c, int r) {
  switch (c) {
    case PointCase::P2_O1: return f.cls(r, -2);
    case PointCase::P2_O2: return f.cls(Rational(r, 2), Rational(-1, 2));
    case PointCase::QUADRIC: return f.cls(r, -1);
  }
  throw std::invalid_argument("bp_minus_k");
}

inline Rational bp_k3(PointCase c, int r, long long H3) {
  Rational m = pow(Rational(r), 3) * Rational(H3);
  switch (c) {
    case PointCase::P2_O1: return m - 8;
    case PointCase::P2_O2: return (m - 4) / 8;
    case PointCase::QUADRIC: return m - 2;
  }
  return 0;
}

// beta forced by D.l = -2 on the exceptional lines.
inline Rational bp_beta(PointCase c, int r, long long H3, const Rational& alpha) {
  Rational m = alpha * Rational(r) * Rational(r) * Rational(H3);
  switch (c) {
    case PointCase::P2_O1: return m / 4;
    case PointCase::P2_O2: return m / 4;
    case PointCase::QUADRIC: return m / 2;
  }
  return 0;
}

inline Rational bp_epsilon(PointCase c, const Rational& alpha, const Rational& k3) {
  switch (c) {
    case PointCase::P2_O1: return alpha * k3 / 4;
    case PointCase::P2_O2: return 4 * alpha * k3;
    case PointCase::QUADRIC: return alpha * k3 / 2;
  }
  return 0;
}

inline DerivedInvariants bp_invariants(const BlowupPointParams& p) {
  if (p.beta != bp_beta(p.kase, p.r, p.H3, p.alpha))
    throw RelationViolated(std::string("bp_invariants: beta relation fails for ") + to_string(p.kase));
  Rational r(p.r), H3(p.H3);
  const Rational& a = p.alpha;
  const Rational& b = p.beta;
  Rational k3 = bp_k3(p.kase, p.r, p.H3);
  Rational eps = bp_epsilon(p.kase, a, k3);
  Rational KD2;
  switch (p.kase) {
    case PointCase::P2_O1: KD2 = a * a * r * H3 * k3 / 8; break;
    case PointCase::P2_O2: KD2 = a * a * r * H3 * k3; break;
    case PointCase::QUADRIC: KD2 = a * a * r * H3 * k3 / 2; break;
  }
  Rational D3 = pow(a, 3) * H3 - pow(b, 3) * exceptional_cube(p.kase);
  Rational gB;
  if (p.kase == PointCase::P2_O1) {
    gB = Rational(1) - 2 * a / r + a * a * H3 * (3 * r - 2 * a) / 12 + b * b * (b - 3) / 6;
  } else if (p.kase == PointCase::QUADRIC && eps == 1) {
    // phi*H.l = 2: only a plane curve of degree <= 2 has a forced genus.
    if (KD2 / 2 > 2) throw RelationViolated("bp_invariants: genus of B not determined for phi*H.l = 2");
    gB = 0;
  } else {
    // phi*H.l = 1: D is a P^1-bundle over B and K_D^2 = 8(1 - g_B).
    gB = Rational(1) - (2 * KD2 + D3) / 8;
  }
  return finish(k3, eps, KD2, D3, gB);
}

inline Rational bp_ci_residual(long long k3, long long eps, long long H3, const Rational& beta,
                               const Rational& degB, const Rational& gB) {
  Rational lhs = pow(Rational(eps), 3) * Rational(H3);
  Rational tail = 32 * (gB - 1);
  switch (k3) {
    case 2: return lhs - (2 * pow(beta, 3) - 8 * (3 * beta - 8) * degB + tail);
    case 4: return lhs - (4 * pow(beta, 3) - 24 * (beta - 2) * degB + tail);
    case 8: return lhs - (8 * pow(beta, 3) - 8 * (3 * beta - 4) * degB + tail);
    default: throw std::invalid_argument("bp_ci_residual: unsupported k3 " + std::to_string(k3));
  }
}

// ---- blowup of a curve with D the strict transform of a divisor through a point ----

struct DivpointRow {
  long long k3, d;
  Rational gC;
  long long alpha, beta;
};

inline DivpointRow divpoint_row(int r, int rprime, long long H3) {
  if (rprime < 1 || rprime >= r) throw std::invalid_argument("divpoint_row: need 1 <= r' < r");
  long long rp = rprime;
  return {r * (r - rp) * (r - rp) * H3, r * rp * H3, Rational(2 + r * rp * rp * H3, 2), rp, 1};
}

}  // namespace afano
