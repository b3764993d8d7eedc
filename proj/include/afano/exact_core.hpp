#pragma once

#include "afano/rational.hpp"

#include <stdexcept>
#include <string>

namespace afano {

struct BasisMismatch : std::invalid_argument {
  BasisMismatch(const std::string& a, const std::string& b)
      : std::invalid_argument("basis mismatch: '" + a + "' vs '" + b + "'") {}
};

// A class a*B1 + b*B2 on a rank-2 Picard lattice.
struct DivisorClass {
  std::string basis;
  Rational a;
  Rational b;

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

inline void require_same_basis(const std::string& x, const std::string& y) {
  if (x != y) throw BasisMismatch(x, y);
}

inline DivisorClass operator+(const DivisorClass& x, const DivisorClass& y) {
  require_same_basis(x.basis, y.basis);
  return {x.basis, x.a + y.a, x.b + y.b};
}
inline DivisorClass operator-(const DivisorClass& x, const DivisorClass& y) {
  require_same_basis(x.basis, y.basis);
  return {x.basis, x.a - y.a, x.b - y.b};
}
inline DivisorClass operator-(const DivisorClass& x) { return {x.basis, -x.a, -x.b}; }
inline DivisorClass operator*(const Rational& s, const DivisorClass& x) {
  return {x.basis, s * x.a, s * x.b};
}

// Symmetric trilinear form fixed by B1^3, B1^2 B2, B1 B2^2, B2^3.
struct IntersectionForm {
  std::string basis;
  Rational t300, t210, t120, t030;

  DivisorClass cls(const Rational& a, const Rational& b) const { return {basis, a, b}; }
  DivisorClass b1() const { return cls(1, 0); }
  DivisorClass b2() const { return cls(0, 1); }
};

inline Rational triple(const IntersectionForm& f, const DivisorClass& x, const DivisorClass& y,
                       const DivisorClass& z) {
  require_same_basis(f.basis, x.basis);
  require_same_basis(f.basis, y.basis);
  require_same_basis(f.basis, z.basis);
  const Rational* m[4] = {&f.t300, &f.t210, &f.t120, &f.t030};
  const Rational xs[2] = {x.a, x.b}, ys[2] = {y.a, y.b}, zs[2] = {z.a, z.b};
  Rational s = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        if (xs[i].is_zero() || ys[j].is_zero() || zs[k].is_zero()) continue;
        s += xs[i] * ys[j] * zs[k] * *m[i + j + k];
      }
  return s;
}

inline Rational cube(const IntersectionForm& f, const DivisorClass& x) { return triple(f, x, x, x); }

// Basis (phi*H, E) on the blowup of a Fano Y of index r along a curve of
// degree d and genus gC.
inline IntersectionForm blowup_curve_form(int r, long long H3, long long d, long long gC) {
  if (r < 1 || r > 4) throw std::out_of_range("blowup_curve_form: r must be in 1..4");
  if (H3 < 1 || d < 1 || gC < 0) throw std::out_of_range("blowup_curve_form: H3, d >= 1 and gC >= 0");
  std::string id = "bc(r=" + std::to_string(r) + ",H3=" + std::to_string(H3) + ",d=" + std::to_string(d) +
                   ",gC=" + std::to_string(gC) + ")";
  return {id, Rational(H3), 0, Rational(-d), Rational(-(r * d + 2 * gC - 2))};
}

enum class PointCase { P2_O1, P2_O2, QUADRIC };

inline const char* to_string(PointCase c) {
  switch (c) {
    case PointCase::P2_O1: return "P2_O1";
    case PointCase::P2_O2: return "P2_O2";
    case PointCase::QUADRIC: return "QUADRIC";
  }
  return "?";
}

inline Rational exceptional_cube(PointCase c) {
  switch (c) {
    case PointCase::P2_O1: return 1;
    case PointCase::P2_O2: return 4;
    case PointCase::QUADRIC: return 2;
  }
  return 0;
}

// Basis (phi*H, E) on the blowup of a point; E is disjoint from a general H.
inline IntersectionForm blowup_point_form(PointCase c, long long H3) {
  if (H3 < 1) throw std::out_of_range("blowup_point_form: H3 >= 1");
  std::string id = std::string("bp(") + to_string(c) + ",H3=" + std::to_string(H3) + ")";
  return {id, Rational(H3), 0, 0, exceptional_cube(c)};
}

// Basis (-K, F) for a del Pezzo fibration over P1 with fibre degree KF2.
inline IntersectionForm del_pezzo_form(const Rational& k3, long long KF2) {
  return {"dp(k3=" + k3.str() + ",KF2=" + std::to_string(KF2) + ")", k3, Rational(KF2), 0, 0};
}

// Basis (xi, F) on P(O(a1) + O(a2) + O) over P1.
inline IntersectionForm p2_bundle_form(long long a1, long long a2) {
  return {"p2b(" + std::to_string(a1) + "," + std::to_string(a2) + ")", Rational(a1 + a2), 1, 0, 0};
}

// Basis (-K, h) for a conic bundle over P2 with discriminant of degree d,
// h the pullback of a line.
inline IntersectionForm conic_form(const Rational& k3, long long d) {
  return {"cb(k3=" + k3.str() + ",d=" + std::to_string(d) + ")", k3, Rational(12 - d), 2, 0};
}

// Basis (eta, h) on P(F) for a rank-2 bundle F on P2, eta the tautological class.
inline IntersectionForm p1_bundle_form(long long c1F, long long c2F) {
  return {"p1b(" + std::to_string(c1F) + "," + std::to_string(c2F) + ")", Rational(c1F * c1F - c2F),
          Rational(c1F), 1, 0};
}

// Top self-intersection of the tautological class on P(E), E of rank 3 over P2.
inline Rational zeta4(long long c1, long long c2) { return Rational(c1 * c1 - c2); }

enum class Base { P1, P2 };

struct ChernData {
  Base base = Base::P2;
  int rank = 1;
  long long c1 = 0;
  long long c2 = 0;

  friend bool operator==(const ChernData&, const ChernData&) = default;
};

inline ChernData chern_twist(const ChernData& c, long long t) {
  if (c.base == Base::P1) return {Base::P1, c.rank, c.c1 + c.rank * t, 0};
  long long r = c.rank;
  return {Base::P2, c.rank, c.c1 + r * t, c.c2 + (r - 1) * t * c.c1 + r * (r - 1) / 2 * t * t};
}

// Whitney sum.
inline ChernData chern_sum(const ChernData& x, const ChernData& y) {
  if (x.base != y.base) throw std::invalid_argument("chern_sum: bundles on different bases");
  if (x.base == Base::P1) return {Base::P1, x.rank + y.rank, x.c1 + y.c1, 0};
  return {Base::P2, x.rank + y.rank, x.c1 + y.c1, x.c2 + y.c2 + x.c1 * y.c1};
}

// S^2 of a rank-3 bundle on P2. Closed form from the six Chern roots
// 2a, 2b, 2c, a+b, a+c, b+c; see tests/splitting_oracle.hpp.
inline ChernData sym2_chern_rank3(const ChernData& c) {
  if (c.base != Base::P2 || c.rank != 3) throw std::invalid_argument("sym2_chern_rank3: need rank 3 on P2");
  return {Base::P2, 6, 4 * c.c1, 5 * c.c1 * c.c1 + 5 * c.c2};
}

inline Rational rr_p2(const ChernData& c) {
  if (c.base != Base::P2) throw std::invalid_argument("rr_p2: base must be P2");
  return Rational(c.rank) + Rational(3, 2) * Rational(c.c1) +
         Rational(1, 2) * Rational(c.c1 * c.c1 - 2 * c.c2);
}

inline long long rr_p1(long long rank, long long c1) { return c1 + rank; }

// h^0(O(n)) on P2.
inline long long h0_p2(long long n) { return n < 0 ? 0 : (n + 1) * (n + 2) / 2; }

}  // namespace afano
