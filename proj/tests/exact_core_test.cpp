#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace afano;

namespace {

IntersectionForm v22_conic() { return blowup_curve_form(2, 2, 2, 0); }

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-4"), Rational(-4));
  EXPECT_EQ(Rational(5, 2).str(), "5/2");
  EXPECT_EQ(Rational(-6, 3).str(), "-2");
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational(1, 2).to_int(), std::domain_error);
}

TEST(Triple, BlowupOfConicOnV22) {
  auto f = v22_conic();
  DivisorClass P = f.b1(), E = f.b2();
  DivisorClass mK = 2 * P - E;
  EXPECT_EQ(cube(f, mK), 6);
  EXPECT_EQ(triple(f, P, P, E), 0);
  EXPECT_EQ(cube(f, P - E), -2);
}

TEST(Triple, BasisMismatchNamesBoth) {
  auto f = v22_conic();
  auto g = blowup_point_form(PointCase::QUADRIC, 4);
  try {
    triple(f, f.b1(), g.b1(), f.b1());
    FAIL() << "expected BasisMismatch";
  } catch (const BasisMismatch& e) {
    std::string w = e.what();
    EXPECT_NE(w.find(f.basis), std::string::npos);
    EXPECT_NE(w.find(g.basis), std::string::npos);
  }
  EXPECT_THROW(f.b1() + g.b1(), BasisMismatch);
}

TEST(Triple, SymmetricAndLinear) {
  std::mt19937_64 g(7);
  std::uniform_int_distribution<int> ri(1, 4), hi(1, 20), di(1, 20), gi(0, 20);
  for (int i = 0; i < 500; ++i) {
    auto f = blowup_curve_form(ri(g), hi(g), di(g), gi(g));
    DivisorClass x = f.cls(oracle::rand_q(g, 9, 5), oracle::rand_q(g, 9, 5));
    DivisorClass y = f.cls(oracle::rand_q(g, 9, 5), oracle::rand_q(g, 9, 5));
    DivisorClass z = f.cls(oracle::rand_q(g, 9, 5), oracle::rand_q(g, 9, 5));
    DivisorClass w = f.cls(oracle::rand_q(g, 9, 5), oracle::rand_q(g, 9, 5));
    Rational s = oracle::rand_q(g, 9, 5);
    std::vector<DivisorClass> v = {x, y, z};
    std::vector<int> idx = {0, 1, 2};
    Rational base = triple(f, x, y, z);
    do {
      EXPECT_EQ(triple(f, v[idx[0]], v[idx[1]], v[idx[2]]), base);
    } while (std::next_permutation(idx.begin(), idx.end()));
    EXPECT_EQ(triple(f, s * x + w, y, z), s * base + triple(f, w, y, z));
  }
}

TEST(Forms, BlowupCurve) {
  EXPECT_EQ(blowup_curve_form(2, 2, 2, 0).t030, -2);
  EXPECT_EQ(blowup_curve_form(1, 2, 1, 0).t030, 1);
  auto f = blowup_curve_form(4, 1, 7, 6);
  EXPECT_EQ(cube(f, f.cls(4, -1)), 18);
  EXPECT_THROW(blowup_curve_form(5, 1, 1, 0), std::out_of_range);
  EXPECT_THROW(blowup_curve_form(1, 2, 0, 0), std::out_of_range);
}

TEST(Forms, BlowupCurveAnticanonicalCubeOnGrid) {
  for (int r = 1; r <= 4; ++r)
    for (long long H3 = 1; H3 <= 22; ++H3)
      for (long long d = 1; d <= 24; ++d)
        for (long long gC = 0; gC <= 30; gC += 3) {
          auto f = blowup_curve_form(r, H3, d, gC);
          ASSERT_EQ(cube(f, f.cls(r, -1)), Rational(r * r * r * H3 - 2 * r * d + 2 * gC - 2));
        }
}

TEST(Forms, BlowupPoint) {
  auto a = blowup_point_form(PointCase::P2_O1, 2);
  EXPECT_EQ(cube(a, a.cls(2, -2)), 8);
  auto b = blowup_point_form(PointCase::QUADRIC, 4);
  EXPECT_EQ(cube(b, b.cls(1, -1)), 2);
  auto c = blowup_point_form(PointCase::P2_O2, 20);
  EXPECT_EQ(cube(c, c.cls(1, -1)) / 8, 2);
  EXPECT_EQ(cube(c, bp_minus_k(c, PointCase::P2_O2, 1)), 2);
}

TEST(Forms, RandomClosedForms) {
  std::string first;
  EXPECT_EQ(oracle::triple_closed_form_failures(10000, 20240611, &first), 0u) << first;
}

TEST(Chern, TwistExamples) {
  ChernData c{Base::P2, 2, -1, 4};
  EXPECT_EQ(chern_twist(c, 2), (ChernData{Base::P2, 2, 3, 6}));
  EXPECT_EQ(chern_twist(c, 0), c);
  EXPECT_EQ(chern_twist(ChernData{Base::P1, 2, 2, 0}, 1).c1, 4);
}

TEST(Chern, TwistAgreesWithRoots) {
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int t = -3; t <= 3; ++t) {
        auto e = oracle::from_roots({a, b});
        auto tw = oracle::from_roots(oracle::twist_roots({a, b}, t));
        ChernData got = chern_twist({Base::P2, 2, e.c1.to_int(), e.c2.to_int()}, t);
        EXPECT_EQ(Rational(got.c1), tw.c1);
        EXPECT_EQ(Rational(got.c2), tw.c2);
      }
}

TEST(Chern, TwistComposes) {
  for (int r = 1; r <= 4; ++r)
    for (long long c1 = -3; c1 <= 3; ++c1)
      for (long long c2 = -3; c2 <= 3; ++c2)
        for (long long s = -3; s <= 3; ++s)
          for (long long t = -3; t <= 3; ++t) {
            ChernData c{Base::P2, r, c1, c2};
            EXPECT_EQ(chern_twist(chern_twist(c, s), t), chern_twist(c, s + t));
          }
}

TEST(Chern, Sym2CoefficientsFromSplittingPrinciple) {
  auto k = oracle::derive_sym2_coefficients();
  EXPECT_EQ(k[0], 4);
  EXPECT_EQ(k[1], 5);
  EXPECT_EQ(k[2], 5);
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c) {
        auto e = oracle::from_roots({a, b, c});
        auto s = oracle::from_roots(oracle::sym2_roots({a, b, c}));
        ChernData got = sym2_chern_rank3({Base::P2, 3, e.c1.to_int(), e.c2.to_int()});
        ASSERT_EQ(got.rank, 6);
        ASSERT_EQ(Rational(got.c1), s.c1);
        ASSERT_EQ(Rational(got.c2), s.c2);
      }
}

TEST(Chern, Sym2Examples) {
  EXPECT_EQ(sym2_chern_rank3({Base::P2, 3, 0, 0}), (ChernData{Base::P2, 6, 0, 0}));
  EXPECT_THROW(sym2_chern_rank3({Base::P2, 2, 0, 0}), std::invalid_argument);
  ChernData e{Base::P2, 3, 3, 3};
  EXPECT_EQ(rr_p2(sym2_chern_rank3(chern_twist(e, -1))), Rational(3 * 9 - 2 * 3 - 5 * 3));
}

TEST(Chern, Sym2RiemannRochIdentityOnGrid) {
  for (long long c1 = -5; c1 <= 5; ++c1)
    for (long long c2 = -10; c2 <= 20; ++c2) {
      ChernData e{Base::P2, 3, c1, c2};
      ASSERT_EQ(rr_p2(sym2_chern_rank3(chern_twist(e, -1))), Rational(3 * c1 * c1 - 2 * c1 - 5 * c2))
          << c1 << "," << c2;
    }
}

TEST(RiemannRoch, PlaneExamples) {
  EXPECT_EQ(rr_p2({Base::P2, 1, 2, 0}), 6);
  for (long long c2 = 0; c2 <= 10; ++c2) EXPECT_EQ(rr_p2(chern_twist({Base::P2, 2, -1, c2}, 2)), Rational(9 - c2));
  for (long long c1 = -6; c1 <= 6; ++c1) {
    Rational c2 = Rational(c1 * c1, 2) + Rational(3 * c1, 2) - 3;
    ASSERT_TRUE(c2.is_integer());
    EXPECT_EQ(rr_p2({Base::P2, 3, c1, c2.to_int()}), 6);
  }
  EXPECT_THROW(rr_p2({Base::P1, 1, 0, 0}), std::invalid_argument);
}

TEST(RiemannRoch, PlaneAgreesWithSplitBundles) {
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int c = -4; c <= 4; ++c) {
        auto e = oracle::from_roots({a, b, c});
        ChernData d{Base::P2, 3, e.c1.to_int(), e.c2.to_int()};
        ASSERT_EQ(rr_p2(d), oracle::chi_split({a, b, c}));
      }
}

TEST(RiemannRoch, PlaneAdditive) {
  for (long long a = -5; a <= 5; ++a)
    for (long long b = -5; b <= 5; ++b) {
      ChernData x{Base::P2, 1, a, 0}, y{Base::P2, 1, b, 0};
      EXPECT_EQ(rr_p2(chern_sum(x, y)), rr_p2(x) + rr_p2(y));
    }
}

TEST(RiemannRoch, Line) {
  for (long long d = 0; d <= 8; ++d) EXPECT_EQ(rr_p1(d + 1, 2), d + 3);
  EXPECT_EQ(rr_p1(1, -1), 0);
  EXPECT_EQ(rr_p1(4, 2), 6);
}

TEST(Helpers, ZetaAndSections) {
  EXPECT_EQ(zeta4(5, 18), 7);
  EXPECT_EQ(h0_p2(-1), 0);
  EXPECT_EQ(h0_p2(2), 6);
}
