#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

using namespace afano;

namespace {

const std::vector<CandidateCase>& full_run() {
  static const std::vector<CandidateCase> all = enumerate(SweepConfig::defaults());
  return all;
}

std::vector<CandidateCase> survivors_of(Family f, const std::vector<CandidateCase>& all = full_run()) {
  std::vector<CandidateCase> out;
  for (const auto& c : all)
    if (c.family == f && c.verdict.survives()) out.push_back(c);
  return out;
}

const TrailStep* step(const CandidateCase& c, const std::string& id) {
  for (const auto& s : c.trail)
    if (s.id == id) return &s;
  return nullptr;
}

bool has(const Record& r, const std::string& k, const Value& v) {
  const Value* x = r.get(k);
  return x && *x == v;
}

}  // namespace

// ---------------------------------------------------------------- counts

TEST(Sweep, SurvivorCountsPerFamily) {
  EXPECT_EQ(survivors_of(Family::DEL_PEZZO).size(), 15u);
  EXPECT_EQ(survivors_of(Family::CONIC).size(), 12u);
  EXPECT_EQ(survivors_of(Family::BLOWUP_CURVE).size(), 34u);  // 24 fixed rows + 10 divisor-through-point cases
  EXPECT_EQ(survivors_of(Family::BLOWUP_POINT).size(), 7u);
}

TEST(Sweep, OpenCasesAreExactlyTheTwoUndecidedFibrations) {
  std::set<long long> kf;
  for (const auto& c : full_run()) {
    if (c.verdict.kind != VerdictKind::EXISTENCE_OPEN) continue;
    ASSERT_EQ(c.family, Family::DEL_PEZZO);
    kf.insert(std::get<DelPezzoParams>(c.params).KF2);
  }
  EXPECT_EQ(kf, (std::set<long long>{5, 6}));
}

TEST(Sweep, SoundnessOfSurvivors) {
  for (const auto& c : full_run()) {
    if (!c.verdict.survives()) continue;
    for (const auto& s : c.trail) {
      ASSERT_TRUE(s.pass) << c.fields().str() << " " << s.id;
      if (s.residual) {
        ASSERT_TRUE(s.residual->is_zero()) << s.id;
      }
    }
    ASSERT_TRUE(c.derived);
    EXPECT_TRUE(c.derived->k3.is_integer() && c.derived->k3.sign() > 0 && c.derived->k3.to_int() % 2 == 0);
    EXPECT_GE(x_genus(c.derived->k3), 2);
    EXPECT_TRUE(c.derived->gB.is_integer() && c.derived->gB.sign() >= 0);
    EXPECT_EQ(c.derived->degB, c.derived->KD2 / 2);
    EXPECT_EQ(c.derived->gX, c.derived->k3 / 2 + 1);
    if (c.family == Family::BLOWUP_CURVE) {
      const auto& p = std::get<BlowupCurveParams>(c.params);
      EXPECT_GE(p.gC, 0);
      EXPECT_GE(p.d, 1);
    }
  }
}

TEST(Sweep, RuledDivisorIdentityWhenEpsilonIsTwo) {
  for (const auto& c : survivors_of(Family::BLOWUP_CURVE)) {
    const auto& p = std::get<BlowupCurveParams>(c.params);
    if (p.epsilon() != 2 || c.derived->point()) continue;
    EXPECT_EQ(2 * c.derived->KD2 + c.derived->D3, 8 * (1 - c.derived->gB)) << c.fields().str();
  }
}

TEST(Sweep, HilbertPolynomialOracle) {
  std::size_t n = 0;
  EXPECT_EQ(oracle::hilbert_disagreement(full_run(), &n), "");
  EXPECT_EQ(n, 34u);
}

TEST(Sweep, Deterministic) {
  SweepConfig cfg = SweepConfig::defaults();
  cfg.family = Family::CONIC;
  auto a = enumerate(cfg), b = enumerate(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].fields().str(), b[i].fields().str());
    ASSERT_EQ(a[i].verdict.id, b[i].verdict.id);
  }
}

TEST(Sweep, SortedByFamilyThenK3) {
  const auto& all = full_run();
  for (std::size_t i = 1; i < all.size(); ++i)
    ASSERT_FALSE(detail::sort_key(all[i]) < detail::sort_key(all[i - 1]));
}

TEST(Sweep, DoubledBoundsAddNoSurvivors) {
  SweepConfig big = SweepConfig::defaults();
  big.bounds = big.bounds.scaled(2);
  auto doubled = enumerate(big);
  for (Family f : all_families()) {
    std::multiset<std::string> a, b;
    for (const auto& c : survivors_of(f)) a.insert(c.fields().str());
    for (const auto& c : survivors_of(f, doubled)) b.insert(c.fields().str());
    EXPECT_EQ(a, b) << short_name(f);
  }
}

TEST(Sweep, FamilyFilter) {
  SweepConfig cfg = SweepConfig::defaults();
  cfg.family = Family::BLOWUP_POINT;
  for (const auto& c : enumerate(cfg)) ASSERT_EQ(c.family, Family::BLOWUP_POINT);
}

// ---------------------------------------------------------------- del Pezzo

TEST(DelPezzoSweep, BetaTwoAlphaOneDegrees) {
  std::set<long long> k3;
  for (const auto& c : survivors_of(Family::DEL_PEZZO)) {
    const auto& p = std::get<DelPezzoParams>(c.params);
    if (c.branch == "integral" && p.alpha == 1 && p.beta == 2) k3.insert(c.derived->k3.to_int());
  }
  EXPECT_EQ(k3, (std::set<long long>{4, 6, 8, 10, 12, 16}));
}

TEST(DelPezzoSweep, FibreDegreeOneGoesToLedger) {
  SweepConfig cfg = SweepConfig::defaults();
  auto c = dp::fibration(1, 1, 2);
  ASSERT_TRUE(c);
  finalize(*c, cfg);
  EXPECT_EQ(c->verdict.kind, VerdictKind::EXCLUDED_LEDGER);
  EXPECT_EQ(c->verdict.id, "dp-kf1");
}

TEST(DelPezzoSweep, ConsistencySolutionSet) {
  auto sol = oracle::dp_consistency_solutions(60, 400);
  EXPECT_EQ(sol, (std::vector<std::pair<long long, long long>>{{2, 4}, {3, 2}}));
  for (long long k = 2; k <= 400; k += 2) EXPECT_TRUE(dp_consistency(1, k).is_zero());
}

TEST(DelPezzoSweep, DegreeSevenAndHalfIntegers) {
  EXPECT_EQ(dp::fibration(7, 1, 2)->verdict.id, "dp-kf7");
  EXPECT_EQ(dp::fibration(4, Rational(1, 2), 2)->verdict.id, "dp-alpha-half");
  EXPECT_EQ(dp::fibration(4, 1, Rational(1, 2))->verdict.id, "dp-beta-integral");
}

TEST(DelPezzoSweep, ProjectiveBundleRow) {
  auto c = dp::p2_bundle(2, 0);
  ASSERT_TRUE(c);
  EXPECT_TRUE(c->verdict.survives());
  EXPECT_EQ(c->derived->k3, 54);
  EXPECT_EQ(c->half, 3);
  EXPECT_EQ(dp::p2_bundle(1, 1)->verdict.id, "dp-p2-divisor");
}

// ---------------------------------------------------------------- conic

TEST(ConicSweep, DivisibleClassRejected) {
  auto c = cb::p1_bundle(2, 2, 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->verdict.kind, VerdictKind::EXCLUDED_NUMERIC);
  EXPECT_EQ(c->verdict.id, "cb-divisible");
}

TEST(ConicSweep, SmallAlphaTwoForcesFiveEighteen) {
  GridBounds g;
  std::vector<std::pair<long long, long long>> hits;
  for (long long c1 = g.c1.lo; c1 <= g.c1.hi; ++c1)
    for (long long c2 = g.c2.lo; c2 <= g.c2.hi; ++c2) {
      auto c = cb::delta(-1, c1, c2, g);
      if (!c || !c->verdict.survives()) continue;
      if (c->fields().num("alpha") == 2 && has(c->extra, "route", std::string("small"))) hits.emplace_back(c1, c2);
    }
  EXPECT_EQ(hits, (std::vector<std::pair<long long, long long>>{{5, 18}}));
  auto c = cb::delta(-1, 5, 18, g);
  finalize(*c, SweepConfig::defaults());
  EXPECT_EQ(c->verdict.kind, VerdictKind::EXCLUDED_LEDGER);
}

TEST(ConicSweep, SmallAlphaThreeChainForcesFiveSeventeen) {
  auto hits = oracle::small_alpha3_chain(-30, 30);
  ASSERT_EQ(hits, (std::vector<std::pair<long long, long long>>{{5, 17}}));
  // The contraction residual at the forced values does not vanish.
  auto r = cb_divisorial_residuals({3, -2, 5, 17, 4, std::nullopt});
  EXPECT_NE(r.first, 0);
}

TEST(ConicSweep, StaticRowsPassChernCheck) {
  for (const auto& row : cb::static_rows()) {
    auto c = cb::static_case(row);
    EXPECT_TRUE(c.verdict.survives()) << row.name;
  }
}

TEST(ConicSweep, ContractedPlaneNeedsSelfIntersectionThree) {
  EXPECT_TRUE(cb::point(3).verdict.survives());
  EXPECT_EQ(cb::point(3).derived->k3, 72);
  EXPECT_EQ(cb::point(2).verdict.id, "cb-point-section");
}

// ---------------------------------------------------------------- blowup of a curve

TEST(BlowupCurveSweep, LineOnDegreeTwoDelPezzoGivesFiveBetaSeven) {
  GridBounds g;
  for (long long beta = 1; beta <= 12; ++beta) {
    auto c = bc::candidate(2, 2, beta, 2, 1, g);
    if (!c) continue;
    EXPECT_EQ(c->verdict.id, "bc-line-5b7");
    const TrailStep* s = step(*c, "bc-line-5b7");
    ASSERT_TRUE(s && s->residual);
    EXPECT_EQ(*s->residual, Rational(2 * (5 * beta - 7)));
  }
}

TEST(BlowupCurveSweep, LineOnDegreeOneDelPezzo) {
  GridBounds g;
  for (long long beta = 1; beta <= 6; ++beta)
    for (long long eps = 1; eps <= 2; ++eps) {
      auto c = bc::candidate(2, 1, beta, eps, 1, g);
      if (!c) continue;
      EXPECT_FALSE(c->verdict.survives()) << c->fields().str();
    }
  auto c = bc::candidate(2, 1, 1, 1, 1, g);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->verdict.id, "bc-line-5b7");
  // The line relation leaves 2β − 6 here, so β = 3 gets through it and the ruled-surface check fires.
  auto e = bc::candidate(2, 1, 3, 2, 1, g);
  ASSERT_TRUE(e);
  EXPECT_EQ(*step(*e, "bc-line-5b7")->residual, 0);
  EXPECT_EQ(e->verdict.id, "bc-eps2");
}

TEST(BlowupCurveSweep, QuarticResidualAtIndexFour) {
  auto c = bc::candidate(4, 1, 2, 1, 8, GridBounds{});
  ASSERT_TRUE(c);
  const auto& p = std::get<BlowupCurveParams>(c->params);
  EXPECT_EQ(p.d, 8);
  EXPECT_EQ(p.gC, 3);
  EXPECT_EQ(c->derived->gB, 2);
  EXPECT_EQ(c->verdict.kind, VerdictKind::EXCLUDED_NUMERIC);
  EXPECT_EQ(c->verdict.id, "n4");
}

TEST(BlowupCurveSweep, DoubleCoverResidualAtIndexTwo) {
  GridBounds g;
  std::size_t hits = 0;
  for (long long d = 1; d <= 24; ++d) {
    auto c = bc::candidate(2, 3, 3, 1, d, g);
    if (c && c->verdict.id == "h2") {
      ++hits;
      EXPECT_EQ(c->derived->degB, 6);
      EXPECT_EQ(c->derived->gB, 3);
    }
  }
  EXPECT_EQ(hits, 1u);
}

TEST(BlowupCurveSweep, ExplainTrailCarriesFirstRelation) {
  auto c = bc::candidate(2, 2, 1, 1, 2, GridBounds{});
  ASSERT_TRUE(c);
  const TrailStep* s = step(*c, "bc-ab1");
  ASSERT_TRUE(s);
  EXPECT_NE(s->detail.find("6 = 1·(8−2)"), std::string::npos) << s->detail;
}

TEST(BlowupCurveSweep, DivpointInstancesFollowParametricRow) {
  for (const auto& c : survivors_of(Family::BLOWUP_CURVE))
    if (c.branch == "divpoint") {
      EXPECT_TRUE(parametric_instance(c)) << c.fields().str();
    }
}

// ---------------------------------------------------------------- blowup of a point

TEST(BlowupPointSweep, QuarticResidualAtDegreeTwelve) {
  auto fano = default_fano_table();
  auto c = bp::candidate(PointCase::P2_O1, 1, 12, 1, fano);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->verdict.id, "p4");
  auto d = bp::candidate(PointCase::P2_O1, 1, 12, 2, fano);
  EXPECT_EQ(std::get<BlowupPointParams>(d->params).beta, 6);
  EXPECT_EQ(d->derived->epsilon, 2);
  EXPECT_EQ(d->verdict.id, "p4");
}

TEST(BlowupPointSweep, BetaBound) {
  auto c = bp::candidate(PointCase::P2_O1, 1, 12, 4, default_fano_table());
  ASSERT_TRUE(c);
  EXPECT_EQ(std::get<BlowupPointParams>(c->params).beta, 12);
  EXPECT_EQ(c->derived->epsilon, 4);
  EXPECT_EQ(c->verdict.id, "beta-bound");
}

// ---------------------------------------------------------------- audit and ledger

TEST(Audit, CompleteForEveryFamily) {
  SweepConfig cfg = SweepConfig::defaults();
  std::map<Family, std::pair<std::size_t, std::size_t>> want = {{Family::DEL_PEZZO, {18, 15}},
                                                                 {Family::CONIC, {27, 12}},
                                                                 {Family::BLOWUP_CURVE, {40, 34}},
                                                                 {Family::BLOWUP_POINT, {7, 7}}};
  for (Family f : all_families()) {
    AuditReport rep = audit(f, cfg);
    EXPECT_TRUE(rep.complete()) << short_name(f);
    EXPECT_EQ(rep.survivors_off, want[f].first) << short_name(f);
    EXPECT_EQ(rep.survivors_on, want[f].second) << short_name(f);
    EXPECT_EQ(rep.explained.size(), rep.survivors_off - rep.survivors_on);
  }
}

TEST(Audit, NamedGhosts) {
  SweepConfig cfg = SweepConfig::defaults();
  auto dp = audit(Family::DEL_PEZZO, cfg);
  bool kf1 = false;
  for (const auto& it : dp.explained)
    kf1 = kf1 || (it.ledger_id == "dp-kf1" && std::get<DelPezzoParams>(it.candidate.params).KF2 == 1);
  EXPECT_TRUE(kf1);

  auto cb = audit(Family::CONIC, cfg);
  std::set<std::pair<Rational, Rational>> small;
  for (const auto& it : cb.explained)
    if (it.ledger_id == "cb-small") {
      const auto& p = std::get<ConicParams>(it.candidate.params);
      small.insert({p.alpha, -p.beta});
    }
  EXPECT_TRUE(small.count({2, 1}));
  EXPECT_TRUE(small.count({4, 2}));
}

TEST(Ledger, ShippedFileIsValid) {
  Ledger l = load_ledger(std::string(AFANO_DATA_DIR) + "/ledger/ledger.txt");
  EXPECT_EQ(l.entries().size(), 19u);
  std::set<std::string> fams = {"dp", "cb", "bc", "bp"};
  for (const auto& e : l.entries()) EXPECT_TRUE(fams.count(e.family)) << e.id;
}

TEST(Ledger, EveryLedgerVerdictCarriesAnEntry) {
  Ledger l = load_ledger(std::string(AFANO_DATA_DIR) + "/ledger/ledger.txt");
  for (const auto& c : full_run()) {
    if (c.verdict.kind != VerdictKind::EXCLUDED_LEDGER) continue;
    const LedgerEntry* e = l.find(c.verdict.id);
    ASSERT_TRUE(e) << c.verdict.id;
    EXPECT_FALSE(e->anchor.empty());
    EXPECT_EQ(c.trail.back().id, "ledger");
  }
}

TEST(Ledger, ParseErrors) {
  std::istringstream dup("[a]\nfamily = dp\nmatch = KF2 = 1\nanchor = x\nsummary = s\n"
                         "[a]\nfamily = dp\nmatch = KF2 = 2\nanchor = y\nsummary = s\n");
  EXPECT_THROW(parse_ledger(dup), LedgerError);
  std::istringstream nomatch("[a]\nfamily = dp\nanchor = x\nsummary = s\n");
  EXPECT_THROW(parse_ledger(nomatch), LedgerError);
  std::istringstream badop("[a]\nfamily = dp\nmatch = KF2 ~ 1\nanchor = x\nsummary = s\n");
  EXPECT_THROW(parse_ledger(badop), LedgerError);
}

TEST(Ledger, MatcherOperators) {
  Record r;
  r.set("alpha", Rational(3, 2));
  r.set("route", std::string("small"));
  EXPECT_TRUE(Matcher::parse("alpha = 3/2, route = small").matches(r));
  EXPECT_TRUE(Matcher::parse("alpha > 1, alpha <= 3/2").matches(r));
  EXPECT_TRUE(Matcher::parse("alpha in {1 3/2}").matches(r));
  EXPECT_FALSE(Matcher::parse("alpha != 3/2").matches(r));
  EXPECT_FALSE(Matcher::parse("beta = 1").matches(r));
}

// ---------------------------------------------------------------- config

TEST(Config, ShippedDefaultMatchesBuiltIn) {
  ParsedConfig p = load_config(std::string(AFANO_DATA_DIR) + "/config/default");
  EXPECT_EQ(p.bounds, GridBounds{});
  EXPECT_EQ(p.fano, default_fano_table());
  EXPECT_TRUE(p.use_ledger);
}

TEST(Config, Errors) {
  std::istringstream a("alpha = 3..1\n");
  EXPECT_THROW(parse_config(a), ConfigError);
  std::istringstream b("bogus = 1\n");
  EXPECT_THROW(parse_config(b), ConfigError);
  std::istringstream c("ledger = maybe\n");
  EXPECT_THROW(parse_config(c), ConfigError);
  std::istringstream d("# comment\nbeta = 1..3\nfano.2 = 1 2\n");
  auto p = parse_config(d);
  EXPECT_EQ(p.bounds.beta, (Range{1, 3}));
  EXPECT_EQ(p.fano.size(), 1u);
}
