#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "geocover/cover.hpp"
#include "geocover/error.hpp"
#include "geocover/sampling.hpp"

using namespace geocover;

namespace {

// All of SL2(Z) with max |entry| <= 12, one sign per class.
const std::vector<Isometry>& entry_box_twelve() {
  static const std::vector<Isometry> box = [] {
    std::vector<Isometry> out;
    for (std::int64_t a = -12; a <= 12; ++a)
      for (std::int64_t b = -12; b <= 12; ++b)
        for (std::int64_t c = -12; c <= 12; ++c)
          for (std::int64_t d = -12; d <= 12; ++d) {
            if (a * d - b * c != 1) continue;
            const Isometry g = Isometry::exact(a, b, c, d);
            if (g.integer_entries() == std::array<std::int64_t, 4>{a, b, c, d}) out.push_back(g);
          }
    return out;
  }();
  return box;
}

double unpruned_modular(const UhpPoint& p, const UhpPoint& q) {
  double best = INFINITY;
  for (const auto& g : entry_box_twelve()) best = std::min(best, distance_uhp(p, apply(g, q)));
  return best;
}

bool has_entries(const Isometry& g, std::array<std::int64_t, 4> e) {
  return g.is_exact() && g.integer_entries() == Isometry::exact(e[0], e[1], e[2], e[3]).integer_entries();
}

}  // namespace

TEST(ModularCover, PaperList) {
  const GeodesicCover c = modular_cover_paper();
  EXPECT_EQ(c.gamma0.size(), 10u);
  EXPECT_EQ(c.method, CoverMethod::PaperModularTen);
  for (const auto& g : c.gamma0) {
    ASSERT_TRUE(g.is_exact());
    const auto e = g.integer_entries();
    EXPECT_EQ(e[0] * e[3] - e[1] * e[2], 1);
  }
  ASSERT_TRUE(c.radical.has_value());
  EXPECT_EQ(c.radical->size(), 4u);
  EXPECT_TRUE(is_identity(c.gamma0.front()));
}

TEST(ModularCover, RadicalQuotientsMissTwoElements) {
  // The four-element radical set {1, T, L, S} yields only eight distinct
  // quotients r1^-1 r2; two listed cover elements are not among them.
  const GeodesicCover c = modular_cover_paper();
  const auto missing = radical_missing(c);
  ASSERT_EQ(missing.size(), 2u);
  EXPECT_TRUE(has_entries(missing[0], {0, -1, 1, -1}) || has_entries(missing[1], {0, -1, 1, -1}));
  EXPECT_TRUE(has_entries(missing[0], {1, -1, 1, 0}) || has_entries(missing[1], {1, -1, 1, 0}));
  std::vector<Isometry> quotients;
  for (const auto& r1 : *c.radical)
    for (const auto& r2 : *c.radical) {
      const Isometry q = compose(inverse(r1), r2);
      if (std::none_of(quotients.begin(), quotients.end(),
                       [&](const Isometry& x) { return same_element(x, q); }))
        quotients.push_back(q);
    }
  EXPECT_EQ(quotients.size(), 8u);
}

TEST(CoverValidation, IdentityAndDuplicates) {
  const GroupPtr M = build_modular();
  const GeodesicCover c = make_explicit_cover(M, {Isometry::exact(1, 1, 0, 1)});
  EXPECT_EQ(c.gamma0.size(), 2u);
  EXPECT_TRUE(is_identity(c.gamma0.front()));
  EXPECT_THROW(make_explicit_cover(M, {Isometry(), Isometry::exact(-1, 0, 0, -1)}), InvariantError);
  GeodesicCover bad;
  bad.surface = M;
  bad.gamma0 = {Isometry::exact(1, 1, 0, 1)};
  EXPECT_THROW(validate_cover(bad), InvariantError);
  EXPECT_EQ(cover_method_from_string(to_string(CoverMethod::BallRadiusBound)),
            CoverMethod::BallRadiusBound);
  EXPECT_THROW(cover_method_from_string("nope"), PreconditionError);
}

TEST(Bounds, ModularThreshold) {
  EXPECT_NEAR(modular_u0(1, 1), 2.25, 1e-15);
  Rng rng(31);
  for (int k = 0; k < 1000; ++k) EXPECT_GE(modular_u0(rng.uniform(0.8, 20), rng.uniform(0.8, 20)), 2.0);
}

TEST(Bounds, GenusCapMatchesClosedForm) {
  for (int g = 2; g <= 5; ++g) {
    const GroupPtr G = build_regular_genus(g);
    const PolygonData& P = G->polygon_data();
    const double cap = genus_normsq_cap(P);
    EXPECT_NEAR(cap / genus_normsq_cap_closed_form(P.beta), 1.0, 1e-10) << g;
    EXPECT_GE(cap, 2.0);
  }
  const GroupPtr G2 = build_regular_genus(2);
  const PolygonData& P2 = G2->polygon_data();
  EXPECT_NEAR(2 * P2.vertex_radius + P2.diam_bound, 7.954046, 1e-6);
  EXPECT_NEAR(genus_normsq_cap(P2), 2 * std::cosh(7.9540464), 1e-3);
  EXPECT_NEAR(genus_normsq_cap(P2), 2847.07, 0.01);
}

TEST(GenusCover, GenusTwo) {
  const GeodesicCover c = build_cover_genus(2);
  EXPECT_GE(c.gamma0.size(), 100u);
  EXPECT_LE(c.gamma0.size(), 10000u);
  EXPECT_TRUE(is_identity(c.gamma0.front(), 1e-12));
  ASSERT_TRUE(c.bound_used.has_value());
  EXPECT_EQ(c.method, CoverMethod::BallRadiusBound);
  const CoverDistance d = surface_distance_detail({0, 1}, {0, 1}, c);
  EXPECT_EQ(d.distance, 0.0);
  EXPECT_TRUE(is_identity(c.gamma0[d.argmins.front()], 1e-12));
  EXPECT_THROW(build_cover_genus(6), PreconditionError);
}

TEST(SurfaceDistance, ModularExamples) {
  const GeodesicCover c = modular_cover_paper();
  EXPECT_EQ(surface_distance({0, 2}, {0, 2}, c), 0.0);
  EXPECT_NEAR(surface_distance({0, 1}, {0, 2}, c), std::log(2.0), 1e-15);

  const UhpPoint p(-0.4, 1), q(0.45, 0.9);
  const double direct = distance_uhp(p, q);
  EXPECT_NEAR(direct, 0.8740667819335774, 1e-13);
  const double via_t = distance_uhp(p, apply(Isometry::exact(1, -1, 0, 1), q));
  EXPECT_NEAR(via_t, 0.1897444692561935, 1e-13);
  // S does better than T^-1 for this pair: S q = (-0.4444.., 0.8888..).
  const CoverDistance d = surface_distance_detail(p, q, c);
  EXPECT_LT(d.distance, via_t);
  EXPECT_NEAR(d.distance, brute_force_modular(p, q).distance, 1e-15);
  EXPECT_NEAR(d.distance, 0.1268444984954567, 1e-13);
  EXPECT_TRUE(has_entries(c.gamma0[d.argmins.front()], {0, -1, 1, 0}));
}

TEST(SurfaceDistance, RejectsUnreducedPoints) {
  const GeodesicCover c = modular_cover_paper();
  EXPECT_THROW(surface_distance({0.3, 0.5}, {0, 2}, c), PreconditionError);
  EXPECT_THROW(surface_distance({0, 2}, {2, 2}, c), PreconditionError);
}

TEST(BruteForceModular, Examples) {
  const OracleResult r = brute_force_modular({0, 1}, {0, 2});
  EXPECT_NEAR(r.distance, std::log(2.0), 1e-15);
  EXPECT_TRUE(is_identity(r.gamma) || has_entries(r.gamma, {0, -1, 1, 0}));
  EXPECT_EQ(brute_force_modular({0.1, 3}, {0.1, 3}).distance, 0.0);
}

TEST(BruteForceModular, PruningMatchesUnprunedScan) {
  const GroupPtr M = build_modular();
  Rng rng(32);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const UhpPoint p = sample_fundamental(*M, rng, 0.1), q = sample_fundamental(*M, rng, 0.1);
    worst = std::max(worst, std::abs(brute_force_modular(p, q).distance - unpruned_modular(p, q)));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(CoverProperties, DominanceSymmetryMonotonicity) {
  const GroupPtr M = build_modular();
  const GeodesicCover full = modular_cover_paper();
  const GeodesicCover part =
      make_explicit_cover(M, {Isometry(), Isometry::exact(1, 1, 0, 1), Isometry::exact(1, -1, 0, 1)});
  Rng rng(33);
  for (int k = 0; k < 2000; ++k) {
    const UhpPoint p = sample_fundamental(*M, rng, 0.2), q = sample_fundamental(*M, rng, 0.2);
    const double oracle = brute_force_modular(p, q).distance;
    const double d = surface_distance(p, q, full);
    EXPECT_GE(d, oracle - 1e-12);
    EXPECT_NEAR(d, oracle, 1e-9);
    EXPECT_NEAR(d, surface_distance(q, p, full), 1e-10);
    EXPECT_LE(d, surface_distance(p, q, part));
    // No worse than the best translate with |b| <= 1.
    double c0 = INFINITY;
    for (int b = -1; b <= 1; ++b) c0 = std::min(c0, distance_uhp(p, apply(Isometry::exact(1, b, 0, 1), q)));
    EXPECT_LE(d, c0);
  }
}

TEST(VerifyCover, PaperModularCoverPasses) {
  const VerifyReport r = verify_cover(modular_cover_paper(), 1000, 5);
  EXPECT_EQ(r.samples, 1000u);
  EXPECT_LE(r.max_abs_gap, 1e-9);
  EXPECT_FALSE(r.used_elements.empty());
  EXPECT_LE(r.used_elements.size(), 10u);
}

TEST(VerifyCover, IdentityOnlyFails) {
  const GeodesicCover id = make_explicit_cover(build_modular(), {});
  const VerifyReport r = verify_cover(id, 5000, 5);
  EXPECT_GE(r.max_abs_gap, 0.5);
  ASSERT_TRUE(r.worst_pair.has_value());
  EXPECT_NEAR(r.worst_cover_distance - r.worst_oracle_distance, r.max_abs_gap, 1e-15);
  // On the documented pair the gap is the direct distance minus the S route.
  const UhpPoint p(-0.4, 1), q(0.45, 0.9);
  EXPECT_NEAR(surface_distance(p, q, id) - brute_force_modular(p, q).distance, 0.7472222834381206, 1e-13);
}

TEST(VerifyCover, ZeroSamplesAndDeterminism) {
  const GeodesicCover c = modular_cover_paper();
  const VerifyReport empty = verify_cover(c, 0, 1);
  EXPECT_EQ(empty.samples, 0u);
  EXPECT_EQ(empty.max_abs_gap, 0.0);
  EXPECT_FALSE(empty.worst_pair.has_value());

  const GeodesicCover part = make_explicit_cover(build_modular(), {Isometry::exact(1, 1, 0, 1)});
  VerifyOptions one, three;
  three.threads = 3;
  const VerifyReport a = verify_cover(part, 700, 9, one), b = verify_cover(part, 700, 9, three);
  EXPECT_EQ(a.max_abs_gap, b.max_abs_gap);
  ASSERT_TRUE(a.worst_pair && b.worst_pair);
  EXPECT_EQ(a.worst_pair->p, b.worst_pair->p);
  EXPECT_EQ(a.worst_pair->q, b.worst_pair->q);
  ASSERT_EQ(a.used_elements.size(), b.used_elements.size());
}

TEST(VerifyCover, SamplePairsAreReducedAndSeeded) {
  const GroupPtr M = build_modular();
  const auto a = verification_pairs(*M, 200, 4, 0.1), b = verification_pairs(*M, 200, 4, 0.1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].p, b[k].p);
    EXPECT_NE(in_fundamental_modular(a[k].p), Region::Outside);
    EXPECT_NE(in_fundamental_modular(a[k].q), Region::Outside);
  }
}

TEST(BallOracle, GenusExamples) {
  const GroupPtr G = build_regular_genus(2);
  const PolygonData& P = G->polygon_data();
  const BallOracle oracle(G, 1.5);
  EXPECT_EQ(oracle.distance({0, 1}, {0, 1}), 0.0);
  EXPECT_LE(oracle.distance({0, 1}, P.vertex(0)), P.vertex_radius + 1e-12);
  EXPECT_NEAR(oracle.distance({0, 1}, P.vertex(0)), P.vertex_radius, 1e-9);
  Rng rng(34);
  for (int k = 0; k < 200; ++k) {
    const UhpPoint p = sample_fundamental(*G, rng, 0.1), q = sample_fundamental(*G, rng, 0.1);
    const double d = oracle.distance(p, q);
    EXPECT_LE(d, distance_uhp(p, q));
    EXPECT_NEAR(d, surface_distance_local(p, q, *G), 1e-12);
  }
}

TEST(VerifyCover, GenusTwoCoverPasses) {
  const VerifyReport r = verify_cover(build_cover_genus(2), 300, 6);
  EXPECT_LE(r.max_abs_gap, 1e-8);
}
