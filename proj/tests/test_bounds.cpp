#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pmpd/oracle.hpp"

using namespace pmpd;

TEST(Bounds, QDecompose) {
  EXPECT_EQ(q_decompose(36, 5).p, 7);
  EXPECT_EQ(q_decompose(36, 5).q, 0);
  EXPECT_EQ(q_decompose(37, 5).p, 7);
  EXPECT_EQ(q_decompose(37, 5).q, 1);
  for (int n = 3; n <= 9; ++n) {
    EXPECT_EQ(q_decompose(n + 1, n).p, 1);
    EXPECT_EQ(q_decompose(n + 1, n).q, 0);
    for (int k = n + 1; k < 5 * n; ++k) {
      const auto [p, q] = q_decompose(k, n);
      EXPECT_GE(p, 1);
      EXPECT_GE(q, 0);
      EXPECT_LT(q, n);
      EXPECT_EQ(p * n + q + 1, k);
    }
  }
  try {
    q_decompose(5, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::k_too_small);
  }
}

TEST(Bounds, WorkedExampleCases) {
  const SeedWalks s = compute_seeds(fixtures::worked_example());
  const BoundReport q2 = lower_bound(s, 38);
  EXPECT_NEAR(q2.lb, 47.77, 1e-9);
  EXPECT_EQ(q2.case_tag, BoundCase::q2plus_rstar);
  EXPECT_TRUE(q2.certified);
  EXPECT_TRUE(q2.tight_range_note);
  const BoundReport q1 = lower_bound(s, 37);
  EXPECT_NEAR(q1.lb, 47.14, 1e-9);
  EXPECT_EQ(q1.case_tag, BoundCase::q1_min_case);
  const BoundReport q0 = lower_bound(s, 36);
  EXPECT_NEAR(q0.lb, 45.72, 1e-9);
  EXPECT_EQ(q0.case_tag, BoundCase::q0_or_not_less);
  EXPECT_FALSE(lower_bound(s, 30).tight_range_note);
  EXPECT_TRUE(lower_bound(s, 31).tight_range_note);
}

TEST(Bounds, ExpressionCases) {
  // RD1 not below R: always RD1.
  const SeedWalks flat = fixtures::seeds_from_values(5, 50.0, 55.0, 49.0);
  for (int k = 6; k < 40; ++k) EXPECT_DOUBLE_EQ(lower_bound(flat, k).lb, 50.0);
  // RD1 < R: min case for q = 1, R for q >= 2.
  const SeedWalks bi = fixtures::seeds_from_values(5, 40.0, 45.0, 43.0);
  EXPECT_DOUBLE_EQ(lower_bound(bi, 31).lb, 40.0);
  EXPECT_DOUBLE_EQ(lower_bound(bi, 32).lb, 43.0);
  EXPECT_DOUBLE_EQ(lower_bound(bi, 33).lb, 43.0);
  EXPECT_DOUBLE_EQ(lower_bound(bi, 35).lb, 43.0);
}

TEST(Bounds, SameResidueSameBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 3 + static_cast<int>(seed % 5);
    const SeedWalks s = compute_seeds(random_instance(seed, n));
    for (int k = n + 1; k < 4 * n * n; ++k) EXPECT_DOUBLE_EQ(lower_bound(s, k).lb, lower_bound(s, k + n).lb);
  }
}

TEST(Bounds, UncertifiedSeedsAreAdvisory) {
  const SeedWalks s = fixtures::seeds_from_values(5, 40.0, 45.0, 43.0, false);
  const BoundReport r = lower_bound(s, 33);
  EXPECT_FALSE(r.certified);
  EXPECT_TRUE(r.advisory());
  EXPECT_DOUBLE_EQ(r.lb, 43.0);
  EXPECT_LT(r.proven_lb, r.lb);
  EXPECT_DOUBLE_EQ(r.proven_lb, std::max(0.9 * 40.0, 0.9 * 43.0));
  try {
    classify_asymptotic(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::uncertified_seeds);
  }
}

TEST(Bounds, CertificationFollowsContributingSeeds) {
  SeedWalks s = fixtures::seeds_from_values(5, 40.0, 45.0, 43.0);
  s.wd_n2.cert = Certificate::best_found(45.0, 44.0);
  EXPECT_TRUE(lower_bound(s, 33).certified);   // RD1 and R only
  EXPECT_FALSE(lower_bound(s, 32).certified);  // needs RD2
  EXPECT_TRUE(lower_bound(s, 31).certified);   // RD1 only
}

TEST(Bounds, Classification) {
  const SeedWalks s = compute_seeds(fixtures::worked_example());
  EXPECT_EQ(classify_asymptotic(s), Modality::trimodal);
  EXPECT_EQ(classify_values(50.0, 52.0, 50.0), Modality::unimodal);
  EXPECT_EQ(classify_values(80.39, 80.39, 80.39), Modality::unimodal);
  EXPECT_EQ(classify_values(40.0, 45.0, 43.0), Modality::bimodal);
  EXPECT_EQ(classify_values(40.0, 45.0, 45.0), Modality::bimodal);
  EXPECT_EQ(classify_values(40.0, 45.0, 46.0), Modality::trimodal);
  EXPECT_EQ(mode_count(Modality::bimodal), 2);
}

TEST(BoundsProperty, BelowEveryGeneratedWalk) {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = fixtures::draw(rng, 3, 8);
    const Instance inst = random_instance(500 + seed, n);
    const SeedWalks s = compute_seeds(inst);
    ASSERT_TRUE(s.certified());
    for (int i = 0; i < 200; ++i) {
      const int k = fixtures::draw(rng, n + 1, n * n + 3 * n);
      const Walk w = fixtures::random_pmpd_walk(rng, n, k);
      EXPECT_LE(lower_bound(s, k).lb, revisit_time(w, inst) + 1e-9) << to_string(w);
    }
    for (int k = n * n + 2 * n + 1; k <= n * n + 3 * n; ++k) {
      const BuildResult b = build(s, inst, k);
      EXPECT_LE(b.bound.lb, b.ub + 1e-9);
    }
  }
}

TEST(BoundsProperty, AgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const Instance inst = random_instance(600 + seed, n);
    const SeedWalks s = compute_seeds(inst);
    for (int k = n + 1; k <= 10; ++k) {
      const double opt = oracle::brute_force_optimal(inst, k).ub;
      EXPECT_LE(lower_bound(s, k).lb, opt + 1e-9) << "n=" << n << " k=" << k;
      if (k == n + 1) EXPECT_NEAR(lower_bound(s, k).lb, opt, 1e-9);
    }
  }
}
