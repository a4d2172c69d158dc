#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace pmpd;

namespace {

Walk w(std::string_view s) { return parse_walk(s); }

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no pmpd::Error thrown";
  return Error(ErrorCode::malformed_input, "none");
}

bool has_code(const std::vector<Violation>& v, ViolationCode c) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.code == c; });
}

}  // namespace

TEST(Walk, ParseAndPrint) {
  const Walk a = w("(d,2,3,4,5,1,d)");
  EXPECT_EQ(a.kind(), WalkKind::pmpd);
  EXPECT_EQ(a.k(), 6);
  EXPECT_EQ(to_string(a), "(d,2,3,4,5,1,d)");
  EXPECT_EQ(a.open().size(), 6u);
  EXPECT_EQ(w("1 5 4 3 1 2 1").kind(), WalkKind::pmp);
  EXPECT_EQ(error_of([] { w("(d,x,d)"); }).code(), ErrorCode::malformed_input);
  EXPECT_EQ(error_of([] { w("(d,0,d)"); }).code(), ErrorCode::malformed_input);
}

TEST(Walk, FigureWalkIsValid) {
  const Instance inst = random_instance(1, 4);
  const Walk a = w("(d,3,4,3,2,1,3,4,2,1,d)");
  EXPECT_EQ(a.k(), 10);
  EXPECT_TRUE(is_valid(a, inst));
}

TEST(Walk, ImmediateRepeatReported) {
  const Instance inst = random_instance(1, 3);
  const auto v = validate(w("(d,1,1,2,3,d)"), inst);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].code, ViolationCode::adjacent_duplicate);
  EXPECT_EQ(v[0].position, 2);
  EXPECT_EQ(v[0].node, 1);
}

TEST(Walk, UnvisitedTargetReported) {
  const Instance inst = random_instance(1, 4);
  const auto v = validate(w("(d,1,2,3,d)"), inst);
  ASSERT_FALSE(v.empty());
  bool found = false;
  for (const auto& x : v) found = found || (x.code == ViolationCode::unvisited_target && x.node == 4);
  EXPECT_TRUE(found);
}

TEST(Walk, OtherViolations) {
  const Instance inst = random_instance(1, 3);
  EXPECT_TRUE(has_code(validate(w("(d,1,2,d,3,d)"), inst), ViolationCode::depot_in_interior));
  EXPECT_TRUE(has_code(validate(w("(d,1,2,3,1)"), inst), ViolationCode::not_closed));
  EXPECT_TRUE(has_code(validate(w("(d,1,2,7,d)"), inst), ViolationCode::node_out_of_range));
  EXPECT_TRUE(has_code(validate(Walk::of_nodes(WalkKind::pmp, {1, 2, 0, 3, 0, 1}), inst),
                       ViolationCode::depot_repeated));
  EXPECT_TRUE(is_valid(Walk::of_nodes(WalkKind::pmp, {1, 2, 0, 3, 1}), inst));
  EXPECT_TRUE(is_valid(w("(1,2,3,1)"), inst));
  EXPECT_FALSE(is_valid(w("(1,2,1)"), inst));
}

TEST(Walk, PermuteToPivot) {
  const Walk p = permute(w("(d,2,3,4,5,1,d)"), Visit::target(2));
  EXPECT_EQ(to_string(p), "(2,3,4,5,1,d,2)");
  EXPECT_EQ(p.kind(), WalkKind::pmp);
  const Walk back = permute(p, kDepot);
  EXPECT_EQ(to_string(back), "(d,2,3,4,5,1,d)");
  EXPECT_EQ(back.kind(), WalkKind::pmpd);
}

TEST(Walk, PermuteIdentity) {
  const Walk a = w("(d,1,5,4,3,2,1,d)");
  EXPECT_EQ(permute(a, a.front()), a);
  const Walk b = w("(1,5,4,3,1,2,1)");
  EXPECT_EQ(permute(b, b.front()), b);
}

TEST(Walk, PermuteAbsentPivot) {
  EXPECT_EQ(error_of([] { permute(w("(1,2,3,1)"), kDepot); }).code(), ErrorCode::pivot_absent);
}

TEST(Walk, Concatenate) {
  const Walk c = concatenate(w("(2,3,4,5,1,d,2)"), w("(2,3,4,5,1,2)"));
  EXPECT_EQ(to_string(c), "(2,3,4,5,1,d,2,3,4,5,1,2)");
  EXPECT_EQ(c.k(), 6 + 5);
  const Walk a = w("(d,1,2,3,d)");
  EXPECT_EQ(concatenate(a, a).k(), 2 * a.k());
  EXPECT_EQ(error_of([] { concatenate(w("(1,2,3,1)"), w("(2,3,1,2)")); }).code(), ErrorCode::terminus_mismatch);
}

TEST(Walk, ShortcutDepot) {
  EXPECT_EQ(to_string(shortcut(w("(2,3,4,5,1,d,2)"), {5})), "(2,3,4,5,1,2)");
}

TEST(Walk, ShortcutDepotAloneCreatesRepeat) {
  const Error e = error_of([] { shortcut(w("(2,1,d,1,5,4,3,2)"), {2}); });
  EXPECT_EQ(e.code(), ErrorCode::infeasible_shortcut);
  EXPECT_EQ(e.reason(), ShortcutFailure::adjacent_duplicate);
}

TEST(Walk, ShortcutRepeatAndDepot) {
  EXPECT_EQ(to_string(shortcut(w("(2,1,d,1,5,4,3,2)"), {2, 3})), "(2,1,5,4,3,2)");
}

TEST(Walk, ShortcutFailures) {
  EXPECT_EQ(error_of([] { shortcut(w("(d,1,2,3,d)"), {2}); }).reason(), ShortcutFailure::coverage_loss);
  EXPECT_EQ(error_of([] { shortcut(w("(d,1,2,3,d)"), {0}); }).code(), ErrorCode::position_out_of_range);
  EXPECT_EQ(error_of([] { shortcut(w("(d,1,2,3,d)"), {4}); }).code(), ErrorCode::position_out_of_range);
  EXPECT_EQ(error_of([] { shortcut(Walk::of_nodes(WalkKind::pmpd, {1, 2, 0, 3, 1}), {2}); }).reason(),
            ShortcutFailure::depot_required);
}

TEST(Walk, InsertExamples) {
  EXPECT_EQ(to_string(insert(w("(1,5,4,3,2,1)"), 4, kDepot)), "(1,5,4,3,2,d,1)");
  EXPECT_EQ(to_string(insert(w("(2,3,4,5,1,2)"), 0, Visit::target(1))), "(2,1,3,4,5,1,2)");
}

TEST(Walk, InsertFailures) {
  EXPECT_EQ(error_of([] { insert(w("(1,2,3,1)"), 0, Visit::target(2)); }).code(), ErrorCode::adjacent_duplicate);
  EXPECT_EQ(error_of([] { insert(w("(1,2,d,3,1)"), 0, kDepot); }).code(), ErrorCode::depot_duplicate);
  EXPECT_EQ(error_of([] { insert(w("(1,2,3,1)"), 3, kDepot); }).code(), ErrorCode::position_out_of_range);
}

TEST(Walk, InsertThenShortcutIsIdentity) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = fixtures::draw(rng, 3, 6);
    const Walk a = fixtures::random_pmpd_walk(rng, n, fixtures::draw(rng, n + 2, 3 * n));
    const int gap = fixtures::draw(rng, 0, a.k() - 1);
    const Visit t = Visit::target(fixtures::draw(rng, 1, n));
    if (a[gap] == t || a[gap + 1] == t) continue;
    EXPECT_EQ(shortcut(insert(a, gap, t), {gap + 1}), a);
  }
}

TEST(Walk, SinglyVisited) {
  EXPECT_EQ(singly_visited_targets(w("(d,2,3,4,5,1,d)")), (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(singly_visited_targets(w("(d,1,5,4,3,2,1,d)")), (std::vector<int>{2, 3, 4, 5}));
  EXPECT_TRUE(singly_visited_targets(w("(d,3,4,3,2,1,3,4,2,1,d)")).empty());
}

TEST(Walk, HelpersAndOrdering) {
  const Walk a = w("(d,1,5,4,3,2,1,d)");
  EXPECT_EQ(positions_of(a, Visit::target(1)), (std::vector<int>{1, 6}));
  EXPECT_EQ(a.count(Visit::target(1)), 2);
  EXPECT_EQ(a.count(kDepot), 1);
  EXPECT_EQ(to_string(reversed(a)), "(d,1,2,3,4,5,1,d)");
  EXPECT_LT(kDepot, Visit::target(1));
  EXPECT_LT(Visit::target(1), Visit::target(2));
}

TEST(WalkProperty, PermutePreservesTimes) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = fixtures::draw(rng, 3, 7);
    const Instance inst = random_instance(rng(), n);
    const Walk a = fixtures::random_pmpd_walk(rng, n, fixtures::draw(rng, n + 1, 4 * n));
    const Visit pivot = a[fixtures::draw(rng, 1, a.k() - 1)];
    const Walk p = permute(a, pivot);
    EXPECT_EQ(p.k(), a.k());
    EXPECT_NEAR(travel_time(p, inst), travel_time(a, inst), 1e-9);
    EXPECT_NEAR(revisit_time(permute(p, kDepot), inst), revisit_time(a, inst), 1e-9);
  }
}

TEST(WalkProperty, ShortcutNeverIncreasesTravel) {
  std::mt19937_64 rng(19);
  int done = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = fixtures::draw(rng, 3, 7);
    const Instance inst = random_instance(rng(), n);
    const Walk a = fixtures::random_pmpd_walk(rng, n, fixtures::draw(rng, n + 2, 4 * n));
    const int pos = fixtures::draw(rng, 1, a.k() - 1);
    try {
      const Walk s = shortcut(a, {pos});
      EXPECT_LE(travel_time(s, inst), travel_time(a, inst) + 1e-9);
      EXPECT_TRUE(is_valid(s, inst));
      ++done;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::infeasible_shortcut);
    }
  }
  EXPECT_GT(done, 100);
}

TEST(WalkProperty, ConcatenationAddsTravel) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = fixtures::draw(rng, 3, 7);
    const Instance inst = random_instance(rng(), n);
    const Walk a = fixtures::random_pmpd_walk(rng, n, fixtures::draw(rng, n + 1, 3 * n));
    const Walk b = fixtures::random_pmpd_walk(rng, n, fixtures::draw(rng, n + 1, 3 * n));
    const Walk c = concatenate(a, b);
    EXPECT_EQ(c.k(), a.k() + b.k());
    EXPECT_NEAR(travel_time(c, inst), travel_time(a, inst) + travel_time(b, inst), 1e-9);
  }
}
