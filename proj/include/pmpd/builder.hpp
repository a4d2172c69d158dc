#pragma once

#include <algorithm>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmpd/bounds.hpp"
#include "pmpd/error.hpp"
#include "pmpd/evaluator.hpp"
#include "pmpd/seeds.hpp"
#include "pmpd/tolerance.hpp"
#include "pmpd/walk.hpp"

namespace pmpd {

enum class Scheme { O1, O2, H1, H2, H3 };

constexpr std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::O1: return "O1";
    case Scheme::O2: return "O2";
    case Scheme::H1: return "H1";
    case Scheme::H2: return "H2";
    case Scheme::H3: return "H3";
  }
  return "Unknown";
}

enum class BlockRole { base, big, small };

constexpr std::string_view to_string(BlockRole r) {
  switch (r) {
    case BlockRole::base: return "base";
    case BlockRole::big: return "big";
    case BlockRole::small: return "small";
  }
  return "unknown";
}

/// Walks one construction scheme is assembled from: a depot-carrying base,
/// an optional (n+1)-visit block and an n-visit block that is a shortcut of
/// both.
struct IntermediateSet {
  Scheme tag = Scheme::O1;
  Walk base;
  std::optional<Walk> big;
  Walk small;
  bool available = true;
};

struct ConstructionPlan {
  int k = 0;
  int n = 0;
  int pivot = 0;
  int base_len = 0;
  int x = 0;  // n-visit blocks
  int y = 0;  // (n+1)-visit blocks
  std::vector<BlockRole> arrangement;
  /// n^2+n+1 <= k < n^2+2n+1: accepted, but outside the guaranteed range.
  bool below_guaranteed = false;
  /// x = 1 and y >= 1: the last big block wraps around next to the base.
  bool cyclic_adjacency = false;
};

namespace detail {

/// Rotation of the closed walk to start at open-form index `start`.
inline Walk rotate_to(const Walk& walk, int start) {
  std::vector<Visit> seq;
  const int k = walk.k();
  for (int i = 0; i <= k; ++i) seq.push_back(walk[(start + i) % k]);
  return Walk(walk.kind(), std::move(seq));
}

/// The target visited more than once (smallest id if several).
inline Visit repeated_target(const Walk& walk) {
  std::vector<int> count(walk.visits().size() + 1, 0);
  int best = 0;
  for (Visit v : walk.open())
    if (!v.is_depot()) {
      if (static_cast<std::size_t>(v.node()) >= count.size()) count.resize(static_cast<std::size_t>(v.node()) + 1, 0);
      ++count[static_cast<std::size_t>(v.node())];
    }
  for (std::size_t t = 1; t < count.size(); ++t)
    if (count[t] > 1) {
      best = static_cast<int>(t);
      break;
    }
  if (best == 0) throw Error(ErrorCode::invalid_walk, "no repeated target in " + to_string(walk));
  return Visit::target(best);
}

/// Drops the occurrence at open-form index `pos` (0 allowed: the walk is
/// first rotated by one so that the occurrence becomes its last visit).
inline Walk drop_occurrence(const Walk& walk, int pos) {
  if (pos > 0) return shortcut(walk, {pos});
  return shortcut(rotate_to(walk, 1), {walk.k() - 1});
}

/// Among the removals of one occurrence of the repeated target, the one of
/// least travel time. On ties the later occurrence is removed.
inline Walk drop_cheapest_repeat(const Walk& walk, const Instance& inst) {
  const auto pos = positions_of(walk, repeated_target(walk));
  std::optional<Walk> best;
  double best_t = 0.0;
  for (int p : pos) {
    Walk cand;
    try {
      cand = drop_occurrence(walk, p);
    } catch (const Error&) {
      continue;
    }
    const double t = travel_time(cand, inst);
    if (!best || approx_le(t, best_t)) {
      best = std::move(cand);
      best_t = t;
    }
  }
  if (!best) throw Error(ErrorCode::infeasible_shortcut, "no occurrence of the repeated target can be dropped");
  return *best;
}

/// Drops the depot of a PMP-D walk after rotating it to start at v_1.
inline Walk drop_depot(const Walk& pmpd_walk) {
  const Walk rotated = permute(pmpd_walk, pmpd_walk[1]);
  return shortcut(rotated, positions_of(rotated, kDepot));
}

}  // namespace detail

/// WD*(n+1) with the depot shortcut, starting at its first target.
inline Walk wd1_sd(const SeedWalks& seeds) { return detail::drop_depot(seeds.wd_n1.walk); }

/// WD1_SD with one target visit inserted, minimizing travel time over every
/// target and gap (ties: smaller target, then smaller gap).
inline Walk wd1_sdit(const SeedWalks& seeds, const Instance& inst) {
  const Walk sd = wd1_sd(seeds);
  std::optional<Walk> best;
  double best_t = 0.0;
  for (int t = 1; t <= inst.n(); ++t)
    for (int g = 0; g < sd.k(); ++g) {
      if (sd[g].node() == t || sd[g + 1].node() == t) continue;
      Walk cand = insert(sd, g, Visit::target(t));
      const double tt = travel_time(cand, inst);
      if (!best || definitely_lt(tt, best_t)) {
        best = std::move(cand);
        best_t = tt;
      }
    }
  return *best;
}

/// WD*(n+2) with one occurrence of its repeated target shortcut (n+1 visits).
inline Walk wd2_st(const SeedWalks& seeds, const Instance& inst) {
  return detail::drop_cheapest_repeat(seeds.wd_n2.walk, inst);
}

/// WD*(n+2) with the depot shortcut; absent when the depot sits between two
/// visits of the same target.
inline std::optional<Walk> wd2_sd(const SeedWalks& seeds) {
  const Walk& w = seeds.wd_n2.walk;
  if (w[1] == w[w.k() - 1]) return std::nullopt;
  return detail::drop_depot(w);
}

/// WD*(n+2) with both the depot and the repeat removed (n visits).
inline Walk wd2_std(const SeedWalks& seeds, const Instance& inst) { return detail::drop_depot(wd2_st(seeds, inst)); }

/// W*(n+1) with one occurrence of its repeated target shortcut (n visits).
/// On ties the occurrence at v_0 is kept.
inline Walk w1_st(const SeedWalks& seeds, const Instance& inst) {
  return detail::drop_cheapest_repeat(seeds.w_n1.walk, inst);
}

/// W1_ST with the depot inserted in the gap of least travel time (ties:
/// smaller gap).
inline Walk w1_stid(const SeedWalks& seeds, const Instance& inst) {
  const Walk st = w1_st(seeds, inst);
  std::optional<Walk> best;
  double best_t = 0.0;
  for (int g = 0; g < st.k(); ++g) {
    Walk cand = insert(st, g, kDepot);
    const double tt = travel_time(cand, inst);
    if (!best || definitely_lt(tt, best_t)) {
      best = std::move(cand);
      best_t = tt;
    }
  }
  return *best;
}

inline bool h1_available(const SeedWalks& seeds) { return wd2_sd(seeds).has_value(); }

inline IntermediateSet derive_intermediates(const SeedWalks& seeds, const Instance& inst, Scheme tag) {
  switch (tag) {
    case Scheme::O1: return {tag, seeds.wd_n1.walk, std::nullopt, wd1_sd(seeds), true};
    case Scheme::O2: return {tag, seeds.wd_n2.walk, std::nullopt, wd2_std(seeds, inst), true};
    case Scheme::H1: {
      auto big = wd2_sd(seeds);
      if (!big) throw Error(ErrorCode::h1_unavailable, "the depot of WD*(n+2) cannot be shortcut");
      return {tag, wd2_st(seeds, inst), std::move(big), wd2_std(seeds, inst), true};
    }
    case Scheme::H2: return {tag, w1_stid(seeds, inst), seeds.w_n1.walk, w1_st(seeds, inst), true};
    case Scheme::H3: return {tag, seeds.wd_n1.walk, wd1_sdit(seeds, inst), wd1_sd(seeds), true};
  }
  throw Error(ErrorCode::malformed_input, "unknown scheme");
}

/// Smallest target visited exactly once in every block of the set.
inline int choose_pivot(const IntermediateSet& set) {
  auto common = singly_visited_targets(set.base);
  auto keep = [&](const Walk& w) {
    const auto s = singly_visited_targets(w);
    std::vector<int> out;
    std::set_intersection(common.begin(), common.end(), s.begin(), s.end(), std::back_inserter(out));
    common = std::move(out);
  };
  keep(set.small);
  if (set.big) keep(*set.big);
  if (common.empty()) throw Error(ErrorCode::no_pivot, "no target is singly visited in every block");
  return common.front();
}

inline ConstructionPlan plan(int k, int n, int base_len) {
  if (k < n * n + n + 1)
    throw Error(ErrorCode::k_too_small_for_plan,
                "k = " + std::to_string(k) + " below n^2+n+1 = " + std::to_string(n * n + n + 1));
  ConstructionPlan p;
  p.k = k;
  p.n = n;
  p.base_len = base_len;
  p.y = (k - base_len) % n;
  p.x = (k - base_len - p.y * (n + 1)) / n;
  if (p.x < 1 || k - base_len < 0)
    throw Error(ErrorCode::k_too_small_for_plan, "k = " + std::to_string(k) + " leaves no n-visit block");
  p.below_guaranteed = k < n * n + 2 * n + 1;
  p.cyclic_adjacency = p.x == 1 && p.y >= 1;
  p.arrangement.push_back(BlockRole::base);
  p.arrangement.push_back(BlockRole::small);
  p.arrangement.insert(p.arrangement.end(), static_cast<std::size_t>(p.y), BlockRole::big);
  p.arrangement.insert(p.arrangement.end(), static_cast<std::size_t>(p.x - 1), BlockRole::small);
  return p;
}

struct Construction {
  Scheme scheme = Scheme::O1;
  Walk walk;
  double ub = 0.0;
  ConstructionPlan plan;
};

/// Builds the k-visit PMP-D walk of one scheme: blocks rotated to a common
/// pivot, concatenated per plan, rotated back to the depot.
inline Construction build_scheme(const SeedWalks& seeds, const Instance& inst, int k, Scheme tag) {
  const IntermediateSet set = derive_intermediates(seeds, inst, tag);
  ConstructionPlan pl = plan(k, inst.n(), set.base.k());
  if (pl.y > 0 && !set.big)
    throw Error(ErrorCode::not_applicable, std::string(to_string(tag)) + " has no (n+1)-visit block for k = " +
                                               std::to_string(k));
  pl.pivot = choose_pivot(set);
  const Visit pivot = Visit::target(pl.pivot);
  const Walk base = permute(set.base, pivot);
  const Walk small = permute(set.small, pivot);
  const std::optional<Walk> big = set.big ? std::optional<Walk>(permute(*set.big, pivot)) : std::nullopt;

  Walk joined = base;
  for (std::size_t i = 1; i < pl.arrangement.size(); ++i)
    joined = concatenate(joined, pl.arrangement[i] == BlockRole::big ? *big : small);
  Construction out;
  out.scheme = tag;
  out.walk = permute(joined, kDepot);
  out.ub = revisit_time(out.walk, inst);
  out.plan = std::move(pl);
  return out;
}

struct BuildResult {
  Walk walk;
  double ub = 0.0;
  BoundReport bound;
  double gap_pct = 0.0;
  Scheme scheme = Scheme::O1;
  ConstructionPlan plan;
  std::optional<double> r1;  // absent when H1 is unavailable
  double r2 = 0.0;
  double r2_alt = 0.0;
  double r3 = 0.0;
  std::vector<std::pair<Scheme, double>> candidates;
};

/// Scheme selection: q = 0 -> O1; R*(n+1) > RD*(n+2) and q = 1 -> O2;
/// R*(n+1) > RD*(n+2) and q >= 2 -> H2; otherwise the best evaluated of
/// H1 (when available), H2, H3.
inline BuildResult build(const SeedWalks& seeds, const Instance& inst, int k) {
  BuildResult r;
  r.bound = lower_bound(seeds, k);
  const int q = r.bound.q;
  const bool trimodal = definitely_gt(seeds.r_n1(), seeds.rd_n2());

  std::vector<Scheme> order;
  if (q == 0) {
    order = {Scheme::O1};
  } else if (trimodal) {
    order = {q == 1 ? Scheme::O2 : Scheme::H2};
  } else {
    if (h1_available(seeds)) order.push_back(Scheme::H1);
    order.push_back(Scheme::H2);
    order.push_back(Scheme::H3);
  }
  std::optional<Construction> best;
  for (Scheme s : order) {
    Construction c = build_scheme(seeds, inst, k, s);
    r.candidates.emplace_back(s, c.ub);
    if (!best || definitely_lt(c.ub, best->ub)) best = std::move(c);
  }
  r.walk = best->walk;
  r.ub = best->ub;
  r.scheme = best->scheme;
  r.plan = best->plan;
  r.gap_pct = r.bound.lb > 0.0 && !approx_eq(r.ub, r.bound.lb) ? 100.0 * (r.ub - r.bound.lb) / r.bound.lb : 0.0;

  if (auto sd = wd2_sd(seeds)) r.r1 = std::max(travel_time(wd2_st(seeds, inst), inst), travel_time(*sd, inst));
  r.r2 = std::max(seeds.r_n1(), travel_time(w1_st(seeds, inst), inst));
  r.r2_alt = std::max(seeds.r_n1(), travel_time(w1_stid(seeds, inst), inst));
  r.r3 = std::max(seeds.rd_n1(), travel_time(wd1_sdit(seeds, inst), inst));
  return r;
}

struct ConjectureCheck {
  double r_n1 = 0.0;
  double rd_n2 = 0.0;
  double t_stid = 0.0;
  bool holds = true;
};

/// T(W1_STID) <= R*(n+1), meaningful when R*(n+1) > RD*(n+2).
inline ConjectureCheck conjecture1_check(const SeedWalks& seeds, const Instance& inst) {
  if (!seeds.certified()) throw Error(ErrorCode::uncertified_seeds, "the check needs optimal seeds");
  if (!definitely_gt(seeds.r_n1(), seeds.rd_n2()))
    throw Error(ErrorCode::not_applicable, "R*(n+1) does not exceed RD*(n+2)");
  ConjectureCheck c{seeds.r_n1(), seeds.rd_n2(), travel_time(w1_stid(seeds, inst), inst), true};
  c.holds = approx_le(c.t_stid, c.r_n1);
  return c;
}

}  // namespace pmpd
