#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "pmpd/error.hpp"
#include "pmpd/exact_search.hpp"
#include "pmpd/instance.hpp"
#include "pmpd/walk.hpp"

// Brute-force references for cross-checking; exponential by design.

namespace pmpd::oracle {

/// Maximum travel time over every window (v_i, ..., v_{i+r}) of the
/// repeated walk with r <= k that starts and ends at the same target, does
/// not meet that target in between and passes the depot at most once.
inline double definition_revisit_time(const Walk& walk, const Instance& inst) {
  const int k = walk.k();
  if (k > 20) throw Error(ErrorCode::too_large, "k = " + std::to_string(k) + " exceeds 20");
  if (!is_valid(walk, inst)) throw Error(ErrorCode::invalid_walk, to_string(walk));
  const auto open = walk.open();
  auto at = [&](int i) { return open[static_cast<std::size_t>(i % k)].node(); };
  double worst = 0.0;
  for (int i = 0; i < k; ++i) {
    const int t = at(i);
    if (t == kDepotNode) continue;
    for (int r = 1; r <= k; ++r) {
      if (at(i + r) != t) continue;
      bool clean = true;
      int depots = 0;
      for (int j = i + 1; j < i + r; ++j) {
        if (at(j) == t) clean = false;
        if (at(j) == kDepotNode) ++depots;
      }
      if (!clean || depots > 1) continue;
      double length = 0.0;
      for (int j = i; j < i + r; ++j) length += inst.time(at(j), at(j + 1));
      worst = std::max(worst, length);
    }
  }
  return worst;
}

/// Exhaustive optimum over all k-visit PMP-D walks (n <= 4, k <= 10). The
/// first walk in lexicographic order among optima is returned.
inline SolveResult brute_force_optimal(const Instance& inst, int k) {
  const int n = inst.n();
  if (n > 4 || k > 10) throw Error(ErrorCode::too_large, "brute force is limited to n <= 4 and k <= 10");
  if (k < n + 1) throw Error(ErrorCode::k_too_small, "k must be at least n+1");
  std::vector<int> seq{kDepotNode};
  std::vector<int> best_seq;
  double best = std::numeric_limits<double>::infinity();
  long long count = 0;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(seq.size()) == k) {
      if (seq.back() == kDepotNode) return;
      std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
      for (int v : seq) seen[static_cast<std::size_t>(v)] = true;
      for (int t = 1; t <= n; ++t)
        if (!seen[static_cast<std::size_t>(t)]) return;
      std::vector<int> closed = seq;
      closed.push_back(kDepotNode);
      ++count;
      const double v = definition_revisit_time(Walk::of_nodes(WalkKind::pmpd, closed), inst);
      if (best_seq.empty() || v < best - slack(v, best)) {
        best = v;
        best_seq = closed;
      }
      return;
    }
    for (int x = 1; x <= n; ++x) {
      if (x == seq.back()) continue;
      seq.push_back(x);
      rec();
      seq.pop_back();
    }
  };
  rec();
  SolveResult r;
  r.walk = Walk::of_nodes(WalkKind::pmpd, best_seq);
  r.ub = best;
  r.lb = best;
  r.cert = Certificate::proven(best);
  r.stats.nodes = count;
  return r;
}

}  // namespace pmpd::oracle
