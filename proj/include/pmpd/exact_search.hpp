#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pmpd/bounds.hpp"
#include "pmpd/builder.hpp"
#include "pmpd/error.hpp"
#include "pmpd/evaluator.hpp"
#include "pmpd/seeds.hpp"
#include "pmpd/walk.hpp"

namespace pmpd {

struct SolveOptions {
  std::chrono::milliseconds budget{60000};
  /// Optional starting walk (PMP-D, k visits).
  std::optional<Walk> incumbent;
  /// Proven lower bound on the optimum. When absent and n is within the DP
  /// threshold, the seed bound is used; reaching it ends the search early.
  std::optional<double> lower_bound;
};

struct SolveStats {
  long long nodes = 0;
  double millis = 0.0;
};

struct SolveResult {
  Walk walk;
  double ub = 0.0;
  double lb = 0.0;
  Certificate cert;
  SolveStats stats;
};

namespace detail {

/// Depth-first search over interior visit sequences with per-target first,
/// last and worst closed gap tracking.
class RevisitSearch {
 public:
  RevisitSearch(const Instance& inst, int k, Clock::time_point deadline, double stop_at)
      : inst_(inst), k_(k), n_(inst.n()), deadline_(deadline), stop_at_(stop_at) {
    first_.assign(static_cast<std::size_t>(n_) + 1, -1.0);
    last_.assign(static_cast<std::size_t>(n_) + 1, -1.0);
    path_.reserve(static_cast<std::size_t>(k) + 1);
  }

  void set_incumbent(std::vector<int> nodes, double value) {
    best_nodes_ = std::move(nodes);
    best_ = value;
    from_search_ = false;
  }

  /// Returns false when the deadline cut the search short.
  bool run() {
    path_.assign(1, kDepotNode);
    if (done()) return true;
    expand(0.0, 0.0, 0);
    return !aborted_;
  }

  const std::vector<int>& best_nodes() const { return best_nodes_; }
  double best() const { return best_; }
  long long explored() const { return explored_; }
  bool reached_bound() const { return done(); }

 private:
  bool done() const { return best_ <= stop_at_ + slack(best_, stop_at_); }

  bool prunable(double bound) const {
    const double tol = slack(bound, best_);
    return from_search_ ? bound >= best_ - tol : bound > best_ + tol;
  }

  void expand(double now, double closed_worst, int covered) {
    if ((++explored_ & 4095) == 0 && Clock::now() >= deadline_) aborted_ = true;
    if (aborted_ || done()) return;
    const int u = path_.back();
    const int placed = static_cast<int>(path_.size()) - 1;
    if (placed == k_ - 1) {
      finish(now, closed_worst, covered);
      return;
    }
    if (k_ - 1 - placed < n_ - covered) return;

    double bound = closed_worst;
    for (int t = 1; t <= n_; ++t) {
      const auto ti = static_cast<std::size_t>(t);
      if (last_[ti] >= 0.0) {
        if (t == u) continue;
        bound = std::max(bound, now - last_[ti] + std::min(inst_.time(u, t), inst_.time(u, kDepotNode) + first_[ti]));
      } else {
        bound = std::max(bound, inst_.time(t, kDepotNode) + now + inst_.time(u, t));
      }
    }
    if (prunable(bound)) return;

    for (int x = 1; x <= n_; ++x) {
      if (x == u) continue;
      const auto xi = static_cast<std::size_t>(x);
      const double at = now + inst_.time(u, x);
      const double prev_first = first_[xi], prev_last = last_[xi];
      double worst = closed_worst;
      int cov = covered;
      if (prev_last < 0.0) {
        first_[xi] = at;
        ++cov;
      } else {
        worst = std::max(worst, at - prev_last);
      }
      last_[xi] = at;
      path_.push_back(x);
      if (!prunable(worst)) expand(at, worst, cov);
      path_.pop_back();
      first_[xi] = prev_first;
      last_[xi] = prev_last;
      if (aborted_ || done()) return;
    }
  }

  void finish(double now, double closed_worst, int covered) {
    if (covered < n_ || path_.back() < path_[1]) return;
    const double cycle = now + inst_.time(path_.back(), kDepotNode);
    double value = closed_worst;
    for (int t = 1; t <= n_; ++t) {
      const auto ti = static_cast<std::size_t>(t);
      value = std::max(value, cycle - last_[ti] + first_[ti]);
    }
    std::vector<int> nodes = path_;
    nodes.push_back(kDepotNode);
    const double tol = slack(value, best_);
    const bool better = value < best_ - tol;
    const bool tie_smaller = !from_search_ && std::abs(value - best_) <= tol && nodes < best_nodes_;
    if (better || tie_smaller) {
      best_ = value;
      best_nodes_ = std::move(nodes);
      from_search_ = true;
    }
  }

  const Instance& inst_;
  int k_;
  int n_;
  Clock::time_point deadline_;
  double stop_at_;
  std::vector<double> first_, last_;
  std::vector<int> path_;
  std::vector<int> best_nodes_;
  double best_ = std::numeric_limits<double>::infinity();
  bool from_search_ = false;
  bool aborted_ = false;
  long long explored_ = 0;
};

/// d, then the targets in tour order repeated until k-1 interior visits, d.
inline Walk cycled_tour_walk(const Instance& inst, int k) {
  const auto tour = heuristic_tour(inst, targets_except(inst, -1));
  std::vector<int> nodes{kDepotNode};
  for (int i = 0; i < k - 1; ++i) nodes.push_back(tour[static_cast<std::size_t>(i) % tour.size()]);
  nodes.push_back(kDepotNode);
  return Walk::of_nodes(WalkKind::pmpd, nodes);
}

}  // namespace detail

/// Minimum revisit time over all k-visit PMP-D walks, within a time budget.
inline SolveResult solve_exact(const Instance& inst, int k, const SolveOptions& opts = {}) {
  const auto start = Clock::now();
  const int n = inst.n();
  q_decompose(k, n);  // throws KTooSmall

  double lb = 0.0;
  std::optional<SeedWalks> seeds;
  if (opts.lower_bound) {
    lb = *opts.lower_bound;
  } else if (n <= SeedOptions{}.dp_threshold) {
    seeds = compute_seeds(inst);
    lb = lower_bound(*seeds, k).proven_lb;
  }

  Walk inc;
  if (opts.incumbent) {
    inc = *opts.incumbent;
    if (inc.k() != k || inc.kind() != WalkKind::pmpd || !is_valid(inc, inst))
      throw Error(ErrorCode::invalid_walk, "incumbent must be a valid " + std::to_string(k) + "-visit PMP-D walk");
  } else if (seeds && k >= n * n + n + 1) {
    inc = build(*seeds, inst, k).walk;
  } else {
    inc = detail::cycled_tour_walk(inst, k);
  }

  detail::RevisitSearch search(inst, k, start + opts.budget, lb);
  search.set_incumbent(inc.nodes(), revisit_time(inc, inst));
  const bool complete = search.run();

  SolveResult r;
  r.walk = Walk::of_nodes(WalkKind::pmpd, search.best_nodes());
  r.ub = revisit_time(r.walk, inst);
  r.lb = lb;
  if (complete || search.reached_bound())
    r.cert = Certificate::proven(r.ub);
  else
    r.cert = Certificate::best_found(r.ub, std::min(r.ub, lb));
  r.stats = {search.explored(), detail::elapsed_ms(start)};
  return r;
}

}  // namespace pmpd
