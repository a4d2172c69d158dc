#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "pmpd/instance.hpp"
#include "pmpd/seed_dp.hpp"
#include "pmpd/tolerance.hpp"

namespace pmpd {

using Clock = std::chrono::steady_clock;

/// Minimum spanning tree weight over `nodes` (Prim, dense).
inline double mst_weight(const Instance& inst, const std::vector<int>& nodes) {
  const std::size_t m = nodes.size();
  if (m < 2) return 0.0;
  std::vector<double> key(m, std::numeric_limits<double>::infinity());
  std::vector<bool> in(m);
  key[0] = 0.0;
  double total = 0.0;
  for (std::size_t it = 0; it < m; ++it) {
    std::size_t u = m;
    for (std::size_t i = 0; i < m; ++i)
      if (!in[i] && (u == m || key[i] < key[u])) u = i;
    in[u] = true;
    total += key[u];
    for (std::size_t i = 0; i < m; ++i)
      if (!in[i]) key[i] = std::min(key[i], inst.time(nodes[u], nodes[i]));
  }
  return total;
}

/// Held-Karp 1-tree bound with subgradient ascent on the Hamiltonian cycle
/// over `nodes`. `upper` is a known tour length used for the step size.
inline double one_tree_bound(const Instance& inst, const std::vector<int>& nodes, double upper, int iterations = 300) {
  const std::size_t m = nodes.size();
  if (m < 3) return 0.0;
  std::vector<double> pi(m, 0.0);
  double best = 0.0;
  double lambda = 2.0;
  int stale = 0;
  std::vector<int> degree(m);
  std::vector<double> key(m);
  std::vector<std::size_t> parent(m);
  std::vector<bool> in(m);
  auto w = [&](std::size_t a, std::size_t b) { return inst.time(nodes[a], nodes[b]) + pi[a] + pi[b]; };

  for (int iter = 0; iter < iterations; ++iter) {
    std::fill(degree.begin(), degree.end(), 0);
    std::fill(in.begin(), in.end(), false);
    std::fill(key.begin(), key.end(), std::numeric_limits<double>::infinity());
    // spanning tree over nodes 1..m-1, node 0 is the special vertex
    double tree = 0.0;
    key[1] = 0.0;
    parent[1] = 1;
    for (std::size_t it = 1; it < m; ++it) {
      std::size_t u = m;
      for (std::size_t i = 1; i < m; ++i)
        if (!in[i] && (u == m || key[i] < key[u])) u = i;
      in[u] = true;
      tree += key[u];
      if (parent[u] != u) {
        ++degree[u];
        ++degree[parent[u]];
      }
      for (std::size_t i = 1; i < m; ++i)
        if (!in[i] && w(u, i) < key[i]) {
          key[i] = w(u, i);
          parent[i] = u;
        }
    }
    std::size_t a = 0, b = 0;
    double wa = std::numeric_limits<double>::infinity(), wb = wa;
    for (std::size_t i = 1; i < m; ++i) {
      const double c = w(0, i);
      if (c < wa) {
        wb = wa;
        b = a;
        wa = c;
        a = i;
      } else if (c < wb) {
        wb = c;
        b = i;
      }
    }
    degree[0] = 2;
    ++degree[a];
    ++degree[b];
    const double value = tree + wa + wb - 2.0 * std::accumulate(pi.begin(), pi.end(), 0.0);
    if (value > best + 1e-12) {
      best = value;
      stale = 0;
    } else if (++stale >= 20) {
      lambda *= 0.5;
      stale = 0;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm += static_cast<double>((degree[i] - 2) * (degree[i] - 2));
    if (norm == 0.0) break;  // the 1-tree is a tour, hence optimal
    const double step = lambda * std::max(upper - value, 1e-9 * std::max(1.0, upper)) / norm;
    for (std::size_t i = 0; i < m; ++i) pi[i] += step * (degree[i] - 2);
    if (lambda < 1e-6) break;
  }
  return best;
}

inline double open_tour_cost(const Instance& inst, const std::vector<int>& tour) {
  double c = 0.0;
  for (std::size_t i = 0; i < tour.size(); ++i) c += inst.time(tour[i], tour[(i + 1) % tour.size()]);
  return c;
}

/// 2-opt and or-opt (segments up to 3, both orientations) on an open tour
/// until no move improves.
inline void local_search(const Instance& inst, std::vector<int>& tour) {
  const std::size_t m = tour.size();
  if (m < 4) return;
  auto c = [&](std::size_t i, std::size_t j) { return inst.time(tour[i % m], tour[j % m]); };

  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i + 1 < m; ++i)
      for (std::size_t j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        const double delta = c(i, j) + c(i + 1, j + 1) - c(i, i + 1) - c(j, j + 1);
        if (delta < -1e-10) {
          std::reverse(tour.begin() + static_cast<long>(i) + 1, tour.begin() + static_cast<long>(j) + 1);
          improved = true;
        }
      }
    for (std::size_t len = 1; len <= 3 && len + 2 <= m; ++len)
      for (std::size_t i = 1; i + len <= m; ++i) {
        // move segment tour[i, i+len) elsewhere
        const std::size_t prev = i - 1, after = (i + len) % m;
        const double removal = c(prev, i) + c(i + len - 1, i + len) - inst.time(tour[prev], tour[after]);
        std::vector<int> seg(tour.begin() + static_cast<long>(i), tour.begin() + static_cast<long>(i + len));
        std::vector<int> rest(tour.begin(), tour.begin() + static_cast<long>(i));
        rest.insert(rest.end(), tour.begin() + static_cast<long>(i + len), tour.end());
        const std::size_t r = rest.size();
        double best_gain = 1e-10;
        std::size_t best_pos = r;
        bool best_rev = false;
        for (std::size_t p = 0; p < r; ++p) {
          const int a = rest[p], b = rest[(p + 1) % r];
          const double base = inst.time(a, b);
          const double fwd = inst.time(a, seg.front()) + inst.time(seg.back(), b) - base;
          const double bwd = inst.time(a, seg.back()) + inst.time(seg.front(), b) - base;
          if (removal - fwd > best_gain) {
            best_gain = removal - fwd;
            best_pos = p;
            best_rev = false;
          }
          if (removal - bwd > best_gain) {
            best_gain = removal - bwd;
            best_pos = p;
            best_rev = true;
          }
        }
        if (best_pos == r) continue;
        if (best_rev) std::reverse(seg.begin(), seg.end());
        rest.insert(rest.begin() + static_cast<long>(best_pos) + 1, seg.begin(), seg.end());
        tour = std::move(rest);
        improved = true;
      }
  }
}

/// Hamiltonian cycle over `nodes`: nearest neighbour, local search, then
/// `kicks` rounds of double-bridge perturbation keeping improvements. The
/// perturbations come from a fixed-seed generator so the result does not
/// depend on timing unless `deadline` cuts the kicks short. Returned open,
/// starting at nodes.front().
inline std::vector<int> heuristic_tour(const Instance& inst, const std::vector<int>& nodes, int kicks = 0,
                                       Clock::time_point deadline = Clock::time_point::max()) {
  std::vector<int> tour{nodes.front()};
  std::vector<bool> used(nodes.size());
  used[0] = true;
  for (std::size_t step = 1; step < nodes.size(); ++step) {
    std::size_t pick = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!used[i] && (pick == nodes.size() || inst.time(tour.back(), nodes[i]) < inst.time(tour.back(), nodes[pick])))
        pick = i;
    used[pick] = true;
    tour.push_back(nodes[pick]);
  }
  local_search(inst, tour);
  double cost = open_tour_cost(inst, tour);
  const std::size_t m = tour.size();
  if (m >= 8) {
    std::mt19937_64 rng(0x5eed);
    for (int kick = 0; kick < kicks && Clock::now() < deadline; ++kick) {
      std::array<std::size_t, 3> cut{};
      for (auto& c : cut) c = 1 + static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(m - 1));
      std::sort(cut.begin(), cut.end());
      if (cut[0] == cut[1] || cut[1] == cut[2]) continue;
      std::vector<int> next(tour.begin(), tour.begin() + static_cast<long>(cut[0]));
      next.insert(next.end(), tour.begin() + static_cast<long>(cut[2]), tour.end());
      next.insert(next.end(), tour.begin() + static_cast<long>(cut[1]), tour.begin() + static_cast<long>(cut[2]));
      next.insert(next.end(), tour.begin() + static_cast<long>(cut[0]), tour.begin() + static_cast<long>(cut[1]));
      local_search(inst, next);
      const double c = open_tour_cost(inst, next);
      if (c < cost - 1e-10) {
        cost = c;
        tour = std::move(next);
      }
    }
  }
  const auto start = std::find(tour.begin(), tour.end(), nodes.front());
  std::rotate(tour.begin(), start, tour.end());
  return tour;
}

/// Cheapest way to add one more visit of any node in `candidates` to the
/// closed sequence without creating an immediate repeat.
inline std::vector<int> cheapest_extra_visit(const Instance& inst, const std::vector<int>& closed,
                                             const std::vector<int>& candidates) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> out;
  for (std::size_t g = 0; g + 1 < closed.size(); ++g)
    for (int t : candidates) {
      if (closed[g] == t || closed[g + 1] == t) continue;
      const double delta = inst.time(closed[g], t) + inst.time(t, closed[g + 1]) - inst.time(closed[g], closed[g + 1]);
      if (delta < best) {
        best = delta;
        out = closed;
        out.insert(out.begin() + static_cast<long>(g) + 1, t);
      }
    }
  return out;
}

enum class SearchStatus { optimal, best_found, infeasible };

struct BnbOutcome {
  SequenceSolution best;
  double dual = 0.0;
  SearchStatus status = SearchStatus::infeasible;
  long long nodes = 0;
};

/// Depth-first branch and bound over a SequenceModel, bounded by path cost
/// plus a spanning tree on everything still to be connected. Children are
/// tried cheapest edge first. Stops at `deadline` and reports the best
/// incumbent with `global_dual` (a bound valid for the whole model) as its
/// dual.
class SequenceBnb {
 public:
  SequenceBnb(const Instance& inst, SequenceModel model, Clock::time_point deadline)
      : inst_(inst), model_(std::move(model)), deadline_(deadline) {
    visited_.assign(static_cast<std::size_t>(inst.node_count()), 0);
    for (int r : model_.required) required_.push_back(r);
    is_required_.assign(static_cast<std::size_t>(inst.node_count()), false);
    for (int r : model_.required) is_required_[static_cast<std::size_t>(r)] = true;
  }

  BnbOutcome run(SequenceSolution incumbent, double global_dual) {
    best_ = std::move(incumbent);
    path_.assign(1, model_.root);
    unvisited_ = static_cast<int>(required_.size());
    const double root_bound = bound(0.0);
    dfs(0.0, 0);
    BnbOutcome out;
    out.nodes = explored_;
    out.best = best_;
    if (!best_.feasible()) {
      out.status = aborted_ ? SearchStatus::best_found : SearchStatus::infeasible;
      out.dual = aborted_ ? std::max(global_dual, root_bound) : 0.0;
      return out;
    }
    if (aborted_) {
      out.status = SearchStatus::best_found;
      out.dual = std::min(best_.cost, std::max(global_dual, root_bound));
      if (out.dual >= best_.cost - slack(best_.cost, best_.cost)) out.status = SearchStatus::optimal;
    } else {
      out.status = SearchStatus::optimal;
      out.dual = best_.cost;
    }
    return out;
  }

 private:
  double bound(double cost) const {
    std::vector<int> open{path_.back()};
    if (path_.back() != model_.root) open.push_back(model_.root);
    for (int r : required_)
      if (!visited_[static_cast<std::size_t>(r)]) open.push_back(r);
    if (model_.depot_once && !depot_used_) open.push_back(kDepotNode);
    return cost + mst_weight(inst_, open);
  }

  void dfs(double cost, int extras) {
    if (aborted_) return;
    if ((++explored_ & 1023) == 0 && Clock::now() >= deadline_) {
      aborted_ = true;
      return;
    }
    const int placed = static_cast<int>(path_.size()) - 1;
    const int interior = model_.visits() - 1;
    const int last = path_.back();
    if (placed == interior) {
      if (last == model_.root || unvisited_ > 0 || extras != model_.extras ||
          (model_.depot_once && !depot_used_))
        return;
      const double total = cost + inst_.time(last, model_.root);
      if (total < best_.cost - slack(total, best_.cost)) {
        best_.nodes = path_;
        best_.nodes.push_back(model_.root);
        best_.cost = total;
      }
      return;
    }
    if (bound(cost) >= best_.cost - slack(cost, best_.cost)) return;
    const int slots = interior - placed;
    const int needed = unvisited_ + (model_.depot_once && !depot_used_ ? 1 : 0) + (model_.extras - extras);
    if (needed != slots) return;

    std::vector<int> order;
    for (int x = 0; x < inst_.node_count(); ++x)
      if (x != last) order.push_back(x);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst_.time(last, a) < inst_.time(last, b); });
    for (int x : order) {
      const double next = cost + inst_.time(last, x);
      if (x == model_.root) {
        if (!model_.extras_to_root || extras >= model_.extras) continue;
        path_.push_back(x);
        dfs(next, extras + 1);
        path_.pop_back();
      } else if (is_required_[static_cast<std::size_t>(x)]) {
        auto& seen = visited_[static_cast<std::size_t>(x)];
        if (!seen) {
          seen = 1;
          --unvisited_;
          path_.push_back(x);
          dfs(next, extras);
          path_.pop_back();
          ++unvisited_;
          seen = 0;
        } else if (model_.extras_to_targets && extras < model_.extras) {
          ++seen;
          path_.push_back(x);
          dfs(next, extras + 1);
          path_.pop_back();
          --seen;
        }
      } else if (x == kDepotNode && model_.depot_once && !depot_used_) {
        depot_used_ = true;
        path_.push_back(x);
        dfs(next, extras);
        path_.pop_back();
        depot_used_ = false;
      }
      if (aborted_) return;
    }
  }

  const Instance& inst_;
  SequenceModel model_;
  Clock::time_point deadline_;
  std::vector<int> required_;
  std::vector<bool> is_required_;
  std::vector<int> visited_;
  std::vector<int> path_;
  int unvisited_ = 0;
  bool depot_used_ = false;
  bool aborted_ = false;
  long long explored_ = 0;
  SequenceSolution best_;
};

}  // namespace pmpd
