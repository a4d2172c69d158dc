#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "pmpd/error.hpp"
#include "pmpd/instance.hpp"
#include "pmpd/tolerance.hpp"

namespace pmpd {

/// Closed sequences that start and end at `root` and whose interior visits
/// every node of `required` at least once. `extras` further interior visits
/// go either to the root itself or to already visited required nodes, and
/// the depot may be required exactly once in the interior. The number of
/// visits is |required| + extras + depot_once + 1.
struct SequenceModel {
  int root = kDepotNode;
  std::vector<int> required;
  int extras = 0;
  bool extras_to_root = false;
  bool extras_to_targets = false;
  bool depot_once = false;

  int visits() const { return static_cast<int>(required.size()) + extras + (depot_once ? 1 : 0) + 1; }
};

/// A closed node sequence (root first and last) with its travel time.
struct SequenceSolution {
  std::vector<int> nodes;
  double cost = std::numeric_limits<double>::infinity();
  bool feasible() const { return !nodes.empty(); }
};

inline double sequence_cost(const std::vector<int>& nodes, const Instance& inst) {
  double c = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) c += inst.time(nodes[i - 1], nodes[i]);
  return c;
}

/// Exact minimum over a SequenceModel by dynamic programming on
/// (visited subset, extras used, depot used, last node). Among optima within
/// tolerance, returns the sequence whose reversal is lexicographically
/// smallest: the last interior node is the smallest possible, then the one
/// before it, and so on.
class SequenceDp {
 public:
  SequenceDp(const Instance& inst, SequenceModel model) : inst_(inst), model_(std::move(model)) {
    nodes_ = inst.node_count();
    bit_.assign(static_cast<std::size_t>(nodes_), -1);
    for (std::size_t i = 0; i < model_.required.size(); ++i) bit_[static_cast<std::size_t>(model_.required[i])] = static_cast<int>(i);
    m_ = static_cast<int>(model_.required.size());
    e_count_ = model_.extras + 1;
    f_count_ = model_.depot_once ? 2 : 1;
  }

  SequenceSolution solve() {
    fill();
    const std::uint32_t full = (std::uint32_t{1} << m_) - 1;
    const int e_last = model_.extras;
    const int f_last = f_count_ - 1;

    double best = kInf;
    for (int last = 0; last < nodes_; ++last) {
      if (last == model_.root) continue;
      const double v = dp_[index(full, e_last, f_last, last)];
      if (v < kInf) best = std::min(best, v + inst_.time(last, model_.root));
    }
    if (best == kInf) return {};
    const double tol = slack(best, best);

    struct Front {
      std::size_t idx;
      std::uint32_t mask;
      int e, f, last;
      double suffix;
    };
    std::vector<Front> frontier;
    int chosen = -1;
    for (int last = 0; last < nodes_ && chosen < 0; ++last) {
      if (last == model_.root) continue;
      const std::size_t idx = index(full, e_last, f_last, last);
      const double g = inst_.time(last, model_.root);
      if (dp_[idx] < kInf && dp_[idx] + g <= best + tol) {
        chosen = last;
        frontier.push_back({idx, full, e_last, f_last, last, g});
      }
    }

    std::vector<int> reversed_interior{chosen};
    const int interior = model_.visits() - 1;
    for (int step = 1; step < interior; ++step) {
      std::map<std::size_t, Front> next;  // candidate predecessor states by index
      int pick = nodes_;
      for (const Front& s : frontier) {
        for (const Front& p : predecessors(s)) {
          const double via = dp_[p.idx] + inst_.time(p.last, s.last) + s.suffix;
          if (!(dp_[p.idx] < kInf) || via > best + tol) continue;
          if (p.last < pick) {
            pick = p.last;
            next.clear();
          }
          if (p.last == pick) {
            Front q = p;
            q.suffix = inst_.time(p.last, s.last) + s.suffix;
            auto [it, fresh] = next.emplace(q.idx, q);
            if (!fresh) it->second.suffix = std::min(it->second.suffix, q.suffix);
          }
        }
      }
      frontier.clear();
      for (const auto& [idx, f] : next) frontier.push_back(f);
      reversed_interior.push_back(pick);
    }

    SequenceSolution out;
    out.nodes.push_back(model_.root);
    out.nodes.insert(out.nodes.end(), reversed_interior.rbegin(), reversed_interior.rend());
    out.nodes.push_back(model_.root);
    out.cost = sequence_cost(out.nodes, inst_);
    return out;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  std::size_t index(std::uint32_t mask, int e, int f, int last) const {
    return ((static_cast<std::size_t>(mask) * static_cast<std::size_t>(e_count_) + static_cast<std::size_t>(e)) *
                static_cast<std::size_t>(f_count_) +
            static_cast<std::size_t>(f)) *
               static_cast<std::size_t>(nodes_) +
           static_cast<std::size_t>(last);
  }

  void fill() {
    const std::size_t masks = std::size_t{1} << m_;
    dp_.assign(masks * static_cast<std::size_t>(e_count_ * f_count_ * nodes_), kInf);
    dp_[index(0, 0, 0, model_.root)] = 0.0;
    for (std::uint32_t mask = 0; mask < masks; ++mask)
      for (int e = 0; e < e_count_; ++e)
        for (int f = 0; f < f_count_; ++f)
          for (int last = 0; last < nodes_; ++last) {
            const double here = dp_[index(mask, e, f, last)];
            if (here == kInf) continue;
            for (int x = 0; x < nodes_; ++x) {
              if (x == last) continue;
              std::uint32_t nmask = mask;
              int ne = e, nf = f;
              if (!step(x, nmask, ne, nf)) continue;
              double& slot = dp_[index(nmask, ne, nf, x)];
              slot = std::min(slot, here + inst_.time(last, x));
            }
          }
  }

  /// Applies the move "visit x next" to (mask, e, f); false if not allowed.
  bool step(int x, std::uint32_t& mask, int& e, int& f) const {
    if (x == model_.root) {
      if (!model_.extras_to_root || e + 1 >= e_count_) return false;
      ++e;
      return true;
    }
    const int b = bit_[static_cast<std::size_t>(x)];
    if (b >= 0) {
      const std::uint32_t bit = std::uint32_t{1} << b;
      if (!(mask & bit)) {
        mask |= bit;
        return true;
      }
      if (!model_.extras_to_targets || e + 1 >= e_count_) return false;
      ++e;
      return true;
    }
    if (x == kDepotNode && model_.depot_once && f == 0) {
      f = 1;
      return true;
    }
    return false;
  }

  template <class Front>
  std::vector<Front> predecessors(const Front& s) const {
    std::vector<Front> out;
    auto add_all = [&](std::uint32_t mask, int e, int f) {
      for (int p = 0; p < nodes_; ++p) {
        if (p == s.last) continue;
        const std::size_t idx = index(mask, e, f, p);
        if (dp_[idx] < kInf) out.push_back(Front{idx, mask, e, f, p, 0.0});
      }
    };
    if (s.last == model_.root) {
      if (s.e > 0) add_all(s.mask, s.e - 1, s.f);
      return out;
    }
    const int b = bit_[static_cast<std::size_t>(s.last)];
    if (b >= 0) {
      const std::uint32_t bit = std::uint32_t{1} << b;
      if (s.mask & bit) add_all(s.mask & ~bit, s.e, s.f);
      if (model_.extras_to_targets && s.e > 0) add_all(s.mask, s.e - 1, s.f);
      return out;
    }
    if (s.last == kDepotNode && s.f == 1) add_all(s.mask, s.e, 0);
    return out;
  }

  const Instance& inst_;
  SequenceModel model_;
  int nodes_ = 0;
  int m_ = 0;
  int e_count_ = 1;
  int f_count_ = 1;
  std::vector<int> bit_;
  std::vector<double> dp_;
};

inline SequenceSolution solve_dp(const Instance& inst, SequenceModel model) {
  return SequenceDp(inst, std::move(model)).solve();
}

/// All targets except `skip` (pass -1 to keep all), ascending.
inline std::vector<int> targets_except(const Instance& inst, int skip) {
  std::vector<int> out;
  for (int t = 1; t <= inst.n(); ++t)
    if (t != skip) out.push_back(t);
  return out;
}

}  // namespace pmpd
