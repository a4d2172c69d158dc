#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "pmpd/pmpd.hpp"

namespace fixtures {

using namespace pmpd;

/// Five targets whose seed walks are (d,2,3,4,5,1,d) 45.72,
/// (d,1,5,4,3,2,1,d) 47.14 and (1,5,4,3,1,2,1) 47.77.
inline Instance worked_example() {
  return from_matrix({{0, 1.415, 7.995, 6.375, 14.375, 10.225},
                      {1.415, 0, 8, 5.46, 12.96, 9.31},
                      {7.995, 8, 0, 10, 17.5, 16.81},
                      {6.375, 5.46, 10, 0, 8, 14.27},
                      {14.375, 12.96, 17.5, 8, 0, 9},
                      {10.225, 9.31, 16.81, 14.27, 9, 0}},
                     5)
      .with_name("worked-example");
}

/// Every off-diagonal entry equal to 1.
inline Instance uniform(int n) {
  std::vector<std::vector<double>> m(static_cast<std::size_t>(n) + 1, std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0));
  for (int i = 0; i <= n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
  return from_matrix(m, n);
}

inline int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(unit_draw(rng) * (hi - lo + 1));
}

/// Random closed interior for a PMP-D walk: a permutation of the targets
/// with k-1-n extra target visits inserted where they create no repeat.
inline Walk random_pmpd_walk(std::mt19937_64& rng, int n, int k) {
  std::vector<int> seq(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(seq.begin(), seq.end(), rng);
  seq.insert(seq.begin(), kDepotNode);
  seq.push_back(kDepotNode);
  while (static_cast<int>(seq.size()) - 1 < k) {
    const int g = draw(rng, 0, static_cast<int>(seq.size()) - 2);
    const int t = draw(rng, 1, n);
    if (seq[static_cast<std::size_t>(g)] == t || seq[static_cast<std::size_t>(g) + 1] == t) continue;
    seq.insert(seq.begin() + g + 1, t);
  }
  return Walk::of_nodes(WalkKind::pmpd, seq);
}

/// Random PMP walk over the targets only with k >= n visits.
inline Walk random_pmp_walk(std::mt19937_64& rng, int n, int k) {
  std::vector<int> seq(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = i + 1;
  std::shuffle(seq.begin(), seq.end(), rng);
  seq.push_back(seq.front());
  while (static_cast<int>(seq.size()) - 1 < k) {
    const int g = draw(rng, 0, static_cast<int>(seq.size()) - 2);
    const int t = draw(rng, 1, n);
    if (seq[static_cast<std::size_t>(g)] == t || seq[static_cast<std::size_t>(g) + 1] == t) continue;
    seq.insert(seq.begin() + g + 1, t);
  }
  return Walk::of_nodes(WalkKind::pmp, seq);
}

/// Calls f on every sequence of `len` symbols from `alphabet` with no two
/// equal neighbours, starting after `prev`.
inline void each_sequence(const std::vector<int>& alphabet, int len, int prev,
                          const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int p) {
    if (static_cast<int>(cur.size()) == len) {
      f(cur);
      return;
    }
    for (int x : alphabet) {
      if (x == p) continue;
      cur.push_back(x);
      rec(x);
      cur.pop_back();
    }
  };
  rec(prev);
}

inline bool covers_targets(const std::vector<int>& seq, int n) {
  for (int t = 1; t <= n; ++t)
    if (std::find(seq.begin(), seq.end(), t) == seq.end()) return false;
  return true;
}

inline double path_cost(const Instance& inst, const std::vector<int>& nodes) {
  double c = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) c += inst.time(nodes[i - 1], nodes[i]);
  return c;
}

/// Least travel time of a closed PMP-D walk with `visits` visits, by
/// enumeration of every interior.
inline double enumerate_wd(const Instance& inst, int visits) {
  const int n = inst.n();
  std::vector<int> targets;
  for (int t = 1; t <= n; ++t) targets.push_back(t);
  double best = std::numeric_limits<double>::infinity();
  each_sequence(targets, visits - 1, kDepotNode, [&](const std::vector<int>& s) {
    if (!covers_targets(s, n)) return;
    std::vector<int> w{kDepotNode};
    w.insert(w.end(), s.begin(), s.end());
    w.push_back(kDepotNode);
    best = std::min(best, path_cost(inst, w));
  });
  return best;
}

/// Least travel time of a closed walk over the targets with `visits` visits.
inline double enumerate_w(const Instance& inst, int visits) {
  const int n = inst.n();
  std::vector<int> targets;
  for (int t = 1; t <= n; ++t) targets.push_back(t);
  double best = std::numeric_limits<double>::infinity();
  each_sequence(targets, visits, -1, [&](const std::vector<int>& s) {
    if (s.back() == s.front() || !covers_targets(s, n)) return;
    std::vector<int> w = s;
    w.push_back(s.front());
    best = std::min(best, path_cost(inst, w));
  });
  return best;
}

/// Least travel time of a spanning revisit sequence with v visits, with the
/// depot exactly once or not at all, by enumeration.
inline double enumerate_revisit_sequence(const Instance& inst, int v, bool with_depot) {
  const int n = inst.n();
  double best = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= n; ++t) {
    std::vector<int> alphabet;
    for (int x = 0; x <= n; ++x)
      if (x != t && (x != kDepotNode || with_depot)) alphabet.push_back(x);
    each_sequence(alphabet, v - 1, t, [&](const std::vector<int>& s) {
      if (s.back() == t) return;
      const auto depots = std::count(s.begin(), s.end(), kDepotNode);
      if (depots != (with_depot ? 1 : 0)) return;
      std::vector<int> w{t};
      w.insert(w.end(), s.begin(), s.end());
      w.push_back(t);
      if (!covers_targets(w, n)) return;
      best = std::min(best, path_cost(inst, w));
    });
  }
  return best;
}

/// Seed walks assembled by hand, for tests of the bound expressions.
inline SeedWalks seeds_from_values(int n, double rd_n1, double rd_n2, double r_n1, bool certified = true) {
  SeedWalks s;
  s.n = n;
  auto fill = [&](SeedResult& r, double v) {
    r.value = v;
    r.cert = certified ? Certificate::proven(v) : Certificate::best_found(v, 0.9 * v);
  };
  fill(s.wd_n1, rd_n1);
  fill(s.wd_n2, rd_n2);
  fill(s.w_n1, r_n1);
  return s;
}

}  // namespace fixtures
