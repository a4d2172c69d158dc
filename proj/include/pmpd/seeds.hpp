#pragma once

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "pmpd/error.hpp"
#include "pmpd/evaluator.hpp"
#include "pmpd/instance.hpp"
#include "pmpd/seed_bnb.hpp"
#include "pmpd/seed_dp.hpp"
#include "pmpd/walk.hpp"

namespace pmpd {

enum class CertificateStatus { optimal, best_found, infeasible };

constexpr std::string_view to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::optimal: return "Optimal";
    case CertificateStatus::best_found: return "BestFound";
    case CertificateStatus::infeasible: return "Infeasible";
  }
  return "Unknown";
}

/// Optimality status of a returned value. `dual_bound` is a proven lower
/// bound on the true optimum (equal to the value when Optimal).
struct Certificate {
  CertificateStatus status = CertificateStatus::infeasible;
  double dual_bound = 0.0;
  double gap_pct = 0.0;

  bool optimal() const { return status == CertificateStatus::optimal; }

  static Certificate proven(double value) { return {CertificateStatus::optimal, value, 0.0}; }
  static Certificate best_found(double value, double dual) {
    return {CertificateStatus::best_found, dual, dual > 0.0 ? 100.0 * (value - dual) / dual : 0.0};
  }
};

struct SeedOptions {
  int dp_threshold = 16;
  std::chrono::milliseconds budget{60000};
  /// Perturbation rounds for the starting tour above the DP threshold; they
  /// may use at most half of a seed's share of the budget.
  int tour_kicks = 2000;
};

struct SeedResult {
  Walk walk;
  double value = 0.0;
  Certificate cert;
  long long nodes = 0;
  double millis = 0.0;

  bool optimal() const { return cert.optimal(); }
};

/// The three optimal small walks every bound and construction derives from.
struct SeedWalks {
  SeedResult wd_n1;  // PMP-D, n+1 visits
  SeedResult wd_n2;  // PMP-D, n+2 visits
  SeedResult w_n1;   // PMP, n+1 visits
  int n = 0;

  double rd_n1() const { return wd_n1.value; }
  double rd_n2() const { return wd_n2.value; }
  double r_n1() const { return w_n1.value; }
  bool certified() const { return wd_n1.optimal() && wd_n2.optimal() && w_n1.optimal(); }
};

namespace detail {

inline double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

inline Walk to_walk(const std::vector<int>& nodes) {
  return Walk::of_nodes(nodes.front() == kDepotNode ? WalkKind::pmpd : WalkKind::pmp, nodes);
}

/// Lexicographic order on the reversed closed sequence.
inline bool reverse_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

inline std::vector<int> rotate_closed(const std::vector<int>& closed, std::size_t start) {
  const std::size_t k = closed.size() - 1;
  std::vector<int> out;
  for (std::size_t i = 0; i <= k; ++i) out.push_back(closed[(start + i) % k]);
  return out;
}

/// Among the equivalent spellings of a closed walk (its reversal, and for
/// walks without the depot every rotation that starts at the repeated
/// target) picks the one whose reversal is lexicographically smallest.
inline std::vector<int> canonical_spelling(const std::vector<int>& closed) {
  std::vector<std::vector<int>> forms;
  if (closed.front() == kDepotNode) {
    forms.push_back(closed);
  } else {
    const std::size_t k = closed.size() - 1;
    std::vector<int> count(*std::max_element(closed.begin(), closed.end()) + 1, 0);
    for (std::size_t i = 0; i < k; ++i) ++count[static_cast<std::size_t>(closed[i])];
    for (std::size_t i = 0; i < k; ++i)
      if (count[static_cast<std::size_t>(closed[i])] > 1) forms.push_back(rotate_closed(closed, i));
    if (forms.empty()) forms.push_back(closed);
  }
  const std::size_t base = forms.size();
  for (std::size_t i = 0; i < base; ++i) forms.emplace_back(forms[i].rbegin(), forms[i].rend());
  return *std::min_element(forms.begin(), forms.end(), reverse_less);
}

inline SeedResult from_dp(const SequenceSolution& sol, Clock::time_point start) {
  SeedResult out;
  if (!sol.feasible()) {
    out.cert.status = CertificateStatus::infeasible;
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.walk = to_walk(sol.nodes);
    out.value = sol.cost;
    out.cert = Certificate::proven(sol.cost);
  }
  out.millis = elapsed_ms(start);
  return out;
}

inline SeedResult from_bnb(const BnbOutcome& res, Clock::time_point start, const Instance& inst) {
  SeedResult out;
  out.nodes = res.nodes;
  if (!res.best.feasible()) {
    out.cert.status = CertificateStatus::infeasible;
    out.value = std::numeric_limits<double>::infinity();
  } else {
    const auto nodes = canonical_spelling(res.best.nodes);
    out.walk = to_walk(nodes);
    out.value = sequence_cost(nodes, inst);
    out.cert = res.status == SearchStatus::optimal ? Certificate::proven(out.value)
                                                   : Certificate::best_found(out.value, res.dual);
  }
  out.millis = elapsed_ms(start);
  return out;
}

inline std::vector<int> all_nodes(const Instance& inst) {
  std::vector<int> out(static_cast<std::size_t>(inst.node_count()));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

inline SequenceModel wd_model(const Instance& inst, int extras) {
  return {kDepotNode, targets_except(inst, -1), extras, false, extras > 0, false};
}

/// Closed depot tour from the tour heuristic.
inline std::vector<int> depot_tour(const Instance& inst, int kicks = 0,
                                   Clock::time_point deadline = Clock::time_point::max()) {
  auto tour = heuristic_tour(inst, all_nodes(inst), kicks, deadline);
  tour.push_back(tour.front());
  return tour;
}

inline SeedResult wd_seed(const Instance& inst, int extras, const SeedOptions& opts, Clock::time_point deadline) {
  const auto start = Clock::now();
  if (inst.n() <= opts.dp_threshold) return from_dp(solve_dp(inst, wd_model(inst, extras)), start);
  auto tour = depot_tour(inst, opts.tour_kicks, start + (deadline - start) / 2);
  const double tour_cost = sequence_cost(tour, inst);
  SequenceSolution inc;
  inc.nodes = extras == 0 ? tour : cheapest_extra_visit(inst, tour, targets_except(inst, -1));
  inc.cost = sequence_cost(inc.nodes, inst);
  const double dual = one_tree_bound(inst, all_nodes(inst), tour_cost);
  return from_bnb(SequenceBnb(inst, wd_model(inst, extras), deadline).run(inc, dual), start, inst);
}

}  // namespace detail

/// Minimum-travel PMP-D walk with n+1 visits (each target once).
inline SeedResult optimal_wd_n1(const Instance& inst, const SeedOptions& opts = {}) {
  return detail::wd_seed(inst, 0, opts, Clock::now() + opts.budget);
}

/// Minimum-travel PMP-D walk with n+2 visits (one target twice).
inline SeedResult optimal_wd_n2(const Instance& inst, const SeedOptions& opts = {}) {
  return detail::wd_seed(inst, 1, opts, Clock::now() + opts.budget);
}

namespace detail {

inline SeedResult w_seed(const Instance& inst, const SeedOptions& opts, Clock::time_point deadline) {
  const auto start = Clock::now();
  if (inst.n() <= opts.dp_threshold) {
    SequenceSolution best;
    for (int t = 1; t <= inst.n(); ++t) {
      auto sol = solve_dp(inst, {t, targets_except(inst, t), 1, true, false, false});
      if (sol.feasible() && (!best.feasible() || definitely_lt(sol.cost, best.cost))) best = std::move(sol);
    }
    return from_dp(best, start);
  }
  const auto targets = targets_except(inst, -1);
  auto tour = heuristic_tour(inst, targets, opts.tour_kicks, start + (deadline - start) / 2);
  tour.push_back(tour.front());
  const double tour_cost = sequence_cost(tour, inst);
  SequenceSolution inc;
  inc.nodes = cheapest_extra_visit(inst, tour, targets);
  inc.cost = sequence_cost(inc.nodes, inst);
  const double dual = one_tree_bound(inst, targets, tour_cost);
  const SequenceModel model{tour.front(), targets_except(inst, tour.front()), 1, true, true, false};
  return from_bnb(SequenceBnb(inst, model, deadline).run(inc, dual), start, inst);
}

}  // namespace detail

/// Minimum-travel PMP walk over targets only with n+1 visits.
inline SeedResult optimal_w_n1(const Instance& inst, const SeedOptions& opts = {}) {
  return detail::w_seed(inst, opts, Clock::now() + opts.budget);
}

/// All three seeds. The budget is shared: each seed may use an equal share
/// of whatever remains when it starts.
inline SeedWalks compute_seeds(const Instance& inst, const SeedOptions& opts = {}) {
  const auto start = Clock::now();
  // Reserve a small margin for canonicalization and result assembly.
  const auto margin = std::min<Clock::duration>(opts.budget / 50, std::chrono::milliseconds(500));
  const auto end = start + opts.budget - margin;
  auto share = [&](int left) { return Clock::now() + (end - Clock::now()) / left; };
  SeedWalks s;
  s.n = inst.n();
  s.wd_n1 = detail::wd_seed(inst, 0, opts, share(3));
  s.wd_n2 = detail::wd_seed(inst, 1, opts, share(2));
  s.w_n1 = detail::w_seed(inst, opts, end);
  return s;
}

/// Minimum travel time of a spanning revisit sequence with v visits,
/// without the depot (v in [n, n+4]) or with it exactly once
/// (v in [n+1, n+4]).
inline double min_revisit_seq_time(const Instance& inst, int v, bool with_depot, const SeedOptions& opts = {}) {
  const int n = inst.n();
  const int lo = with_depot ? n + 1 : n;
  if (v < lo || v > n + 4)
    throw Error(ErrorCode::out_of_range, "v = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                             std::to_string(n + 4) + "]");
  if (n > opts.dp_threshold) throw Error(ErrorCode::too_large, "n = " + std::to_string(n) + " above the DP threshold");
  double best = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= n; ++t) {
    const SequenceModel model{t, targets_except(inst, t), v - n - (with_depot ? 1 : 0), false, true, with_depot};
    const auto sol = solve_dp(inst, model);
    if (sol.feasible()) best = std::min(best, sol.cost);
  }
  return best;
}

}  // namespace pmpd
