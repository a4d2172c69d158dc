#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "pmpd/error.hpp"
#include "pmpd/instance.hpp"
#include "pmpd/walk.hpp"

namespace pmpd {

/// Sum of consecutive travel times along a visit sequence.
inline double travel_time(std::span<const Visit> seq, const Instance& inst) {
  double total = 0.0;
  for (std::size_t i = 1; i < seq.size(); ++i) total += inst.time(seq[i - 1].node(), seq[i].node());
  return total;
}

inline double travel_time(const Walk& walk, const Instance& inst) { return travel_time(walk.visits(), inst); }

/// Visits between two consecutive occurrences of a target in the repeated
/// walk, written closed: (t, ..., t).
struct RevisitSequence {
  Visit terminus;
  std::vector<Visit> seq;

  int r() const { return static_cast<int>(seq.size()) - 1; }
  bool spanning(int n) const {
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (Visit v : seq) seen[static_cast<std::size_t>(v.node())] = true;
    return std::all_of(seen.begin() + 1, seen.end(), [](bool b) { return b; });
  }
};

/// Per-target worst gaps of a walk under indefinite repetition.
struct RevisitProfile {
  double travel = 0.0;
  double revisit = 0.0;
  int worst_target = 0;
  std::vector<double> worst_gap;  // indexed by target id; entry 0 unused
};

namespace detail {

/// Cyclic gap scan on the open form. Assumes every target 1..n occurs.
inline RevisitProfile scan_gaps(std::span<const Visit> closed, const Instance& inst) {
  const int k = static_cast<int>(closed.size()) - 1;
  const auto n = static_cast<std::size_t>(inst.n());
  std::vector<double> at(static_cast<std::size_t>(k) + 1, 0.0);
  for (int i = 1; i <= k; ++i)
    at[static_cast<std::size_t>(i)] =
        at[static_cast<std::size_t>(i - 1)] + inst.time(closed[static_cast<std::size_t>(i - 1)].node(),
                                                        closed[static_cast<std::size_t>(i)].node());
  const double cycle = at[static_cast<std::size_t>(k)];

  RevisitProfile out;
  out.travel = cycle;
  out.worst_gap.assign(n + 1, 0.0);
  std::vector<double> first(n + 1, -1.0), last(n + 1, -1.0);
  for (int i = 0; i < k; ++i) {
    const auto v = static_cast<std::size_t>(closed[static_cast<std::size_t>(i)].node());
    if (v == 0) continue;
    const double now = at[static_cast<std::size_t>(i)];
    if (last[v] < 0.0) {
      first[v] = now;
    } else {
      out.worst_gap[v] = std::max(out.worst_gap[v], now - last[v]);
    }
    last[v] = now;
  }
  for (std::size_t t = 1; t <= n; ++t) {
    if (last[t] < 0.0) continue;
    out.worst_gap[t] = std::max(out.worst_gap[t], cycle - last[t] + first[t]);
    if (out.worst_gap[t] > out.revisit) {
      out.revisit = out.worst_gap[t];
      out.worst_target = static_cast<int>(t);
    }
  }
  return out;
}

}  // namespace detail

inline RevisitProfile revisit_profile(const Walk& walk, const Instance& inst) {
  if (const auto v = validate(walk, inst); !v.empty()) {
    std::string what = to_string(walk) + ":";
    std::vector<int> where;
    for (const auto& x : v) {
      what += " " + std::string(to_string(x.code));
      if (x.position >= 0) what += "@" + std::to_string(x.position);
      where.push_back(x.node);
    }
    throw Error(ErrorCode::invalid_walk, what, where);
  }
  return detail::scan_gaps(walk.visits(), inst);
}

/// Largest travel time between consecutive visits of any target when the
/// walk is repeated forever. The depot is never a terminus.
inline double revisit_time(const Walk& walk, const Instance& inst) { return revisit_profile(walk, inst).revisit; }

/// All revisit sequences of `target`, one per occurrence in the open form,
/// in order of their starting position.
inline std::vector<RevisitSequence> enumerate_revisit_sequences(const Walk& walk, Visit target) {
  const auto pos = positions_of(walk, target);
  if (target.is_depot() || pos.empty())
    throw Error(ErrorCode::target_absent, to_string(target) + " is not a visited target of " + to_string(walk));
  const int k = walk.k();
  std::vector<RevisitSequence> out;
  for (std::size_t j = 0; j < pos.size(); ++j) {
    const int from = pos[j];
    const int to = j + 1 < pos.size() ? pos[j + 1] : pos.front() + k;
    RevisitSequence rs{target, {}};
    for (int i = from; i <= to; ++i) rs.seq.push_back(walk[i % k]);
    out.push_back(std::move(rs));
  }
  return out;
}

}  // namespace pmpd
