#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pmpd/error.hpp"
#include "pmpd/instance.hpp"

namespace pmpd {

/// One visit of a walk: the depot or a target id in 1..n. Ordered with the
/// depot first, then by target id.
class Visit {
 public:
  constexpr Visit() = default;
  static constexpr Visit depot() { return Visit(kDepotNode); }
  static constexpr Visit target(int id) { return Visit(id); }
  /// Node index as used by Instance (0 = depot).
  static constexpr Visit from_node(int node) { return Visit(node); }

  constexpr bool is_depot() const noexcept { return node_ == kDepotNode; }
  constexpr int node() const noexcept { return node_; }

  friend constexpr auto operator<=>(const Visit&, const Visit&) = default;

 private:
  explicit constexpr Visit(int node) : node_(node) {}
  int node_ = kDepotNode;
};

inline constexpr Visit kDepot = Visit::depot();

inline std::string to_string(Visit v) { return v.is_depot() ? std::string("d") : std::to_string(v.node()); }
inline std::ostream& operator<<(std::ostream& os, Visit v) { return os << to_string(v); }

enum class WalkKind { pmp, pmpd };

constexpr std::string_view to_string(WalkKind kind) { return kind == WalkKind::pmpd ? "pmpd" : "pmp"; }

/// A closed visit sequence v_0 .. v_k with v_k = v_0, stored with the closing
/// element. Positions used by the operations below index the open form
/// v_0 .. v_{k-1}. Construction does not validate; see validate().
class Walk {
 public:
  Walk() = default;
  Walk(WalkKind kind, std::vector<Visit> closed) : kind_(kind), seq_(std::move(closed)) {}

  /// Builds a walk from node ids (0 = depot) written in closed form.
  static Walk of_nodes(WalkKind kind, std::initializer_list<int> nodes) {
    return of_nodes(kind, std::vector<int>(nodes));
  }
  static Walk of_nodes(WalkKind kind, const std::vector<int>& nodes) {
    std::vector<Visit> seq;
    seq.reserve(nodes.size());
    for (int v : nodes) seq.push_back(Visit::from_node(v));
    return Walk(kind, std::move(seq));
  }

  WalkKind kind() const noexcept { return kind_; }
  int k() const noexcept { return seq_.empty() ? 0 : static_cast<int>(seq_.size()) - 1; }
  std::span<const Visit> visits() const noexcept { return seq_; }
  std::span<const Visit> open() const noexcept {
    return std::span<const Visit>(seq_).first(static_cast<std::size_t>(k()));
  }
  Visit operator[](int i) const { return seq_[static_cast<std::size_t>(i)]; }
  Visit front() const { return seq_.front(); }

  std::vector<int> nodes() const {
    std::vector<int> out;
    out.reserve(seq_.size());
    for (Visit v : seq_) out.push_back(v.node());
    return out;
  }

  int count(Visit v) const {
    return static_cast<int>(std::count(seq_.begin(), seq_.begin() + k(), v));
  }
  bool contains(Visit v) const { return count(v) > 0; }

  friend bool operator==(const Walk&, const Walk&) = default;

 private:
  WalkKind kind_ = WalkKind::pmp;
  std::vector<Visit> seq_;
};

inline std::string to_string(const Walk& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.visits().size(); ++i) {
    if (i) out += ",";
    out += to_string(w.visits()[i]);
  }
  return out + ")";
}
inline std::ostream& operator<<(std::ostream& os, const Walk& w) { return os << to_string(w); }

/// Parses "(d,2,3,4,5,1,d)" or "d 2 3 4 5 1 d". The kind is PMP-D when the
/// walk starts at the depot, PMP otherwise.
inline Walk parse_walk(std::string_view text) {
  std::string cleaned;
  for (char c : text) cleaned += (c == '(' || c == ')' || c == ',') ? ' ' : c;
  std::istringstream in(cleaned);
  std::vector<Visit> seq;
  std::string tok;
  while (in >> tok) {
    if (tok == "d" || tok == "D") {
      seq.push_back(kDepot);
      continue;
    }
    try {
      std::size_t used = 0;
      const int id = std::stoi(tok, &used);
      if (used != tok.size() || id < 1) throw std::invalid_argument(tok);
      seq.push_back(Visit::target(id));
    } catch (const std::exception&) {
      throw Error(ErrorCode::malformed_input, "bad visit token '" + tok + "'");
    }
  }
  if (seq.size() < 2) throw Error(ErrorCode::malformed_input, "walk needs at least two elements");
  const WalkKind kind = seq.front().is_depot() ? WalkKind::pmpd : WalkKind::pmp;
  return Walk(kind, std::move(seq));
}

enum class ViolationCode {
  too_short,
  not_closed,
  node_out_of_range,
  adjacent_duplicate,
  depot_not_terminal,
  depot_in_interior,
  depot_repeated,
  unvisited_target,
  too_few_visits,
};

constexpr std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::too_short: return "TooShort";
    case ViolationCode::not_closed: return "NotClosed";
    case ViolationCode::node_out_of_range: return "NodeOutOfRange";
    case ViolationCode::adjacent_duplicate: return "AdjacentDuplicate";
    case ViolationCode::depot_not_terminal: return "DepotNotTerminal";
    case ViolationCode::depot_in_interior: return "DepotInInterior";
    case ViolationCode::depot_repeated: return "DepotRepeated";
    case ViolationCode::unvisited_target: return "UnvisitedTarget";
    case ViolationCode::too_few_visits: return "TooFewVisits";
  }
  return "Unknown";
}

struct Violation {
  ViolationCode code;
  int position = -1;  // closed-form index, when meaningful
  int node = -1;      // offending node, when meaningful
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Lists every violated walk condition. A PMP-kind walk may carry the depot
/// at most once (blocks derived by depot insertion); a PMP-D walk has the
/// depot exactly at both ends.
inline std::vector<Violation> validate(const Walk& walk, const Instance& inst) {
  std::vector<Violation> out;
  const auto seq = walk.visits();
  if (seq.size() < 3) {
    out.push_back({ViolationCode::too_short});
    return out;
  }
  const int k = walk.k();
  if (seq.front() != seq.back()) out.push_back({ViolationCode::not_closed, k});

  bool in_range = true;
  for (int i = 0; i <= k; ++i) {
    const int v = seq[static_cast<std::size_t>(i)].node();
    if (v < 0 || v > inst.n()) {
      out.push_back({ViolationCode::node_out_of_range, i, v});
      in_range = false;
    }
  }
  for (int i = 1; i <= k; ++i)
    if (seq[static_cast<std::size_t>(i - 1)] == seq[static_cast<std::size_t>(i)])
      out.push_back({ViolationCode::adjacent_duplicate, i, seq[static_cast<std::size_t>(i)].node()});
  if (!in_range) return out;

  std::vector<int> counts(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (Visit v : walk.open()) ++counts[static_cast<std::size_t>(v.node())];

  if (walk.kind() == WalkKind::pmpd) {
    if (!seq.front().is_depot()) out.push_back({ViolationCode::depot_not_terminal, 0, seq.front().node()});
    if (!seq.back().is_depot()) out.push_back({ViolationCode::depot_not_terminal, k, seq.back().node()});
    for (int i = 1; i < k; ++i)
      if (seq[static_cast<std::size_t>(i)].is_depot()) out.push_back({ViolationCode::depot_in_interior, i, 0});
    if (k < inst.n() + 1) out.push_back({ViolationCode::too_few_visits});
  } else {
    if (counts[0] > 1) out.push_back({ViolationCode::depot_repeated, -1, 0});
    if (k < inst.n()) out.push_back({ViolationCode::too_few_visits});
  }
  for (int t = 1; t <= inst.n(); ++t)
    if (counts[static_cast<std::size_t>(t)] == 0) out.push_back({ViolationCode::unvisited_target, -1, t});
  return out;
}

inline bool is_valid(const Walk& walk, const Instance& inst) { return validate(walk, inst).empty(); }

/// Rotation of the closed walk so that it starts and ends at the first
/// occurrence of `pivot`. The result is PMP-D exactly when the pivot is the
/// depot.
inline Walk permute(const Walk& walk, Visit pivot) {
  const auto open = walk.open();
  const auto it = std::find(open.begin(), open.end(), pivot);
  if (it == open.end()) throw Error(ErrorCode::pivot_absent, to_string(pivot) + " not in " + to_string(walk));
  const auto r = static_cast<std::size_t>(it - open.begin());
  std::vector<Visit> seq;
  seq.reserve(open.size() + 1);
  for (std::size_t i = 0; i < open.size(); ++i) seq.push_back(open[(r + i) % open.size()]);
  seq.push_back(pivot);
  return Walk(pivot.is_depot() ? WalkKind::pmpd : WalkKind::pmp, std::move(seq));
}

/// w1 followed by w2; both must start at the same element.
inline Walk concatenate(const Walk& w1, const Walk& w2) {
  if (w1.visits().empty() || w2.visits().empty() || w1.front() != w2.front())
    throw Error(ErrorCode::terminus_mismatch, to_string(w1) + " and " + to_string(w2));
  std::vector<Visit> seq(w1.visits().begin(), w1.visits().end());
  seq.insert(seq.end(), w2.visits().begin() + 1, w2.visits().end());
  return Walk(w1.front().is_depot() ? WalkKind::pmpd : WalkKind::pmp, std::move(seq));
}

/// Removes the visits at the given open-form positions (each in 1..k-1).
/// Throws InfeasibleShortcut when the result would lose a target, create an
/// immediate repeat, or drop the depot of a PMP-D walk.
inline Walk shortcut(const Walk& walk, std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  const int k = walk.k();
  for (int p : positions)
    if (p < 1 || p >= k)
      throw Error(ErrorCode::position_out_of_range,
                  "position " + std::to_string(p) + " not interior to " + to_string(walk));

  std::vector<bool> removed(static_cast<std::size_t>(k), false);
  for (int p : positions) {
    removed[static_cast<std::size_t>(p)] = true;
    if (walk[p].is_depot() && walk.kind() == WalkKind::pmpd)
      throw Error(ErrorCode::infeasible_shortcut, "a PMP-D walk keeps its depot", {}, ShortcutFailure::depot_required);
  }

  std::vector<Visit> seq;
  for (int i = 0; i < k; ++i)
    if (!removed[static_cast<std::size_t>(i)]) seq.push_back(walk[i]);
  seq.push_back(walk.front());

  for (int p : positions) {
    const Visit v = walk[p];
    if (!v.is_depot() && std::find(seq.begin(), seq.end(), v) == seq.end())
      throw Error(ErrorCode::infeasible_shortcut, "target " + to_string(v) + " would no longer be visited", {v.node()},
                  ShortcutFailure::coverage_loss);
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i - 1] == seq[i])
      throw Error(ErrorCode::infeasible_shortcut, "visits around the removed elements coincide (" + to_string(seq[i]) +
                                                      ")",
                  {seq[i].node()}, ShortcutFailure::adjacent_duplicate);
  return Walk(walk.kind(), std::move(seq));
}

/// Inserts `visit` between open-form positions gap and gap+1.
inline Walk insert(const Walk& walk, int gap, Visit visit) {
  const int k = walk.k();
  if (gap < 0 || gap >= k)
    throw Error(ErrorCode::position_out_of_range, "gap " + std::to_string(gap) + " outside " + to_string(walk));
  if (walk[gap] == visit || walk[gap + 1] == visit)
    throw Error(ErrorCode::adjacent_duplicate, "inserting " + to_string(visit) + " at gap " + std::to_string(gap),
                {visit.node()});
  if (visit.is_depot() && walk.contains(kDepot))
    throw Error(ErrorCode::depot_duplicate, "walk already visits the depot");
  std::vector<Visit> seq(walk.visits().begin(), walk.visits().end());
  seq.insert(seq.begin() + gap + 1, visit);
  return Walk(walk.kind(), std::move(seq));
}

/// Same closed sequence traversed backwards.
inline Walk reversed(const Walk& walk) {
  std::vector<Visit> seq(walk.visits().rbegin(), walk.visits().rend());
  return Walk(walk.kind(), std::move(seq));
}

/// Targets occurring exactly once in the open form, ascending.
inline std::vector<int> singly_visited_targets(const Walk& walk) {
  std::vector<int> ids;
  for (Visit v : walk.open()) ids.push_back(v.node());
  std::sort(ids.begin(), ids.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    if (ids[i] != kDepotNode && j - i == 1) out.push_back(ids[i]);
    i = j;
  }
  return out;
}

/// Positions (open form) where `v` occurs.
inline std::vector<int> positions_of(const Walk& walk, Visit v) {
  std::vector<int> out;
  for (int i = 0; i < walk.k(); ++i)
    if (walk[i] == v) out.push_back(i);
  return out;
}

}  // namespace pmpd
