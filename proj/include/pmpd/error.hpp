#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmpd {

enum class ErrorCode {
  too_few_nodes,
  duplicate_point,
  asymmetric_matrix,
  negative_entry,
  triangle_violation,
  malformed_input,
  pivot_absent,
  terminus_mismatch,
  infeasible_shortcut,
  adjacent_duplicate,
  depot_duplicate,
  position_out_of_range,
  invalid_walk,
  target_absent,
  out_of_range,
  k_too_small,
  uncertified_seeds,
  h1_unavailable,
  k_too_small_for_plan,
  no_pivot,
  not_applicable,
  too_large,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::too_few_nodes: return "TooFewNodes";
    case ErrorCode::duplicate_point: return "DuplicatePoint";
    case ErrorCode::asymmetric_matrix: return "AsymmetricMatrix";
    case ErrorCode::negative_entry: return "NegativeEntry";
    case ErrorCode::triangle_violation: return "TriangleViolation";
    case ErrorCode::malformed_input: return "MalformedInput";
    case ErrorCode::pivot_absent: return "PivotAbsent";
    case ErrorCode::terminus_mismatch: return "TerminusMismatch";
    case ErrorCode::infeasible_shortcut: return "InfeasibleShortcut";
    case ErrorCode::adjacent_duplicate: return "AdjacentDuplicate";
    case ErrorCode::depot_duplicate: return "DepotDuplicate";
    case ErrorCode::position_out_of_range: return "PositionOutOfRange";
    case ErrorCode::invalid_walk: return "InvalidWalk";
    case ErrorCode::target_absent: return "TargetAbsent";
    case ErrorCode::out_of_range: return "OutOfRange";
    case ErrorCode::k_too_small: return "KTooSmall";
    case ErrorCode::uncertified_seeds: return "UncertifiedSeeds";
    case ErrorCode::h1_unavailable: return "H1Unavailable";
    case ErrorCode::k_too_small_for_plan: return "KTooSmallForPlan";
    case ErrorCode::no_pivot: return "NoPivot";
    case ErrorCode::not_applicable: return "NotApplicable";
    case ErrorCode::too_large: return "TooLarge";
  }
  return "Unknown";
}

/// Reason attached to an InfeasibleShortcut error.
enum class ShortcutFailure { none, coverage_loss, adjacent_duplicate, depot_required };

constexpr std::string_view to_string(ShortcutFailure reason) {
  switch (reason) {
    case ShortcutFailure::none: return "None";
    case ShortcutFailure::coverage_loss: return "CoverageLoss";
    case ShortcutFailure::adjacent_duplicate: return "AdjacentDuplicate";
    case ShortcutFailure::depot_required: return "DepotRequired";
  }
  return "Unknown";
}

/// Single exception type for the library. `nodes` carries the offending node
/// ids where that makes sense (e.g. the triple of a triangle violation).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<int> nodes = {},
        ShortcutFailure reason = ShortcutFailure::none)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        nodes_(std::move(nodes)),
        reason_(reason) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<int>& nodes() const noexcept { return nodes_; }
  ShortcutFailure reason() const noexcept { return reason_; }

 private:
  ErrorCode code_;
  std::vector<int> nodes_;
  ShortcutFailure reason_;
};

}  // namespace pmpd
