#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmpd/error.hpp"
#include "pmpd/tolerance.hpp"

namespace pmpd {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Node 0 is the depot; nodes 1..n are the targets.
inline constexpr int kDepotNode = 0;

/// Problem data: n targets, a distinct depot and a symmetric travel-time
/// matrix obeying the triangle inequality. Immutable once built.
class Instance {
 public:
  int n() const noexcept { return n_; }
  int node_count() const noexcept { return n_ + 1; }

  double time(int a, int b) const noexcept {
    return time_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_ + 1) +
                 static_cast<std::size_t>(b)];
  }

  std::vector<std::vector<double>> matrix() const {
    std::vector<std::vector<double>> m(node_count(), std::vector<double>(node_count()));
    for (int a = 0; a < node_count(); ++a)
      for (int b = 0; b < node_count(); ++b) m[a][b] = time(a, b);
    return m;
  }

  /// Planar coordinates in node order (depot first), when the instance was
  /// built from points.
  const std::optional<std::vector<Point>>& coords() const noexcept { return coords_; }

  const std::string& name() const noexcept { return name_; }
  Instance with_name(std::string name) const {
    Instance copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

  friend Instance from_matrix(const std::vector<std::vector<double>>& matrix, int n);
  friend Instance from_points(std::span<const Point> points, std::size_t depot_index);

 private:
  int n_ = 0;
  std::vector<double> time_;
  std::optional<std::vector<Point>> coords_;
  std::string name_;
};

/// First violated triangle inequality time[a][c] > time[a][b] + time[b][c]
/// as (a, b, c), or nullopt when the matrix is metric.
inline std::optional<std::array<int, 3>> find_triangle_violation(const Instance& inst) {
  const int m = inst.node_count();
  for (int a = 0; a < m; ++a)
    for (int c = a + 1; c < m; ++c)
      for (int b = 0; b < m; ++b) {
        if (b == a || b == c) continue;
        if (inst.time(a, c) > inst.time(a, b) + inst.time(b, c) + kTriangleEps) return std::array{a, b, c};
      }
  return std::nullopt;
}

inline bool validate_triangle(const Instance& inst) { return !find_triangle_violation(inst).has_value(); }

/// Builds an instance from an explicit (n+1)x(n+1) matrix, row/col 0 = depot.
inline Instance from_matrix(const std::vector<std::vector<double>>& matrix, int n) {
  if (n < 3) throw Error(ErrorCode::too_few_nodes, "need at least 3 targets, got " + std::to_string(n));
  const auto size = static_cast<std::size_t>(n + 1);
  if (matrix.size() != size)
    throw Error(ErrorCode::malformed_input, "matrix must have n+1 = " + std::to_string(size) + " rows");
  for (const auto& row : matrix)
    if (row.size() != size) throw Error(ErrorCode::malformed_input, "matrix must be square");

  Instance inst;
  inst.n_ = n;
  inst.time_.resize(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      const double v = matrix[a][b];
      if (!std::isfinite(v) || v < 0.0)
        throw Error(ErrorCode::negative_entry, "entry (" + std::to_string(a) + "," + std::to_string(b) + ") is " +
                                                   std::to_string(v),
                    {static_cast<int>(a), static_cast<int>(b)});
      if (a == b && v != 0.0)
        throw Error(ErrorCode::malformed_input, "diagonal entry " + std::to_string(a) + " must be zero");
      if (matrix[b][a] != v)
        throw Error(ErrorCode::asymmetric_matrix,
                    "time[" + std::to_string(a) + "][" + std::to_string(b) + "] != time[" + std::to_string(b) + "][" +
                        std::to_string(a) + "]",
                    {static_cast<int>(a), static_cast<int>(b)});
      inst.time_[a * size + b] = v;
    }
  }
  if (auto bad = find_triangle_violation(inst)) {
    const auto [a, b, c] = *bad;
    throw Error(ErrorCode::triangle_violation,
                "time[" + std::to_string(a) + "][" + std::to_string(c) + "] exceeds the path through " +
                    std::to_string(b),
                {a, b, c});
  }
  return inst;
}

/// Euclidean instance. The point at `depot_index` becomes node 0; the other
/// points keep their relative order as targets 1..n.
inline Instance from_points(std::span<const Point> points, std::size_t depot_index) {
  if (points.size() < 4)
    throw Error(ErrorCode::too_few_nodes, "need at least 4 points (depot + 3 targets), got " +
                                              std::to_string(points.size()));
  if (depot_index >= points.size())
    throw Error(ErrorCode::malformed_input, "depot index " + std::to_string(depot_index) + " out of range");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw Error(ErrorCode::duplicate_point, "points " + std::to_string(i) + " and " + std::to_string(j) +
                                                    " coincide",
                    {static_cast<int>(i), static_cast<int>(j)});

  std::vector<Point> ordered;
  ordered.reserve(points.size());
  ordered.push_back(points[depot_index]);
  for (std::size_t i = 0; i < points.size(); ++i)
    if (i != depot_index) ordered.push_back(points[i]);

  const std::size_t size = ordered.size();
  Instance inst;
  inst.n_ = static_cast<int>(size) - 1;
  inst.time_.resize(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      inst.time_[a * size + b] =
          a == b ? 0.0 : std::hypot(ordered[a].x - ordered[b].x, ordered[a].y - ordered[b].y);
  inst.coords_ = std::move(ordered);
  return inst;
}

inline Instance from_points(const std::vector<Point>& points, std::size_t depot_index) {
  return from_points(std::span<const Point>(points), depot_index);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit Mersenne Twister
/// draw. Unlike std::uniform_real_distribution this is identical on every
/// standard library.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// n+1 points uniform in [0, box_size]^2, the first one being the depot.
inline Instance random_instance(std::uint64_t seed, int n, double box_size = 100.0) {
  if (n < 3) throw Error(ErrorCode::too_few_nodes, "need at least 3 targets, got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n) + 1);
  while (pts.size() < static_cast<std::size_t>(n) + 1) {
    Point p{unit_draw(rng) * box_size, unit_draw(rng) * box_size};
    bool clash = false;
    for (const auto& q : pts) clash = clash || q == p;
    if (!clash) pts.push_back(p);
  }
  return from_points(pts, 0).with_name("random-s" + std::to_string(seed) + "-n" + std::to_string(n));
}

}  // namespace pmpd
