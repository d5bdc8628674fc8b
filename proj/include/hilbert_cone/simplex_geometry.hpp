// SPDX-License-Identifier: Apache-2.0
#pragma once

// Natural-parameter charts of the open simplex and Hilbert balls.
//
// Chart k sends an interior point mu of S^n to
//
//   theta_k(mu) = (log(mu_i / mu_k))_{i != k}  in R^n,
//
// with inverse a softmax that puts an implicit 0 in slot k. In any chart
// H is a norm of the coordinate difference; in chart 0 with
// d = theta_0(mu) - theta_0(nu),
//
//   H(mu, nu) = max(0, max_i d_i) + max(0, -min_i d_i),
//
// so the ball of radius R is the polytope
//
//   { x : |x_i - x_k - (c_i - c_k)| <= R  for 0 <= k < i <= n },  x_0 = 0,
//
// with the 2(2^n - 1) vertices c ± R 1_I, I a nonempty subset of {1..n}.
// Chart 0 is the storage chart throughout.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hilbert_cone/core_metric.hpp"
#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/types.hpp"

namespace hilbert_cone {

class ThetaVector {
 public:
  ThetaVector(std::size_t chart, std::vector<double> coords)
      : chart_(chart), coords_(std::move(coords)) {
    if (coords_.empty()) throw ValidationError("ThetaVector: no coordinates");
    if (chart_ > coords_.size()) {
      throw ValidationError("ThetaVector: chart index out of range");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) {
        throw ValidationError("ThetaVector: coordinates must be finite");
      }
    }
  }

  std::size_t chart() const noexcept { return chart_; }
  std::size_t dimension() const noexcept { return coords_.size(); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// Coordinate of simplex index `index` in this chart; 0 for the chart
  /// index itself.
  double at_simplex_index(std::size_t index) const {
    if (index == chart_) return 0.0;
    return coords_[index < chart_ ? index : index - 1];
  }

  friend bool operator==(const ThetaVector&, const ThetaVector&) = default;

 private:
  std::size_t chart_;
  std::vector<double> coords_;
};

namespace detail {

inline void require_interior_point(const PositiveVector& p, const char* op) {
  if (!p.full_support()) {
    throw DomainError(std::string(op) +
                      ": point lies on the simplex boundary");
  }
}

}  // namespace detail

inline ThetaVector theta_chart(const SimplexPoint& mu, std::size_t k) {
  detail::require_interior_point(mu, "theta_chart");
  if (k >= mu.size()) throw ValidationError("theta_chart: chart index out of range");
  const double log_k = std::log(mu[k]);
  std::vector<double> coords;
  coords.reserve(mu.size() - 1);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (i != k) coords.push_back(std::log(mu[i]) - log_k);
  }
  return ThetaVector(k, std::move(coords));
}

/// Coordinate spread beyond which the softmax would lose the smallest mass.
inline constexpr double kMaxThetaSpread = 1400.0;

inline SimplexPoint theta_inverse(const ThetaVector& theta) {
  const std::size_t size = theta.dimension() + 1;
  std::vector<double> full(size);
  for (std::size_t i = 0; i < size; ++i) full[i] = theta.at_simplex_index(i);
  const auto [lo, hi] = std::minmax_element(full.begin(), full.end());
  if (*hi - *lo > kMaxThetaSpread) {
    throw RangeError("theta_inverse: coordinate spread exceeds 1400");
  }
  const double shift = *hi;
  double sum = 0.0;
  for (double& v : full) {
    v = std::exp(v - shift);
    sum += v;
  }
  for (double& v : full) v /= sum;
  return SimplexPoint(std::move(full));
}

/// max over charts k of ||theta_k(mu) - theta_k(nu)||_inf.
inline double hilbert_via_theta(const SimplexPoint& mu, const SimplexPoint& nu) {
  detail::require_same_size(mu.size(), nu.size(), "hilbert_via_theta");
  detail::require_interior_point(mu, "hilbert_via_theta");
  detail::require_interior_point(nu, "hilbert_via_theta");
  double best = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const auto a = theta_chart(mu, k);
    const auto b = theta_chart(nu, k);
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      best = std::max(best, std::abs(a[i] - b[i]));
    }
  }
  return best;
}

/// Chart-0 form: (max_i d_i)^+ + (min_i d_i)^-, d = theta_0(mu) - theta_0(nu).
inline double hilbert_single_chart(const SimplexPoint& mu,
                                   const SimplexPoint& nu) {
  detail::require_same_size(mu.size(), nu.size(), "hilbert_single_chart");
  const auto a = theta_chart(mu, 0);
  const auto b = theta_chart(nu, 0);
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = a[i] - b[i];
    hi = std::max(hi, d);
    lo = std::min(lo, d);
  }
  return std::max(0.0, hi) + std::max(0.0, -lo);
}

/// sign * ((x_i - x_k) - (c_i - c_k)) <= R in chart-0 coordinates, x_0 = 0.
struct Halfspace {
  std::size_t i = 0;
  std::size_t k = 0;
  int sign = 1;

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

struct BallPolytope {
  SimplexPoint center;
  double radius = 0.0;
  /// Ordered by sign (+ then -), then by subset bitmask ascending; bit b
  /// of the mask selects chart-0 coordinate b (simplex index b + 1).
  std::vector<ThetaVector> theta_vertices;
  std::vector<SimplexPoint> simplex_vertices;
  std::vector<Halfspace> halfspaces;

  std::size_t dimension() const noexcept { return center.dimension(); }
};

inline constexpr std::size_t kMaxBallDimension = 20;

/// The n(n+1) halfspaces of a ball in S^n, ordered by i, then k, then
/// sign (+1 before -1).
inline std::vector<Halfspace> ball_halfspaces(std::size_t n) {
  std::vector<Halfspace> out;
  out.reserve(n * (n + 1));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      out.push_back({i, k, +1});
      out.push_back({i, k, -1});
    }
  }
  return out;
}

/// Ball of radius R around the point with chart-0 coordinates `center`.
inline BallPolytope ball_around_theta(const ThetaVector& center, double radius) {
  if (center.chart() != 0) {
    throw ValidationError("ball_around_theta: center must be in chart 0");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("ball: radius must be positive and finite");
  }
  const std::size_t n = center.dimension();
  if (n > kMaxBallDimension) {
    throw UnsupportedDimensionError("ball: vertex enumeration limited to n <= 20");
  }
  BallPolytope ball{theta_inverse(center), radius, {}, {}, ball_halfspaces(n)};
  const std::size_t masks = std::size_t{1} << n;
  ball.theta_vertices.reserve(2 * (masks - 1));
  ball.simplex_vertices.reserve(2 * (masks - 1));
  for (const double sign : {+1.0, -1.0}) {
    for (std::size_t mask = 1; mask < masks; ++mask) {
      std::vector<double> v(center.coords().begin(), center.coords().end());
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::size_t{1} << b)) v[b] += sign * radius;
      }
      ThetaVector tv(0, std::move(v));
      ball.simplex_vertices.push_back(theta_inverse(tv));
      ball.theta_vertices.push_back(std::move(tv));
    }
  }
  return ball;
}

inline BallPolytope ball_vertices(const SimplexPoint& nu, double radius) {
  detail::require_interior_point(nu, "ball_vertices");
  return ball_around_theta(theta_chart(nu, 0), radius);
}

inline constexpr double kBallTolerance = 1e-12;

/// H(mu, nu) <= R (+1e-12).
inline bool ball_contains(const SimplexPoint& nu, double radius,
                          const SimplexPoint& mu) {
  return hilbert_via_theta(mu, nu) <= radius + kBallTolerance;
}

/// Same membership test through the explicit halfspace list.
inline bool ball_contains_halfspaces(const SimplexPoint& nu, double radius,
                                     const SimplexPoint& mu) {
  detail::require_same_size(mu.size(), nu.size(), "ball_contains_halfspaces");
  const auto x = theta_chart(mu, 0);
  const auto c = theta_chart(nu, 0);
  for (const Halfspace& h : ball_halfspaces(nu.dimension())) {
    const double dx = x.at_simplex_index(h.i) - x.at_simplex_index(h.k);
    const double dc = c.at_simplex_index(h.i) - c.at_simplex_index(h.k);
    if (h.sign * (dx - dc) > radius + kBallTolerance) return false;
  }
  return true;
}

/// Lattice coordinates (a, b) of the hexagonal tiling within `shells`
/// rings of the origin, ordered by ring, then a, then b. Ring of (a, b)
/// is max(|a|, |b|, |a + b|); the six neighbours of a tile are
/// ±(1, 0), ±(0, 1), ±(1, -1).
inline std::vector<std::pair<int, int>> tile_offsets(int shells) {
  if (shells < 0) throw ValidationError("tile: shells must be >= 0");
  std::vector<std::pair<int, int>> out;
  for (int ring = 0; ring <= shells; ++ring) {
    for (int a = -ring; a <= ring; ++a) {
      for (int b = -ring; b <= ring; ++b) {
        if (std::max({std::abs(a), std::abs(b), std::abs(a + b)}) == ring) {
          out.emplace_back(a, b);
        }
      }
    }
  }
  return out;
}

/// Hexagonal tiling of S^2 by balls of radius R: the ball around `center`
/// translated in chart 0 by a (2R, R) + b (R, 2R) for each lattice point
/// of tile_offsets(shells). The lattice cell has area 3R^2, the area of
/// the hexagon, and neighbouring hexagons share an edge.
inline std::vector<BallPolytope> tile(const SimplexPoint& center, double radius,
                                      int shells) {
  if (center.dimension() != 2) {
    throw UnsupportedDimensionError("tile: only S^2 is supported");
  }
  detail::require_interior_point(center, "tile");
  const auto c = theta_chart(center, 0);
  std::vector<BallPolytope> tiles;
  for (const auto& [a, b] : tile_offsets(shells)) {
    const double da = static_cast<double>(a);
    const double db = static_cast<double>(b);
    tiles.push_back(ball_around_theta(
        ThetaVector(0, {c[0] + radius * (2.0 * da + db),
                        c[1] + radius * (da + 2.0 * db)}),
        radius));
  }
  return tiles;
}

}  // namespace hilbert_cone
