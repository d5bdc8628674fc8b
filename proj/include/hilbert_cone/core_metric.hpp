// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hilbert projective metric on the nonnegative orthant.
//
// For x, y in R_+^{n+1} \ {0}:
//
//   beta(x, y) = max_{j : x_j > 0} y_j / x_j        (Infinite unless
//                                                     supp y ⊆ supp x)
//   H(x, y)    = log(beta(x, y) * beta(y, x))
//   T(x, y)    = tanh(H(x, y) / 4),   tanh(Infinite) := 1
//
// H is finite exactly when the supports coincide, in which case it is
// evaluated on the shared support. All ratios are taken as log-ratios so
// weights spanning e^-700 .. e^700 do not overflow.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/types.hpp"

namespace hilbert_cone {

namespace detail {

// log(num / den) for num, den > 0. Uses the direct quotient when it is a
// normal double, so exactly proportional inputs give exactly equal
// log-ratios; otherwise falls back to a difference of logs.
inline double log_ratio(double num, double den) {
  const double r = num / den;
  if (std::isnormal(r)) return std::log(r);
  return std::log(num) - std::log(den);
}

inline bool same_support(const PositiveVector& x, const PositiveVector& y) {
  const auto sx = x.support();
  const auto sy = y.support();
  return std::equal(sx.begin(), sx.end(), sy.begin(), sy.end());
}

inline bool support_subset(const PositiveVector& sub,
                           const PositiveVector& super) {
  for (std::size_t j : sub.support()) {
    if (!super.in_support(j)) return false;
  }
  return true;
}

// max_j log(y_j/x_j) - min_j log(y_j/x_j) over the common support.
// Precondition: equal supports.
inline double hilbert_on_common_support(const PositiveVector& x,
                                        const PositiveVector& y) {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t j : x.support()) {
    const double l = log_ratio(y[j], x[j]);
    hi = std::max(hi, l);
    lo = std::min(lo, l);
  }
  return hi - lo;
}

}  // namespace detail

/// log beta(x, y), or nullopt when beta(x, y) is infinite.
inline std::optional<double> log_beta(const PositiveVector& x,
                                      const PositiveVector& y) {
  detail::require_same_size(x.size(), y.size(), "beta");
  if (!detail::support_subset(y, x)) return std::nullopt;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j : y.support()) {
    best = std::max(best, detail::log_ratio(y[j], x[j]));
  }
  return best;
}

/// Smallest r with r*x - y in the nonnegative orthant.
inline ExtendedDistance beta(const PositiveVector& x, const PositiveVector& y) {
  const auto lb = log_beta(x, y);
  if (!lb) return ExtendedDistance::infinite();
  const double b = std::exp(*lb);
  if (std::isinf(b)) {
    throw RangeError("beta: ratio exceeds double range; use log_beta");
  }
  return ExtendedDistance::finite(b);
}

inline ExtendedDistance hilbert_distance(const PositiveVector& x,
                                         const PositiveVector& y) {
  detail::require_same_size(x.size(), y.size(), "hilbert_distance");
  if (!detail::same_support(x, y)) return ExtendedDistance::infinite();
  // Evaluate in a canonical argument order so H(x,y) and H(y,x) run the
  // identical floating-point computation.
  const bool swap = std::lexicographical_compare(
      y.weights().begin(), y.weights().end(), x.weights().begin(),
      x.weights().end());
  const double h = swap ? detail::hilbert_on_common_support(y, x)
                        : detail::hilbert_on_common_support(x, y);
  return ExtendedDistance::finite(h);
}

/// tanh(H/4) with tanh(Infinite) = 1.
inline double t_from_hilbert(const ExtendedDistance& h) {
  return h.is_infinite() ? 1.0 : std::tanh(h.value() / 4.0);
}

inline double t_distance(const PositiveVector& x, const PositiveVector& y) {
  return t_from_hilbert(hilbert_distance(x, y));
}

/// Comparability on the orthant: equal supports, equivalently H < Infinite.
inline bool comparable(const PositiveVector& x, const PositiveVector& y) {
  detail::require_same_size(x.size(), y.size(), "comparable");
  return detail::same_support(x, y);
}

inline SimplexPoint normalize(const PositiveVector& x) {
  const auto w = x.weights();
  const double peak = *std::max_element(w.begin(), w.end());
  std::vector<double> out(w.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out[i] = w[i] / peak;
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return SimplexPoint(std::move(out));
}

/// sup f - inf f. Vanishes exactly on constant vectors.
inline double theta_seminorm(std::span<const double> f) {
  const auto [lo, hi] = std::minmax_element(f.begin(), f.end());
  return *hi - *lo;
}

inline double theta_seminorm(const LogDensityVector& f) {
  return theta_seminorm(f.entries());
}

/// H between the measures with log-densities f and g: ||f - g||_Theta.
inline double hilbert_from_log_densities(const LogDensityVector& f,
                                         const LogDensityVector& g) {
  detail::require_same_size(f.size(), g.size(), "hilbert_from_log_densities");
  std::vector<double> diff(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) diff[i] = f[i] - g[i];
  return theta_seminorm(diff);
}

}  // namespace hilbert_cone
