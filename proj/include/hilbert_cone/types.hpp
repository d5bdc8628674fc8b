// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hilbert_cone/errors.hpp"

namespace hilbert_cone {

/// A ray representative in the nonnegative orthant.
///
/// The support is the exact set of indices whose weight compares greater
/// than zero; there is no epsilon. Callers that want tiny weights treated
/// as zero must quantize them before constructing the vector.
class PositiveVector {
 public:
  explicit PositiveVector(std::vector<double> weights)
      : weights_(std::move(weights)) {
    if (weights_.empty()) {
      throw ValidationError("PositiveVector: empty weight vector");
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const double w = weights_[i];
      if (!std::isfinite(w)) {
        throw ValidationError("PositiveVector: weight at index " +
                              std::to_string(i) + " is not finite");
      }
      if (w < 0.0) {
        throw ValidationError("PositiveVector: negative weight at index " +
                              std::to_string(i));
      }
      if (w > 0.0) support_.push_back(i);
    }
    if (support_.empty()) {
      throw ValidationError("PositiveVector: all weights are zero");
    }
  }

  PositiveVector(std::initializer_list<double> weights)
      : PositiveVector(std::vector<double>(weights)) {}

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Ascending list of indices with strictly positive weight.
  std::span<const std::size_t> support() const noexcept { return support_; }
  bool in_support(std::size_t i) const { return weights_[i] > 0.0; }
  bool full_support() const noexcept {
    return support_.size() == weights_.size();
  }

  friend bool operator==(const PositiveVector&,
                         const PositiveVector&) = default;

 private:
  std::vector<double> weights_;
  std::vector<std::size_t> support_;
};

/// A point of the probability simplex: a PositiveVector whose weights sum
/// to one within 1e-12.
class SimplexPoint : public PositiveVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit SimplexPoint(std::vector<double> weights)
      : PositiveVector(std::move(weights)) {
    double sum = 0.0;
    for (double w : this->weights()) sum += w;
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ValidationError("SimplexPoint: weights sum to " +
                            std::to_string(sum) + ", expected 1");
    }
  }

  SimplexPoint(std::initializer_list<double> weights)
      : SimplexPoint(std::vector<double>(weights)) {}

  /// Dimension n of the simplex S^n the point lives in (size() - 1).
  std::size_t dimension() const noexcept { return size() - 1; }
};

/// Nonnegative real or the distinguished value Infinite.
///
/// Infinity is a tag, not an IEEE infinity, so that code paths producing
/// it are explicit. value() on an infinite distance throws.
class ExtendedDistance {
 public:
  static ExtendedDistance infinite() noexcept { return ExtendedDistance(); }

  static ExtendedDistance finite(double value) {
    if (std::isnan(value) || value < 0.0) {
      throw InvariantViolation("ExtendedDistance: invalid finite value " +
                               std::to_string(value));
    }
    if (std::isinf(value)) {
      throw RangeError("ExtendedDistance: finite value overflowed");
    }
    return ExtendedDistance(value);
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  double value() const {
    if (infinite_) throw DomainError("ExtendedDistance: value is Infinite");
    return value_;
  }

  /// Finite value, or +inf as an IEEE double. For arithmetic at the edges
  /// (tanh, comparisons); never use it to decide whether H is finite.
  double as_double() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend bool operator==(const ExtendedDistance& a,
                         const ExtendedDistance& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

  friend std::partial_ordering operator<=>(const ExtendedDistance& a,
                                           const ExtendedDistance& b) noexcept {
    return a.as_double() <=> b.as_double();
  }

 private:
  ExtendedDistance() noexcept : value_(0.0), infinite_(true) {}
  explicit ExtendedDistance(double v) noexcept : value_(v), infinite_(false) {}

  double value_;
  bool infinite_;
};

/// Log-density of a full-support measure with respect to counting measure.
/// A different reference measure is a shift of the entries.
class LogDensityVector {
 public:
  explicit LogDensityVector(std::vector<double> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) {
      throw ValidationError("LogDensityVector: empty");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (!std::isfinite(entries_[i])) {
        throw ValidationError("LogDensityVector: entry " + std::to_string(i) +
                              " is not finite");
      }
    }
  }

  LogDensityVector(std::initializer_list<double> entries)
      : LogDensityVector(std::vector<double>(entries)) {}

  /// Entrywise log of a full-support vector.
  static LogDensityVector from_positive(const PositiveVector& x) {
    if (!x.full_support()) {
      throw DomainError(
          "LogDensityVector: log-density requires full support");
    }
    std::vector<double> e(x.size());
    std::transform(x.weights().begin(), x.weights().end(), e.begin(),
                   [](double w) { return std::log(w); });
    return LogDensityVector(std::move(e));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  std::vector<double> entries_;
};

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": length mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace detail

}  // namespace hilbert_cone
