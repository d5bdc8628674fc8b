// SPDX-License-Identifier: Apache-2.0
#pragma once

// Birkhoff contraction coefficients in closed form.
//
// For an allowable nonnegative matrix A,
//
//   phi(A)   = min_{i,j,k,l} A_ik A_jl / (A_jk A_il)     (0/0 := 1)
//   Delta(A) = -log phi(A)            projective diameter of A R_+^n
//   tau(A)   = (1 - sqrt phi) / (1 + sqrt phi) = tanh(Delta / 4)
//
// The quadruple minimum splits over row pairs (i, j):
//
//   min_{k,l} (A_ik / A_jk)(A_jl / A_il)
//       = min_k (A_ik / A_jk) * min_l (A_jl / A_il)
//       = exp(-H(row_i, row_j)),
//
// so Delta(A) is the largest Hilbert distance between two rows and costs
// O(m^2 p) instead of O(m^2 p^2). If A has a zero entry then phi(A) = 0:
// a zero A_ik together with any positive A_jk in its column and positive
// A_il in its row gives a quadruple with zero numerator and positive
// denominator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hilbert_cone/core_metric.hpp"
#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/rng.hpp"
#include "hilbert_cone/types.hpp"

namespace hilbert_cone {

/// Dense row-major nonnegative matrix with a positive entry in every row
/// and every column.
class NonnegMatrix {
 public:
  NonnegMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ == 0 || cols_ == 0) {
      throw ValidationError("NonnegMatrix: empty matrix");
    }
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("NonnegMatrix: data size does not match shape");
    }
    validate();
  }

  explicit NonnegMatrix(const std::vector<std::vector<double>>& rows)
      : NonnegMatrix(rows.size(), rows.empty() ? 0 : rows.front().size(),
                     flatten(rows)) {}

  NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : NonnegMatrix(to_nested(rows)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::span<const double> data() const noexcept { return data_; }

  bool strictly_positive() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return v > 0.0; });
  }

  NonnegMatrix transpose() const {
    std::vector<double> t(data_.size());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = (*this)(i, j);
    }
    return NonnegMatrix(cols_, rows_, std::move(t));
  }

  /// A x for x of length cols(). Allowability keeps A x nonzero.
  PositiveVector apply(const PositiveVector& x) const {
    detail::require_same_size(cols_, x.size(), "NonnegMatrix::apply");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t k : x.support()) s += (*this)(i, k) * x[k];
      out[i] = s;
    }
    return PositiveVector(std::move(out));
  }

  friend NonnegMatrix operator*(const NonnegMatrix& a, const NonnegMatrix& b) {
    detail::require_same_size(a.cols_, b.rows_, "NonnegMatrix product");
    std::vector<double> out(a.rows_ * b.cols_, 0.0);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out[i * b.cols_ + j] += aik * b(k, j);
        }
      }
    }
    return NonnegMatrix(a.rows_, b.cols_, std::move(out));
  }

 private:
  void validate() const {
    std::vector<bool> col_hit(cols_, false);
    for (std::size_t i = 0; i < rows_; ++i) {
      bool row_hit = false;
      for (std::size_t j = 0; j < cols_; ++j) {
        const double v = (*this)(i, j);
        if (!std::isfinite(v) || v < 0.0) {
          throw ValidationError("NonnegMatrix: entry (" + std::to_string(i) +
                                ", " + std::to_string(j) +
                                ") is negative or not finite");
        }
        if (v > 0.0) {
          row_hit = true;
          col_hit[j] = true;
        }
      }
      if (!row_hit) {
        throw ValidationError("NonnegMatrix: not allowable, row " +
                              std::to_string(i) + " is zero");
      }
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!col_hit[j]) {
        throw ValidationError("NonnegMatrix: not allowable, column " +
                              std::to_string(j) + " is zero");
      }
    }
  }

  static std::vector<double> flatten(
      const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != cols) {
        throw DimensionError("NonnegMatrix: ragged rows");
      }
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  static std::vector<std::vector<double>> to_nested(
      std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<std::vector<double>> out;
    for (const auto& r : rows) out.emplace_back(r);
    return out;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

namespace detail {

// max over row pairs of (max_k d_k - min_k d_k), d_k = diff(i, j, k).
// Row pairs are visited in a fixed order; the reduction is a max, so the
// result does not depend on evaluation order anyway.
template <class Diff>
double max_row_pair_spread(std::size_t rows, std::size_t cols, Diff diff) {
  double best = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i + 1; j < rows; ++j) {
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < cols; ++k) {
        const double d = diff(i, j, k);
        hi = std::max(hi, d);
        lo = std::min(lo, d);
      }
      best = std::max(best, hi - lo);
    }
  }
  return best;
}

// (1 - sqrt phi) / (1 + sqrt phi) from log phi, accurate for phi near 1.
inline double tau_from_log_phi(double log_phi) {
  if (std::isinf(log_phi)) return 1.0;
  const double s = std::exp(0.5 * log_phi);
  return -std::expm1(0.5 * log_phi) / (1.0 + s);
}

}  // namespace detail

/// Projective diameter Delta(A) = sup H(Ax, Ay); Infinite unless A > 0.
inline ExtendedDistance projective_diameter(const NonnegMatrix& a) {
  if (!a.strictly_positive()) return ExtendedDistance::infinite();
  return ExtendedDistance::finite(detail::max_row_pair_spread(
      a.rows(), a.cols(), [&a](std::size_t i, std::size_t j, std::size_t k) {
        return detail::log_ratio(a(i, k), a(j, k));
      }));
}

inline double birkhoff_phi(const NonnegMatrix& a) {
  const auto delta = projective_diameter(a);
  return delta.is_infinite() ? 0.0 : std::exp(-delta.value());
}

inline double birkhoff_tau(const NonnegMatrix& a) {
  const auto delta = projective_diameter(a);
  return delta.is_infinite()
             ? 1.0
             : detail::tau_from_log_phi(-delta.value());
}

/// Kernel with a strictly positive density kappa sampled on grids:
/// log_value(i, k) = log kappa(a_i, x_k). The output grid must be uniform;
/// its spacing is the quadrature weight used by kernel_apply.
class GridKernel {
 public:
  static constexpr double kUniformTolerance = 1e-9;

  GridKernel(std::vector<double> a_grid, std::vector<double> x_grid,
             std::vector<double> log_values)
      : a_grid_(std::move(a_grid)),
        x_grid_(std::move(x_grid)),
        log_values_(std::move(log_values)) {
    if (a_grid_.size() < 2 || x_grid_.size() < 2) {
      throw ValidationError("GridKernel: each grid needs at least 2 points");
    }
    if (log_values_.size() != a_grid_.size() * x_grid_.size()) {
      throw DimensionError("GridKernel: log_values shape does not match grids");
    }
    for (std::size_t i = 0; i < log_values_.size(); ++i) {
      if (!std::isfinite(log_values_[i])) {
        throw ValidationError("GridKernel: log value at flat index " +
                              std::to_string(i) + " is not finite");
      }
    }
    check_increasing(a_grid_, "a_grid");
    check_increasing(x_grid_, "x_grid");
    const double span = a_grid_.back() - a_grid_.front();
    cell_width_ = span / static_cast<double>(a_grid_.size() - 1);
    for (std::size_t i = 0; i + 1 < a_grid_.size(); ++i) {
      if (std::abs((a_grid_[i + 1] - a_grid_[i]) - cell_width_) >
          kUniformTolerance * span) {
        throw ValidationError("GridKernel: a_grid is not uniform");
      }
    }
  }

  /// Samples log_kernel(a, x) on the given grids.
  template <class LogKernel>
  static GridKernel sample(std::vector<double> a_grid,
                           std::vector<double> x_grid, LogKernel log_kernel) {
    std::vector<double> values;
    values.reserve(a_grid.size() * x_grid.size());
    for (double a : a_grid) {
      for (double x : x_grid) values.push_back(log_kernel(a, x));
    }
    return GridKernel(std::move(a_grid), std::move(x_grid), std::move(values));
  }

  std::size_t output_size() const noexcept { return a_grid_.size(); }
  std::size_t input_size() const noexcept { return x_grid_.size(); }
  double log_value(std::size_t i, std::size_t k) const {
    return log_values_[i * x_grid_.size() + k];
  }
  std::span<const double> a_grid() const noexcept { return a_grid_; }
  std::span<const double> x_grid() const noexcept { return x_grid_; }
  std::span<const double> log_values() const noexcept { return log_values_; }
  double cell_width() const noexcept { return cell_width_; }

 private:
  static void check_increasing(const std::vector<double>& g,
                               const char* name) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!std::isfinite(g[i]) || (i > 0 && !(g[i] > g[i - 1]))) {
        throw ValidationError(std::string("GridKernel: ") + name +
                              " must be finite and strictly increasing");
      }
    }
  }

  std::vector<double> a_grid_;
  std::vector<double> x_grid_;
  std::vector<double> log_values_;
  double cell_width_ = 0.0;
};

/// count points evenly spaced on [lo, hi], endpoints included.
inline std::vector<double> uniform_grid(double lo, double hi,
                                        std::size_t count) {
  if (count < 2) throw ValidationError("uniform_grid: need at least 2 points");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) /
                    static_cast<double>(count - 1);
  }
  return g;
}

/// log phi(K) = min over grid quadruples of the log cross-ratio.
inline double grid_kernel_log_phi(const GridKernel& k) {
  return -detail::max_row_pair_spread(
      k.output_size(), k.input_size(),
      [&k](std::size_t i, std::size_t j, std::size_t c) {
        return k.log_value(i, c) - k.log_value(j, c);
      });
}

inline double grid_kernel_phi(const GridKernel& k) {
  return std::exp(grid_kernel_log_phi(k));
}

inline double grid_kernel_tau(const GridKernel& k) {
  return detail::tau_from_log_phi(grid_kernel_log_phi(k));
}

/// (K mu)_i = sum_k kappa(a_i, x_k) mu_k * cell_width.
inline PositiveVector kernel_apply(const GridKernel& k,
                                   const PositiveVector& mu) {
  detail::require_same_size(k.input_size(), mu.size(), "kernel_apply");
  std::vector<double> out(k.output_size(), 0.0);
  for (std::size_t i = 0; i < k.output_size(); ++i) {
    double s = 0.0;
    for (std::size_t c : mu.support()) s += std::exp(k.log_value(i, c)) * mu[c];
    out[i] = s * k.cell_width();
  }
  return PositiveVector(std::move(out));
}

struct ContractionReport {
  static constexpr double kTolerance = 1e-10;

  double tau = 0.0;
  double phi = 0.0;
  ExtendedDistance diameter = ExtendedDistance::infinite();
  std::size_t trials = 0;
  /// max over sampled pairs of T(Ax, Ay) - tau T(x, y).
  double max_violation = -std::numeric_limits<double>::infinity();
  /// Same for H(Ax, Ay) - tau H(x, y); sampled pairs always have finite H.
  double max_hilbert_violation = -std::numeric_limits<double>::infinity();

  bool passed() const noexcept { return max_violation <= kTolerance; }
};

/// Samples `trials` pairs with components exp(U[-3, 3]) from Rng(seed) and
/// records the worst contraction slack of A in T and in H.
inline ContractionReport verify_contraction(const NonnegMatrix& a,
                                            std::size_t trials,
                                            std::uint64_t seed) {
  if (trials == 0) throw ValidationError("verify_contraction: trials must be >= 1");
  ContractionReport report;
  report.diameter = projective_diameter(a);
  report.phi = birkhoff_phi(a);
  report.tau = birkhoff_tau(a);
  report.trials = trials;

  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const PositiveVector x(rng.log_uniform_weights(a.cols()));
    const PositiveVector y(rng.log_uniform_weights(a.cols()));
    const auto hxy = hilbert_distance(x, y);
    const auto haxy = hilbert_distance(a.apply(x), a.apply(y));
    report.max_violation =
        std::max(report.max_violation,
                 t_from_hilbert(haxy) - report.tau * t_from_hilbert(hxy));
    report.max_hilbert_violation =
        std::max(report.max_hilbert_violation,
                 haxy.value() - report.tau * hxy.value());
  }
  return report;
}

}  // namespace hilbert_cone
