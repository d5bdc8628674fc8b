// SPDX-License-Identifier: Apache-2.0
#pragma once

// Certified convergence of a finite Markov chain in the Hilbert metric.
//
// Measures are row vectors and evolve as mu_{n+1} = mu_n P, i.e. the
// positive operator on column vectors is P^T. Its contraction coefficient
// equals tau(P) (the cross-ratio minimum is invariant under transposition),
// so
//
//   H(mu_n, pi) <= tau(P)^n H(mu_0, pi).

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "hilbert_cone/contraction.hpp"
#include "hilbert_cone/core_metric.hpp"
#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/metric_bounds.hpp"
#include "hilbert_cone/types.hpp"

namespace hilbert_cone {

struct MarkovStep {
  std::size_t step = 0;
  ExtendedDistance hilbert = ExtendedDistance::infinite();
  double t = 0.0;
  double tv = 0.0;
  /// tau^n H(mu_0, pi).
  ExtendedDistance certified_bound = ExtendedDistance::infinite();
  bool certified = true;
};

struct MarkovTrace {
  static constexpr double kStationaryTolerance = 1e-13;
  static constexpr std::size_t kMaxStationaryIterations = 100000;
  static constexpr double kCertificateTolerance = 1e-9;

  double tau = 0.0;
  double tau_transpose = 0.0;
  /// tau == 1: the certificate reduces to non-expansiveness.
  bool degenerate = false;
  std::vector<double> stationary;
  std::size_t stationary_iterations = 0;
  bool stationary_converged = false;
  std::vector<MarkovStep> steps;

  bool all_certified() const {
    for (const auto& s : steps) {
      if (!s.certified) return false;
    }
    return true;
  }
};

/// mu P, renormalized to unit mass.
inline SimplexPoint markov_step(const NonnegMatrix& p, const PositiveVector& mu) {
  detail::require_same_size(p.rows(), mu.size(), "markov_step");
  std::vector<double> out(p.cols(), 0.0);
  for (std::size_t i : mu.support()) {
    for (std::size_t j = 0; j < p.cols(); ++j) out[j] += mu[i] * p(i, j);
  }
  double sum = 0.0;
  for (double v : out) sum += v;
  for (double& v : out) v /= sum;
  return SimplexPoint(std::move(out));
}

inline constexpr double kStochasticTolerance = 1e-10;

inline void require_row_stochastic(const NonnegMatrix& p) {
  if (p.rows() != p.cols()) {
    throw DimensionError("markov: transition matrix must be square");
  }
  for (std::size_t i = 0; i < p.rows(); ++i) {
    double s = 0.0;
    for (double v : p.row(i)) s += v;
    if (std::abs(s - 1.0) > kStochasticTolerance) {
      throw ValidationError("markov: row " + std::to_string(i) +
                            " does not sum to 1");
    }
  }
}

/// Fixed point of mu -> mu P from the uniform start, stopping once
/// H(mu_n, mu_{n+1}) < 1e-13 or after 10^5 steps.
inline SimplexPoint stationary_distribution(const NonnegMatrix& p,
                                            std::size_t* iterations = nullptr,
                                            bool* converged = nullptr) {
  require_row_stochastic(p);
  SimplexPoint mu(std::vector<double>(p.rows(), 1.0 / static_cast<double>(p.rows())));
  std::size_t it = 0;
  bool done = false;
  while (it < MarkovTrace::kMaxStationaryIterations) {
    SimplexPoint next = markov_step(p, mu);
    ++it;
    const auto h = hilbert_distance(mu, next);
    mu = std::move(next);
    if (h.is_finite() && h.value() < MarkovTrace::kStationaryTolerance) {
      done = true;
      break;
    }
  }
  if (iterations) *iterations = it;
  if (converged) *converged = done;
  return mu;
}

/// Distances from mu_n to the stationary law for n = 0..steps, each with
/// the contraction certificate tau^n H(mu_0, pi).
inline MarkovTrace markov_converge(const NonnegMatrix& p,
                                   const SimplexPoint& mu0, std::size_t steps) {
  require_row_stochastic(p);
  detail::require_same_size(p.rows(), mu0.size(), "markov_converge");

  MarkovTrace trace;
  trace.tau = birkhoff_tau(p);
  trace.tau_transpose = birkhoff_tau(p.transpose());
  if (std::abs(trace.tau - trace.tau_transpose) > 1e-12) {
    throw InvariantViolation("markov_converge: tau(P) != tau(P^T)");
  }
  trace.degenerate = trace.tau >= 1.0;

  const SimplexPoint pi = stationary_distribution(
      p, &trace.stationary_iterations, &trace.stationary_converged);
  trace.stationary.assign(pi.weights().begin(), pi.weights().end());

  const auto h0 = hilbert_distance(mu0, pi);
  SimplexPoint mu = mu0;
  double tau_pow = 1.0;
  for (std::size_t n = 0; n <= steps; ++n) {
    MarkovStep row;
    row.step = n;
    row.hilbert = hilbert_distance(mu, pi);
    row.t = t_from_hilbert(row.hilbert);
    row.tv = tv_distance(mu, pi);
    if (tau_pow == 0.0) {
      row.certified_bound = ExtendedDistance::finite(0.0);
    } else if (h0.is_infinite()) {
      row.certified_bound = ExtendedDistance::infinite();
    } else {
      row.certified_bound = ExtendedDistance::finite(tau_pow * h0.value());
    }
    row.certified =
        row.certified_bound.is_infinite() ||
        (row.hilbert.is_finite() &&
         row.hilbert.value() <=
             row.certified_bound.value() + MarkovTrace::kCertificateTolerance);
    trace.steps.push_back(row);
    if (n < steps) {
      mu = markov_step(p, mu);
      tau_pow *= trace.tau;
    }
  }
  return trace;
}

}  // namespace hilbert_cone
