// SPDX-License-Identifier: Apache-2.0
#pragma once

// Comparison of the Hilbert metric with TV, KL, f-divergences and W1.
//
// Total variation keeps the factor of two: tv(mu, nu) = sum_i |mu_i - nu_i|,
// so sup_A |mu(A) - nu(A)| = tv / 2. Every inequality is returned as a
// BoundReport (lhs <= rhs) instead of a bare bool so sweeps can track the
// worst slack.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hilbert_cone/core_metric.hpp"
#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/types.hpp"

namespace hilbert_cone {

inline constexpr const char* kTvConvention = "tv=l1 (sup_A |mu(A)-nu(A)| = tv/2)";

struct BoundReport {
  static constexpr double kTolerance = 1e-10;

  std::string name;
  std::string lhs_name;
  std::string rhs_name;
  double lhs_value = 0.0;
  /// +inf when the right-hand side is infinite (e.g. H = Infinite).
  double rhs_value = 0.0;
  double slack = 0.0;
  bool holds = true;
  /// False when the bound's hypotheses fail for these inputs; the report
  /// then carries no information and holds is vacuous.
  bool applicable = true;
  std::string convention;
};

inline BoundReport make_bound_report(std::string name, std::string lhs_name,
                                     double lhs, std::string rhs_name,
                                     double rhs, bool applicable = true) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs_name = std::move(lhs_name);
  r.rhs_name = std::move(rhs_name);
  r.lhs_value = lhs;
  r.rhs_value = rhs;
  // An infinite right-hand side bounds everything, including lhs = inf
  // or an undefined lhs.
  r.slack = std::isinf(rhs) && rhs > 0 ? rhs : rhs - lhs;
  r.holds = r.slack >= -BoundReport::kTolerance;
  r.applicable = applicable;
  return r;
}

inline double tv_distance(const PositiveVector& mu, const PositiveVector& nu) {
  detail::require_same_size(mu.size(), nu.size(), "tv_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += std::abs(mu[i] - nu[i]);
  return s;
}

/// (sum over mu_i > nu_i of mu_i - nu_i, sum over nu_i > mu_i of nu_i - mu_i).
/// For probability vectors both equal tv / 2.
inline std::pair<double, double> sign_class_sums(const PositiveVector& mu,
                                                 const PositiveVector& nu) {
  detail::require_same_size(mu.size(), nu.size(), "sign_class_sums");
  double up = 0.0;
  double down = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double d = mu[i] - nu[i];
    if (d > 0.0) {
      up += d;
    } else {
      down -= d;
    }
  }
  return {up, down};
}

/// tv(mu, nu) <= 2 tanh(H(mu, nu) / 4). Sharp.
inline BoundReport tv_from_t_bound(const SimplexPoint& mu,
                                   const SimplexPoint& nu) {
  auto r = make_bound_report("tv_le_2t", "tv", tv_distance(mu, nu), "2*T",
                             2.0 * t_distance(mu, nu));
  r.convention = kTvConvention;
  return r;
}

/// tv <= (2 / log 3) H, the older linear bound. Also checks that the
/// tanh bound is never weaker: 2T <= min(2, (2 / log 3) H).
inline BoundReport atar_zeitouni_bound(const SimplexPoint& mu,
                                       const SimplexPoint& nu) {
  const double tv = tv_distance(mu, nu);
  const auto h = hilbert_distance(mu, nu);
  if (h.is_infinite()) {
    auto r = make_bound_report("tv_le_2h_over_log3", "tv", tv,
                               "(2/log3)*H",
                               std::numeric_limits<double>::infinity(),
                               /*applicable=*/false);
    r.convention = kTvConvention;
    return r;
  }
  const double rhs = 2.0 / std::log(3.0) * h.value();
  const double two_t = 2.0 * t_from_hilbert(h);
  if (two_t > std::min(2.0, rhs) + 1e-12) {
    throw InvariantViolation("atar_zeitouni_bound: 2T exceeds min(2, 2H/log3)");
  }
  auto r = make_bound_report("tv_le_2h_over_log3", "tv", tv, "(2/log3)*H", rhs);
  r.convention = kTvConvention;
  return r;
}

/// sup over subsets A of sum_{i in A} (mu_i - nu_i) <= T(mu, nu).
inline BoundReport subset_sup_bound(const SimplexPoint& mu,
                                    const SimplexPoint& nu) {
  const auto [up, down] = sign_class_sums(mu, nu);
  auto r = make_bound_report("subset_sup_le_t", "sup_A|mu(A)-nu(A)|",
                             std::max(up, down), "T", t_distance(mu, nu));
  r.convention = kTvConvention;
  return r;
}

/// T(mu, nu) <= (tv / 2) / (2 min(min_i mu_i, min_i nu_i)); needs full
/// support on both sides.
inline BoundReport t_upper_from_tv(const SimplexPoint& mu,
                                   const SimplexPoint& nu) {
  detail::require_same_size(mu.size(), nu.size(), "t_upper_from_tv");
  const double t = t_distance(mu, nu);
  if (!mu.full_support() || !nu.full_support()) {
    auto r = make_bound_report("t_le_tv_over_min_mass", "T", t,
                               "(tv/2)/(2*min_mass)",
                               std::numeric_limits<double>::infinity(),
                               /*applicable=*/false);
    r.convention = kTvConvention;
    return r;
  }
  const auto wm = mu.weights();
  const auto wn = nu.weights();
  const double min_mass = std::min(*std::min_element(wm.begin(), wm.end()),
                                   *std::min_element(wn.begin(), wn.end()));
  auto r = make_bound_report("t_le_tv_over_min_mass", "T", t,
                             "(tv/2)/(2*min_mass)",
                             0.5 * tv_distance(mu, nu) / (2.0 * min_mass));
  r.convention = kTvConvention;
  return r;
}

namespace detail {

inline void require_interior(const SimplexPoint& p, const char* op) {
  if (!p.full_support()) {
    throw DomainError(std::string(op) + ": point must lie in the interior");
  }
}

}  // namespace detail

/// l1 distance from nu to the ball vertex theta_0^{-1}(theta_0(nu) + R 1_I)
/// when the vertex set I carries nu-mass s.
inline double vertex_l1_plus(double s, double radius) {
  const double grow = std::expm1(radius);
  return 2.0 * grow * s * (1.0 - s) / (1.0 + s * grow);
}

/// Same for the vertex theta_0(nu) - R 1_I.
inline double vertex_l1_minus(double s, double radius) {
  const double shrink = std::expm1(-radius);
  return -2.0 * shrink * s * (1.0 - s) / (1.0 + s * shrink);
}

inline constexpr std::size_t kMaxSubsetDimension = 20;

/// Largest l1 distance between nu and a point at Hilbert distance R, i.e.
/// the max of the two vertex formulas over nonempty I ⊆ {1..n}.
inline double vertex_l1_bound(const SimplexPoint& nu, double radius) {
  detail::require_interior(nu, "vertex_l1_bound");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw ValidationError("vertex_l1_bound: radius must be finite and >= 0");
  }
  const std::size_t n = nu.dimension();
  if (n > kMaxSubsetDimension) {
    throw UnsupportedDimensionError(
        "vertex_l1_bound: subset enumeration limited to n <= 20");
  }
  double best = 0.0;
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t mask = 1; mask < count; ++mask) {
    double s = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      if (mask & (std::size_t{1} << b)) s += nu[b + 1];
    }
    best = std::max({best, vertex_l1_plus(s, radius),
                     vertex_l1_minus(s, radius)});
  }
  return best;
}

/// D_KL(mu || nu); Infinite unless supp mu ⊆ supp nu.
inline ExtendedDistance kl_divergence(const SimplexPoint& mu,
                                      const SimplexPoint& nu) {
  detail::require_same_size(mu.size(), nu.size(), "kl_divergence");
  if (!detail::support_subset(mu, nu)) return ExtendedDistance::infinite();
  double s = 0.0;
  for (std::size_t i : mu.support()) s += mu[i] * detail::log_ratio(mu[i], nu[i]);
  return ExtendedDistance::finite(std::max(0.0, s));
}

/// D_KL(mu || nu) <= H(mu, nu).
inline BoundReport kl_bound(const SimplexPoint& mu, const SimplexPoint& nu) {
  const auto kl = kl_divergence(mu, nu);
  const auto h = hilbert_distance(mu, nu);
  if (h.is_infinite()) {
    return make_bound_report("kl_le_h", "KL", kl.as_double(), "H",
                             std::numeric_limits<double>::infinity(),
                             /*applicable=*/false);
  }
  return make_bound_report("kl_le_h", "KL", kl.value(), "H", h.value());
}

/// Convex f on (0, inf) with f(1) = 0, defining D_f(mu || nu).
struct ConvexFunctionSpec {
  std::string name;
  std::function<double(double)> evaluator;

  double operator()(double u) const { return evaluator(u); }
};

/// Checks f(1) = 0 (1e-12) and midpoint convexity over all pairs of a
/// 49-point log grid on [e^-6, e^6] (1e-9). Throws ValidationError.
inline void validate_convex_function(const ConvexFunctionSpec& f) {
  if (!f.evaluator) throw ValidationError("ConvexFunctionSpec: no evaluator");
  if (std::abs(f(1.0)) > 1e-12) {
    throw ValidationError("ConvexFunctionSpec '" + f.name + "': f(1) != 0");
  }
  constexpr int kPoints = 49;
  std::array<double, kPoints> u{};
  std::array<double, kPoints> fu{};
  for (int i = 0; i < kPoints; ++i) {
    u[i] = std::exp(-6.0 + 12.0 * i / (kPoints - 1));
    fu[i] = f(u[i]);
  }
  for (int i = 0; i < kPoints; ++i) {
    for (int j = i + 1; j < kPoints; ++j) {
      const double mid = f(0.5 * (u[i] + u[j]));
      if (mid > 0.5 * (fu[i] + fu[j]) + 1e-9) {
        throw ValidationError("ConvexFunctionSpec '" + f.name +
                              "': midpoint convexity fails");
      }
    }
  }
}

inline ConvexFunctionSpec kl_generator() {
  return {"u*log(u)", [](double u) { return u > 0.0 ? u * std::log(u) : 0.0; }};
}
inline ConvexFunctionSpec tv_generator() {
  return {"|u-1|/2", [](double u) { return 0.5 * std::abs(u - 1.0); }};
}
inline ConvexFunctionSpec hellinger_generator() {
  return {"(sqrt(u)-1)^2", [](double u) {
            const double d = std::sqrt(u) - 1.0;
            return d * d;
          }};
}
inline ConvexFunctionSpec chi_squared_generator() {
  return {"(u-1)^2", [](double u) { return (u - 1.0) * (u - 1.0); }};
}

/// D_f(mu || nu) = sum_i nu_i f(mu_i / nu_i) for equal-support pairs.
inline double f_divergence(const SimplexPoint& mu, const SimplexPoint& nu,
                           const ConvexFunctionSpec& f) {
  detail::require_same_size(mu.size(), nu.size(), "f_divergence");
  if (!comparable(mu, nu)) {
    throw BoundInapplicableError("f_divergence: supports differ");
  }
  double s = 0.0;
  for (std::size_t i : nu.support()) s += nu[i] * f(mu[i] / nu[i]);
  return s;
}

/// f shifted by a linear term so that 0 is a subgradient at 1. The slope
/// at 1 is a central difference with step 1e-6. D_f is unchanged.
inline ConvexFunctionSpec normalize_at_one(const ConvexFunctionSpec& f) {
  constexpr double h = 1e-6;
  const double slope = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
  auto eval = f.evaluator;
  return {f.name + " - c(u-1)",
          [eval, slope](double u) { return eval(u) - slope * (u - 1.0); }};
}

/// max{f(e^-H), f(e^H)} for the normalized f: an upper bound on both
/// D_f(mu || nu) and D_f(nu || mu) when H(mu, nu) = H.
inline double f_divergence_envelope(double hilbert, const ConvexFunctionSpec& f) {
  const auto g = normalize_at_one(f);
  return std::max(g(std::exp(-hilbert)), g(std::exp(hilbert)));
}

inline BoundReport f_divergence_bound(const SimplexPoint& mu,
                                      const SimplexPoint& nu,
                                      const ConvexFunctionSpec& f) {
  const std::string name = "f_divergence_le_envelope[" + f.name + "]";
  if (!comparable(mu, nu)) {
    return make_bound_report(name, "D_f", std::numeric_limits<double>::quiet_NaN(),
                             "max{f(e^-H),f(e^H)}",
                             std::numeric_limits<double>::infinity(),
                             /*applicable=*/false);
  }
  const double h = hilbert_distance(mu, nu).value();
  return make_bound_report(name, "D_f", f_divergence(mu, nu, f),
                           "max{f(e^-H),f(e^H)}", f_divergence_envelope(h, f));
}

namespace detail {

inline void require_sorted_support(std::span<const double> points,
                                   std::size_t n, const char* op) {
  require_same_size(points.size(), n, op);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i]) || (i > 0 && !(points[i] > points[i - 1]))) {
      throw ValidationError(std::string(op) +
                            ": support points must be finite and strictly "
                            "increasing");
    }
  }
}

inline double moment(std::span<const double> points, const PositiveVector& m,
                     double x0, double q) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    s += std::pow(std::abs(points[i] - x0), q) * m[i];
  }
  return s;
}

}  // namespace detail

/// Exact W1 on the line: sum_i |F_mu(x_i) - F_nu(x_i)| (x_{i+1} - x_i).
inline double w1_exact_1d(std::span<const double> points,
                          const SimplexPoint& mu, const SimplexPoint& nu) {
  detail::require_same_size(mu.size(), nu.size(), "w1_exact_1d");
  detail::require_sorted_support(points, mu.size(), "w1_exact_1d");
  double cdf_gap = 0.0;
  double w = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    cdf_gap += mu[i] - nu[i];
    w += std::abs(cdf_gap) * (points[i + 1] - points[i]);
  }
  return w;
}

/// W1(mu, nu) <= (e^H - 1) * sum_i |x_i - x0| mu_i.
inline BoundReport w1_bound_from_h(std::span<const double> points,
                                   const SimplexPoint& mu,
                                   const SimplexPoint& nu, double x0) {
  const double w1 = w1_exact_1d(points, mu, nu);
  const auto h = hilbert_distance(mu, nu);
  if (h.is_infinite()) {
    return make_bound_report("w1_le_expm1h_moment", "W1", w1,
                             "(e^H-1)*E_mu|x-x0|",
                             std::numeric_limits<double>::infinity(),
                             /*applicable=*/false);
  }
  return make_bound_report("w1_le_expm1h_moment", "W1", w1,
                           "(e^H-1)*E_mu|x-x0|",
                           std::expm1(h.value()) *
                               detail::moment(points, mu, x0, 1.0));
}

/// |E_mu d^q - E_nu d^q| <= K_q (e^H - 1) with d = |x - x0|. Element 0 takes
/// K_q from mu (the asserted form), element 1 from nu.
inline std::array<BoundReport, 2> moment_gap_bound(
    std::span<const double> points, const SimplexPoint& mu,
    const SimplexPoint& nu, double x0, int q) {
  detail::require_same_size(mu.size(), nu.size(), "moment_gap_bound");
  detail::require_sorted_support(points, mu.size(), "moment_gap_bound");
  if (q < 1) throw ValidationError("moment_gap_bound: q must be >= 1");
  const double qd = static_cast<double>(q);
  const double k_mu = detail::moment(points, mu, x0, qd);
  const double k_nu = detail::moment(points, nu, x0, qd);
  const double gap = std::abs(k_mu - k_nu);
  const std::string suffix = "[q=" + std::to_string(q) + "]";
  const auto h = hilbert_distance(mu, nu);
  const bool finite = h.is_finite();
  const auto rhs = [&](double k) {
    return finite ? k * std::expm1(h.value())
                  : std::numeric_limits<double>::infinity();
  };
  return {make_bound_report("moment_gap_mu" + suffix, "|E_mu d^q - E_nu d^q|",
                            gap, "K_q(mu)*(e^H-1)", rhs(k_mu), finite),
          make_bound_report("moment_gap_nu" + suffix, "|E_mu d^q - E_nu d^q|",
                            gap, "K_q(nu)*(e^H-1)", rhs(k_nu), finite)};
}

}  // namespace hilbert_cone
