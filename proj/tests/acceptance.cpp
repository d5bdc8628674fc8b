// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Every sweep is seeded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "cli_cases.hpp"
#include "test_support.hpp"

namespace hc = hilbert_cone;
namespace ht = hilbert_cone::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure message and keeps the worst observed numbers.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && pass_) {
      pass_ = false;
      first_failure_ = what;
    }
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  Outcome done() const {
    return {pass_, pass_ ? notes_ : first_failure_ + (notes_.empty() ? "" : " | " + notes_)};
  }

 private:
  bool pass_ = true;
  std::string first_failure_;
  std::string notes_;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

hc::SimplexPoint uniform(std::size_t n) {
  return hc::SimplexPoint(std::vector<double>(n + 1, 1.0 / static_cast<double>(n + 1)));
}

Outcome closed_form_coefficient() {
  Check c;
  const hc::NonnegMatrix a{{2, 1}, {1, 2}};
  c.require(std::abs(hc::birkhoff_phi(a) - 0.25) <= 1e-12, "phi([[2,1],[1,2]]) != 1/4");
  c.require(std::abs(hc::birkhoff_tau(a) - 1.0 / 3.0) <= 1e-12, "tau([[2,1],[1,2]]) != 1/3");
  hc::Rng rng(1001);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.index(8);
    const auto m = t % 4 == 0 ? ht::random_allowable_matrix(rng, n, 0.2)
                              : ht::random_positive_matrix(rng, n, n);
    const double got = hc::birkhoff_phi(m);
    const double oracle = ht::phi_exhaustive(m);
    const double rel = std::abs(got - oracle) / std::max(1.0, std::abs(oracle));
    worst = std::max(worst, rel);
  }
  c.require(worst <= 1e-12, "exhaustive quadruple mismatch " + sci(worst));
  c.note("200 matrices, worst rel " + sci(worst));
  return c.done();
}

Outcome contraction_theorem() {
  Check c;
  hc::Rng rng(1002);
  double worst_t = -INFINITY;
  double worst_h = -INFINITY;
  int with_zeros = 0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 1 + rng.index(8);
    const auto a = ht::random_allowable_matrix(rng, n, t % 2 ? 0.25 : 0.0);
    with_zeros += a.strictly_positive() ? 0 : 1;
    const auto x = ht::random_with_zeros(rng, n, t % 5 == 0 ? 0.2 : 0.0);
    const auto y = ht::random_with_zeros(rng, n, t % 5 == 0 ? 0.2 : 0.0);
    const double tau = hc::birkhoff_tau(a);
    const auto ax = a.apply(x);
    const auto ay = a.apply(y);
    worst_t = std::max(worst_t, hc::t_distance(ax, ay) - tau * hc::t_distance(x, y));
    const auto h = hc::hilbert_distance(x, y);
    if (h.is_finite()) {
      worst_h = std::max(worst_h, hc::hilbert_distance(ax, ay).value() - tau * h.value());
    }
  }
  c.require(worst_t <= 1e-10, "T contraction violated by " + sci(worst_t));
  c.require(worst_h <= 1e-10, "H contraction violated by " + sci(worst_h));
  c.require(with_zeros > 0, "sweep contained no matrix with zeros");
  c.note("10^4 triples (" + std::to_string(with_zeros) + " with zeros), worst T " +
         sci(worst_t) + ", worst H " + sci(worst_h));
  return c.done();
}

Outcome diameter_attainment() {
  Check c;
  hc::Rng rng(1003);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t rows = 1 + rng.index(8);
    const std::size_t cols = 1 + rng.index(8);
    const auto a = ht::random_positive_matrix(rng, rows, cols);
    double best = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
      for (std::size_t l = 0; l < cols; ++l) {
        std::vector<double> ek(cols, 0.0), el(cols, 0.0);
        ek[k] = 1.0;
        el[l] = 1.0;
        best = std::max(best, hc::hilbert_distance(a.apply(hc::PositiveVector(ek)),
                                                   a.apply(hc::PositiveVector(el)))
                                  .value());
      }
    }
    worst = std::max(worst, std::abs(hc::projective_diameter(a).value() - best));
  }
  c.require(worst <= 1e-10, "diameter mismatch " + sci(worst));
  c.note("500 matrices, worst abs " + sci(worst));
  return c.done();
}

Outcome kernel_coefficient() {
  Check c;
  const auto g = hc::uniform_grid(0.0, 1.0, 21);
  const auto k = hc::GridKernel::sample(g, g, [](double a, double x) {
    return -(a - x) * (a - x) / (2.0 * 0.25);
  });
  const double phi = hc::grid_kernel_phi(k);
  c.require(std::abs(phi - std::exp(-4.0)) <= 1e-9, "Gaussian phi " + sci(phi));
  hc::Rng rng(1004);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 2 + rng.index(14);
    const std::size_t p = 2 + rng.index(14);
    std::vector<double> logs(m * p);
    for (double& v : logs) v = rng.uniform(-5.0, 5.0);
    const hc::GridKernel r(hc::uniform_grid(0.0, 1.0, m), hc::uniform_grid(0.0, 1.0, p),
                           logs);
    const double fast = hc::grid_kernel_log_phi(r);
    const double slow = ht::kernel_log_phi_exhaustive(r);
    worst = std::max(worst, std::abs(fast - slow) / std::max(1.0, std::abs(slow)));
  }
  c.require(worst <= 1e-12, "row-pair vs exhaustive scan " + sci(worst));
  c.note("phi-e^-4 " + sci(std::abs(phi - std::exp(-4.0))) + ", 100 kernels worst rel " +
         sci(worst));
  return c.done();
}

Outcome sharp_tv_bound() {
  Check c;
  hc::Rng rng(1005);
  double worst_slack = INFINITY;
  double worst_dom = -INFINITY;
  for (int t = 0; t < 100000; ++t) {
    const std::size_t n = 1 + rng.index(10);
    const auto mu = ht::random_interior(rng, n, 1.0 + 4.0 * rng.uniform());
    const auto nu = ht::random_interior(rng, n, 1.0 + 4.0 * rng.uniform());
    const auto tight = hc::tv_from_t_bound(mu, nu);
    const auto linear = hc::atar_zeitouni_bound(mu, nu);
    worst_slack = std::min(worst_slack, tight.slack);
    worst_dom = std::max(worst_dom, tight.rhs_value - std::min(2.0, linear.rhs_value));
  }
  c.require(worst_slack >= -1e-10, "tanh bound violated, slack " + sci(worst_slack));
  c.require(worst_dom <= 1e-12, "tanh bound weaker than linear by " + sci(worst_dom));

  double worst_gap = 0.0;
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    const double s = 1.0 / (1.0 + std::exp(r / 2.0));
    const hc::SimplexPoint nu({1.0 - s, s});
    const auto mu = hc::ball_vertices(nu, r).simplex_vertices[0];
    const auto rep = hc::tv_from_t_bound(mu, nu);
    worst_gap = std::max(worst_gap, std::abs(rep.rhs_value - rep.lhs_value));
  }
  c.require(worst_gap <= 1e-6, "sharpness witness gap " + sci(worst_gap));
  c.note("10^5 pairs, min slack " + sci(worst_slack) + ", witness gap " + sci(worst_gap));
  return c.done();
}

Outcome polytope_geometry() {
  Check c;
  hc::Rng rng(1006);
  double worst_r = 0.0;
  std::size_t mismatches = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto nu = ht::random_interior(rng, n, 1.0);
    const double r = rng.uniform(0.2, 2.0);
    const auto ball = hc::ball_vertices(nu, r);
    c.require(ball.simplex_vertices.size() == 2 * ((std::size_t{1} << n) - 1),
              "vertex count wrong for n=" + std::to_string(n));
    for (const auto& v : ball.simplex_vertices) {
      worst_r = std::max(worst_r, std::abs(hc::hilbert_distance(v, nu).value() - r));
    }
    for (int t = 0; t < 10000; ++t) {
      const auto mu = ht::random_interior(rng, n, 1.5);
      const double h = hc::hilbert_distance(mu, nu).value();
      if (std::abs(h - r) < 1e-9) continue;
      if (hc::ball_contains(nu, r, mu) != (h <= r)) ++mismatches;
    }
  }
  c.require(worst_r <= 1e-9, "vertex radius error " + sci(worst_r));
  c.require(mismatches == 0, std::to_string(mismatches) + " membership mismatches");

  const std::vector<hc::BallPolytope> hex{hc::ball_vertices(uniform(2), 1.0)};
  const std::string svg = hc::render_svg(hex, hc::SvgView::Simplex2D);
  const std::regex path(R"(<path d="(M [^"]*) Z")");
  std::smatch m;
  const auto paths = std::distance(std::sregex_iterator(svg.begin(), svg.end(), path),
                                   std::sregex_iterator());
  const bool one_path = paths == 1 && std::regex_search(svg, m, path);
  std::size_t corners = 0;
  if (one_path) {
    const std::string d = m[1];
    corners = static_cast<std::size_t>(std::count(d.begin(), d.end(), 'M') +
                                       std::count(d.begin(), d.end(), 'L'));
  }
  c.require(svg.rfind("<?xml", 0) == 0 && one_path && corners == 6,
            "hexagon SVG is not a single closed 6-gon");
  c.note("n=1..6, radius err " + sci(worst_r) + ", 6e4 membership samples, SVG 6-gon");
  return c.done();
}

Outcome chart_identities() {
  Check c;
  hc::Rng rng(1007);
  double worst_round = 0.0;
  double worst_form = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 1 + rng.index(8);
    const auto mu = ht::random_interior(rng, n);
    const auto nu = ht::random_interior(rng, n);
    const std::size_t k = rng.index(n + 1);
    std::vector<double> coords(n);
    for (double& x : coords) x = rng.uniform(-20.0, 20.0);
    const auto back = hc::theta_chart(hc::theta_inverse(hc::ThetaVector(k, coords)), k);
    for (std::size_t i = 0; i < n; ++i) {
      worst_round = std::max(worst_round, std::abs(back[i] - coords[i]));
    }
    std::vector<double> d(n + 1);
    for (std::size_t i = 0; i <= n; ++i) d[i] = std::log(mu[i]) - std::log(nu[i]);
    const double forms[] = {hc::hilbert_via_theta(mu, nu), hc::hilbert_single_chart(mu, nu),
                            hc::hilbert_distance(mu, nu).value(), hc::theta_seminorm(d)};
    for (double a : forms) {
      for (double b : forms) {
        worst_form = std::max(worst_form,
                              std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
      }
    }
  }
  c.require(worst_round <= 1e-12, "round trip error " + sci(worst_round));
  c.require(worst_form <= 1e-12, "forms disagree by " + sci(worst_form));
  c.note("10^4 pairs, round trip " + sci(worst_round) + ", forms " + sci(worst_form));
  return c.done();
}

Outcome markov_certification() {
  Check c;
  hc::Rng rng(1008);
  double worst = -INFINITY;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.index(5);
    const auto p = ht::random_stochastic(rng, n);
    const auto trace = hc::markov_converge(p, ht::random_interior(rng, n - 1), 30);
    const double h0 = trace.steps[0].hilbert.value();
    double power = 1.0;
    for (const auto& s : trace.steps) {
      worst = std::max(worst, s.hilbert.value() - power * h0);
      power *= trace.tau;
    }
  }
  c.require(worst <= 1e-9, "certificate exceeded by " + sci(worst));

  const hc::NonnegMatrix p{{0.75, 0.25}, {0.25, 0.75}};
  const double phi = hc::birkhoff_phi(p);
  const double tau = hc::birkhoff_tau(p);
  c.require(std::abs(phi - 1.0 / 9.0) <= 1e-12 && std::abs(tau - 0.5) <= 1e-12,
            "tau of the symmetric chain is not 1/2");
  const auto trace = hc::markov_converge(p, hc::SimplexPoint({1.0, 0.0}), 20);
  // Least-squares slope of log H over steps 5..20.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t s = 5; s <= 20; ++s) {
    const double y = std::log(trace.steps[s].hilbert.value());
    sx += static_cast<double>(s);
    sy += y;
    sxx += static_cast<double>(s * s);
    sxy += static_cast<double>(s) * y;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double rate = std::exp(slope);
  c.require(rate <= tau + 1e-6, "fitted rate " + sci(rate) + " exceeds tau");
  c.note("100 chains, worst excess " + sci(worst) + ", fitted rate " + sci(rate) +
         " vs tau 0.5");
  return c.done();
}

Outcome divergence_bounds() {
  Check c;
  const std::vector<hc::ConvexFunctionSpec> fs{hc::kl_generator(), hc::tv_generator(),
                                               hc::hellinger_generator(),
                                               hc::chi_squared_generator()};
  hc::Rng rng(1009);
  double worst = INFINITY;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 1 + rng.index(9);
    const auto mu = ht::random_interior(rng, n);
    const auto nu = ht::random_interior(rng, n);
    worst = std::min(worst, hc::kl_bound(mu, nu).slack);
    for (const auto& f : fs) worst = std::min(worst, hc::f_divergence_bound(mu, nu, f).slack);
  }
  double worst_w = INFINITY;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = 2 + rng.index(9);
    std::vector<double> pts(n);
    double x = rng.uniform(-5.0, 5.0);
    for (double& v : pts) {
      v = x;
      x += rng.uniform(0.01, 2.0);
    }
    const auto mu = ht::random_interior(rng, n - 1);
    const auto nu = ht::random_interior(rng, n - 1);
    const std::vector<double> a(mu.weights().begin(), mu.weights().end());
    const std::vector<double> b(nu.weights().begin(), nu.weights().end());
    const double oracle = ht::w1_monotone_coupling(pts, a, b);
    const auto rep = hc::w1_bound_from_h(pts, mu, nu, rng.uniform(-5.0, 5.0));
    worst_w = std::min(worst_w, rep.rhs_value - oracle);
  }
  c.require(worst >= -1e-10, "KL/f-divergence slack " + sci(worst));
  c.require(worst_w >= -1e-10, "W1 slack " + sci(worst_w));
  c.note("10^4 pairs x 5 bounds min slack " + sci(worst) + ", W1 min slack " + sci(worst_w));
  return c.done();
}

Outcome tiling() {
  Check c;
  const double r = 0.5;
  const auto tiles = hc::tile(uniform(2), r, 2);
  c.require(tiles.size() == 19, "expected 19 tiles, got " + std::to_string(tiles.size()));
  const auto offsets = hc::tile_offsets(2);
  std::size_t bad_pairs = 0;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    for (std::size_t j = i + 1; j < tiles.size(); ++j) {
      std::size_t shared = 0;
      for (const auto& a : tiles[i].theta_vertices) {
        for (const auto& b : tiles[j].theta_vertices) {
          shared += (std::abs(a[0] - b[0]) < 1e-12 && std::abs(a[1] - b[1]) < 1e-12);
        }
      }
      const int da = offsets[i].first - offsets[j].first;
      const int db = offsets[i].second - offsets[j].second;
      const bool adjacent = std::max({std::abs(da), std::abs(db), std::abs(da + db)}) == 1;
      if (shared != (adjacent ? 2u : 0u)) ++bad_pairs;
    }
  }
  c.require(bad_pairs == 0, std::to_string(bad_pairs) + " tile pairs share the wrong vertex count");

  // Interior points of the union: strict membership (H < R) in exactly one
  // tile; points within 1e-9 of a tile boundary are skipped.
  hc::Rng rng(1010);
  std::size_t sampled = 0;
  std::size_t bad = 0;
  for (int t = 0; t < 20000; ++t) {
    const auto& owner = tiles[rng.index(tiles.size())];
    const auto cth = hc::theta_chart(owner.center, 0);
    const hc::SimplexPoint mu = hc::theta_inverse(hc::ThetaVector(
        0, {cth[0] + rng.uniform(-r, r), cth[1] + rng.uniform(-r, r)}));
    int inside = 0;
    bool near_edge = false;
    for (const auto& tl : tiles) {
      const double h = hc::hilbert_distance(mu, tl.center).value();
      if (std::abs(h - r) < 1e-9) near_edge = true;
      inside += h < r ? 1 : 0;
    }
    if (near_edge || hc::hilbert_distance(mu, owner.center).value() >= r) continue;
    ++sampled;
    if (inside != 1) ++bad;
  }
  c.require(bad == 0, std::to_string(bad) + " points in more than one tile");
  c.note("19 tiles, " + std::to_string(sampled) + " interior samples");
  return c.done();
}

Outcome cli_determinism() {
  Check c;
  const std::filesystem::path golden = HILBERT_CONE_GOLDEN_DIR;
  const std::filesystem::path data = HILBERT_CONE_DATA_DIR;
  std::vector<std::string> subcommands;
  for (const auto& cs : ht::cli_cases()) {
    const auto a = ht::run_cli_case(cs, data);
    const auto b = ht::run_cli_case(cs, data);
    c.require(a.exit_code == cs.exit_code, cs.name + " exit code " + std::to_string(a.exit_code));
    c.require(a.out == b.out && a.svg == b.svg, cs.name + " not byte-identical on rerun");
    const auto expected = ht::read_file(golden / (cs.name + ".out"));
    c.require(!expected.empty() && a.out == expected, cs.name + " differs from golden");
    if (!a.svg.empty()) {
      c.require(a.svg == ht::read_file(golden / (cs.name + ".svg")),
                cs.name + " SVG differs from golden");
    }
    if (std::find(subcommands.begin(), subcommands.end(), cs.argv[0]) == subcommands.end()) {
      subcommands.push_back(cs.argv[0]);
    }
  }
  c.require(subcommands.size() == 8, "golden cases cover " +
                                         std::to_string(subcommands.size()) + "/8 subcommands");
  c.note(std::to_string(ht::cli_cases().size()) + " golden cases over " +
         std::to_string(subcommands.size()) + " subcommands");
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form coefficient", closed_form_coefficient},
      {"contraction theorem", contraction_theorem},
      {"diameter attainment", diameter_attainment},
      {"kernel coefficient", kernel_coefficient},
      {"sharp TV bound", sharp_tv_bound},
      {"polytope geometry", polytope_geometry},
      {"chart identities", chart_identities},
      {"Markov certification", markov_certification},
      {"divergence bounds", divergence_bounds},
      {"tiling", tiling},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu %-24s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
