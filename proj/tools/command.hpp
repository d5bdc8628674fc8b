// SPDX-License-Identifier: Apache-2.0
#pragma once

// hilbert-cone command-line frontend.
//
// Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
// Vector/matrix arguments are file paths or inline documents; when the
// argument names an existing file its contents are parsed.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hilbert_cone/hilbert_cone.hpp"

namespace hilbert_cone::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr const char* kSeedEnv = "HILBERT_CONE_SEED";

inline std::string read_argument(const std::string& arg) {
  std::ifstream in(arg, std::ios::binary);
  if (!in) return arg;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline InputDocument load(const std::string& arg, InputKind kind) {
  return parse_input(read_argument(arg), kind);
}

inline SimplexPoint load_measure(const std::string& arg) {
  return normalize(load(arg, InputKind::Vector).to_positive_vector());
}

inline std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const std::string_view s(env);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), seed);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ValidationError(std::string(kSeedEnv) +
                          " must be an unsigned 64-bit integer");
  }
  return seed;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline Json dist_json(const std::string& a_arg, const std::string& b_arg) {
  const auto a = load(a_arg, InputKind::Vector).to_positive_vector();
  const auto b = load(b_arg, InputKind::Vector).to_positive_vector();
  const auto h = hilbert_distance(a, b);
  const auto mu = normalize(a);
  const auto nu = normalize(b);
  Json j;
  j["hilbert"] = json_value(h);
  j["t"] = t_from_hilbert(h);
  j["tv"] = tv_distance(mu, nu);
  j["kl"] = json_value(kl_divergence(mu, nu));
  j["comparable"] = comparable(a, b);
  return j;
}

inline Json tau_json(const NonnegMatrix& a) {
  Json j;
  j["phi"] = birkhoff_phi(a);
  j["tau"] = birkhoff_tau(a);
  j["diameter"] = json_value(projective_diameter(a));
  return j;
}

inline Json kernel_tau_json(const GridKernel& k) {
  Json j;
  j["phi"] = grid_kernel_phi(k);
  j["tau"] = grid_kernel_tau(k);
  return j;
}

/// Every bound in the metric_bounds family for one pair. W1 and moment
/// bounds use the support points 0, 1, ..., n with x0 = 0.
inline Json bounds_json(const SimplexPoint& mu, const SimplexPoint& nu) {
  Json arr = Json::array();
  arr.push_back(to_json(tv_from_t_bound(mu, nu)));
  arr.push_back(to_json(subset_sup_bound(mu, nu)));
  arr.push_back(to_json(atar_zeitouni_bound(mu, nu)));
  arr.push_back(to_json(t_upper_from_tv(mu, nu)));
  arr.push_back(to_json(kl_bound(mu, nu)));

  const auto h = hilbert_distance(mu, nu);
  if (nu.full_support() && h.is_finite() &&
      nu.dimension() <= kMaxSubsetDimension) {
    arr.push_back(to_json(make_bound_report("tv_le_vertex_l1", "tv",
                                            tv_distance(mu, nu),
                                            "vertex_l1_bound(nu,H)",
                                            vertex_l1_bound(nu, h.value()))));
  } else {
    arr.push_back(to_json(make_bound_report(
        "tv_le_vertex_l1", "tv", tv_distance(mu, nu), "vertex_l1_bound(nu,H)",
        std::numeric_limits<double>::infinity(), /*applicable=*/false)));
  }

  for (const auto& f : {kl_generator(), tv_generator(), hellinger_generator(),
                        chi_squared_generator()}) {
    arr.push_back(to_json(f_divergence_bound(mu, nu, f)));
  }

  std::vector<double> points(mu.size());
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<double>(i);
  arr.push_back(to_json(w1_bound_from_h(points, mu, nu, 0.0)));
  for (int q : {1, 2}) {
    for (const auto& r : moment_gap_bound(points, mu, nu, 0.0, q)) {
      arr.push_back(to_json(r));
    }
  }
  return arr;
}

inline Json tile_json(const std::vector<BallPolytope>& tiles, int shells) {
  const auto offsets = tile_offsets(shells);
  Json arr = Json::array();
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    Json j;
    j["lattice"] = Json::array({offsets[i].first, offsets[i].second});
    j["center"] = json_value(tiles[i].center.weights());
    Json tv = Json::array();
    for (const auto& v : tiles[i].theta_vertices) tv.push_back(json_value(v.coords()));
    j["theta_vertices"] = std::move(tv);
    Json sv = Json::array();
    for (const auto& v : tiles[i].simplex_vertices) sv.push_back(json_value(v.weights()));
    j["simplex_vertices"] = std::move(sv);
    arr.push_back(std::move(j));
  }
  Json out;
  out["radius"] = tiles.empty() ? 0.0 : tiles.front().radius;
  out["shells"] = shells;
  out["tiles"] = std::move(arr);
  return out;
}

inline void write_markov_csv(std::ostream& out, const MarkovTrace& trace) {
  out << "step,H,T,TV,certified_bound\n";
  for (const auto& s : trace.steps) {
    out << s.step << ',' << format_shortest(s.hilbert.as_double()) << ','
        << format_shortest(s.t) << ',' << format_shortest(s.tv) << ','
        << format_shortest(s.certified_bound.as_double()) << '\n';
  }
}

/// Runs one invocation. args[0] is the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Hilbert projective metric toolkit", "hilbert-cone"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string a_arg, b_arg, matrix_arg, grid_arg, center_arg, mu0_arg, svg_path;
  std::string view_name = "simplex";
  double radius = 0.0;
  int shells = 0;
  std::size_t steps = 0;
  std::size_t trials = 10000;
  std::optional<std::uint64_t> seed;

  auto* dist = app.add_subcommand("dist", "Distances between two vectors");
  dist->add_option("a", a_arg, "First vector")->required();
  dist->add_option("b", b_arg, "Second vector")->required();

  auto* tau = app.add_subcommand("tau", "Birkhoff coefficient of a matrix");
  tau->add_option("matrix", matrix_arg, "Nonnegative allowable matrix")->required();

  auto* tau_kernel =
      app.add_subcommand("tau-kernel", "Birkhoff coefficient of a grid kernel");
  tau_kernel->add_option("grid", grid_arg, "Kernel grid document")->required();

  auto* ball = app.add_subcommand("ball", "Hilbert ball polytope around a point");
  ball->add_option("center", center_arg, "Interior simplex point")->required();
  ball->add_option("R", radius, "Radius")->required();

  auto* tile_cmd = app.add_subcommand("tile", "Hexagonal tiling of S^2");
  tile_cmd->add_option("center", center_arg, "Interior point of S^2")->required();
  tile_cmd->add_option("R", radius, "Ball radius")->required();
  tile_cmd->add_option("shells", shells, "Number of rings around the center")
      ->required()
      ->check(CLI::NonNegativeNumber);
  tile_cmd->add_option("--svg", svg_path, "Write an SVG drawing here");
  tile_cmd->add_option("--view", view_name, "simplex or theta")
      ->check(CLI::IsMember({"simplex", "theta"}));

  auto* markov = app.add_subcommand("markov", "Certified chain convergence (CSV)");
  markov->add_option("P", matrix_arg, "Row-stochastic matrix")->required();
  markov->add_option("mu0", mu0_arg, "Initial distribution")->required();
  markov->add_option("steps", steps, "Number of steps")->required();

  auto* bounds = app.add_subcommand("bounds", "Every inter-metric bound for a pair");
  bounds->add_option("a", a_arg, "First measure")->required();
  bounds->add_option("b", b_arg, "Second measure")->required();

  auto* verify = app.add_subcommand("verify", "Sample the contraction inequality");
  verify->add_option("matrix", matrix_arg, "Nonnegative allowable matrix")->required();
  verify->add_option("--trials", trials, "Number of random pairs")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Seed (default $HILBERT_CONE_SEED or 0)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*dist) {
      emit(out, dist_json(a_arg, b_arg));
    } else if (*tau) {
      emit(out, tau_json(load(matrix_arg, InputKind::Matrix).to_matrix()));
    } else if (*tau_kernel) {
      emit(out, kernel_tau_json(load(grid_arg, InputKind::KernelGrid).to_kernel()));
    } else if (*ball) {
      emit(out, to_json(ball_vertices(load_measure(center_arg), radius)));
    } else if (*tile_cmd) {
      const auto tiles = tile(load_measure(center_arg), radius, shells);
      if (!svg_path.empty()) {
        std::ofstream svg(svg_path, std::ios::binary);
        if (!svg) throw Error("cannot write " + svg_path);
        svg << render_svg(tiles, view_name == "theta" ? SvgView::ThetaPlane
                                                      : SvgView::Simplex2D);
      }
      emit(out, tile_json(tiles, shells));
    } else if (*markov) {
      const auto p = load(matrix_arg, InputKind::Matrix).to_matrix();
      const auto trace = markov_converge(p, load_measure(mu0_arg), steps);
      if (trace.degenerate) {
        err << "warning: tau(P) = 1, the certificate only bounds by "
               "non-expansiveness\n";
      }
      write_markov_csv(out, trace);
      if (!trace.all_certified()) {
        err << "error: a step exceeded its certified bound\n";
        return kExitFailure;
      }
    } else if (*bounds) {
      emit(out, bounds_json(load_measure(a_arg), load_measure(b_arg)));
    } else if (*verify) {
      const auto a = load(matrix_arg, InputKind::Matrix).to_matrix();
      const auto report = verify_contraction(a, trials, seed ? *seed : default_seed());
      emit(out, to_json(report));
      if (!report.passed()) return kExitFailure;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace hilbert_cone::cli
