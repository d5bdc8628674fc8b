// SPDX-License-Identifier: Apache-2.0
#pragma once

// SVG 1.1 rendering of Hilbert balls on S^2.
//
// Each ball becomes exactly one closed <path>; frames and axes use
// <polygon> and <line> so path counts equal ball counts.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <locale>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/format.hpp"
#include "hilbert_cone/simplex_geometry.hpp"

namespace hilbert_cone {

enum class SvgView {
  /// Raw chart-0 coordinates (theta^1, theta^2) with axes.
  ThetaPlane,
  /// S^2 as the equilateral triangle e0=(0,0), e1=(1,0), e2=(1/2, sqrt3/2).
  Simplex2D,
};

struct RenderStyle {
  int width_px = 600;
  int height_px = 600;
  std::string stroke = "#1f4e79";
  std::string fill = "#9ecae1";
  double fill_opacity = 0.35;
  double stroke_width = 1.0;
  std::string frame_stroke = "#444444";
};

namespace detail {

struct Point2 {
  double x;
  double y;
};

inline Point2 barycentric_to_plane(const SimplexPoint& p) {
  constexpr double kHeight = 0.86602540378443864676;  // sqrt(3) / 2
  return {p[1] + 0.5 * p[2], kHeight * p[2]};
}

// Vertex indices of a 2-d ball in boundary order: sorted by angle around
// the chart-0 center. theta_0^{-1} maps the polygon edge-to-edge, so the
// same order is valid on the simplex.
inline std::vector<std::size_t> hexagon_order(const BallPolytope& ball) {
  const auto c = theta_chart(ball.center, 0);
  std::vector<std::size_t> idx(ball.theta_vertices.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<double> angle(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    angle[i] = std::atan2(ball.theta_vertices[i][1] - c[1],
                          ball.theta_vertices[i][0] - c[0]);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return angle[a] < angle[b];
  });
  return idx;
}

}  // namespace detail

inline std::string render_svg(std::span<const BallPolytope> polytopes,
                              SvgView view, const RenderStyle& style = {}) {
  for (const auto& p : polytopes) {
    if (p.dimension() != 2) {
      throw DimensionError("render_svg: only 2-dimensional balls can be drawn");
    }
  }

  // Data-space outlines, y pointing up.
  std::vector<std::vector<detail::Point2>> outlines;
  for (const auto& p : polytopes) {
    std::vector<detail::Point2> pts;
    for (std::size_t i : detail::hexagon_order(p)) {
      if (view == SvgView::ThetaPlane) {
        pts.push_back({p.theta_vertices[i][0], p.theta_vertices[i][1]});
      } else {
        pts.push_back(detail::barycentric_to_plane(p.simplex_vertices[i]));
      }
    }
    outlines.push_back(std::move(pts));
  }

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 0.86602540378443864676;
  if (view == SvgView::ThetaPlane) {
    if (outlines.empty()) {
      xmin = ymin = -1.0;
      xmax = ymax = 1.0;
    } else {
      xmin = ymin = std::numeric_limits<double>::infinity();
      xmax = ymax = -std::numeric_limits<double>::infinity();
      for (const auto& o : outlines) {
        for (const auto& q : o) {
          xmin = std::min(xmin, q.x);
          xmax = std::max(xmax, q.x);
          ymin = std::min(ymin, q.y);
          ymax = std::max(ymax, q.y);
        }
      }
    }
  }
  const double mx = 0.05 * (xmax - xmin);
  const double my = 0.05 * (ymax - ymin);
  const double vx = xmin - mx;
  const double vy = -(ymax + my);  // SVG y grows downwards
  const double vw = (xmax - xmin) + 2.0 * mx;
  const double vh = (ymax - ymin) + 2.0 * my;
  const double line = style.stroke_width * vw / style.width_px;

  const auto f = [](double v) { return format_fixed(v, 6); };
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << style.width_px << "px\" height=\"" << style.height_px
      << "px\" viewBox=\"" << f(vx) << ' ' << f(vy) << ' ' << f(vw) << ' '
      << f(vh) << "\">\n";

  if (view == SvgView::Simplex2D) {
    out << "  <polygon points=\"0 0 1 0 0.5 " << f(-ymax)
        << "\" fill=\"none\" stroke=\"" << style.frame_stroke
        << "\" stroke-width=\"" << f(line) << "\"/>\n";
  } else {
    out << "  <line x1=\"" << f(vx) << "\" y1=\"0\" x2=\"" << f(vx + vw)
        << "\" y2=\"0\" stroke=\"" << style.frame_stroke
        << "\" stroke-width=\"" << f(line) << "\"/>\n";
    out << "  <line x1=\"0\" y1=\"" << f(vy) << "\" x2=\"0\" y2=\""
        << f(vy + vh) << "\" stroke=\"" << style.frame_stroke
        << "\" stroke-width=\"" << f(line) << "\"/>\n";
  }

  for (const auto& o : outlines) {
    out << "  <path d=\"";
    for (std::size_t i = 0; i < o.size(); ++i) {
      out << (i == 0 ? "M " : " L ") << f(o[i].x) << ' ' << f(-o[i].y);
    }
    out << " Z\" fill=\"" << style.fill << "\" fill-opacity=\""
        << f(style.fill_opacity) << "\" stroke=\"" << style.stroke
        << "\" stroke-width=\"" << f(line) << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace hilbert_cone
