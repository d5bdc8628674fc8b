// SPDX-License-Identifier: Apache-2.0
#pragma once

// Input documents (JSON or CSV) and JSON serialization of results.
//
// Accepted inputs:
//   vector       [1, 2, 3]            or CSV "1,2,3" (one row or one column)
//   matrix       [[1, 0], [0, 1]]     or CSV rows "1,0\n0,1"
//   kernel_grid  {"a_grid": [...], "x_grid": [...], "log_values": [[...]]}
// A JSON object may also wrap a vector or matrix as {"data": ...} and carry
// string "labels". CSV lines starting with '#' are skipped. Numbers must be
// finite decimals; parsing never consults the locale.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hilbert_cone/contraction.hpp"
#include "hilbert_cone/errors.hpp"
#include "hilbert_cone/metric_bounds.hpp"
#include "hilbert_cone/simplex_geometry.hpp"
#include "hilbert_cone/types.hpp"

namespace hilbert_cone {

enum class InputKind { Vector, Matrix, KernelGrid };

inline const char* to_string(InputKind k) {
  switch (k) {
    case InputKind::Vector: return "vector";
    case InputKind::Matrix: return "matrix";
    case InputKind::KernelGrid: return "kernel_grid";
  }
  return "unknown";
}

struct InputDocument {
  InputKind kind = InputKind::Vector;
  /// Vector: one row. Matrix: the rows. KernelGrid: log_values rows.
  std::vector<std::vector<double>> rows;
  std::vector<double> a_grid;
  std::vector<double> x_grid;
  std::map<std::string, std::string> labels;

  const std::vector<double>& vector() const { return rows.front(); }

  PositiveVector to_positive_vector() const {
    if (kind != InputKind::Vector) throw ValidationError("input is not a vector");
    return PositiveVector(vector());
  }

  NonnegMatrix to_matrix() const {
    if (kind != InputKind::Matrix) throw ValidationError("input is not a matrix");
    return NonnegMatrix(rows);
  }

  GridKernel to_kernel() const {
    if (kind != InputKind::KernelGrid) {
      throw ValidationError("input is not a kernel grid");
    }
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return GridKernel(a_grid, x_grid, std::move(flat));
  }
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                       std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double json_number(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) {
    throw ValidationError("input: " + where + " is not a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ValidationError("input: " + where + " is not a finite number");
  }
  return d;
}

inline std::vector<double> json_flat_array(const nlohmann::json& v,
                                           const std::string& where) {
  if (!v.is_array()) throw ValidationError("input: " + where + " is not an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(json_number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::vector<std::vector<double>> json_nested_array(
    const nlohmann::json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) {
    throw ValidationError("input: " + where + " must be a non-empty array of arrays");
  }
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(json_flat_array(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline void check_rectangular(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw ValidationError("input: empty array");
  }
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw ValidationError("input: ragged array, row " + std::to_string(i) +
                            " has " + std::to_string(rows[i].size()) +
                            " entries, expected " +
                            std::to_string(rows.front().size()));
    }
  }
}

inline void check_nonnegative(const InputDocument& doc) {
  for (std::size_t i = 0; i < doc.rows.size(); ++i) {
    for (std::size_t j = 0; j < doc.rows[i].size(); ++j) {
      if (doc.rows[i][j] < 0.0) {
        if (doc.kind == InputKind::Vector) {
          throw ValidationError("input: negative entry at index " +
                                std::to_string(j));
        }
        throw ValidationError("input: negative entry at index (" +
                              std::to_string(i) + ", " + std::to_string(j) +
                              ")");
      }
    }
  }
}

inline InputDocument from_json(const nlohmann::json& j, InputKind hint) {
  InputDocument doc;
  doc.kind = hint;
  const nlohmann::json* data = &j;
  if (j.is_object()) {
    if (j.contains("labels")) {
      for (const auto& [k, v] : j.at("labels").items()) {
        doc.labels[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    if (hint == InputKind::KernelGrid) {
      for (const char* key : {"a_grid", "x_grid", "log_values"}) {
        if (!j.contains(key)) {
          throw ValidationError(std::string("input: kernel grid lacks \"") +
                                key + "\"");
        }
      }
      doc.a_grid = json_flat_array(j.at("a_grid"), "a_grid");
      doc.x_grid = json_flat_array(j.at("x_grid"), "x_grid");
      doc.rows = json_nested_array(j.at("log_values"), "log_values");
      check_rectangular(doc.rows);
      return doc;
    }
    if (!j.contains("data")) throw ValidationError("input: object lacks \"data\"");
    data = &j.at("data");
  } else if (hint == InputKind::KernelGrid) {
    throw ValidationError("input: a kernel grid must be a JSON object");
  }

  if (!data->is_array() || data->empty()) {
    throw ValidationError("input: expected a non-empty array");
  }
  const bool nested = data->front().is_array();
  if (hint == InputKind::Vector) {
    if (nested) throw ValidationError("input: expected a flat array for a vector");
    doc.rows = {json_flat_array(*data, "entry")};
  } else {
    if (!nested) throw ValidationError("input: expected an array of rows for a matrix");
    doc.rows = json_nested_array(*data, "row");
  }
  check_rectangular(doc.rows);
  return doc;
}

inline InputDocument from_csv(std::string_view text, InputKind hint) {
  if (hint == InputKind::KernelGrid) {
    throw ValidationError("input: a kernel grid must be a JSON object");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    const std::string_view t = trim(line);
    if (!t.empty() && t.front() != '#') {
      std::vector<double> row;
      std::size_t start = 0;
      while (true) {
        const std::size_t comma = std::min(line.find(',', start), line.size());
        const std::string_view raw = line.substr(start, comma - start);
        const std::string_view field = trim(raw);
        const std::size_t col =
            start + (field.empty() ? 0 : raw.find(field.front())) + 1;
        double v = 0.0;
        const char* b = field.data();
        const char* e = field.data() + field.size();
        const auto res = std::from_chars(b, e, v);
        if (field.empty() || res.ec != std::errc() || res.ptr != e ||
            !std::isfinite(v)) {
          throw ParseError("input: '" + std::string(field) +
                               "' is not a finite decimal number",
                           line_no, col);
        }
        row.push_back(v);
        if (comma == line.size()) break;
        start = comma + 1;
      }
      rows.push_back(std::move(row));
    }
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  check_rectangular(rows);

  InputDocument doc;
  doc.kind = hint;
  if (hint == InputKind::Vector) {
    if (rows.size() == 1) {
      doc.rows = std::move(rows);
    } else if (rows.front().size() == 1) {
      std::vector<double> col;
      for (const auto& r : rows) col.push_back(r.front());
      doc.rows = {std::move(col)};
    } else {
      throw ValidationError("input: expected a single CSV row or column for a vector");
    }
  } else {
    doc.rows = std::move(rows);
  }
  return doc;
}

}  // namespace detail

inline InputDocument parse_input(std::string_view text, InputKind hint) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw ParseError("input: empty document", 1, 1);
  }
  InputDocument doc;
  if (text[first] == '[' || text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
      const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
      const auto [line, col] = detail::line_column(text, off);
      throw ParseError("input: malformed JSON", line, col);
    }
    doc = detail::from_json(j, hint);
  } else {
    doc = detail::from_csv(text, hint);
  }
  if (hint != InputKind::KernelGrid) detail::check_nonnegative(doc);
  return doc;
}

// ---- JSON output --------------------------------------------------------

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers, infinities as the string "inf".
inline Json json_value(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  if (std::isnan(v)) return Json(nullptr);
  return Json(v);
}

inline Json json_value(const ExtendedDistance& d) {
  return d.is_infinite() ? Json("inf") : Json(d.value());
}

inline Json json_value(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_value(x));
  return a;
}

inline Json to_json(const BoundReport& r) {
  Json j;
  j["name"] = r.name;
  j["lhs_name"] = r.lhs_name;
  j["rhs_name"] = r.rhs_name;
  j["lhs_value"] = json_value(r.lhs_value);
  j["rhs_value"] = json_value(r.rhs_value);
  j["slack"] = json_value(r.slack);
  j["holds"] = r.holds;
  j["applicable"] = r.applicable;
  if (!r.convention.empty()) j["convention"] = r.convention;
  return j;
}

inline Json to_json(const ContractionReport& r) {
  Json j;
  j["tau"] = r.tau;
  j["phi"] = r.phi;
  j["diameter"] = json_value(r.diameter);
  j["trials"] = r.trials;
  j["max_violation"] = json_value(r.max_violation);
  j["max_hilbert_violation"] = json_value(r.max_hilbert_violation);
  j["passed"] = r.passed();
  return j;
}

inline Json to_json(const BallPolytope& b) {
  Json j;
  j["center"] = json_value(b.center.weights());
  j["radius"] = b.radius;
  Json tv = Json::array();
  for (const auto& v : b.theta_vertices) tv.push_back(json_value(v.coords()));
  j["theta_vertices"] = std::move(tv);
  Json sv = Json::array();
  for (const auto& v : b.simplex_vertices) sv.push_back(json_value(v.weights()));
  j["simplex_vertices"] = std::move(sv);
  Json hs = Json::array();
  for (const auto& h : b.halfspaces) {
    hs.push_back(Json{{"i", h.i}, {"k", h.k}, {"sign", h.sign}});
  }
  j["halfspaces"] = std::move(hs);
  return j;
}

}  // namespace hilbert_cone
