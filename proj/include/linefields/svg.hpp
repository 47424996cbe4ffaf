#pragma once

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "linefields/catalog.hpp"
#include "linefields/error.hpp"
#include "linefields/fields.hpp"
#include "linefields/mesh.hpp"

namespace linefields {

namespace detail {

inline void svg_append(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

inline std::string hopf_label(long long p) {
  std::string sign = p < 0 ? "-" : "+";
  long long a = std::abs(p);
  if (a % 2 == 0) return sign + std::to_string(a / 2);
  return sign + std::to_string(a) + "/2";
}

}  // namespace detail

// Draws the mesh edges, one field segment per face, and one labelled glyph
// per defect.  Y is flipped so the picture matches the usual orientation.
inline std::string render_svg(const Mesh& m, const GeneratedField& gf,
                              const DefectReport* defects = nullptr) {
  if (!m.has_positions())
    throw Error(ErrorCode::NoPositions, "rendering needs vertex positions");
  const std::vector<double>& angles =
      gf.is_line ? gf.line.phi : gf.vector.theta;
  if (static_cast<int>(angles.size()) != m.face_count())
    throw Error(ErrorCode::BadParams, "field size does not match the mesh");

  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (int v = 0; v < m.vertex_count; ++v) {
    min_x = std::min(min_x, m.positions[v][0]);
    max_x = std::max(max_x, m.positions[v][0]);
    min_y = std::min(min_y, -m.positions[v][1]);
    max_y = std::max(max_y, -m.positions[v][1]);
  }
  double mean_edge = 0.0;
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto& p = m.positions[m.edge_vertices[e][0]];
    const auto& q = m.positions[m.edge_vertices[e][1]];
    mean_edge += std::hypot(q[0] - p[0], q[1] - p[1]);
  }
  mean_edge /= std::max(1, m.edge_count());
  double margin = std::max(mean_edge, 0.05 * (max_x - min_x));

  std::string out;
  detail::svg_append(
      out,
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.5f %.5f %.5f "
      "%.5f\">\n",
      min_x - margin, min_y - margin, (max_x - min_x) + 2 * margin,
      (max_y - min_y) + 2 * margin);

  detail::svg_append(out,
                     "<g stroke=\"#c8c8c8\" stroke-width=\"%.5f\" "
                     "stroke-linecap=\"round\">\n",
                     0.03 * mean_edge);
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto& p = m.positions[m.edge_vertices[e][0]];
    const auto& q = m.positions[m.edge_vertices[e][1]];
    detail::svg_append(out,
                       "<line x1=\"%.5f\" y1=\"%.5f\" x2=\"%.5f\" y2=\"%.5f\"/>\n",
                       p[0], -p[1], q[0], -q[1]);
  }
  out += "</g>\n";

  detail::svg_append(out,
                     "<g stroke=\"#1f4e8c\" stroke-width=\"%.5f\" "
                     "stroke-linecap=\"round\">\n",
                     0.07 * mean_edge);
  for (int f = 0; f < m.face_count(); ++f) {
    // Chart axes of the face realized in 3D, then projected onto the page:
    // e0 along the v0 -> v1 halfedge, e1 a quarter turn within the face.
    const auto& p0 = m.positions[m.faces[f][0]];
    const auto& p1 = m.positions[m.faces[f][1]];
    const auto& p2 = m.positions[m.faces[f][2]];
    double u[3] = {p1[0] - p0[0], p1[1] - p0[1], p1[2] - p0[2]};
    double w[3] = {p2[0] - p0[0], p2[1] - p0[1], p2[2] - p0[2]};
    double n[3] = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                   u[0] * w[1] - u[1] * w[0]};
    double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (un == 0.0 || nn == 0.0)
      throw Error(ErrorCode::DegenerateTriangle,
                  "face " + std::to_string(f) + " has no plane orientation");
    double e0[3] = {u[0] / un, u[1] / un, u[2] / un};
    double e1[3] = {(n[1] * e0[2] - n[2] * e0[1]) / nn,
                    (n[2] * e0[0] - n[0] * e0[2]) / nn,
                    (n[0] * e0[1] - n[1] * e0[0]) / nn};
    double bx = (p0[0] + p1[0] + p2[0]) / 3.0;
    double by = (p0[1] + p1[1] + p2[1]) / 3.0;
    double psi = gf.is_line ? angles[f] / 2.0 : angles[f];
    double len = 0.38 * mean_edge;
    double dx = len * (std::cos(psi) * e0[0] + std::sin(psi) * e1[0]);
    double dy = len * (std::cos(psi) * e0[1] + std::sin(psi) * e1[1]);
    if (gf.is_line)
      detail::svg_append(
          out, "<line x1=\"%.5f\" y1=\"%.5f\" x2=\"%.5f\" y2=\"%.5f\"/>\n",
          bx - dx, -(by - dy), bx + dx, -(by + dy));
    else
      detail::svg_append(
          out,
          "<line x1=\"%.5f\" y1=\"%.5f\" x2=\"%.5f\" y2=\"%.5f\"/>"
          "<circle cx=\"%.5f\" cy=\"%.5f\" r=\"%.5f\" fill=\"#1f4e8c\" "
          "stroke=\"none\"/>\n",
          bx, -by, bx + dx, -(by + dy), bx + dx, -(by + dy),
          0.08 * mean_edge);
  }
  out += "</g>\n";

  if (defects != nullptr) {
    for (const DefectRecord& r : defects->records) {
      if (r.p == 0) continue;
      const auto& p = m.positions[r.vertex];
      detail::svg_append(out,
                         "<circle cx=\"%.5f\" cy=\"%.5f\" r=\"%.5f\" "
                         "fill=\"none\" stroke=\"#c0392b\" "
                         "stroke-width=\"%.5f\"/>\n",
                         p[0], -p[1], 0.3 * mean_edge, 0.05 * mean_edge);
      detail::svg_append(out,
                         "<text x=\"%.5f\" y=\"%.5f\" font-size=\"%.5f\" "
                         "fill=\"#c0392b\" font-family=\"monospace\">%s</text>\n",
                         p[0] + 0.35 * mean_edge, -p[1] - 0.35 * mean_edge,
                         0.45 * mean_edge, detail::hopf_label(r.p).c_str());
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace linefields
