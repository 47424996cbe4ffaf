#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "linefields/angles.hpp"
#include "linefields/error.hpp"
#include "linefields/mesh.hpp"

namespace linefields {

// Per-face interior angles, one triple per face matching the corner slots.
// Each angle lies in (0, pi) and every triple sums to pi within 1e-9.
struct CornerAngles {
  std::vector<std::array<double, 3>> alpha;

  double at(int face, int slot) const { return alpha[face][slot]; }
};

enum class Metric { Equilateral, Planar };

// Canonical face chart: the face is laid out counterclockwise with the
// stored halfedge v0->v1 along angle zero.  All frame angles used by the
// library are measured in this chart.
inline double halfedge_chart_angle(const CornerAngles& a, int face, int slot) {
  switch (slot) {
    case 0: return 0.0;
    case 1: return kPi - a.at(face, 1);
    default: return kPi + a.at(face, 0);
  }
}

// Chart angle of the ray from the corner vertex toward the next stored
// vertex; the ray toward the previous vertex sits one corner angle
// counterclockwise from it.
inline double corner_ray_next(const CornerAngles& a, int face, int slot) {
  return halfedge_chart_angle(a, face, slot);
}

inline double corner_ray_prev(const CornerAngles& a, int face, int slot) {
  return corner_ray_next(a, face, slot) + a.at(face, slot);
}

// Corner bisector: the outward direction from the vertex into the face,
// used as the reference frame for normal indices.
inline double corner_bisector(const CornerAngles& a, int face, int slot) {
  return corner_ray_next(a, face, slot) + 0.5 * a.at(face, slot);
}

inline CornerAngles corner_angles(const Mesh& m, Metric metric) {
  CornerAngles a;
  a.alpha.assign(m.face_count(), {kPi / 3.0, kPi / 3.0, kPi / 3.0});
  if (metric == Metric::Equilateral) return a;

  if (!m.has_positions())
    throw Error(ErrorCode::NoPositions,
                "planar metric needs vertex positions");
  for (int v = 0; v < m.vertex_count; ++v) {
    if (std::abs(m.positions[v][2]) > 1e-9)
      throw Error(ErrorCode::NoPositions,
                  "vertex " + std::to_string(v) + " leaves the z=0 plane");
  }
  for (int f = 0; f < m.face_count(); ++f) {
    const auto& t = m.faces[f];
    for (int i = 0; i < 3; ++i) {
      const auto& p = m.positions[t[i]];
      const auto& q = m.positions[t[(i + 1) % 3]];
      const auto& r = m.positions[t[(i + 2) % 3]];
      double ux = q[0] - p[0], uy = q[1] - p[1];
      double vx = r[0] - p[0], vy = r[1] - p[1];
      double cross = ux * vy - uy * vx;
      double dot = ux * vx + uy * vy;
      double ang = std::atan2(std::abs(cross), dot);
      if (!(ang > 1e-12) || !(ang < kPi - 1e-12))
        throw Error(ErrorCode::DegenerateTriangle,
                    "face " + std::to_string(f) + " is degenerate");
      a.alpha[f][i] = ang;
    }
  }
  for (int f = 0; f < m.face_count(); ++f) {
    double s = a.alpha[f][0] + a.alpha[f][1] + a.alpha[f][2];
    if (std::abs(s - kPi) > 1e-9)
      throw Error(ErrorCode::DegenerateTriangle,
                  "face " + std::to_string(f) + " angles do not sum to pi");
  }
  return a;
}

// Discrete metric connection.  For each interior edge it stores the rotation
// rho and the orientation-agreement sign o of the transport from the edge's
// first incident face to its second: carrying a direction with frame angle
// theta across the edge reads o*theta + rho in the neighbor's frame
// (doubled line angles transport as o*phi + 2*rho).  Vertex data: angle sum,
// giving the defect 2*pi - sum at interior vertices and the boundary turning
// pi - sum at boundary ones.
struct Connection {
  CornerAngles angles;
  std::vector<double> rho;     // per edge, first face -> second face
  std::vector<int> orient;     // +1 consistent, -1 reversing, 0 on boundary
  std::vector<double> vertex_angle_sum;

  double omega(int v) const { return kTwoPi - vertex_angle_sum[v]; }
  double kappa(int v) const { return kPi - vertex_angle_sum[v]; }

  // Rotation of the transport leaving `from_face across edge e.
  double rho_from(const Mesh& m, int e, int from_face) const {
    if (m.edge_faces[e][0] == from_face) return rho[e];
    if (orient[e] < 0) return rho[e];
    return principal(-rho[e]);
  }

  double transport(const Mesh& m, int e, int from_face, double theta) const {
    return orient[e] * theta + rho_from(m, e, from_face);
  }

  double transport_doubled(const Mesh& m, int e, int from_face,
                           double phi) const {
    return orient[e] * phi + 2.0 * rho_from(m, e, from_face);
  }
};

inline Connection build_connection(const Mesh& m, const CornerAngles& a) {
  if (static_cast<int>(a.alpha.size()) != m.face_count())
    throw Error(ErrorCode::BadParams, "corner angle table size mismatch");
  for (int f = 0; f < m.face_count(); ++f) {
    double s = 0;
    for (int i = 0; i < 3; ++i) {
      if (!(a.alpha[f][i] > 0.0) || !(a.alpha[f][i] < kPi))
        throw Error(ErrorCode::DegenerateTriangle,
                    "face " + std::to_string(f) + " corner angle out of range");
      s += a.alpha[f][i];
    }
    if (std::abs(s - kPi) > 1e-9)
      throw Error(ErrorCode::DegenerateTriangle,
                  "face " + std::to_string(f) + " angles do not sum to pi");
  }

  Connection c;
  c.angles = a;
  c.rho.assign(m.edge_count(), 0.0);
  c.orient.assign(m.edge_count(), 0);

  auto slot_of_edge = [&](int f, int e) {
    for (int i = 0; i < 3; ++i)
      if (m.face_edges[f][i] == e) return i;
    return -1;
  };

  for (int e = 0; e < m.edge_count(); ++e) {
    int f = m.edge_faces[e][0], g = m.edge_faces[e][1];
    if (g < 0) continue;
    auto hf = m.halfedge_in_face(f, e);
    auto hg = m.halfedge_in_face(g, e);
    int sf = slot_of_edge(f, e), sg = slot_of_edge(g, e);
    double af = halfedge_chart_angle(a, f, sf);
    double bg = halfedge_chart_angle(a, g, sg);
    if (hf[0] == hg[1]) {
      // Opposite stored directions: frames agree; unfold g by a rotation.
      c.orient[e] = +1;
      c.rho[e] = principal(bg - af - kPi);
    } else {
      // Same stored direction: frames disagree; unfold g by a reflection,
      // so the transport is theta -> -theta + rho.
      c.orient[e] = -1;
      c.rho[e] = principal(af + bg);
    }
  }

  c.vertex_angle_sum.assign(m.vertex_count, 0.0);
  for (int f = 0; f < m.face_count(); ++f)
    for (int i = 0; i < 3; ++i)
      c.vertex_angle_sum[m.faces[f][i]] += a.alpha[f][i];
  return c;
}

// | sum of interior angle defects + sum of boundary turnings - 2*pi*chi |.
inline double gauss_bonnet_residual(const Mesh& m, const Connection& c) {
  double total = 0.0;
  for (int v = 0; v < m.vertex_count; ++v)
    total += m.vertex_on_boundary[v] ? c.kappa(v) : c.omega(v);
  return std::abs(total - kTwoPi * m.euler_characteristic());
}

// Transport rotation for one star step in walk coordinates: the rotation is
// read in the destination face and negated when that face is flipped.
inline double star_step_rho(const Mesh& m, const Connection& c,
                            const StarEntry& from, const StarEntry& to) {
  double r = c.rho_from(m, from.exit_edge, from.face);
  return to.flip ? -r : r;
}

// Composed transport around an interior vertex, in walk coordinates.  Exact
// value is minus the cone angle, so principal(omega - holonomy) vanishes.
inline double star_holonomy(const Mesh& m, const Connection& c,
                            const std::vector<StarEntry>& star) {
  double h = 0.0;
  for (size_t j = 0; j < star.size(); ++j) {
    const StarEntry& from = star[j];
    const StarEntry& to = star[(j + 1) % star.size()];
    h += star_step_rho(m, c, from, to);
  }
  return h;
}

}  // namespace linefields
