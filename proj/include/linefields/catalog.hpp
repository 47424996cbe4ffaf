#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "linefields/angles.hpp"
#include "linefields/connection.hpp"
#include "linefields/cover.hpp"
#include "linefields/error.hpp"
#include "linefields/fields.hpp"
#include "linefields/mesh.hpp"

namespace linefields {

struct CatalogKey {
  std::string name;
  std::map<std::string, double> params;
};

struct GeneratedField {
  bool is_line = true;
  LineField line;
  VectorField vector;
};

namespace detail {

inline void check_params(const CatalogKey& key,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [name, value] : key.params) {
    bool known = false;
    for (const char* a : allowed)
      if (name == a) known = true;
    if (!known)
      throw Error(ErrorCode::BadParams,
                  "unknown parameter '" + name + "' for '" + key.name + "'");
  }
}

inline double param_or(const CatalogKey& key, const std::string& name,
                       double fallback) {
  auto it = key.params.find(name);
  return it == key.params.end() ? fallback : it->second;
}

inline long long int_param(const CatalogKey& key, const std::string& name,
                           long long fallback) {
  double raw = param_or(key, name, static_cast<double>(fallback));
  long long rounded = std::llround(raw);
  if (std::abs(raw - static_cast<double>(rounded)) > 1e-9)
    throw Error(ErrorCode::BadParams,
                "parameter '" + name + "' of '" + key.name +
                    "' must be an integer");
  return rounded;
}

inline std::vector<std::vector<int>> vertex_neighbors(const Mesh& m) {
  std::vector<std::vector<int>> nbr(m.vertex_count);
  for (int e = 0; e < m.edge_count(); ++e) {
    nbr[m.edge_vertices[e][0]].push_back(m.edge_vertices[e][1]);
    nbr[m.edge_vertices[e][1]].push_back(m.edge_vertices[e][0]);
  }
  return nbr;
}

inline std::vector<int> bfs_depths(const std::vector<std::vector<int>>& nbr,
                                   int src) {
  std::vector<int> depth(nbr.size(), -1);
  std::queue<int> queue;
  depth[src] = 0;
  queue.push(src);
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int w : nbr[v])
      if (depth[w] < 0) {
        depth[w] = depth[v] + 1;
        queue.push(w);
      }
  }
  return depth;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Meshes
// ---------------------------------------------------------------------------

struct SymmetricMesh {
  Mesh mesh;
  std::vector<int> antipode;
};

inline SymmetricMesh icosahedron() {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(1.0 + phi * phi);
  const double a = 1.0 * s, b = phi * s;
  std::vector<std::array<double, 3>> pos = {
      {a, b, 0.0},  {-a, b, 0.0}, {a, -b, 0.0}, {-a, -b, 0.0},
      {0.0, a, b},  {0.0, -a, b}, {0.0, a, -b}, {0.0, -a, -b},
      {b, 0.0, a},  {-b, 0.0, a}, {b, 0.0, -a}, {-b, 0.0, -a},
  };
  std::vector<std::array<int, 3>> faces = {
      {1, 9, 4},  {1, 4, 0},  {1, 0, 6},  {1, 6, 11}, {1, 11, 9},
      {0, 4, 8},  {4, 9, 5},  {9, 11, 3}, {11, 6, 7}, {6, 0, 10},
      {2, 8, 5},  {2, 5, 3},  {2, 3, 7},  {2, 7, 10}, {2, 10, 8},
      {5, 8, 4},  {3, 5, 9},  {7, 3, 11}, {10, 7, 6}, {8, 10, 0},
  };
  SymmetricMesh out;
  out.mesh = build_mesh(12, faces, pos);
  out.antipode = {3, 2, 1, 0, 7, 6, 5, 4, 11, 10, 9, 8};
  return out;
}

inline SymmetricMesh subdivide_once(const SymmetricMesh& in) {
  const Mesh& m = in.mesh;
  int base_v = m.vertex_count;
  std::vector<std::array<double, 3>> pos(base_v + m.edge_count());
  for (int v = 0; v < base_v; ++v) pos[v] = m.positions[v];
  for (int e = 0; e < m.edge_count(); ++e) {
    const auto& p = m.positions[m.edge_vertices[e][0]];
    const auto& q = m.positions[m.edge_vertices[e][1]];
    std::array<double, 3> mid = {p[0] + q[0], p[1] + q[1], p[2] + q[2]};
    double norm = std::sqrt(mid[0] * mid[0] + mid[1] * mid[1] + mid[2] * mid[2]);
    pos[base_v + e] = {mid[0] / norm, mid[1] / norm, mid[2] / norm};
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(4 * m.face_count());
  for (int f = 0; f < m.face_count(); ++f) {
    int v0 = m.faces[f][0], v1 = m.faces[f][1], v2 = m.faces[f][2];
    int m01 = base_v + m.face_edges[f][0];
    int m12 = base_v + m.face_edges[f][1];
    int m20 = base_v + m.face_edges[f][2];
    faces.push_back({v0, m01, m20});
    faces.push_back({v1, m12, m01});
    faces.push_back({v2, m20, m12});
    faces.push_back({m01, m12, m20});
  }

  SymmetricMesh out;
  out.antipode.assign(base_v + m.edge_count(), -1);
  for (int v = 0; v < base_v; ++v) out.antipode[v] = in.antipode[v];
  for (int e = 0; e < m.edge_count(); ++e) {
    int u = in.antipode[m.edge_vertices[e][0]];
    int w = in.antipode[m.edge_vertices[e][1]];
    out.antipode[base_v + e] = base_v + m.edge_between(u, w);
  }
  out.mesh = build_mesh(base_v + m.edge_count(), faces, pos);
  return out;
}

inline SymmetricMesh icosphere(int level) {
  if (level < 0 || level > 4)
    throw Error(ErrorCode::BadParams, "icosphere level must be in [0, 4]");
  SymmetricMesh sm = icosahedron();
  for (int i = 0; i < level; ++i) sm = subdivide_once(sm);
  return sm;
}

inline Mesh torus_grid(int a, int b) {
  if (a < 3 || b < 3)
    throw Error(ErrorCode::BadParams, "torus_grid needs a >= 3 and b >= 3");
  auto idx = [&](int i, int j) { return (i % a) * b + (j % b); };
  std::vector<std::array<double, 3>> pos(a * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      double u = kTwoPi * i / a, w = kTwoPi * j / b;
      pos[idx(i, j)] = {(2.0 + std::cos(w)) * std::cos(u),
                        (2.0 + std::cos(w)) * std::sin(u), std::sin(w)};
    }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(2 * a * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      int p = idx(i, j), q = idx(i + 1, j), r = idx(i + 1, j + 1),
          s = idx(i, j + 1);
      faces.push_back({p, q, r});
      faces.push_back({p, r, s});
    }
  return build_mesh(a * b, faces, pos);
}

inline Mesh klein_grid(int a, int b) {
  if (a < 3 || b < 3)
    throw Error(ErrorCode::BadParams, "klein_grid needs a >= 3 and b >= 3");
  auto idx = [&](int i, int j) {
    j = ((j % b) + b) % b;
    if (i == a) return (b - j) % b;
    return i * b + j;
  };
  std::vector<std::array<int, 3>> faces;
  faces.reserve(2 * a * b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) {
      int p = idx(i, j), q = idx(i + 1, j), r = idx(i + 1, j + 1),
          s = idx(i, j + 1);
      faces.push_back({p, q, r});
      faces.push_back({p, r, s});
    }
  return build_mesh(a * b, faces);
}

inline Mesh rp2_minimal() {
  SymmetricMesh sm = icosahedron();
  CornerAngles angles = corner_angles(sm.mesh, Metric::Equilateral);
  return quotient_by_involution(sm.mesh, angles, sm.antipode).mesh;
}

inline Mesh disk_fan(int rings, int sectors) {
  if (rings < 1 || sectors < 3)
    throw Error(ErrorCode::BadParams,
                "disk_fan needs rings >= 1 and sectors >= 3");
  auto ring_vertex = [&](int r, int k) {
    return 1 + (r - 1) * sectors + ((k % sectors) + sectors) % sectors;
  };
  std::vector<std::array<double, 3>> pos(1 + rings * sectors);
  pos[0] = {0.0, 0.0, 0.0};
  for (int r = 1; r <= rings; ++r)
    for (int k = 0; k < sectors; ++k) {
      double rad = static_cast<double>(r) / rings;
      double ang = kTwoPi * k / sectors;
      pos[ring_vertex(r, k)] = {rad * std::cos(ang), rad * std::sin(ang), 0.0};
    }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(sectors * (2 * rings - 1));
  for (int k = 0; k < sectors; ++k)
    faces.push_back({0, ring_vertex(1, k), ring_vertex(1, k + 1)});
  for (int r = 1; r < rings; ++r)
    for (int k = 0; k < sectors; ++k) {
      int p = ring_vertex(r, k), q = ring_vertex(r + 1, k),
          s = ring_vertex(r + 1, k + 1), t = ring_vertex(r, k + 1);
      faces.push_back({p, q, s});
      faces.push_back({p, s, t});
    }
  return build_mesh(1 + rings * sectors, faces, pos);
}

inline Mesh annulus_grid(int a, int b) {
  if (a < 2 || b < 3)
    throw Error(ErrorCode::BadParams,
                "annulus_grid needs a >= 2 and b >= 3");
  auto idx = [&](int r, int k) { return r * b + ((k % b) + b) % b; };
  std::vector<std::array<double, 3>> pos(a * b);
  for (int r = 0; r < a; ++r)
    for (int k = 0; k < b; ++k) {
      double rad = 1.0 + static_cast<double>(r) / (a - 1);
      double ang = kTwoPi * k / b;
      pos[idx(r, k)] = {rad * std::cos(ang), rad * std::sin(ang), 0.0};
    }
  std::vector<std::array<int, 3>> faces;
  faces.reserve(2 * b * (a - 1));
  for (int r = 0; r + 1 < a; ++r)
    for (int k = 0; k < b; ++k) {
      int p = idx(r, k), q = idx(r + 1, k), s = idx(r + 1, k + 1),
          t = idx(r, k + 1);
      faces.push_back({p, q, s});
      faces.push_back({p, s, t});
    }
  return build_mesh(a * b, faces, pos);
}

inline Mesh generate_mesh(const CatalogKey& key) {
  using detail::int_param;
  if (key.name == "icosphere") {
    detail::check_params(key, {"n"});
    return icosphere(static_cast<int>(int_param(key, "n", 0))).mesh;
  }
  if (key.name == "torus_grid") {
    detail::check_params(key, {"a", "b"});
    return torus_grid(static_cast<int>(int_param(key, "a", 4)),
                      static_cast<int>(int_param(key, "b", 4)));
  }
  if (key.name == "klein_grid") {
    detail::check_params(key, {"a", "b"});
    return klein_grid(static_cast<int>(int_param(key, "a", 4)),
                      static_cast<int>(int_param(key, "b", 4)));
  }
  if (key.name == "rp2_minimal") {
    detail::check_params(key, {});
    return rp2_minimal();
  }
  if (key.name == "disk_fan") {
    detail::check_params(key, {"rings", "sectors"});
    return disk_fan(static_cast<int>(int_param(key, "rings", 3)),
                    static_cast<int>(int_param(key, "sectors", 12)));
  }
  if (key.name == "annulus_grid") {
    detail::check_params(key, {"a", "b"});
    return annulus_grid(static_cast<int>(int_param(key, "a", 3)),
                        static_cast<int>(int_param(key, "b", 12)));
  }
  throw Error(ErrorCode::BadParams, "unknown mesh '" + key.name + "'");
}

// ---------------------------------------------------------------------------
// Parallel propagation with holonomy closure
// ---------------------------------------------------------------------------

struct ParallelResult {
  bool ok = false;
  std::vector<double> values;
  std::string note;
};

// Propagates angles across the dual graph treating every crossing as
// value -> o * value + mult * rho.  A spanning tree fixes each face as an
// affine function o_f * x + t_f of the root value x; the closure constraint
// of every non-tree edge either pins x (coefficient +-2) or must vanish.
inline ParallelResult propagate_parallel(const Mesh& m, const Connection& c,
                                         double mult, double tol = 1e-6) {
  ParallelResult out;
  int F = m.face_count();
  if (F == 0) {
    out.note = "empty mesh";
    return out;
  }
  std::vector<int> sign(F, 0);
  std::vector<double> offset(F, 0.0);
  std::vector<int> tree_edge;
  std::vector<std::array<int, 2>> cross_edges;
  sign[0] = 1;
  std::queue<int> queue;
  queue.push(0);
  std::vector<char> seen_edge(m.edge_count(), 0);
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop();
    for (int i = 0; i < 3; ++i) {
      int e = m.face_edges[f][i];
      if (seen_edge[e] || m.edge_is_boundary(e)) continue;
      int g = m.other_face(e, f);
      if (sign[g] != 0) continue;
      seen_edge[e] = 1;
      sign[g] = c.orient[e] * sign[f];
      offset[g] = c.orient[e] * offset[f] + mult * c.rho_from(m, e, f);
      queue.push(g);
    }
  }
  for (int e = 0; e < m.edge_count(); ++e)
    if (!seen_edge[e] && !m.edge_is_boundary(e)) cross_edges.push_back({e, 0});

  std::vector<std::array<double, 2>> constraints;  // coeff, rhs
  for (const auto& ce : cross_edges) {
    int e = ce[0];
    int f = m.edge_faces[e][0], g = m.edge_faces[e][1];
    double coeff = c.orient[e] * sign[f] - sign[g];
    double rhs =
        principal(offset[g] - c.orient[e] * offset[f] - mult * c.rho_from(m, e, f));
    constraints.push_back({coeff, rhs});
  }

  std::vector<double> candidates;
  for (const auto& con : constraints)
    if (con[0] != 0.0) {
      candidates.push_back(wrap_two_pi(con[1] / con[0]));
      candidates.push_back(wrap_two_pi(con[1] / con[0] + kPi));
      break;
    }
  if (candidates.empty()) candidates.push_back(0.0);

  for (double x : candidates) {
    bool feasible = true;
    for (const auto& con : constraints)
      if (std::abs(principal(con[0] * x - con[1])) > tol) feasible = false;
    if (!feasible) continue;
    out.ok = true;
    out.values.resize(F);
    for (int f = 0; f < F; ++f)
      out.values[f] = wrap_two_pi(sign[f] * x + offset[f]);
    return out;
  }
  out.note = "holonomy closure has no solution";
  return out;
}

// ---------------------------------------------------------------------------
// Fields
// ---------------------------------------------------------------------------

inline std::vector<int> farthest_point_sample(const Mesh& m, int count) {
  auto nbr = detail::vertex_neighbors(m);
  std::vector<std::vector<int>> depth(m.vertex_count);
  for (int v = 0; v < m.vertex_count; ++v)
    depth[v] = detail::bfs_depths(nbr, v);

  int first = 0, best_ecc = -1;
  for (int v = 0; v < m.vertex_count; ++v) {
    int ecc = *std::max_element(depth[v].begin(), depth[v].end());
    if (ecc > best_ecc) {
      best_ecc = ecc;
      first = v;
    }
  }
  std::vector<int> chosen = {first};
  std::vector<int> dist = depth[first];
  while (static_cast<int>(chosen.size()) < count) {
    int pick = -1, best = -1;
    for (int v = 0; v < m.vertex_count; ++v)
      if (dist[v] > best) {
        best = dist[v];
        pick = v;
      }
    chosen.push_back(pick);
    for (int v = 0; v < m.vertex_count; ++v)
      dist[v] = std::min(dist[v], depth[pick][v]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

inline int antipodal_vertex(const Mesh& m, int v) {
  if (!m.has_positions())
    throw Error(ErrorCode::NoPositions,
                "antipode search needs vertex positions");
  const auto& p = m.positions[v];
  for (int u = 0; u < m.vertex_count; ++u) {
    const auto& q = m.positions[u];
    if (std::abs(q[0] + p[0]) < 1e-9 && std::abs(q[1] + p[1]) < 1e-9 &&
        std::abs(q[2] + p[2]) < 1e-9)
      return u;
  }
  throw Error(ErrorCode::BadParams,
              "no antipodal partner for vertex " + std::to_string(v));
}

namespace detail {

struct PlaneChart {
  double anchor;  // plane angle of the v0 -> v1 edge
  double tau;     // +1 when the face is counterclockwise in the plane
};

inline PlaneChart plane_chart(const Mesh& m, int f) {
  if (!m.has_positions())
    throw Error(ErrorCode::NoPositions, "field needs vertex positions");
  const auto& p = m.positions[m.faces[f][0]];
  const auto& q = m.positions[m.faces[f][1]];
  const auto& r = m.positions[m.faces[f][2]];
  double ux = q[0] - p[0], uy = q[1] - p[1];
  double vx = r[0] - p[0], vy = r[1] - p[1];
  double cross = ux * vy - uy * vx;
  if (cross == 0.0)
    throw Error(ErrorCode::DegenerateTriangle,
                "face " + std::to_string(f) + " has no plane orientation");
  return {std::atan2(uy, ux), cross > 0.0 ? 1.0 : -1.0};
}

inline std::array<double, 2> face_barycenter(const Mesh& m, int f) {
  double x = 0.0, y = 0.0;
  for (int i = 0; i < 3; ++i) {
    x += m.positions[m.faces[f][i]][0];
    y += m.positions[m.faces[f][i]][1];
  }
  return {x / 3.0, y / 3.0};
}

inline int boundary_slot(const Mesh& m, int f) {
  for (int i = 0; i < 3; ++i)
    if (m.edge_is_boundary(m.face_edges[f][i])) return i;
  return -1;
}

}  // namespace detail

inline GeneratedField radial_disk_field(const Mesh& m, const Connection& c,
                                        bool as_vector) {
  if (!m.has_boundary())
    throw Error(ErrorCode::BadTopology, "radial_disk needs a boundary");
  GeneratedField out;
  out.is_line = !as_vector;
  std::vector<double> theta(m.face_count());
  for (int f = 0; f < m.face_count(); ++f) {
    int bslot = detail::boundary_slot(m, f);
    if (bslot >= 0) {
      double zeta = halfedge_chart_angle(c.angles, f, bslot);
      theta[f] = zeta - kPi / 2.0;
    } else {
      auto chart = detail::plane_chart(m, f);
      auto bary = detail::face_barycenter(m, f);
      double psi = std::atan2(bary[1], bary[0]);
      theta[f] = chart.tau * (psi - chart.anchor);
    }
  }
  if (as_vector) {
    out.vector.theta.resize(m.face_count());
    for (int f = 0; f < m.face_count(); ++f)
      out.vector.theta[f] = wrap_two_pi(theta[f]);
  } else {
    out.line.phi.resize(m.face_count());
    for (int f = 0; f < m.face_count(); ++f)
      out.line.phi[f] = wrap_two_pi(2.0 * theta[f]);
  }
  return out;
}

inline LineField defect_patch_field(const Mesh& m, double k, bool circular) {
  bool valid = false;
  for (double allowed : {1.0, 0.5, -0.5, -1.0})
    if (k == allowed) valid = true;
  if (!valid)
    throw Error(ErrorCode::BadParams,
                "defect_patch needs k in {1, 1/2, -1/2, -1}");
  LineField lf;
  lf.phi.resize(m.face_count());
  for (int f = 0; f < m.face_count(); ++f) {
    auto chart = detail::plane_chart(m, f);
    auto bary = detail::face_barycenter(m, f);
    double psi = std::atan2(bary[1], bary[0]);
    double doubled = 2.0 * k * psi + (circular ? kPi : 0.0);
    lf.phi[f] = wrap_two_pi(chart.tau * (doubled - 2.0 * chart.anchor));
  }
  return lf;
}

// Absorbs the global rotation separating a line field from its pullback
// under an orientation-reversing simplicial involution, making the field
// exactly invariant.  Returns the applied shift of the doubled angle.
inline double symmetrize_under_involution(const Mesh& m, const CornerAngles& a,
                                          const std::vector<int>& iota,
                                          LineField& lf) {
  double shift = 0.0;
  bool have_shift = false;
  for (int f = 0; f < m.face_count(); ++f) {
    std::array<int, 3> image = {iota[m.faces[f][0]], iota[m.faces[f][1]],
                                iota[m.faces[f][2]]};
    std::array<int, 3> key = image;
    std::sort(key.begin(), key.end());
    int g = -1;
    for (int h = 0; h < m.face_count(); ++h) {
      std::array<int, 3> cand = m.faces[h];
      std::sort(cand.begin(), cand.end());
      if (cand == key) g = h;
    }
    if (g < 0)
      throw Error(ErrorCode::BadParams,
                  "involution is not simplicial at face " + std::to_string(f));
    std::array<int, 3> perm;
    for (int i = 0; i < 3; ++i) perm[i] = m.face_slot(g, image[i]);
    bool cyclic = perm[1] == (perm[0] + 1) % 3;
    if (cyclic)
      throw Error(ErrorCode::BadParams,
                  "symmetrization needs an orientation-reversing involution");
    double delta = halfedge_chart_angle(a, g, perm[1]) + kPi;
    double resid = principal(lf.phi[g] + lf.phi[f] - 2.0 * delta);
    if (!have_shift) {
      shift = resid;
      have_shift = true;
    } else if (std::abs(principal(resid - shift)) > 1e-6) {
      throw Error(ErrorCode::Rounding,
                  "field is not symmetric under the involution");
    }
  }
  for (double& phi : lf.phi) phi = wrap_two_pi(phi - shift / 2.0);
  return shift;
}

inline LineField rp2_radial_field(const Mesh& m) {
  SymmetricMesh sm = icosahedron();
  CornerAngles angles = corner_angles(sm.mesh, Metric::Equilateral);
  Connection conn = build_connection(sm.mesh, angles);
  LineField lf = prescribe_defects(
      sm.mesh, conn, {{0, 2}, {sm.antipode[0], 2}});

  // Pull the field back through the antipodal map and absorb the residual
  // global rotation so the quotient is well defined.
  symmetrize_under_involution(sm.mesh, angles, sm.antipode, lf);

  QuotientResult q =
      quotient_by_involution(sm.mesh, angles, sm.antipode, &lf);
  if (q.mesh.faces != m.faces || q.mesh.vertex_count != m.vertex_count)
    throw Error(ErrorCode::BadParams,
                "rp2_radial is only defined on the rp2_minimal mesh");
  return q.field;
}

inline LineField random_line_field(const Mesh& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LineField lf;
  lf.phi.resize(m.face_count());
  for (double& phi : lf.phi)
    phi = kTwoPi * ((rng() >> 11) * 0x1.0p-53);
  return lf;
}

inline VectorField random_vector_field(const Mesh& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VectorField vf;
  vf.theta.resize(m.face_count());
  for (double& theta : vf.theta)
    theta = kTwoPi * ((rng() >> 11) * 0x1.0p-53);
  return vf;
}

inline GeneratedField generate_field(const CatalogKey& key, const Mesh& m,
                                     const Connection& c) {
  using detail::int_param;
  GeneratedField out;
  if (key.name == "baseball") {
    detail::check_params(key, {});
    std::vector<int> sites = farthest_point_sample(m, 4);
    std::map<int, int> targets;
    for (int v : sites) targets[v] = 1;
    if (targets.size() != 4)
      throw Error(ErrorCode::BadParams, "baseball sites collided");
    out.line = prescribe_defects(m, c, targets);
    return out;
  }
  if (key.name == "two_pole") {
    detail::check_params(key, {});
    int south = antipodal_vertex(m, 0);
    out.line = prescribe_defects(m, c, {{0, 2}, {south, 2}});
    return out;
  }
  if (key.name == "constant") {
    detail::check_params(key, {});
    ParallelResult pr = propagate_parallel(m, c, 2.0);
    if (!pr.ok)
      throw Error(ErrorCode::HolonomyObstruction, pr.note);
    out.line.phi = pr.values;
    return out;
  }
  if (key.name == "radial_disk") {
    detail::check_params(key, {"vector"});
    bool as_vector = int_param(key, "vector", 0) != 0;
    return radial_disk_field(m, c, as_vector);
  }
  if (key.name == "defect_patch") {
    detail::check_params(key, {"k", "circular"});
    double k = detail::param_or(key, "k", 1.0);
    bool circular = int_param(key, "circular", 0) != 0;
    out.line = defect_patch_field(m, k, circular);
    return out;
  }
  if (key.name == "rp2_radial") {
    detail::check_params(key, {});
    out.line = rp2_radial_field(m);
    return out;
  }
  if (key.name == "random_line_field") {
    detail::check_params(key, {"seed"});
    out.line = random_line_field(
        m, static_cast<std::uint64_t>(int_param(key, "seed", 0)));
    return out;
  }
  if (key.name == "random_vector_field") {
    detail::check_params(key, {"seed"});
    out.is_line = false;
    out.vector = random_vector_field(
        m, static_cast<std::uint64_t>(int_param(key, "seed", 0)));
    return out;
  }
  throw Error(ErrorCode::BadParams, "unknown field '" + key.name + "'");
}

}  // namespace linefields
