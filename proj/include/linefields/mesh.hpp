#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "linefields/error.hpp"

namespace linefields {

// Triangulated surface, manifold with or without boundary.  Faces are ordered
// vertex triples; the stored order fixes each face's frame handedness.  Edges
// are derived and numbered in first-seen order (faces scanned in order,
// corners in order), which keeps every downstream id deterministic.
struct Mesh {
  int vertex_count = 0;
  std::vector<std::array<int, 3>> faces;

  // Derived connectivity, filled by build_mesh.
  std::vector<std::array<int, 2>> edge_vertices;     // endpoints, low id first
  std::vector<std::array<int, 2>> edge_faces;        // incident faces, -1 pad
  std::vector<std::array<int, 3>> face_edges;        // slot i = edge {v_i, v_{i+1}}
  std::vector<char> vertex_on_boundary;
  int component_count = 0;

  // Optional embedding (one triple per vertex); empty when absent.
  std::vector<std::array<double, 3>> positions;

  int face_count() const { return static_cast<int>(faces.size()); }
  int edge_count() const { return static_cast<int>(edge_vertices.size()); }
  int euler_characteristic() const {
    return vertex_count - edge_count() + face_count();
  }
  bool has_positions() const { return !positions.empty(); }

  bool edge_is_boundary(int e) const { return edge_faces[e][1] < 0; }
  bool has_boundary() const {
    for (int e = 0; e < edge_count(); ++e)
      if (edge_is_boundary(e)) return true;
    return false;
  }

  // Slot of v within face f, or -1.
  int face_slot(int f, int v) const {
    for (int i = 0; i < 3; ++i)
      if (faces[f][i] == v) return i;
    return -1;
  }

  int edge_between(int u, int v) const {
    auto it = edge_lookup_.find(edge_key(u, v));
    return it == edge_lookup_.end() ? -1 : it->second;
  }

  // Directed halfedge of edge e as stored in face f: returns {p, q} with the
  // face listing p immediately before q.
  std::array<int, 2> halfedge_in_face(int f, int e) const {
    for (int i = 0; i < 3; ++i) {
      if (face_edges[f][i] == e) return {faces[f][i], faces[f][(i + 1) % 3]};
    }
    throw Error(ErrorCode::NonManifold, "edge " + std::to_string(e) +
                                            " not in face " + std::to_string(f));
  }

  int other_face(int e, int f) const {
    return edge_faces[e][0] == f ? edge_faces[e][1] : edge_faces[e][0];
  }

  static std::uint64_t edge_key(int u, int v) {
    auto lo = static_cast<std::uint64_t>(std::min(u, v));
    auto hi = static_cast<std::uint64_t>(std::max(u, v));
    return (hi << 32) | lo;
  }

  std::unordered_map<std::uint64_t, int> edge_lookup_;
};

// One step of a vertex-star walk.  `flip` records whether the face's stored
// frame disagrees with the walk's local orientation; angles read from flipped
// faces must be negated when compared along the walk.
struct StarEntry {
  int face = -1;
  int slot = -1;       // corner slot of the walked vertex in `face`
  bool flip = false;
  int enter_edge = -1; // corner edge the walk came in through
  int exit_edge = -1;  // corner edge the walk leaves through
};

struct OrientationResult {
  bool orientable = false;
  // Consistent per-face signs when orientable (empty otherwise).
  std::vector<int> face_signs;
  // When non-orientable: a closed dual walk with an odd number of
  // orientation reversals, as a face sequence (last glues back to first).
  std::vector<int> witness_faces;
};

namespace detail {

inline void walk_star_validate(const Mesh& m, int v,
                               const std::vector<std::array<int, 2>>& corners);
inline void validate_links_and_components(Mesh& m, bool allow_disconnected);

}  // namespace detail

// Validates and indexes a face list.  Throws Error on non-surfaces:
// DEGENERATE_FACE (bad ids, repeated vertex), NON_MANIFOLD (edge in >2 faces,
// broken vertex link, duplicate face, isolated vertex), DISCONNECTED.
// `allow_disconnected` is used by cover construction, whose result is a valid
// surface per component.
inline Mesh build_mesh(int vertex_count,
                       std::vector<std::array<int, 3>> faces,
                       std::vector<std::array<double, 3>> positions = {},
                       bool allow_disconnected = false) {
  Mesh m;
  m.vertex_count = vertex_count;
  m.faces = std::move(faces);
  if (!positions.empty() &&
      static_cast<int>(positions.size()) != vertex_count) {
    throw Error(ErrorCode::DegenerateFace,
                "positions count does not match vertex count");
  }
  m.positions = std::move(positions);

  if (vertex_count == 0 || m.faces.empty()) {
    throw Error(ErrorCode::Disconnected, "empty mesh");
  }

  std::unordered_set<std::uint64_t> seen_triples;
  seen_triples.reserve(m.faces.size() * 2);
  m.face_edges.assign(m.faces.size(), {-1, -1, -1});
  for (int f = 0; f < m.face_count(); ++f) {
    const auto& tri = m.faces[f];
    for (int i = 0; i < 3; ++i) {
      if (tri[i] < 0 || tri[i] >= vertex_count) {
        throw Error(ErrorCode::DegenerateFace,
                    "face " + std::to_string(f) + " references vertex id " +
                        std::to_string(tri[i]));
      }
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw Error(ErrorCode::DegenerateFace,
                  "face " + std::to_string(f) + " repeats a vertex");
    }
    std::array<int, 3> s = tri;
    std::sort(s.begin(), s.end());
    std::uint64_t key = (static_cast<std::uint64_t>(s[0]) << 42) ^
                        (static_cast<std::uint64_t>(s[1]) << 21) ^
                        static_cast<std::uint64_t>(s[2]);
    if (!seen_triples.insert(key).second) {
      throw Error(ErrorCode::NonManifold,
                  "duplicate face " + std::to_string(f));
    }
    for (int i = 0; i < 3; ++i) {
      int u = tri[i], w = tri[(i + 1) % 3];
      auto key2 = Mesh::edge_key(u, w);
      auto it = m.edge_lookup_.find(key2);
      int e;
      if (it == m.edge_lookup_.end()) {
        e = m.edge_count();
        m.edge_lookup_.emplace(key2, e);
        m.edge_vertices.push_back({std::min(u, w), std::max(u, w)});
        m.edge_faces.push_back({f, -1});
      } else {
        e = it->second;
        if (m.edge_faces[e][1] >= 0) {
          throw Error(ErrorCode::NonManifold,
                      "edge {" + std::to_string(u) + "," + std::to_string(w) +
                          "} lies in more than two faces");
        }
        m.edge_faces[e][1] = f;
      }
      m.face_edges[f][i] = e;
    }
  }

  detail::validate_links_and_components(m, allow_disconnected);
  return m;
}

// A triangle surface given by explicit side gluing instead of shared vertex
// pairs.  `gluing[f][i]` names the partner {g, j} of face f's side i (the
// side between corners i and i+1), or {-1, -1} on the boundary.  Branched
// covers need this form: two distinct cover edges may join the same two
// cover vertices (both lifts of an edge between two branch points), which a
// vertex-pair edge table cannot represent.  `edge_between` is unavailable on
// the result; everything else behaves as usual.
inline Mesh build_mesh_glued(int vertex_count,
                             std::vector<std::array<int, 3>> faces,
                             const std::vector<std::array<std::array<int, 2>, 3>>& gluing,
                             std::vector<std::array<double, 3>> positions = {},
                             bool allow_disconnected = false) {
  Mesh m;
  m.vertex_count = vertex_count;
  m.faces = std::move(faces);
  if (!positions.empty() &&
      static_cast<int>(positions.size()) != vertex_count) {
    throw Error(ErrorCode::DegenerateFace,
                "positions count does not match vertex count");
  }
  m.positions = std::move(positions);
  if (vertex_count == 0 || m.faces.empty())
    throw Error(ErrorCode::Disconnected, "empty mesh");
  if (gluing.size() != m.faces.size())
    throw Error(ErrorCode::BadParams, "gluing table size mismatch");

  m.face_edges.assign(m.faces.size(), {-1, -1, -1});
  for (int f = 0; f < m.face_count(); ++f) {
    const auto& tri = m.faces[f];
    for (int i = 0; i < 3; ++i) {
      if (tri[i] < 0 || tri[i] >= vertex_count)
        throw Error(ErrorCode::DegenerateFace,
                    "face " + std::to_string(f) + " references vertex id " +
                        std::to_string(tri[i]));
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw Error(ErrorCode::DegenerateFace,
                  "face " + std::to_string(f) + " repeats a vertex");
  }
  for (int f = 0; f < m.face_count(); ++f) {
    for (int i = 0; i < 3; ++i) {
      if (m.face_edges[f][i] >= 0) continue;
      int e = m.edge_count();
      int u = m.faces[f][i], w = m.faces[f][(i + 1) % 3];
      int g = gluing[f][i][0], j = gluing[f][i][1];
      if (g < 0) {
        m.edge_vertices.push_back({std::min(u, w), std::max(u, w)});
        m.edge_faces.push_back({f, -1});
        m.face_edges[f][i] = e;
        continue;
      }
      if (g >= m.face_count() || j < 0 || j >= 3 ||
          gluing[g][j] != std::array<int, 2>{f, i} || (g == f && j == i))
        throw Error(ErrorCode::NonManifold,
                    "gluing of face " + std::to_string(f) + " side " +
                        std::to_string(i) + " is not reciprocal");
      int gu = m.faces[g][j], gw = m.faces[g][(j + 1) % 3];
      if (std::min(gu, gw) != std::min(u, w) ||
          std::max(gu, gw) != std::max(u, w))
        throw Error(ErrorCode::NonManifold,
                    "glued sides of faces " + std::to_string(f) + " and " +
                        std::to_string(g) + " join different vertices");
      m.edge_vertices.push_back({std::min(u, w), std::max(u, w)});
      m.edge_faces.push_back({f, g});
      m.face_edges[f][i] = e;
      m.face_edges[g][j] = e;
    }
  }

  detail::validate_links_and_components(m, allow_disconnected);
  return m;
}

namespace detail {

// Vertex links must walk as a single cycle (interior) or path (boundary);
// face connectivity must be connected unless the caller opts out.
inline void validate_links_and_components(Mesh& m, bool allow_disconnected) {
  std::vector<std::vector<std::array<int, 2>>> corners(m.vertex_count);
  for (int f = 0; f < m.face_count(); ++f)
    for (int i = 0; i < 3; ++i) corners[m.faces[f][i]].push_back({f, i});

  m.vertex_on_boundary.assign(m.vertex_count, 0);
  for (int e = 0; e < m.edge_count(); ++e) {
    if (m.edge_is_boundary(e)) {
      m.vertex_on_boundary[m.edge_vertices[e][0]] = 1;
      m.vertex_on_boundary[m.edge_vertices[e][1]] = 1;
    }
  }

  for (int v = 0; v < m.vertex_count; ++v) {
    if (corners[v].empty()) {
      throw Error(ErrorCode::NonManifold,
                  "isolated vertex " + std::to_string(v));
    }
    detail::walk_star_validate(m, v, corners[v]);
  }

  std::vector<int> comp(m.face_count(), -1);
  int ncomp = 0;
  for (int seed = 0; seed < m.face_count(); ++seed) {
    if (comp[seed] >= 0) continue;
    std::vector<int> stack{seed};
    comp[seed] = ncomp;
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3; ++i) {
        int g = m.other_face(m.face_edges[f][i], f);
        if (g >= 0 && comp[g] < 0) {
          comp[g] = ncomp;
          stack.push_back(g);
        }
      }
    }
    ++ncomp;
  }
  m.component_count = ncomp;
  if (ncomp > 1 && !allow_disconnected) {
    throw Error(ErrorCode::Disconnected,
                std::to_string(ncomp) + " components");
  }
}

}  // namespace detail

// Ordered star walk around v.  Interior vertices yield a cyclic face
// sequence; boundary vertices a path from one boundary edge to the other.
// Start and direction are deterministic: interior walks start at the lowest
// incident face id with flip 0; boundary walks start at the lower-id end
// face.  Walking the opposite direction reverses the sequence and
// complements every flip bit.
inline std::vector<StarEntry> vertex_star(const Mesh& m, int v) {
  std::vector<std::array<int, 2>> corners;
  for (int f = 0; f < m.face_count(); ++f) {
    int slot = m.face_slot(f, v);
    if (slot >= 0) corners.push_back({f, slot});
  }
  if (corners.empty())
    throw Error(ErrorCode::NonManifold, "isolated vertex " + std::to_string(v));

  auto next_ray_edge = [&](int f, int slot) { return m.face_edges[f][slot]; };
  auto prev_ray_edge = [&](int f, int slot) {
    return m.face_edges[f][(slot + 2) % 3];
  };

  int start_face = -1, start_enter = -1;
  if (!m.vertex_on_boundary[v]) {
    for (const auto& c : corners)
      if (start_face < 0 || c[0] < start_face) start_face = c[0];
    int slot = m.face_slot(start_face, v);
    start_enter = next_ray_edge(start_face, slot);  // flip 0 for the start face
  } else {
    // End faces own the boundary corner edges.
    for (const auto& c : corners) {
      int a = next_ray_edge(c[0], c[1]);
      int b = prev_ray_edge(c[0], c[1]);
      if (m.edge_is_boundary(a) || m.edge_is_boundary(b)) {
        if (start_face < 0 || c[0] < start_face) start_face = c[0];
      }
    }
    int slot = m.face_slot(start_face, v);
    int a = next_ray_edge(start_face, slot);
    int b = prev_ray_edge(start_face, slot);
    // Enter through a boundary edge; prefer the next-ray when both qualify.
    start_enter = m.edge_is_boundary(a) ? a : b;
  }

  std::vector<StarEntry> walk;
  walk.reserve(corners.size());
  int f = start_face, enter = start_enter;
  while (true) {
    StarEntry s;
    s.face = f;
    s.slot = m.face_slot(f, v);
    s.enter_edge = enter;
    int a = next_ray_edge(f, s.slot);
    int b = prev_ray_edge(f, s.slot);
    s.flip = (enter != a);
    s.exit_edge = (enter == a) ? b : a;
    walk.push_back(s);
    if (walk.size() > corners.size())
      throw Error(ErrorCode::NonManifold,
                  "star walk around vertex " + std::to_string(v) +
                      " does not close");
    if (m.edge_is_boundary(s.exit_edge)) break;  // boundary path ends
    int g = m.other_face(s.exit_edge, f);
    if (g == start_face) break;  // interior cycle closed
    f = g;
    enter = s.exit_edge;
  }
  if (walk.size() != corners.size())
    throw Error(ErrorCode::NonManifold,
                "star walk around vertex " + std::to_string(v) +
                    " misses corners");
  return walk;
}

// The same star traversed in the opposite direction.
inline std::vector<StarEntry> vertex_star_reversed(const Mesh& m, int v) {
  std::vector<StarEntry> fwd = vertex_star(m, v);
  std::vector<StarEntry> rev;
  rev.reserve(fwd.size());
  bool cyclic = !m.vertex_on_boundary[v];
  if (cyclic) {
    // Keep the anchor face first so the sequences align as cyclic words.
    rev.push_back(fwd[0]);
    for (size_t i = fwd.size(); i-- > 1;) rev.push_back(fwd[i]);
  } else {
    for (size_t i = fwd.size(); i-- > 0;) rev.push_back(fwd[i]);
  }
  for (auto& s : rev) {
    std::swap(s.enter_edge, s.exit_edge);
    s.flip = !s.flip;
  }
  return rev;
}

namespace detail {

inline void walk_star_validate(const Mesh& m, int v,
                               const std::vector<std::array<int, 2>>& corners) {
  int boundary_rays = 0;
  for (const auto& c : corners) {
    int a = m.face_edges[c[0]][c[1]];
    int b = m.face_edges[c[0]][(c[1] + 2) % 3];
    boundary_rays += m.edge_is_boundary(a) ? 1 : 0;
    boundary_rays += m.edge_is_boundary(b) ? 1 : 0;
  }
  bool on_boundary = m.vertex_on_boundary[v];
  if ((on_boundary && boundary_rays != 2) || (!on_boundary && boundary_rays != 0)) {
    throw Error(ErrorCode::NonManifold,
                "vertex " + std::to_string(v) + " link is not a single " +
                    (on_boundary ? "path" : "cycle"));
  }
  vertex_star(m, v);  // throws when the link splits into several components
}

}  // namespace detail

// Greedy sign propagation over the dual graph; on failure returns the
// offending dual cycle instead of throwing.
inline OrientationResult orientability(const Mesh& m) {
  OrientationResult r;
  std::vector<int> sign(m.face_count(), 0);
  std::vector<int> parent(m.face_count(), -1);

  auto agree = [&](int e, int f, int g) {
    // +1 when f and g list the shared edge in opposite directions.
    auto hf = m.halfedge_in_face(f, e);
    auto hg = m.halfedge_in_face(g, e);
    return hf[0] == hg[1] ? +1 : -1;
  };

  for (int seed = 0; seed < m.face_count(); ++seed) {
    if (sign[seed] != 0) continue;
    sign[seed] = +1;
    std::vector<int> queue{seed};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int f = queue[qi];
      for (int i = 0; i < 3; ++i) {
        int e = m.face_edges[f][i];
        int g = m.other_face(e, f);
        if (g < 0) continue;
        int want = sign[f] * agree(e, f, g);
        if (sign[g] == 0) {
          sign[g] = want;
          parent[g] = f;
          queue.push_back(g);
        } else if (sign[g] != want) {
          // Tree paths from f and g to their common root, plus edge {f,g},
          // close a dual cycle with an odd number of reversals.
          std::vector<int> pf, pg;
          for (int x = f; x >= 0; x = parent[x]) pf.push_back(x);
          for (int x = g; x >= 0; x = parent[x]) pg.push_back(x);
          while (pf.size() > 1 && pg.size() > 1 &&
                 pf[pf.size() - 2] == pg[pg.size() - 2]) {
            pf.pop_back();
            pg.pop_back();
          }
          r.orientable = false;
          r.witness_faces.assign(pf.begin(), pf.end());
          for (size_t k = pg.size() - 1; k-- > 0;)
            r.witness_faces.push_back(pg[k]);
          return r;
        }
      }
    }
  }
  r.orientable = true;
  r.face_signs = std::move(sign);
  return r;
}

// Double of a mesh with boundary: a mirror copy glued along every boundary
// edge.  Boundary vertices are shared, interior vertices and all faces are
// duplicated; mirror faces carry the reversed vertex order.
struct DoubledMesh {
  Mesh mesh;
  int base_face_count = 0;
  int base_vertex_count = 0;
  std::vector<int> mirror_face;    // involution on doubled face ids
  std::vector<int> mirror_vertex;  // involution on doubled vertex ids
};

inline DoubledMesh double_along_boundary(const Mesh& m) {
  if (!m.has_boundary())
    throw Error(ErrorCode::ClosedInput, "mesh has no boundary to double along");

  DoubledMesh d;
  d.base_face_count = m.face_count();
  d.base_vertex_count = m.vertex_count;

  d.mirror_vertex.assign(m.vertex_count, -1);
  int next_id = m.vertex_count;
  for (int v = 0; v < m.vertex_count; ++v)
    d.mirror_vertex[v] = m.vertex_on_boundary[v] ? v : next_id++;
  int doubled_vertex_count = next_id;
  d.mirror_vertex.resize(doubled_vertex_count);
  for (int v = 0; v < m.vertex_count; ++v)
    if (!m.vertex_on_boundary[v]) d.mirror_vertex[d.mirror_vertex[v]] = v;

  std::vector<std::array<int, 3>> faces = m.faces;
  faces.reserve(2 * m.face_count());
  for (int f = 0; f < m.face_count(); ++f) {
    const auto& t = m.faces[f];
    faces.push_back({d.mirror_vertex[t[2]], d.mirror_vertex[t[1]],
                     d.mirror_vertex[t[0]]});
  }

  std::vector<std::array<double, 3>> pos;
  if (m.has_positions()) {
    pos.resize(doubled_vertex_count);
    for (int v = 0; v < m.vertex_count; ++v) {
      pos[v] = m.positions[v];
      pos[d.mirror_vertex[v]] = m.positions[v];
    }
  }

  d.mesh = build_mesh(doubled_vertex_count, std::move(faces), std::move(pos));
  d.mirror_face.resize(2 * m.face_count());
  for (int f = 0; f < m.face_count(); ++f) {
    d.mirror_face[f] = m.face_count() + f;
    d.mirror_face[m.face_count() + f] = f;
  }
  return d;
}

}  // namespace linefields
