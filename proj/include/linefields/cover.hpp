#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "linefields/angles.hpp"
#include "linefields/connection.hpp"
#include "linefields/error.hpp"
#include "linefields/fields.hpp"
#include "linefields/mesh.hpp"
#include "linefields/report.hpp"

namespace linefields {

// Two-valued gluing data of a line field: s_e = +1 when the canonical
// vector representatives theta = phi/2 agree across the edge after
// transport, -1 when they disagree by pi.  The star product around a vertex
// is -1 exactly at odd-p vertices.
struct SignCocycle {
  std::vector<int> sign;  // per edge; 0 on boundary edges

  int monodromy(const Mesh& m, int v) const {
    int prod = 1;
    auto star = vertex_star(m, v);
    for (const auto& s : star)
      if (!m.edge_is_boundary(s.exit_edge)) prod *= sign[s.exit_edge];
    return prod;
  }
};

inline SignCocycle sign_cocycle(const Mesh& m, const Connection& c,
                                const LineField& lf) {
  if (static_cast<int>(lf.phi.size()) != m.face_count())
    throw Error(ErrorCode::BadParams, "field size does not match face count");
  SignCocycle sc;
  sc.sign.assign(m.edge_count(), 0);
  for (int e = 0; e < m.edge_count(); ++e) {
    int f = m.edge_faces[e][0], g = m.edge_faces[e][1];
    if (g < 0) continue;
    double theta_f = lf.phi[f] / 2.0;
    double theta_g = lf.phi[g] / 2.0;
    double d = principal(theta_g - c.transport(m, e, f, theta_f));
    if (std::abs(std::abs(d) - kPi / 2.0) <= 1e-9)
      throw Error(ErrorCode::BranchCut,
                  "representative difference across edge " + std::to_string(e) +
                      " is ambiguous");
    sc.sign[e] = std::abs(d) < kPi / 2.0 ? +1 : -1;
  }
  return sc;
}

// Attempted global vector lift of a line field.  When the sign cocycle is a
// coboundary the lift exists; otherwise `obstruction_faces` is a closed dual
// walk whose cocycle product is -1.
struct LiftResult {
  bool ok = false;
  VectorField field;
  std::vector<int> obstruction_faces;
};

inline LiftResult lift_line_field(const Mesh& m, const Connection& c,
                                  const LineField& lf) {
  SignCocycle sc = sign_cocycle(m, c, lf);
  LiftResult out;
  std::vector<int> sgn(m.face_count(), 0);
  std::vector<int> parent(m.face_count(), -1);
  for (int seed = 0; seed < m.face_count(); ++seed) {
    if (sgn[seed] != 0) continue;
    sgn[seed] = +1;
    std::vector<int> queue{seed};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int f = queue[qi];
      for (int i = 0; i < 3; ++i) {
        int e = m.face_edges[f][i];
        int g = m.other_face(e, f);
        if (g < 0) continue;
        int want = sgn[f] * sc.sign[e];
        if (sgn[g] == 0) {
          sgn[g] = want;
          parent[g] = f;
          queue.push_back(g);
        } else if (sgn[g] != want) {
          std::vector<int> pf, pg;
          for (int x = f; x >= 0; x = parent[x]) pf.push_back(x);
          for (int x = g; x >= 0; x = parent[x]) pg.push_back(x);
          while (pf.size() > 1 && pg.size() > 1 &&
                 pf[pf.size() - 2] == pg[pg.size() - 2]) {
            pf.pop_back();
            pg.pop_back();
          }
          out.ok = false;
          out.obstruction_faces.assign(pf.begin(), pf.end());
          for (size_t k = pg.size() - 1; k-- > 0;)
            out.obstruction_faces.push_back(pg[k]);
          return out;
        }
      }
    }
  }
  out.ok = true;
  out.field.theta.resize(m.face_count());
  for (int f = 0; f < m.face_count(); ++f)
    out.field.theta[f] =
        wrap_two_pi(lf.phi[f] / 2.0 + (sgn[f] < 0 ? kPi : 0.0));
  return out;
}

// Branched double cover determined by the sign cocycle of a line field on a
// closed mesh.  Faces are duplicated onto two sheets; sheet eps glues to
// sheet eps*s_e across each edge.  Cover vertices are the orbits of the
// corner walk, so a vertex with cocycle monodromy -1 has a one-point fiber
// and is a branch point.
struct BranchedCover {
  Mesh base;
  Connection base_conn;
  LineField base_field;
  SignCocycle cocycle;

  Mesh mesh;               // the covering surface (may be disconnected)
  Connection conn;         // inherited corner angles
  VectorField lifted;      // theta = phi/2 on sheet +, phi/2 + pi on sheet -
  std::vector<std::array<int, 2>> sheet_map;  // cover face -> {base face, +-1}
  std::vector<std::vector<int>> fiber;        // base vertex -> cover vertices
  std::vector<int> branch_vertices;           // base ids with one-point fiber
  std::vector<int> deck_face;                 // sheet swap on faces
  std::vector<int> deck_vertex;               // sheet swap on vertices
};

inline BranchedCover branched_double_cover(const Mesh& m, const Connection& c,
                                           const LineField& lf) {
  if (m.has_boundary())
    throw Error(ErrorCode::BadTopology,
                "branched double cover needs a closed mesh");
  BranchedCover bc;
  bc.base = m;
  bc.base_conn = c;
  bc.base_field = lf;
  bc.cocycle = sign_cocycle(m, c, lf);

  const int F = m.face_count();
  // cvid[sheet][face][slot]: cover vertex at the sheeted corner (0 = sheet +).
  std::vector<std::array<std::array<int, 3>, 2>> cvid(
      F, {{{-1, -1, -1}, {-1, -1, -1}}});
  int next_vertex = 0;
  bc.fiber.assign(m.vertex_count, {});
  for (int v = 0; v < m.vertex_count; ++v) {
    auto star = vertex_star(m, v);
    const size_t n = star.size();
    for (int start_sheet = 0; start_sheet < 2; ++start_sheet) {
      if (cvid[star[0].face][start_sheet][star[0].slot] >= 0) continue;
      int id = next_vertex++;
      bc.fiber[v].push_back(id);
      size_t j = 0;
      int sheet = start_sheet;
      do {
        cvid[star[j].face][sheet][star[j].slot] = id;
        if (bc.cocycle.sign[star[j].exit_edge] < 0) sheet = 1 - sheet;
        j = (j + 1) % n;
      } while (!(j == 0 && sheet == start_sheet));
    }
    if (bc.fiber[v].size() == 1) bc.branch_vertices.push_back(v);
  }

  std::vector<std::array<int, 3>> faces(2 * F);
  bc.sheet_map.resize(2 * F);
  CornerAngles angles;
  angles.alpha.resize(2 * F);
  for (int f = 0; f < F; ++f) {
    for (int i = 0; i < 3; ++i) {
      faces[f][i] = cvid[f][0][i];
      faces[F + f][i] = cvid[f][1][i];
    }
    bc.sheet_map[f] = {f, +1};
    bc.sheet_map[F + f] = {f, -1};
    angles.alpha[f] = c.angles.alpha[f];
    angles.alpha[F + f] = c.angles.alpha[f];
  }

  std::vector<std::array<double, 3>> pos;
  if (m.has_positions()) {
    pos.assign(next_vertex, {0, 0, 0});
    for (int f = 0; f < F; ++f)
      for (int i = 0; i < 3; ++i) {
        pos[cvid[f][0][i]] = m.positions[m.faces[f][i]];
        pos[cvid[f][1][i]] = m.positions[m.faces[f][i]];
      }
  }

  // Sheet eps of face f glues to sheet eps*s_e of the base neighbor across
  // each side.  The gluing is explicit because both lifts of a base edge
  // between two branch points join the same pair of cover vertices.
  std::vector<std::array<std::array<int, 2>, 3>> glue(2 * F);
  for (int f = 0; f < F; ++f) {
    for (int i = 0; i < 3; ++i) {
      int e = m.face_edges[f][i];
      int g = m.other_face(e, f);
      int j = 0;
      while (m.face_edges[g][j] != e) ++j;
      bool swap = bc.cocycle.sign[e] < 0;
      glue[f][i] = {(swap ? F : 0) + g, j};
      glue[F + f][i] = {(swap ? 0 : F) + g, j};
    }
  }

  bc.mesh = build_mesh_glued(next_vertex, std::move(faces), glue,
                             std::move(pos), /*allow_disconnected=*/true);
  bc.conn = build_connection(bc.mesh, angles);

  bc.lifted.theta.resize(2 * F);
  for (int f = 0; f < F; ++f) {
    bc.lifted.theta[f] = wrap_two_pi(lf.phi[f] / 2.0);
    bc.lifted.theta[F + f] = wrap_two_pi(lf.phi[f] / 2.0 + kPi);
  }

  bc.deck_face.resize(2 * F);
  for (int f = 0; f < F; ++f) {
    bc.deck_face[f] = F + f;
    bc.deck_face[F + f] = f;
  }
  bc.deck_vertex.assign(next_vertex, -1);
  for (int f = 0; f < F; ++f)
    for (int i = 0; i < 3; ++i)
      bc.deck_vertex[cvid[f][0][i]] = cvid[f][1][i];
  return bc;
}

// Structural and index checks on a constructed cover.
inline VerificationReport cover_index_checks(const BranchedCover& bc) {
  VerificationReport rep;
  const Mesh& base = bc.base;
  const int k = static_cast<int>(bc.branch_vertices.size());

  rep.add("cover_euler", bc.mesh.euler_characteristic(),
          2.0 * base.euler_characteristic() - k, 0.0,
          "Riemann-Hurwitz: chi(cover) = 2*chi(base) - #branch points");

  // Fiber sizes match the cocycle monodromy.
  int fiber_mismatch = 0;
  for (int v = 0; v < base.vertex_count; ++v) {
    int mono = bc.cocycle.monodromy(base, v);
    size_t want = mono == 1 ? 2 : 1;
    if (bc.fiber[v].size() != want) ++fiber_mismatch;
  }
  rep.add("fiber_sizes", fiber_mismatch, 0, 0.0,
          "fibers have two points away from branch points, one at them");

  // Lifted field is continuous: each cover-edge transported difference is
  // half the base line increment.  Cover faces copy the base slot layout, so
  // the slot identifies the base edge under a cover edge.
  double worst_diff = 0.0;
  for (int cf = 0; cf < bc.mesh.face_count(); ++cf) {
    int bf = bc.sheet_map[cf][0];
    for (int i = 0; i < 3; ++i) {
      int e = bc.mesh.face_edges[cf][i];
      int cg = bc.mesh.other_face(e, cf);
      if (cg < 0) continue;
      int bg = bc.sheet_map[cg][0];
      int be = base.face_edges[bf][i];
      double theta_diff = principal(
          bc.lifted.theta[cg] -
          bc.conn.transport(bc.mesh, e, cf, bc.lifted.theta[cf]));
      double line_diff = principal(bc.base_field.phi[bg] -
                                   bc.base_conn.transport_doubled(
                                       base, be, bf, bc.base_field.phi[bf]));
      worst_diff = std::max(worst_diff,
                            std::abs(principal(theta_diff - line_diff / 2.0)));
    }
  }
  rep.add("lift_continuity", worst_diff, 0.0, 1e-9,
          "transported lift differences equal half the base line increments");

  // Poincare-Hopf for the lifted vector field, summed per cover.
  DefectReport cover_rep = vector_field_indices(bc.mesh, bc.conn, bc.lifted);
  rep.add("cover_poincare_hopf", static_cast<double>(cover_rep.sum_ind),
          bc.mesh.euler_characteristic(), 0.0,
          "Poincare-Hopf: sum of vector indices = chi(cover)");

  // Normal indices add up along fibers.
  DefectReport base_rep =
      line_field_indices(base, bc.base_conn, bc.base_field);
  std::vector<long long> base_p_perp(base.vertex_count, 0);
  for (const auto& r : base_rep.records) base_p_perp[r.vertex] = r.p_perp;
  std::vector<long long> cover_ind_perp(bc.mesh.vertex_count, 0);
  for (const auto& r : cover_rep.records) cover_ind_perp[r.vertex] = r.ind_perp;
  int lemma_failures = 0;
  for (int v = 0; v < base.vertex_count; ++v) {
    long long sum = 0;
    for (int y : bc.fiber[v]) sum += cover_ind_perp[y];
    if (sum != base_p_perp[v]) ++lemma_failures;
  }
  rep.add("fiber_normal_indices", lemma_failures, 0, 0.0,
          "p_perp(x) = sum of ind_perp over the fiber of x");

  // Deck involution: free on faces, fixes exactly the branch fibers.
  int deck_bad = 0;
  for (int f = 0; f < bc.mesh.face_count(); ++f)
    if (bc.deck_face[f] == f) ++deck_bad;
  int fixed_vertices = 0;
  for (int y = 0; y < bc.mesh.vertex_count; ++y)
    if (bc.deck_vertex[y] == y) ++fixed_vertices;
  rep.add("deck_free_on_faces", deck_bad, 0, 0.0,
          "the deck involution moves every face");
  rep.add("deck_fixed_points", fixed_vertices, k, 0.0,
          "the deck involution fixes exactly the branch points");

  // Lift existence matches cover connectivity.
  LiftResult lift = lift_line_field(base, bc.base_conn, bc.base_field);
  rep.add("lift_iff_disconnected", lift.ok ? 1 : 0,
          bc.mesh.component_count == 2 ? 1 : 0, 0.0,
          "the cover splits into two sheets exactly when a lift exists");
  return rep;
}

// Quotient of a mesh (and optionally a line field) by a free simplicial
// involution.  The field must be carried to itself by the induced chart
// maps; the quotient face keeps the chart of its lower-id representative.
struct QuotientResult {
  Mesh mesh;
  CornerAngles angles;
  LineField field;  // empty when no field was supplied
  std::vector<int> vertex_map;
  std::vector<int> face_map;
};

inline QuotientResult quotient_by_involution(const Mesh& m,
                                             const CornerAngles& a,
                                             const std::vector<int>& iota,
                                             const LineField* lf = nullptr) {
  if (static_cast<int>(iota.size()) != m.vertex_count)
    throw Error(ErrorCode::BadParams, "involution size mismatch");
  for (int v = 0; v < m.vertex_count; ++v) {
    if (iota[v] < 0 || iota[v] >= m.vertex_count || iota[iota[v]] != v)
      throw Error(ErrorCode::BadParams, "not an involution");
    if (iota[v] == v)
      throw Error(ErrorCode::HasFixedPoints,
                  "involution fixes vertex " + std::to_string(v));
  }

  // Face image lookup by sorted triple.
  auto face_key = [&](std::array<int, 3> t) {
    std::sort(t.begin(), t.end());
    return (static_cast<std::uint64_t>(t[0]) << 42) ^
           (static_cast<std::uint64_t>(t[1]) << 21) ^
           static_cast<std::uint64_t>(t[2]);
  };
  std::unordered_map<std::uint64_t, int> by_triple;
  for (int f = 0; f < m.face_count(); ++f)
    by_triple.emplace(face_key(m.faces[f]), f);

  std::vector<int> face_image(m.face_count(), -1);
  for (int f = 0; f < m.face_count(); ++f) {
    std::array<int, 3> img = {iota[m.faces[f][0]], iota[m.faces[f][1]],
                              iota[m.faces[f][2]]};
    auto it = by_triple.find(face_key(img));
    if (it == by_triple.end())
      throw Error(ErrorCode::BadParams,
                  "involution is not simplicial at face " + std::to_string(f));
    if (it->second == f)
      throw Error(ErrorCode::HasFixedPoints,
                  "involution fixes face " + std::to_string(f));
    face_image[f] = it->second;
  }

  // Chart map from f to its image: angle psi -> tau*psi + delta.
  auto chart_map = [&](int f, int g) -> std::pair<int, double> {
    std::array<int, 3> sigma{};
    for (int i = 0; i < 3; ++i) {
      int imv = iota[m.faces[f][i]];
      for (int j = 0; j < 3; ++j)
        if (m.faces[g][j] == imv) sigma[i] = j;
    }
    bool cyclic = (sigma[1] == (sigma[0] + 1) % 3);
    int tau = cyclic ? +1 : -1;
    double delta;
    if (cyclic)
      delta = halfedge_chart_angle(a, g, sigma[0]);
    else
      delta = halfedge_chart_angle(a, g, sigma[1]) + kPi;
    return {tau, delta};
  };

  // Corner angles must agree under the identification.
  for (int f = 0; f < m.face_count(); ++f) {
    int g = face_image[f];
    for (int i = 0; i < 3; ++i) {
      int imv = iota[m.faces[f][i]];
      for (int j = 0; j < 3; ++j)
        if (m.faces[g][j] == imv &&
            std::abs(a.at(f, i) - a.at(g, j)) > 1e-9)
          throw Error(ErrorCode::NotInvariant,
                      "corner angles are not involution-invariant at face " +
                          std::to_string(f));
    }
  }

  if (lf) {
    for (int f = 0; f < m.face_count(); ++f) {
      int g = face_image[f];
      auto [tau, delta] = chart_map(f, g);
      double resid =
          std::abs(principal(lf->phi[g] - tau * lf->phi[f] - 2.0 * delta)) /
          2.0;
      if (resid > 1e-6)
        throw Error(ErrorCode::NotInvariant,
                    "line field differs from its image on face " +
                        std::to_string(f) + " by " + std::to_string(resid));
    }
  }

  QuotientResult q;
  q.vertex_map.assign(m.vertex_count, -1);
  int nv = 0;
  for (int v = 0; v < m.vertex_count; ++v) {
    if (q.vertex_map[v] >= 0) continue;
    q.vertex_map[v] = nv;
    q.vertex_map[iota[v]] = nv;
    ++nv;
  }
  q.face_map.assign(m.face_count(), -1);
  std::vector<std::array<int, 3>> faces;
  CornerAngles qa;
  std::vector<double> phi;
  for (int f = 0; f < m.face_count(); ++f) {
    if (q.face_map[f] >= 0) continue;
    int id = static_cast<int>(faces.size());
    q.face_map[f] = id;
    q.face_map[face_image[f]] = id;
    faces.push_back({q.vertex_map[m.faces[f][0]], q.vertex_map[m.faces[f][1]],
                     q.vertex_map[m.faces[f][2]]});
    qa.alpha.push_back(a.alpha[f]);
    if (lf) phi.push_back(lf->phi[f]);
  }
  q.mesh = build_mesh(nv, std::move(faces));
  q.angles = std::move(qa);
  q.field.phi = std::move(phi);
  return q;
}

}  // namespace linefields
