#pragma once

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "linefields/angles.hpp"
#include "linefields/connection.hpp"
#include "linefields/error.hpp"
#include "linefields/mesh.hpp"

namespace linefields {

// Per-face direction angle theta in [0, 2*pi), measured in the face frame.
struct VectorField {
  std::vector<double> theta;
};

// Per-face line, stored as the doubled angle phi = 2*theta in [0, 2*pi).
// Lines have no preferred side, so phi is the faithful representation.
struct LineField {
  std::vector<double> phi;
};

inline LineField line_field_of_vector_field(const VectorField& x) {
  LineField lf;
  lf.phi.reserve(x.theta.size());
  for (double t : x.theta) lf.phi.push_back(wrap_two_pi(2.0 * t));
  return lf;
}

struct DefectRecord {
  int vertex = -1;
  long long p = 0;       // doubled-angle winding; hopf index is p/2
  long long p_perp = 0;  // winding relative to the doubled corner bisector
  bool orientable = false;  // p even <=> the line is orientable around v
  bool has_vector = false;
  long long ind = 0;       // vector winding (only when has_vector)
  long long ind_perp = 0;  // vector winding minus the bisector frame
};

struct DefectReport {
  std::vector<DefectRecord> records;  // one per interior vertex, id order
  long long sum_p = 0;
  long long two_chi = 0;
  bool match = false;
  double rounding_residual = 0.0;  // worst distance from an exact integer
  bool has_vector = false;
  long long sum_ind = 0;

  std::vector<DefectRecord> defects() const {
    std::vector<DefectRecord> out;
    for (const auto& r : records)
      if (r.p != 0) out.push_back(r);
    return out;
  }
};

namespace detail {

inline constexpr double kBranchMargin = 1e-9;
inline constexpr double kRoundingTol = 1e-6;

// One winding accumulation around a star.  The field moves by the principal
// value of each walk step (the shortest rotation compatible with the data),
// scaled by `step_scale` after the principal is taken -- a doubled angle
// traces twice the motion of the vector it came from, which is not the same
// as the principal value of the doubled step.  `frame_mult` subtracts the
// corner-bisector frame's motion, accumulated exactly rather than re-reduced:
// relative to transport the bisector advances by the mean of the two corner
// angles on every step, a value in (0, pi) that principal cannot collapse.
struct WindingTerms {
  double rho_mult = 1.0;    // transport multiple inside the principal step
  double step_scale = 1.0;  // applied to each principal step
  double frame_mult = 0.0;  // bisector-frame steps to subtract
  double offset = 0.0;      // cone-closure constant (omega terms)
};

inline long long star_winding(const Mesh& m, const Connection& c,
                              const std::vector<StarEntry>& star,
                              const std::vector<double>& values,
                              const WindingTerms& t, int vertex,
                              double* residual_out) {
  double sum = t.offset;
  size_t n = star.size();
  for (size_t j = 0; j < n; ++j) {
    const StarEntry& from = star[j];
    const StarEntry& to = star[(j + 1) % n];
    double rho = star_step_rho(m, c, from, to);
    double inc = principal(values[(j + 1) % n] - values[j] - t.rho_mult * rho);
    if (near_branch(inc, kBranchMargin))
      throw Error(ErrorCode::BranchCut,
                  "increment at vertex " + std::to_string(vertex) +
                      " across edge " + std::to_string(from.exit_edge) +
                      " sits on the principal branch cut");
    sum += t.step_scale * inc;
    if (t.frame_mult != 0.0) {
      double eta_from = corner_bisector(c.angles, from.face, from.slot);
      double eta_to = corner_bisector(c.angles, to.face, to.slot);
      if (from.flip) eta_from = -eta_from;
      if (to.flip) eta_to = -eta_to;
      sum -= t.frame_mult * principal(eta_to - eta_from - rho);
    }
  }
  double raw = sum / kTwoPi;
  long long rounded = std::llround(raw);
  double residual = std::abs(raw - static_cast<double>(rounded));
  if (residual >= kRoundingTol)
    throw Error(ErrorCode::Rounding,
                "index at vertex " + std::to_string(vertex) +
                    " is not an integer (residual " + std::to_string(residual) +
                    ")");
  if (residual_out && residual > *residual_out) *residual_out = residual;
  return rounded;
}

inline std::vector<double> walk_values(const std::vector<StarEntry>& star,
                                       const std::vector<double>& per_face) {
  std::vector<double> v;
  v.reserve(star.size());
  for (const auto& s : star)
    v.push_back(s.flip ? -per_face[s.face] : per_face[s.face]);
  return v;
}

}  // namespace detail

// Doubled-angle winding of a line field around one interior vertex star.
inline long long line_p_at(const Mesh& m, const Connection& c,
                           const LineField& lf,
                           const std::vector<StarEntry>& star, int vertex,
                           double* residual = nullptr) {
  auto values = detail::walk_values(star, lf.phi);
  return detail::star_winding(m, c, star, values,
                              {2.0, 1.0, 0.0, 2.0 * c.omega(vertex)}, vertex,
                              residual);
}

// Winding of the line relative to the doubled corner-bisector frame: the
// same principal steps as `line_p_at` minus the frame's exact rotation.
// The frame makes one full doubled turn, so this always equals p - 2.
inline long long line_p_perp_at(const Mesh& m, const Connection& c,
                                const LineField& lf,
                                const std::vector<StarEntry>& star, int vertex,
                                double* residual = nullptr) {
  auto values = detail::walk_values(star, lf.phi);
  return detail::star_winding(m, c, star, values, {2.0, 1.0, 2.0, 0.0}, vertex,
                              residual);
}

inline long long vector_ind_at(const Mesh& m, const Connection& c,
                               const VectorField& x,
                               const std::vector<StarEntry>& star, int vertex,
                               double* residual = nullptr) {
  auto values = detail::walk_values(star, x.theta);
  return detail::star_winding(m, c, star, values,
                              {1.0, 1.0, 0.0, c.omega(vertex)}, vertex,
                              residual);
}

// Winding of the vector relative to the corner-bisector frame; always ind - 1.
inline long long vector_ind_perp_at(const Mesh& m, const Connection& c,
                                    const VectorField& x,
                                    const std::vector<StarEntry>& star,
                                    int vertex, double* residual = nullptr) {
  auto values = detail::walk_values(star, x.theta);
  return detail::star_winding(m, c, star, values, {1.0, 1.0, 1.0, 0.0}, vertex,
                              residual);
}

// Indices of every interior vertex.  Boundary vertices carry no index.
inline DefectReport line_field_indices(const Mesh& m, const Connection& c,
                                       const LineField& lf) {
  if (static_cast<int>(lf.phi.size()) != m.face_count())
    throw Error(ErrorCode::BadParams, "field size does not match face count");
  DefectReport rep;
  rep.two_chi = 2LL * m.euler_characteristic();
  for (int v = 0; v < m.vertex_count; ++v) {
    if (m.vertex_on_boundary[v]) continue;
    auto star = vertex_star(m, v);
    DefectRecord r;
    r.vertex = v;
    r.p = line_p_at(m, c, lf, star, v, &rep.rounding_residual);
    r.p_perp = line_p_perp_at(m, c, lf, star, v, &rep.rounding_residual);
    r.orientable = (r.p % 2 == 0);
    rep.records.push_back(r);
    rep.sum_p += r.p;
  }
  rep.match = (rep.sum_p == rep.two_chi);
  return rep;
}

// Indices of a vector field.  The line columns (p, p_perp) describe the
// line traced by the vector: its doubled angle moves through twice each
// vector step, so p is accumulated as twice the vector increments rather
// than by re-reducing doubled differences, which would see a different
// (and odd-defect) line whenever a step exceeds a quarter turn.
inline DefectReport vector_field_indices(const Mesh& m, const Connection& c,
                                         const VectorField& x) {
  if (static_cast<int>(x.theta.size()) != m.face_count())
    throw Error(ErrorCode::BadParams, "field size does not match face count");
  DefectReport rep;
  rep.two_chi = 2LL * m.euler_characteristic();
  rep.has_vector = true;
  for (int v = 0; v < m.vertex_count; ++v) {
    if (m.vertex_on_boundary[v]) continue;
    auto star = vertex_star(m, v);
    auto values = detail::walk_values(star, x.theta);
    DefectRecord r;
    r.vertex = v;
    r.has_vector = true;
    r.ind = detail::star_winding(m, c, star, values,
                                 {1.0, 1.0, 0.0, c.omega(v)}, v,
                                 &rep.rounding_residual);
    r.ind_perp = detail::star_winding(m, c, star, values, {1.0, 1.0, 1.0, 0.0},
                                      v, &rep.rounding_residual);
    r.p = detail::star_winding(m, c, star, values,
                               {1.0, 2.0, 0.0, 2.0 * c.omega(v)}, v,
                               &rep.rounding_residual);
    r.p_perp = detail::star_winding(m, c, star, values, {1.0, 2.0, 2.0, 0.0},
                                    v, &rep.rounding_residual);
    r.orientable = (r.p % 2 == 0);
    rep.records.push_back(r);
    rep.sum_p += r.p;
    rep.sum_ind += r.ind;
  }
  rep.match = (rep.sum_p == rep.two_chi);
  return rep;
}

// Builds a line field on a closed sphere mesh whose defect table equals the
// requested targets.  The twist potential comes from a graph-Laplacian solve
// on the 1-skeleton; the field is then propagated over a dual spanning tree.
inline LineField prescribe_defects(const Mesh& m, const Connection& c,
                                   const std::map<int, int>& targets) {
  if (m.has_boundary() || m.component_count != 1 ||
      m.euler_characteristic() != 2)
    throw Error(ErrorCode::BadTopology,
                "defect prescription needs a closed connected sphere mesh");
  long long total = 0;
  for (const auto& [v, t] : targets) {
    if (v < 0 || v >= m.vertex_count)
      throw Error(ErrorCode::BadParams,
                  "target vertex " + std::to_string(v) + " out of range");
    total += t;
  }
  if (total != 2LL * m.euler_characteristic())
    throw Error(ErrorCode::BadSum,
                "targets sum to " + std::to_string(total) + ", need " +
                    std::to_string(2 * m.euler_characteristic()));

  // L y = b with one vertex pinned; b_v = 2*pi*t_v - 2*Omega_v sums to zero
  // by Gauss-Bonnet, so the pinned system is consistent.
  const int n = m.vertex_count;
  std::vector<double> b(n, 0.0);
  for (int v = 0; v < n; ++v) b[v] = -2.0 * c.omega(v);
  for (const auto& [v, t] : targets) b[v] += kTwoPi * t;

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(4 * m.edge_count());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n - 1);
  for (int v = 1; v < n; ++v) rhs[v - 1] = b[v];
  std::vector<double> degree(n, 0.0);
  for (int e = 0; e < m.edge_count(); ++e) {
    int u = m.edge_vertices[e][0], w = m.edge_vertices[e][1];
    degree[u] += 1.0;
    degree[w] += 1.0;
    if (u != 0 && w != 0) {
      trips.emplace_back(u - 1, w - 1, -1.0);
      trips.emplace_back(w - 1, u - 1, -1.0);
    }
  }
  for (int v = 1; v < n; ++v) trips.emplace_back(v - 1, v - 1, degree[v]);
  Eigen::SparseMatrix<double> L(n - 1, n - 1);
  L.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::BadTopology, "laplacian factorization failed");
  Eigen::VectorXd sol = solver.solve(rhs);

  std::vector<double> y(n, 0.0);
  for (int v = 1; v < n; ++v) y[v] = sol[v - 1];

  for (int e = 0; e < m.edge_count(); ++e) {
    double x = y[m.edge_vertices[e][1]] - y[m.edge_vertices[e][0]];
    if (std::abs(x) >= kPi - 1e-6)
      throw Error(ErrorCode::PrescriptionOverflow,
                  "edge twist " + std::to_string(x) + " on edge " +
                      std::to_string(e) + " exceeds the principal branch; "
                      "refine the mesh");
  }

  // Dual spanning tree propagation.  Crossing into face g over edge e adds
  // the edge twist oriented by g's stored halfedge, which makes every vertex
  // star pick up exactly (L y)_v = b_v and hence the requested defect.
  LineField lf;
  lf.phi.assign(m.face_count(), 0.0);
  std::vector<char> seen(m.face_count(), 0);
  seen[0] = 1;
  std::vector<int> queue{0};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int f = queue[qi];
    for (int i = 0; i < 3; ++i) {
      int e = m.face_edges[f][i];
      int g = m.other_face(e, f);
      if (g < 0 || seen[g]) continue;
      auto hg = m.halfedge_in_face(g, e);
      double twist = y[hg[0]] - y[hg[1]];
      lf.phi[g] =
          wrap_two_pi(c.transport_doubled(m, e, f, lf.phi[f]) + twist);
      seen[g] = 1;
      queue.push_back(g);
    }
  }

  DefectReport rep = line_field_indices(m, c, lf);
  for (const auto& r : rep.records) {
    auto it = targets.find(r.vertex);
    long long want = it == targets.end() ? 0 : it->second;
    if (r.p != want)
      throw Error(ErrorCode::Rounding,
                  "prescribed defect mismatch at vertex " +
                      std::to_string(r.vertex));
  }
  return lf;
}

// Extends a boundary-normal line field to the double.  The mirror copy of
// face f carries the reflected line; reflection across the seam fixes exactly
// the normal and tangent lines, so normality makes the seam continuous.
inline LineField mirror_field(const Mesh& base, const CornerAngles& base_angles,
                              const DoubledMesh& dbl, const LineField& lf) {
  if (static_cast<int>(lf.phi.size()) != base.face_count())
    throw Error(ErrorCode::BadParams, "field size does not match face count");
  std::string offenders;
  int offender_count = 0;
  for (int f = 0; f < base.face_count(); ++f) {
    for (int i = 0; i < 3; ++i) {
      int e = base.face_edges[f][i];
      if (!base.edge_is_boundary(e)) continue;
      double edge_dir = halfedge_chart_angle(base_angles, f, i);
      double resid =
          std::abs(principal(lf.phi[f] - 2.0 * edge_dir - kPi)) / 2.0;
      if (resid > 1e-6) {
        if (++offender_count <= 8)
          offenders += " " + std::to_string(f);
      }
    }
  }
  if (offender_count > 0)
    throw Error(ErrorCode::NotNormal,
                std::to_string(offender_count) +
                    " boundary faces are not normal to the boundary; faces:" +
                    offenders);

  LineField out;
  out.phi.assign(dbl.mesh.face_count(), 0.0);
  for (int f = 0; f < base.face_count(); ++f) {
    out.phi[f] = lf.phi[f];
    // Mirror chart map is phi -> -phi - 2*alpha_1 (mod 2*pi) for the stored
    // reversed vertex order.
    out.phi[dbl.mirror_face[f]] =
        wrap_two_pi(-lf.phi[f] - 2.0 * base_angles.at(f, 1));
  }
  return out;
}

// Corner angles for the double: mirror faces reuse the base angles at the
// reversed slots.
inline CornerAngles mirror_corner_angles(const Mesh& base,
                                         const CornerAngles& base_angles,
                                         const DoubledMesh& dbl) {
  CornerAngles out;
  out.alpha.assign(dbl.mesh.face_count(), {0, 0, 0});
  for (int f = 0; f < base.face_count(); ++f) {
    out.alpha[f] = base_angles.alpha[f];
    out.alpha[dbl.mirror_face[f]] = {base_angles.at(f, 2), base_angles.at(f, 1),
                                     base_angles.at(f, 0)};
  }
  return out;
}

}  // namespace linefields
