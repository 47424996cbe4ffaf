#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "linefields/connection.hpp"
#include "linefields/fields.hpp"
#include "linefields/mesh.hpp"

// Reference implementations used to pin down the index conventions.  They
// work by laying star wedges flat (or by exhaustive search) and never touch
// the Connection transport tables.
namespace oracles {

using linefields::CornerAngles;
using linefields::halfedge_chart_angle;
using linefields::kPi;
using linefields::kTwoPi;
using linefields::LineField;
using linefields::Mesh;
using linefields::principal;
using linefields::StarEntry;
using linefields::VectorField;

inline double ray_toward_next(const CornerAngles& a, int f, int slot) {
  return halfedge_chart_angle(a, f, slot);
}

inline double ray_toward_prev(const CornerAngles& a, int f, int slot) {
  return halfedge_chart_angle(a, f, (slot + 2) % 3) + kPi;
}

// Star wedges laid flat one after another.  `direction` maps a chart angle
// in wedge j to the common unfolded frame; flipped wedges reverse it.
struct UnfoldedStar {
  std::vector<StarEntry> entries;
  std::vector<double> start;
  std::vector<double> width;
  double cone = 0.0;
  const CornerAngles* angles = nullptr;

  double direction(size_t j, double chart_psi) const {
    const StarEntry& s = entries[j];
    if (!s.flip)
      return chart_psi - ray_toward_next(*angles, s.face, s.slot) + start[j];
    return ray_toward_prev(*angles, s.face, s.slot) - chart_psi + start[j];
  }
  double doubled(size_t j, double chart_phi) const {
    const StarEntry& s = entries[j];
    if (!s.flip)
      return chart_phi - 2.0 * ray_toward_next(*angles, s.face, s.slot) +
             2.0 * start[j];
    return 2.0 * ray_toward_prev(*angles, s.face, s.slot) - chart_phi +
           2.0 * start[j];
  }
};

inline UnfoldedStar unfold_star(const Mesh& m, const CornerAngles& a, int v) {
  UnfoldedStar u;
  u.angles = &a;
  u.entries = linefields::vertex_star(m, v);
  double c = 0.0;
  for (const StarEntry& s : u.entries) {
    u.start.push_back(c);
    u.width.push_back(a.at(s.face, s.slot));
    c += a.at(s.face, s.slot);
  }
  u.cone = c;
  return u;
}

inline long long winding_of(double total, double* residual = nullptr) {
  long long rounded = std::llround(total / kTwoPi);
  if (residual) *residual = std::abs(total - kTwoPi * rounded);
  return rounded;
}

inline long long vector_index(const Mesh& m, const CornerAngles& a,
                              const VectorField& vf, int v,
                              double* residual = nullptr) {
  UnfoldedStar u = unfold_star(m, a, v);
  size_t n = u.entries.size();
  std::vector<double> dir(n);
  for (size_t j = 0; j < n; ++j)
    dir[j] = u.direction(j, vf.theta[u.entries[j].face]);
  double total = kTwoPi - u.cone;
  for (size_t j = 0; j + 1 < n; ++j) total += principal(dir[j + 1] - dir[j]);
  total += principal(dir[0] + u.cone - dir[n - 1]);
  return winding_of(total, residual);
}

inline long long line_p(const Mesh& m, const CornerAngles& a,
                        const LineField& lf, int v,
                        double* residual = nullptr) {
  UnfoldedStar u = unfold_star(m, a, v);
  size_t n = u.entries.size();
  std::vector<double> dbl(n);
  for (size_t j = 0; j < n; ++j)
    dbl[j] = u.doubled(j, lf.phi[u.entries[j].face]);
  double total = 2.0 * (kTwoPi - u.cone);
  for (size_t j = 0; j + 1 < n; ++j) total += principal(dbl[j + 1] - dbl[j]);
  total += principal(dbl[0] + 2.0 * u.cone - dbl[n - 1]);
  return winding_of(total, residual);
}

// Dense sampling of the field direction itself around the star loop,
// following its continuous lift; the cone-closing rotation is added at the
// end.  The direction is constant inside each unfolded wedge, so the sample
// grid only has to be fine enough that no wedge is skipped.
inline long long sampled_winding(const UnfoldedStar& u,
                                 const std::vector<double>& value,
                                 double cone_scale, double step) {
  size_t n = u.entries.size();
  double acc = 0.0;
  double prev = value[0];
  for (size_t j = 0; j < n; ++j) {
    acc += principal(value[j] - prev);
    prev = value[j];
    int k = std::max(1, static_cast<int>(std::ceil(u.width[j] / step)));
    for (int s = 1; s <= k; ++s) {
      acc += principal(value[j] - prev);
      prev = value[j];
    }
  }
  acc += principal(value[0] + cone_scale * u.cone - prev);
  acc += cone_scale * (kTwoPi - u.cone);
  return winding_of(acc);
}

inline long long sampled_vector_index(const Mesh& m, const CornerAngles& a,
                                      const VectorField& vf, int v,
                                      double step = 0.05) {
  UnfoldedStar u = unfold_star(m, a, v);
  std::vector<double> value(u.entries.size());
  for (size_t j = 0; j < u.entries.size(); ++j)
    value[j] = u.direction(j, vf.theta[u.entries[j].face]);
  return sampled_winding(u, value, 1.0, step);
}

inline long long sampled_line_p(const Mesh& m, const CornerAngles& a,
                                const LineField& lf, int v,
                                double step = 0.05) {
  UnfoldedStar u = unfold_star(m, a, v);
  std::vector<double> value(u.entries.size());
  for (size_t j = 0; j < u.entries.size(); ++j)
    value[j] = u.doubled(j, lf.phi[u.entries[j].face]);
  return sampled_winding(u, value, 2.0, step);
}

// Dense sampling of the scalar (field direction minus the radial ray at
// unfolded angle t), following its continuous lift around the star loop.
inline long long sampled_perp_winding(const UnfoldedStar& u,
                                      const std::vector<double>& value,
                                      double frame_mult, double step) {
  size_t n = u.entries.size();
  double acc = 0.0;
  double prev = value[0];
  for (size_t j = 0; j < n; ++j) {
    acc += principal((value[j] - frame_mult * u.start[j]) - prev);
    prev = value[j] - frame_mult * u.start[j];
    int k = std::max(1, static_cast<int>(std::ceil(u.width[j] / step)));
    for (int s = 1; s <= k; ++s) {
      double t = u.start[j] + u.width[j] * s / k;
      acc += principal((value[j] - frame_mult * t) - prev);
      prev = value[j] - frame_mult * t;
    }
  }
  acc += principal(value[0] - prev);
  return winding_of(acc);
}

inline long long vector_index_perp(const Mesh& m, const CornerAngles& a,
                                   const VectorField& vf, int v,
                                   double step = 0.05) {
  UnfoldedStar u = unfold_star(m, a, v);
  std::vector<double> value(u.entries.size());
  for (size_t j = 0; j < u.entries.size(); ++j)
    value[j] = u.direction(j, vf.theta[u.entries[j].face]);
  return sampled_perp_winding(u, value, 1.0, step);
}

inline long long line_p_perp(const Mesh& m, const CornerAngles& a,
                             const LineField& lf, int v, double step = 0.05) {
  UnfoldedStar u = unfold_star(m, a, v);
  std::vector<double> value(u.entries.size());
  for (size_t j = 0; j < u.entries.size(); ++j)
    value[j] = u.doubled(j, lf.phi[u.entries[j].face]);
  return sampled_perp_winding(u, value, 2.0, step);
}

// Transfer of a direction angle into `target` across edge e, rebuilt from
// the chart layout alone: theta_target = o * theta_other + rho.
struct EdgeTransfer {
  int o = 0;
  double rho = 0.0;
};

inline EdgeTransfer transfer_into(const Mesh& m, const CornerAngles& a, int e,
                                  int target) {
  int other = m.other_face(e, target);
  int slot_t = -1, slot_o = -1;
  for (int i = 0; i < 3; ++i) {
    if (m.face_edges[target][i] == e) slot_t = i;
    if (m.face_edges[other][i] == e) slot_o = i;
  }
  double at = halfedge_chart_angle(a, target, slot_t);
  double ao = halfedge_chart_angle(a, other, slot_o);
  auto ht = m.halfedge_in_face(target, e);
  auto ho = m.halfedge_in_face(other, e);
  if (ht[0] == ho[1]) return {+1, principal(at - ao + kPi)};
  return {-1, principal(at + ao)};
}

// Exhaustive search over per-face vector representatives of a line field
// around one star; the line is orientable there iff some assignment makes
// every crossing agree to within a quarter turn.
inline bool star_orientable(const Mesh& m, const CornerAngles& a,
                            const LineField& lf, int v) {
  auto star = linefields::vertex_star(m, v);
  size_t n = star.size();
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    bool ok = true;
    for (size_t j = 0; j < n && ok; ++j) {
      size_t jn = (j + 1) % n;
      int e = star[j].exit_edge;
      int f = star[j].face, g = star[jn].face;
      double tf = lf.phi[f] / 2.0 + ((mask >> j) & 1 ? kPi : 0.0);
      double tg = lf.phi[g] / 2.0 + ((mask >> jn) & 1 ? kPi : 0.0);
      EdgeTransfer t = transfer_into(m, a, e, g);
      if (std::abs(principal(tg - (t.o * tf + t.rho))) >= kPi / 2.0) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// Same search over the whole mesh (small meshes only).
inline bool global_orientable_line(const Mesh& m, const CornerAngles& a,
                                   const LineField& lf) {
  int F = m.face_count();
  for (std::uint64_t mask = 0; mask < (1ull << F); ++mask) {
    bool ok = true;
    for (int e = 0; e < m.edge_count() && ok; ++e) {
      if (m.edge_is_boundary(e)) continue;
      int f = m.edge_faces[e][0], g = m.edge_faces[e][1];
      double tf = lf.phi[f] / 2.0 + ((mask >> f) & 1 ? kPi : 0.0);
      double tg = lf.phi[g] / 2.0 + ((mask >> g) & 1 ? kPi : 0.0);
      EdgeTransfer t = transfer_into(m, a, e, g);
      if (std::abs(principal(tg - (t.o * tf + t.rho))) >= kPi / 2.0) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// Every sign assignment tried outright; only for very small meshes.
inline bool mesh_orientable_exhaustive(const Mesh& m) {
  int F = m.face_count();
  for (std::uint64_t mask = 0; mask < (1ull << F); ++mask) {
    bool ok = true;
    for (int e = 0; e < m.edge_count() && ok; ++e) {
      if (m.edge_is_boundary(e)) continue;
      int f = m.edge_faces[e][0], g = m.edge_faces[e][1];
      auto hf = m.halfedge_in_face(f, e);
      auto hg = m.halfedge_in_face(g, e);
      bool same = ((mask >> f) & 1) == ((mask >> g) & 1);
      if ((hf[0] == hg[1]) != same) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// Backtracking orientation assignment straight off the face arrays.
inline bool mesh_orientable(const Mesh& m) {
  std::vector<int> sign(m.face_count(), 0);
  for (int seed = 0; seed < m.face_count(); ++seed) {
    if (sign[seed] != 0) continue;
    sign[seed] = 1;
    std::vector<int> stack{seed};
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3; ++i) {
        int e = m.face_edges[f][i];
        int g = m.other_face(e, f);
        if (g < 0) continue;
        auto hf = m.halfedge_in_face(f, e);
        auto hg = m.halfedge_in_face(g, e);
        int want = hf[0] == hg[1] ? sign[f] : -sign[f];
        if (sign[g] == 0) {
          sign[g] = want;
          stack.push_back(g);
        } else if (sign[g] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace oracles
