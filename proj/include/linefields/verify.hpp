#pragma once

#include <string>

#include "linefields/connection.hpp"
#include "linefields/cover.hpp"
#include "linefields/error.hpp"
#include "linefields/fields.hpp"
#include "linefields/mesh.hpp"
#include "linefields/report.hpp"

namespace linefields {

namespace detail {

inline void append_closed_line_checks(VerificationReport& rep, const Mesh& m,
                                      const Connection& c, const LineField& lf,
                                      const std::string& prefix) {
  DefectReport dr = line_field_indices(m, c, lf);
  long long chi = m.euler_characteristic();
  rep.add(prefix + "poincare_hopf_line", static_cast<double>(dr.sum_p),
          static_cast<double>(2 * chi), 0.0,
          "sum of line defect indices p against 2*chi");
  rep.add(prefix + "hopf_sum", dr.sum_p / 2.0, static_cast<double>(chi), 0.0,
          "sum of hopf indices p/2 against chi");

  long long shift_bad = 0, odd = 0;
  for (const DefectRecord& r : dr.records) {
    if (r.p_perp != r.p - 2) ++shift_bad;
    if (!r.orientable) ++odd;
  }
  rep.add(prefix + "p_perp_shift", static_cast<double>(shift_bad), 0.0, 0.0,
          "vertices violating p_perp == p - 2");
  rep.add(prefix + "markus", static_cast<double>(dr.sum_p),
          static_cast<double>(2 * chi - odd), 0.0,
          "sum_p against 2*chi - (number of non-orientable points)", true);

  SignCocycle sc = sign_cocycle(m, c, lf);
  long long parity_bad = 0;
  for (const DefectRecord& r : dr.records)
    if ((sc.monodromy(m, r.vertex) == 1) != r.orientable) ++parity_bad;
  rep.add(prefix + "monodromy_parity", static_cast<double>(parity_bad), 0.0,
          0.0, "p parity against the sign-cocycle monodromy");

  BranchedCover bc = branched_double_cover(m, c, lf);
  VerificationReport cover_rep = cover_index_checks(bc);
  for (Check chk : cover_rep.checks) {
    chk.name = prefix + chk.name;
    rep.checks.push_back(chk);
  }
}

inline void append_boundary_line_checks(VerificationReport& rep, const Mesh& m,
                                        const Connection& c,
                                        const CornerAngles& angles,
                                        const LineField& lf) {
  DoubledMesh dbl = double_along_boundary(m);
  LineField mirrored = mirror_field(m, angles, dbl, lf);
  CornerAngles dbl_angles = mirror_corner_angles(m, angles, dbl);
  Connection dbl_conn = build_connection(dbl.mesh, dbl_angles);

  DefectReport interior = line_field_indices(m, c, lf);
  rep.add("boundary_interior_sum", static_cast<double>(interior.sum_p),
          static_cast<double>(2 * m.euler_characteristic()), 0.0,
          "interior defect sum of a normal field against 2*chi of the base");
  append_closed_line_checks(rep, dbl.mesh, dbl_conn, mirrored, "double_");
}

}  // namespace detail

inline VerificationReport run_checks(const Mesh& m, const Connection& c,
                                     const CornerAngles& angles,
                                     const LineField& lf) {
  VerificationReport rep;
  try {
    if (m.has_boundary())
      detail::append_boundary_line_checks(rep, m, c, angles, lf);
    else
      detail::append_closed_line_checks(rep, m, c, lf, "");
  } catch (const Error& e) {
    rep.add(std::string("error(") + error_code_name(e.code()) + ")", 1.0, 0.0,
            0.0, e.what());
  }
  return rep;
}

inline VerificationReport run_checks(const Mesh& m, const Connection& c,
                                     const CornerAngles& angles,
                                     const VectorField& vf) {
  VerificationReport rep;
  try {
    LineField lf = line_field_of_vector_field(vf);
    if (m.has_boundary()) {
      detail::append_boundary_line_checks(rep, m, c, angles, lf);
      return rep;
    }
    DefectReport dr = vector_field_indices(m, c, vf);
    long long chi = m.euler_characteristic();
    rep.add("poincare_hopf_vector", static_cast<double>(dr.sum_ind),
            static_cast<double>(chi), 0.0,
            "sum of vector indices against chi");
    long long shift_bad = 0, doubling_bad = 0;
    for (const DefectRecord& r : dr.records) {
      if (r.ind_perp != r.ind - 1) ++shift_bad;
      if (r.p != 2 * r.ind) ++doubling_bad;
    }
    rep.add("ind_perp_shift", static_cast<double>(shift_bad), 0.0, 0.0,
            "vertices violating ind_perp == ind - 1");
    rep.add("vector_doubling", static_cast<double>(doubling_bad), 0.0, 0.0,
            "vertices violating p == 2*ind for the doubled field");
    detail::append_closed_line_checks(rep, m, c, lf, "");
  } catch (const Error& e) {
    rep.add(std::string("error(") + error_code_name(e.code()) + ")", 1.0, 0.0,
            0.0, e.what());
  }
  return rep;
}

inline VerificationReport run_checks(const Mesh& m, const Connection& c,
                                     const CornerAngles& angles,
                                     const GeneratedField& gf) {
  return gf.is_line ? run_checks(m, c, angles, gf.line)
                    : run_checks(m, c, angles, gf.vector);
}

}  // namespace linefields
