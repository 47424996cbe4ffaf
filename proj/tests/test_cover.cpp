#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "linefields/catalog.hpp"
#include "linefields/cover.hpp"

#include "helpers.hpp"

using namespace linefields;

namespace {

void require_all_pass(const VerificationReport& rep) {
  for (const auto& chk : rep.checks) {
    INFO(chk.name << ": lhs=" << chk.lhs << " rhs=" << chk.rhs);
    if (!chk.informational) REQUIRE(chk.pass);
  }
}

}  // namespace

TEST_CASE("even field splits the cover into two sheets") {
  SymmetricMesh sm = icosahedron();
  Connection c =
      build_connection(sm.mesh, corner_angles(sm.mesh, Metric::Equilateral));
  GeneratedField gf = generate_field({"two_pole", {}}, sm.mesh, c);

  SignCocycle sc = sign_cocycle(sm.mesh, c, gf.line);
  for (int v = 0; v < sm.mesh.vertex_count; ++v)
    REQUIRE(sc.monodromy(sm.mesh, v) == 1);

  LiftResult lift = lift_line_field(sm.mesh, c, gf.line);
  REQUIRE(lift.ok);

  BranchedCover bc = branched_double_cover(sm.mesh, c, gf.line);
  REQUIRE(bc.branch_vertices.empty());
  REQUIRE(bc.mesh.component_count == 2);
  REQUIRE(bc.mesh.euler_characteristic() == 4);
  require_all_pass(cover_index_checks(bc));
}

TEST_CASE("baseball cover is a torus branched at four points") {
  Mesh m = icosphere(2).mesh;
  Connection c = build_connection(m, corner_angles(m, Metric::Equilateral));
  GeneratedField gf = generate_field({"baseball", {}}, m, c);

  DefectReport base = line_field_indices(m, c, gf.line);
  std::set<int> odd;
  for (const auto& r : base.records)
    if (r.p % 2 != 0) odd.insert(r.vertex);
  REQUIRE(odd.size() == 4);

  SignCocycle sc = sign_cocycle(m, c, gf.line);
  for (int v = 0; v < m.vertex_count; ++v)
    REQUIRE(sc.monodromy(m, v) == (odd.count(v) ? -1 : 1));

  BranchedCover bc = branched_double_cover(m, c, gf.line);
  REQUIRE(bc.branch_vertices.size() == 4);
  REQUIRE(bc.mesh.component_count == 1);
  REQUIRE(bc.mesh.euler_characteristic() == 0);
  REQUIRE(orientability(bc.mesh).orientable);
  require_all_pass(cover_index_checks(bc));

  DefectReport cover_rep = vector_field_indices(bc.mesh, bc.conn, bc.lifted);
  REQUIRE(cover_rep.sum_ind == 0);
  for (int v : bc.branch_vertices) {
    REQUIRE(bc.fiber[v].size() == 1);
    int y = bc.fiber[v][0];
    for (const auto& r : cover_rep.records)
      if (r.vertex == y) {
        REQUIRE(r.ind == 0);
        REQUIRE(r.ind_perp == -1);
      }
  }
}

TEST_CASE("projective radial field is covered by the icosahedron") {
  Mesh m = rp2_minimal();
  Connection c = build_connection(m, corner_angles(m, Metric::Equilateral));
  REQUIRE_FALSE(orientability(m).orientable);

  LineField lf = rp2_radial_field(m);
  DefectReport rep = line_field_indices(m, c, lf);
  REQUIRE(rep.sum_p == 2);

  BranchedCover bc = branched_double_cover(m, c, lf);
  REQUIRE(bc.branch_vertices.empty());
  REQUIRE(bc.mesh.component_count == 1);
  REQUIRE(bc.mesh.vertex_count == 12);
  REQUIRE(bc.mesh.edge_count() == 30);
  REQUIRE(bc.mesh.face_count() == 20);
  REQUIRE(orientability(bc.mesh).orientable);
  for (int v = 0; v < bc.mesh.vertex_count; ++v)
    REQUIRE(vertex_star(bc.mesh, v).size() == 5);
  require_all_pass(cover_index_checks(bc));

  REQUIRE_FALSE(lift_line_field(m, c, lf).ok);

  DefectReport cover_rep = vector_field_indices(bc.mesh, bc.conn, bc.lifted);
  REQUIRE(cover_rep.sum_ind == 2);
}

TEST_CASE("lifted fields double back to the original line field") {
  // The two-pole field is even everywhere, so it lifts; its lift must trace
  // the same lines, and doubling the lift recovers a liftable field whose
  // cover splits.  A torus parallel field covers the orientable flat case.
  Mesh m = icosphere(0).mesh;
  Connection c = build_connection(m, corner_angles(m, Metric::Equilateral));
  GeneratedField gf = generate_field({"two_pole", {}}, m, c);

  LiftResult lift = lift_line_field(m, c, gf.line);
  REQUIRE(lift.ok);
  for (int f = 0; f < m.face_count(); ++f)
    REQUIRE(std::abs(principal(2.0 * lift.field.theta[f] - gf.line.phi[f])) <
            1e-9);
  DefectReport vec_rep = vector_field_indices(m, c, lift.field);
  REQUIRE(vec_rep.sum_ind == 2);

  LineField redoubled = line_field_of_vector_field(lift.field);
  BranchedCover bc = branched_double_cover(m, c, redoubled);
  REQUIRE(bc.mesh.component_count == 2);
  require_all_pass(cover_index_checks(bc));

  Mesh torus = torus_grid(4, 4);
  Connection tc = build_connection(torus, corner_angles(torus, Metric::Equilateral));
  ParallelResult pr = propagate_parallel(torus, tc, 1.0);
  REQUIRE(pr.ok);
  LineField doubled = line_field_of_vector_field(VectorField{pr.values});
  LiftResult tlift = lift_line_field(torus, tc, doubled);
  REQUIRE(tlift.ok);
  for (int f = 0; f < torus.face_count(); ++f)
    REQUIRE(std::abs(principal(2.0 * tlift.field.theta[f] - doubled.phi[f])) <
            1e-9);
  BranchedCover tbc = branched_double_cover(torus, tc, doubled);
  REQUIRE(tbc.mesh.component_count == 2);
  require_all_pass(cover_index_checks(tbc));
}

TEST_CASE("klein bottle fiber line field lifts, its normal does not") {
  Mesh m = klein_grid(4, 4);
  Connection c = build_connection(m, corner_angles(m, Metric::Equilateral));
  REQUIRE_FALSE(orientability(m).orientable);

  ParallelResult pr = propagate_parallel(m, c, 1.0);
  REQUIRE(pr.ok);
  LineField fiber = line_field_of_vector_field(VectorField{pr.values});
  REQUIRE(lift_line_field(m, c, fiber).ok);

  LineField normal;
  normal.phi.reserve(fiber.phi.size());
  for (double phi : fiber.phi) normal.phi.push_back(wrap_two_pi(phi + kPi));
  LiftResult lift = lift_line_field(m, c, normal);
  REQUIRE_FALSE(lift.ok);

  // The reported dual walk really is closed and sign-odd.
  const auto& walk = lift.obstruction_faces;
  REQUIRE(walk.size() >= 2);
  SignCocycle sc = sign_cocycle(m, c, normal);
  int prod = 1;
  for (size_t i = 0; i < walk.size(); ++i) {
    int f = walk[i], g = walk[(i + 1) % walk.size()];
    int shared = -1;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (m.face_edges[f][a] == m.face_edges[g][b])
          shared = m.face_edges[f][a];
    REQUIRE(shared >= 0);
    prod *= sc.sign[shared];
  }
  REQUIRE(prod == -1);

  BranchedCover bc = branched_double_cover(m, c, normal);
  REQUIRE(bc.branch_vertices.empty());
  REQUIRE(bc.mesh.component_count == 1);
  require_all_pass(cover_index_checks(bc));
}

TEST_CASE("quotient input validation") {
  SymmetricMesh sm = icosahedron();
  CornerAngles a = corner_angles(sm.mesh, Metric::Equilateral);

  std::vector<int> identity(sm.mesh.vertex_count);
  for (int v = 0; v < sm.mesh.vertex_count; ++v) identity[v] = v;
  try {
    quotient_by_involution(sm.mesh, a, identity);
    FAIL("expected HAS_FIXED_POINTS");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::HasFixedPoints);
  }

  std::vector<int> broken = identity;
  broken[0] = 1;
  broken[1] = 2;
  broken[2] = 0;
  try {
    quotient_by_involution(sm.mesh, a, broken);
    FAIL("expected BAD_PARAMS");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::BadParams);
  }

  LineField random = random_line_field(sm.mesh, 11);
  try {
    quotient_by_involution(sm.mesh, a, sm.antipode, &random);
    FAIL("expected NOT_INVARIANT");
  } catch (const Error& e) {
    REQUIRE(e.code() == ErrorCode::NotInvariant);
  }
}

TEST_CASE("symmetrized two-pole field descends to the quotient") {
  SymmetricMesh sm = icosphere(1);
  CornerAngles a = corner_angles(sm.mesh, Metric::Equilateral);
  Connection c = build_connection(sm.mesh, a);
  GeneratedField gf = generate_field({"two_pole", {}}, sm.mesh, c);

  LineField lf = gf.line;
  symmetrize_under_involution(sm.mesh, a, sm.antipode, lf);
  QuotientResult q = quotient_by_involution(sm.mesh, a, sm.antipode, &lf);

  REQUIRE(q.mesh.vertex_count == 21);
  REQUIRE(q.mesh.euler_characteristic() == 1);
  REQUIRE_FALSE(orientability(q.mesh).orientable);

  Connection qc = build_connection(q.mesh, q.angles);
  DefectReport rep = line_field_indices(q.mesh, qc, q.field);
  REQUIRE(rep.sum_p == 2);
  for (const auto& r : rep.records)
    REQUIRE(r.p == (r.vertex == q.vertex_map[0] ? 2 : 0));
}

TEST_CASE("deck transformation squares to the identity") {
  Mesh m = helpers::seven_vertex_torus();
  Connection c = build_connection(m, corner_angles(m, Metric::Equilateral));
  LineField lf = random_line_field(m, 29);
  BranchedCover bc = branched_double_cover(m, c, lf);
  for (int f = 0; f < bc.mesh.face_count(); ++f)
    REQUIRE(bc.deck_face[bc.deck_face[f]] == f);
  for (int y = 0; y < bc.mesh.vertex_count; ++y) {
    REQUIRE(bc.deck_vertex[bc.deck_vertex[y]] == y);
    REQUIRE(bc.sheet_map[bc.deck_face[0]][0] == bc.sheet_map[0][0]);
  }
  require_all_pass(cover_index_checks(bc));
}
