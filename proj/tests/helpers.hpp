#pragma once

#include <array>
#include <vector>

#include "linefields/mesh.hpp"

namespace helpers {

// Möbius–Kantor style 7-vertex triangulation of the flat torus: every vertex
// has valence 6 and every face is equilateral in the intrinsic metric.
inline linefields::Mesh seven_vertex_torus() {
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 3) % 7, (i + 2) % 7});
  }
  return linefields::build_mesh(7, faces);
}

}  // namespace helpers
