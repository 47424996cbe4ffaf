#pragma once

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "linefields/error.hpp"
#include "linefields/mesh.hpp"

namespace linefields {

namespace detail {

// Splits an OFF file into meaningful lines, dropping blanks and '#' comments
// while remembering 1-based source line numbers for diagnostics.
inline std::vector<std::pair<int, std::string>> off_lines(
    const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  int num = 0;
  while (std::getline(in, line)) {
    ++num;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t\r\n") == std::string::npos;
    if (!blank) out.emplace_back(num, line);
  }
  return out;
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

// ASCII OFF reader.  Vertex positions are retained on the mesh; the edge
// count in the header is ignored.  The mesh is validated by build_mesh.
inline Mesh parse_off(const std::string& text) {
  auto lines = detail::off_lines(text);
  size_t li = 0;
  auto need_line = [&](const char* what) -> std::pair<int, std::string>& {
    if (li >= lines.size())
      detail::parse_fail(lines.empty() ? 1 : lines.back().first,
                         std::string("unexpected end of file, expected ") + what);
    return lines[li++];
  };

  {
    auto& [num, header] = need_line("OFF header");
    std::istringstream hs(header);
    std::string tag;
    hs >> tag;
    std::string rest;
    if (tag != "OFF" || (hs >> rest))
      detail::parse_fail(num, "expected OFF header");
  }

  long long nv = 0, nf = 0, ne = 0;
  {
    auto& [num, counts] = need_line("counts line");
    std::istringstream cs(counts);
    std::string extra;
    if (!(cs >> nv >> nf >> ne) || (cs >> extra))
      detail::parse_fail(num, "expected vertex/face/edge counts");
    if (nv < 0 || nf < 0)
      detail::parse_fail(num, "negative counts");
  }

  std::vector<std::array<double, 3>> pos;
  pos.reserve(nv);
  for (long long i = 0; i < nv; ++i) {
    auto& [num, line] = need_line("vertex line");
    std::istringstream vs(line);
    std::array<double, 3> p{};
    std::string extra;
    if (!(vs >> p[0] >> p[1] >> p[2]) || (vs >> extra))
      detail::parse_fail(num, "expected three vertex coordinates");
    pos.push_back(p);
  }

  std::vector<std::array<int, 3>> faces;
  faces.reserve(nf);
  for (long long i = 0; i < nf; ++i) {
    auto& [num, line] = need_line("face line");
    std::istringstream fs(line);
    long long arity = 0;
    if (!(fs >> arity)) detail::parse_fail(num, "expected face vertex count");
    if (arity != 3)
      throw Error(ErrorCode::NonTriangular,
                  "line " + std::to_string(num) + ": face with " +
                      std::to_string(arity) + " vertices");
    std::array<int, 3> tri{};
    std::string extra;
    if (!(fs >> tri[0] >> tri[1] >> tri[2]) || (fs >> extra))
      detail::parse_fail(num, "expected three vertex indices");
    faces.push_back(tri);
  }
  if (li < lines.size())
    detail::parse_fail(lines[li].first, "trailing content");

  return build_mesh(static_cast<int>(nv), std::move(faces), std::move(pos));
}

// Canonical ASCII OFF writer; parse_off followed by write_off normalizes any
// accepted file to this form.  Meshes without positions write origin points.
inline std::string write_off(const Mesh& m) {
  std::string out = "OFF\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d %d %d\n", m.vertex_count, m.face_count(),
                m.edge_count());
  out += buf;
  for (int v = 0; v < m.vertex_count; ++v) {
    std::array<double, 3> p =
        m.has_positions() ? m.positions[v] : std::array<double, 3>{0, 0, 0};
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p[0], p[1], p[2]);
    out += buf;
  }
  for (const auto& t : m.faces) {
    std::snprintf(buf, sizeof(buf), "3 %d %d %d\n", t[0], t[1], t[2]);
    out += buf;
  }
  return out;
}

}  // namespace linefields
