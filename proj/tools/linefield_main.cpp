#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linefields/linefields.hpp"

namespace {

using namespace linefields;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 3;
    case ErrorCode::BadParams:
      return 2;
    default:
      return 1;
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> params;
  for (const std::string& group : raw) {
    std::stringstream ss(group);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error(ErrorCode::BadParams,
                    "parameter '" + item + "' is not name=value");
      std::string name = item.substr(0, eq);
      try {
        size_t used = 0;
        double value = std::stod(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1) throw std::invalid_argument(item);
        params[name] = value;
      } catch (const std::exception&) {
        throw Error(ErrorCode::BadParams,
                    "parameter '" + item + "' has no numeric value");
      }
    }
  }
  return params;
}

Metric metric_from(const std::string& name) {
  if (name == "equilateral") return Metric::Equilateral;
  if (name == "planar") return Metric::Planar;
  throw Error(ErrorCode::BadParams, "unknown metric '" + name + "'");
}

Mesh load_mesh(const std::string& path) {
  return parse_off(read_text_file(path));
}

GeneratedField load_field(const std::string& path, const Mesh& m) {
  GeneratedField gf = field_from_json(read_text_file(path));
  size_t n = gf.is_line ? gf.line.phi.size() : gf.vector.theta.size();
  if (static_cast<int>(n) != m.face_count())
    throw Error(ErrorCode::ParseError,
                "field has " + std::to_string(n) + " faces but the mesh has " +
                    std::to_string(m.face_count()));
  return gf;
}

nlohmann::json mesh_summary(const Mesh& m) {
  nlohmann::json j;
  j["vertices"] = m.vertex_count;
  j["edges"] = m.edge_count();
  j["faces"] = m.face_count();
  j["chi"] = m.euler_characteristic();
  j["boundary"] = m.has_boundary();
  j["orientable"] = orientability(m).orientable;
  j["components"] = m.component_count;
  return j;
}

DefectReport analyze_field(const Mesh& m, const Connection& c,
                           const GeneratedField& gf) {
  return gf.is_line ? line_field_indices(m, c, gf.line)
                    : vector_field_indices(m, c, gf.vector);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"defect indices of line fields on triangulated surfaces"};
  app.require_subcommand(1);

  std::string mesh_path, field_path, out_path, out_mesh_path, out_field_path;
  std::string name, metric_name = "equilateral";
  std::vector<std::string> raw_params;

  auto add_metric = [&](CLI::App* cmd) {
    cmd->add_option("--metric", metric_name, "equilateral or planar")
        ->check(CLI::IsMember({"equilateral", "planar"}));
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a catalog mesh as OFF");
  gen->add_option("--name", name, "catalog mesh name")->required();
  gen->add_option("--params", raw_params, "name=value[,name=value...]");
  gen->add_option("--out", out_path, "output path (default stdout)");

  CLI::App* genfield =
      app.add_subcommand("genfield", "generate a catalog field for a mesh");
  genfield->add_option("--name", name, "catalog field name")->required();
  genfield->add_option("--params", raw_params, "name=value[,name=value...]");
  genfield->add_option("--mesh", mesh_path, "OFF mesh path")->required();
  genfield->add_option("--out", out_path, "output path (default stdout)");
  add_metric(genfield);

  CLI::App* analyze =
      app.add_subcommand("analyze", "defect indices of a field on a mesh");
  analyze->add_option("--mesh", mesh_path, "OFF mesh path")->required();
  analyze->add_option("--field", field_path, "field JSON path")->required();
  analyze->add_option("--out", out_path, "output path (default stdout)");
  add_metric(analyze);

  CLI::App* verify =
      app.add_subcommand("verify", "run the index identity checks");
  verify->add_option("--mesh", mesh_path, "OFF mesh path")->required();
  verify->add_option("--field", field_path, "field JSON path")->required();
  verify->add_option("--out", out_path, "output path (default stdout)");
  add_metric(verify);

  CLI::App* cover =
      app.add_subcommand("cover", "branched double cover with lifted field");
  cover->add_option("--mesh", mesh_path, "OFF mesh path")->required();
  cover->add_option("--field", field_path, "field JSON path")->required();
  cover->add_option("--out", out_path, "sidecar JSON path (default stdout)");
  cover->add_option("--out-mesh", out_mesh_path, "cover OFF path");
  cover->add_option("--out-field", out_field_path, "lifted field JSON path");
  add_metric(cover);

  CLI::App* render = app.add_subcommand("render", "render a field as SVG");
  render->add_option("--mesh", mesh_path, "OFF mesh path")->required();
  render->add_option("--field", field_path, "field JSON path")->required();
  render->add_option("--out", out_path, "output path (default stdout)");
  add_metric(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      CatalogKey key{name, parse_params(raw_params)};
      write_output(write_off(generate_mesh(key)), out_path);
      return 0;
    }

    Mesh m = load_mesh(mesh_path);
    Metric metric = metric_from(metric_name);

    if (genfield->parsed()) {
      CornerAngles angles = corner_angles(m, metric);
      Connection conn = build_connection(m, angles);
      CatalogKey key{name, parse_params(raw_params)};
      GeneratedField gf = generate_field(key, m, conn);
      write_output(field_to_json(gf).dump(2) + "\n", out_path);
      return 0;
    }

    GeneratedField gf = load_field(field_path, m);
    CornerAngles angles = corner_angles(m, metric);
    Connection conn = build_connection(m, angles);

    if (analyze->parsed()) {
      nlohmann::json j = defect_report_to_json(analyze_field(m, conn, gf));
      j["mesh"] = mesh_summary(m);
      j["metric"] = metric_name;
      j["kind"] = gf.is_line ? "line" : "vector";
      write_output(j.dump(2) + "\n", out_path);
      return 0;
    }
    if (verify->parsed()) {
      VerificationReport rep = run_checks(m, conn, angles, gf);
      nlohmann::json j = verification_to_json(rep);
      j["mesh"] = mesh_summary(m);
      j["metric"] = metric_name;
      write_output(j.dump(2) + "\n", out_path);
      return rep.pass() ? 0 : 1;
    }
    if (cover->parsed()) {
      LineField lf =
          gf.is_line ? gf.line : line_field_of_vector_field(gf.vector);
      BranchedCover bc = branched_double_cover(m, conn, lf);
      nlohmann::json j = cover_to_json(bc);
      j["cover"] = mesh_summary(bc.mesh);
      j["metric"] = metric_name;
      if (!out_mesh_path.empty())
        write_output(write_off(bc.mesh), out_mesh_path);
      if (!out_field_path.empty()) {
        GeneratedField lifted;
        lifted.is_line = false;
        lifted.vector = bc.lifted;
        write_output(field_to_json(lifted).dump(2) + "\n", out_field_path);
      }
      write_output(j.dump(2) + "\n", out_path);
      return 0;
    }
    if (render->parsed()) {
      const DefectReport* rep_ptr = nullptr;
      DefectReport rep;
      try {
        rep = analyze_field(m, conn, gf);
        rep_ptr = &rep;
      } catch (const Error&) {
      }
      write_output(render_svg(m, gf, rep_ptr), out_path);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
