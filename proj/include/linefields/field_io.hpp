#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "linefields/angles.hpp"
#include "linefields/catalog.hpp"
#include "linefields/cover.hpp"
#include "linefields/error.hpp"
#include "linefields/fields.hpp"
#include "linefields/report.hpp"

namespace linefields {

inline nlohmann::json field_to_json(const GeneratedField& gf) {
  const std::vector<double>& angles = gf.is_line ? gf.line.phi : gf.vector.theta;
  nlohmann::json j;
  j["format"] = "linefield-v1";
  j["kind"] = gf.is_line ? "line" : "vector";
  j["face_count"] = angles.size();
  j["angles"] = angles;
  return j;
}

inline GeneratedField field_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad field file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string() ||
      j["format"].get<std::string>() != "linefield-v1")
    throw Error(ErrorCode::ParseError, "field file is not linefield-v1");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorCode::ParseError, "field file is missing 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (kind != "line" && kind != "vector")
    throw Error(ErrorCode::ParseError, "field kind must be 'line' or 'vector'");
  if (!j.contains("angles") || !j["angles"].is_array())
    throw Error(ErrorCode::ParseError, "field file is missing 'angles'");
  if (!j.contains("face_count") || !j["face_count"].is_number_integer())
    throw Error(ErrorCode::ParseError, "field file is missing 'face_count'");
  std::vector<double> angles;
  angles.reserve(j["angles"].size());
  for (const auto& item : j["angles"]) {
    if (!item.is_number())
      throw Error(ErrorCode::ParseError, "field angles must be numbers");
    double a = item.get<double>();
    if (!std::isfinite(a))
      throw Error(ErrorCode::ParseError, "field angles must be finite");
    angles.push_back(wrap_two_pi(a));
  }
  if (j["face_count"].get<long long>() !=
      static_cast<long long>(angles.size()))
    throw Error(ErrorCode::ParseError,
                "face_count does not match the angle list");
  GeneratedField gf;
  gf.is_line = kind == "line";
  if (gf.is_line)
    gf.line.phi = std::move(angles);
  else
    gf.vector.theta = std::move(angles);
  return gf;
}

inline nlohmann::json defect_report_to_json(const DefectReport& rep) {
  nlohmann::json j;
  j["defects"] = nlohmann::json::array();
  for (const DefectRecord& r : rep.records) {
    if (r.p == 0 && r.orientable) continue;
    nlohmann::json d;
    d["vertex"] = r.vertex;
    d["p"] = r.p;
    d["p_perp"] = r.p_perp;
    d["orientable"] = r.orientable;
    if (rep.has_vector) {
      d["ind"] = r.ind;
      d["ind_perp"] = r.ind_perp;
    }
    j["defects"].push_back(d);
  }
  j["sum_p"] = rep.sum_p;
  j["two_chi"] = rep.two_chi;
  j["match"] = rep.match;
  if (rep.has_vector) j["sum_ind"] = rep.sum_ind;
  long long odd = 0;
  for (const DefectRecord& r : rep.records)
    if (!r.orientable) ++odd;
  j["markus"] = {{"lhs", rep.sum_p},
                 {"rhs", rep.two_chi - odd},
                 {"equal", rep.sum_p == rep.two_chi - odd}};
  return j;
}

inline nlohmann::json verification_to_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["pass"] = rep.pass();
  j["checks"] = nlohmann::json::array();
  for (const Check& c : rep.checks) {
    nlohmann::json item;
    item["name"] = c.name;
    item["lhs"] = c.lhs;
    item["rhs"] = c.rhs;
    item["tolerance"] = c.tolerance;
    item["pass"] = c.pass;
    item["informational"] = c.informational;
    item["source"] = c.source;
    j["checks"].push_back(item);
  }
  return j;
}

inline nlohmann::json cover_to_json(const BranchedCover& bc) {
  nlohmann::json j;
  j["format"] = "cover-v1";
  j["base_face_count"] = bc.base.face_count();
  j["base_vertex_count"] = bc.base.vertex_count;
  j["sheet_map"] = nlohmann::json::array();
  for (const auto& sm : bc.sheet_map)
    j["sheet_map"].push_back({sm[0], sm[1]});
  j["branch_vertices"] = bc.branch_vertices;
  j["fiber"] = bc.fiber;
  j["deck"] = {{"face", bc.deck_face}, {"vertex", bc.deck_vertex}};
  return j;
}

}  // namespace linefields
