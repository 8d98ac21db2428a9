#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fano/classifier.hpp"
#include "fano/errors.hpp"
#include "fano/verifier.hpp"

namespace fano {

/// BigInt as a JSON value: a number when it fits in 64 bits, otherwise
/// a decimal string.
inline nlohmann::ordered_json json_int(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline nlohmann::ordered_json setup_json(const FanoSetup& setup) {
  return {{"n", setup.n}, {"degrees", setup.degrees}, {"k", setup.k}};
}

inline nlohmann::ordered_json classification_json(const FanoClassification& c) {
  nlohmann::ordered_json j;
  j["t"] = json_int(c.t);
  j["canonical_degree"] =
      c.canonical_degree ? json_int(*c.canonical_degree) : nlohmann::ordered_json(nullptr);
  j["m"] = json_int(c.m);
  j["status"] = to_string(c.status);
  j["component_count"] = to_string(c.component_count);
  j["rationally_connected"] = c.rationally_connected;
  j["general_type"] = c.general_type;
  j["curve_free_certificate"] = c.curve_free_certificate;
  j["scope_note"] = to_string(c.scope_note);
  j["normalized_setup"] = setup_json(c.normalized);
  j["raw_setup"] = setup_json(c.raw);
  j["degree_product"] = json_int(c.degree_product);
  j["notes"] = c.notes;
  return j;
}

/// Plane as its row-major entry list.
inline nlohmann::ordered_json plane_json(const PlaneRref& plane) {
  return nlohmann::ordered_json(plane.entries());
}

inline nlohmann::ordered_json point_set_json(
    const FanoPointSet& s,
    const std::vector<std::vector<std::size_t>>* components = nullptr) {
  nlohmann::ordered_json j;
  j["count"] = s.planes.size();
  auto planes = nlohmann::ordered_json::array();
  for (const auto& plane : s.planes) planes.push_back(plane_json(plane));
  j["planes"] = std::move(planes);
  if (s.meets) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : *s.meets) {
      std::vector<int> bits(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) bits[i] = row[i] ? 1 : 0;
      rows.push_back(bits);
    }
    j["meets"] = std::move(rows);
  }
  if (components) j["meet_components"] = *components;
  return j;
}

inline nlohmann::ordered_json chart_ideal_json(const ChartIdeal& chart) {
  nlohmann::ordered_json j;
  j["pivots"] = chart.pivots;
  auto positions = nlohmann::ordered_json::array();
  for (auto [row, col] : chart.free_positions) positions.push_back({row, col});
  j["free_positions"] = std::move(positions);
  std::vector<std::string> gens;
  gens.reserve(chart.generators.size());
  for (const auto& g : chart.generators) gens.push_back(g.to_string());
  j["generators"] = std::move(gens);
  return j;
}

/// Instance file schema: {"p": prime, "n": ambient dim, "polys":
/// ["x0^3+x1^3+...", ...]} with polynomials in x0 .. xn.
inline CompleteIntersectionInstance instance_from_json(const nlohmann::json& j) {
  if (!j.contains("p") || !j.contains("n") || !j.contains("polys"))
    throw invalid_input("instance file: expected keys \"p\", \"n\", \"polys\"");
  const PrimeField field(j.at("p").get<std::uint32_t>());
  const int n = j.at("n").get<int>();
  if (n < 3) throw invalid_input("instance file: n must be at least 3");
  std::vector<FpPoly> polys;
  std::size_t index = 0;
  for (const auto& entry : j.at("polys")) {
    const auto text = entry.get<std::string>();
    try {
      polys.push_back(parse_mpoly(text, static_cast<std::size_t>(n) + 1, field));
    } catch (const parse_error& e) {
      throw invalid_input("instance file: polynomial #" + std::to_string(index) + ": " +
                          e.what());
    }
    ++index;
  }
  return CompleteIntersectionInstance(field, n, std::move(polys));
}

inline nlohmann::ordered_json instance_json(const CompleteIntersectionInstance& X) {
  nlohmann::ordered_json j;
  j["p"] = X.field().modulus();
  j["n"] = X.ambient_dim();
  std::vector<std::string> polys;
  for (const auto& g : X.polys()) polys.push_back(g.to_string());
  j["polys"] = std::move(polys);
  return j;
}

inline CompleteIntersectionInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open instance file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input("instance file " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace fano
