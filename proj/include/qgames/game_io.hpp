#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qgames/classical_game.hpp"

namespace qgames {

/// Game definition file schema (UTF-8 JSON):
///   { "name": str, "A": [[a00, a01], [a10, a11]],
///     "B": [[...]] XOR "symmetry_hint": "S" | "T" }
/// With hint "S" the derived payoffs are B_ji = A_ij; with "T",
/// B_{1-j,1-i} = A_ij.
struct GameDefinitionFile {
  std::string name;
  std::array<std::array<double, 2>, 2> a{};
  std::optional<std::array<std::array<double, 2>, 2>> b;
  std::optional<std::string> symmetry_hint;
};

namespace detail {

inline std::array<std::array<double, 2>, 2> parse_2x2(const nlohmann::json& j,
                                                      const std::string& field) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("game file: field '" + field +
                                "' must be a 2x2 array");
  std::array<std::array<double, 2>, 2> out{};
  for (int i : {0, 1}) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != 2)
      throw std::invalid_argument("game file: field '" + field + "' row " +
                                  std::to_string(i) + " must have 2 entries");
    for (int k : {0, 1}) {
      if (!row[k].is_number())
        throw std::invalid_argument("game file: field '" + field + "' entry (" +
                                    std::to_string(i) + "," + std::to_string(k) +
                                    ") must be a number");
      out[i][k] = row[k].get<double>();
    }
  }
  return out;
}

}  // namespace detail

inline GameDefinitionFile parse_game_definition(const nlohmann::json& j) {
  GameDefinitionFile out;
  if (!j.is_object())
    throw std::invalid_argument("game file: top level must be an object");
  if (!j.contains("name") || !j["name"].is_string())
    throw std::invalid_argument("game file: missing string field 'name'");
  out.name = j["name"].get<std::string>();
  if (!j.contains("A"))
    throw std::invalid_argument("game file: missing field 'A'");
  out.a = detail::parse_2x2(j["A"], "A");
  const bool has_b = j.contains("B");
  const bool has_hint = j.contains("symmetry_hint");
  if (has_b == has_hint)
    throw std::invalid_argument(
        "game file: exactly one of 'B' or 'symmetry_hint' must be present");
  if (has_b) out.b = detail::parse_2x2(j["B"], "B");
  if (has_hint) {
    const auto& hint = j["symmetry_hint"];
    if (!hint.is_string() ||
        (hint.get<std::string>() != "S" && hint.get<std::string>() != "T"))
      throw std::invalid_argument(
          "game file: field 'symmetry_hint' must be \"S\" or \"T\"");
    out.symmetry_hint = hint.get<std::string>();
  }
  return out;
}

inline PayoffBimatrix to_bimatrix(const GameDefinitionFile& def) {
  std::array<std::array<double, 2>, 2> b{};
  if (def.b) {
    b = *def.b;
  } else if (*def.symmetry_hint == "S") {
    for (int i : {0, 1})
      for (int j : {0, 1}) b[j][i] = def.a[i][j];
  } else {  // "T"
    for (int k : {0, 1})
      for (int l : {0, 1}) b[k][l] = def.a[1 - l][1 - k];
  }
  return PayoffBimatrix::from(def.a, b, def.name);
}

inline PayoffBimatrix load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("game file: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("game file '" + path +
                                "': " + std::string(e.what()));
  }
  return to_bimatrix(parse_game_definition(j));
}

}  // namespace qgames
