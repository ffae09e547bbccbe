#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wiener/assignment.hpp"
#include "wiener/bounds.hpp"
#include "wiener/errors.hpp"
#include "wiener/instance.hpp"
#include "wiener/solve_report.hpp"
#include "wiener/weighted_tree.hpp"

namespace wiener {

namespace detail {

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  nlohmann::json parsed = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) fail(errc::bad_input, what + ": not valid JSON");
  return parsed;
}

inline std::vector<double> number_array(const nlohmann::json& j, const std::string& field,
                                        const std::string& what) {
  if (!j.contains(field) || !j[field].is_array()) {
    fail(errc::bad_input, what + ": field '" + field + "' missing or not an array");
  }
  std::vector<double> out;
  for (const auto& v : j[field]) {
    if (!v.is_number()) fail(errc::bad_input, what + ": field '" + field + "' has a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace detail

// Instance JSON: {"weights": [..], "degrees": [..]} in caller order.
inline Instance instance_from_json(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text, "instance");
  const std::vector<double> weights = detail::number_array(j, "weights", "instance");
  const std::vector<double> raw_degrees = detail::number_array(j, "degrees", "instance");
  std::vector<int> degrees;
  degrees.reserve(raw_degrees.size());
  for (double d : raw_degrees) {
    if (d != static_cast<int>(d)) fail(errc::bad_input, "instance: field 'degrees' has a non-integer");
    degrees.push_back(static_cast<int>(d));
  }
  return Instance::validate(weights, degrees);
}

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["n"] = inst.n();
  j["q"] = inst.q();
  j["weights"] = inst.weights();
  j["degrees"] = inst.degrees();
  j["monotone"] = inst.monotone();
  j["total_weight"] = inst.total_weight();
  j["internal_weight"] = inst.internal_weight();
  j["pendant_weight"] = inst.pendant_weight();
  j["original_index"] = inst.original_order();
  return j;
}

// Tree JSON: {"weights": [..], "edges": [[u,v],..]} with 0-based vertex ids.
inline WeightedTree tree_from_json(const std::string& text) {
  const nlohmann::json j = detail::parse_json(text, "tree");
  const std::vector<double> weights = detail::number_array(j, "weights", "tree");
  if (!j.contains("edges") || !j["edges"].is_array()) {
    fail(errc::bad_input, "tree: field 'edges' missing or not an array");
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      fail(errc::bad_input, "tree: field 'edges' entries must be [u,v] integer pairs");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return WeightedTree(weights, edges);
}

inline nlohmann::json tree_to_json(const WeightedTree& tree) {
  nlohmann::json j;
  j["weights"] = tree.weights();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : tree.edges()) edges.push_back({u, v});
  j["edges"] = edges;
  return j;
}

// Assignment JSON: {"n":.., "q":.., "entries": [[i,k,value],..]} listing
// nonzeros only; i is a 0-based caller-order vertex id, k a 1-based position.
inline nlohmann::json assignment_to_json(const Instance& inst, const AssignmentMatrix& x) {
  nlohmann::json j;
  j["n"] = x.n();
  j["q"] = x.q();
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [i, k, value] : x.nonzeros()) {
    entries.push_back({inst.original_index(i), k, value});
  }
  j["entries"] = entries;
  return j;
}

inline nlohmann::json bound_report_to_json(const BoundReport& report) {
  nlohmann::json j;
  j["value"] = report.value;
  j["method"] = report.method;
  j["gap"] = report.gap_estimate;
  return j;
}

inline nlohmann::json solve_report_to_json(const Instance& inst, const SolveReport& report) {
  nlohmann::json j;
  j["value"] = report.value;
  nlohmann::json assignment = nlohmann::json::array();
  for (const auto& [i, k, value] : report.assignment.nonzeros()) {
    assignment.push_back({inst.original_index(i), k});
  }
  j["assignment"] = assignment;
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [u, v] : solution_edges_original(inst, report.assignment)) {
    edges.push_back({u, v});
  }
  j["edges"] = edges;
  j["nodes"] = report.nodes_explored;
  j["pruned"] = report.nodes_pruned;
  j["seconds"] = report.wall_seconds;
  j["optimal"] = report.proven_optimal;
  return j;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::bad_input, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::bad_input, "cannot write '" + path + "'");
  out << text;
}

}  // namespace wiener
