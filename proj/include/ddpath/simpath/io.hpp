#pragma once

#include "ddpath/errors.hpp"
#include "ddpath/simpath/executor.hpp"
#include "ddpath/simpath/path.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

namespace ddpath::path {

/// A path file: {"gate_count": N, "path": [[a,b], ...]}.
struct PathFile {
  std::size_t gateCount = 0;
  SimulationPath path;

  friend bool operator==(const PathFile&, const PathFile&) = default;
};

[[nodiscard]] inline nlohmann::json toJson(const PathFile& file) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : file.path.tasks) {
    pairs.push_back({a, b});
  }
  return {{"gate_count", file.gateCount}, {"path", std::move(pairs)}};
}

[[nodiscard]] inline PathFile pathFileFromJson(const nlohmann::json& j) {
  PathFile file;
  file.gateCount = j.at("gate_count").get<std::size_t>();
  for (const auto& p : j.at("path")) {
    if (!p.is_array() || p.size() != 2) {
      throw std::invalid_argument("path entries must be pairs");
    }
    file.path.tasks.emplace_back(p[0].get<std::size_t>(),
                                 p[1].get<std::size_t>());
  }
  return file;
}

[[nodiscard]] inline nlohmann::json readJsonFile(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) {
    throw IoError("cannot open '" + filename + "'");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("'" + filename + "' is not valid JSON: " +
                                e.what());
  }
}

[[nodiscard]] inline nlohmann::json toJson(const RunStats& stats) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& t : stats.tasks) {
    tasks.push_back({{"task_index", t.taskIndex},
                     {"result_nodes", t.resultNodes},
                     {"elapsed_ns", t.elapsedNs}});
  }
  return {{"tasks", std::move(tasks)},
          {"peak_nodes", stats.peakNodes},
          {"final_nodes", stats.finalNodes},
          {"task_count", stats.taskCount},
          {"elapsed_ns", stats.elapsedNs}};
}

[[nodiscard]] inline RunStats runStatsFromJson(const nlohmann::json& j) {
  RunStats stats;
  for (const auto& t : j.at("tasks")) {
    stats.tasks.push_back({t.at("task_index").get<std::size_t>(),
                           t.at("result_nodes").get<std::size_t>(),
                           t.at("elapsed_ns").get<std::int64_t>()});
  }
  stats.peakNodes = j.at("peak_nodes").get<std::size_t>();
  stats.finalNodes = j.at("final_nodes").get<std::size_t>();
  stats.taskCount = j.at("task_count").get<std::size_t>();
  stats.elapsedNs = j.at("elapsed_ns").get<std::int64_t>();
  return stats;
}

} // namespace ddpath::path
