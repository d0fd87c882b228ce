#pragma once

#include "ddpath/simpath/executor.hpp"
#include "ddpath/simpath/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ddpath::cli {

/// Outcome of a simulate or verify invocation.
struct RunReport {
  std::string command;
  std::vector<std::string> arguments;
  std::vector<std::string> sources;
  std::size_t qubits = 0;
  /// |G| for simulate, |G G'^-1| for verify.
  std::size_t gates = 0;
  std::string strategy;
  std::vector<path::RunStats> runs;
  std::optional<bool> consistent;
  std::optional<double> fidelity;
  /// Requested amplitudes as (re, im), keyed by basis string.
  std::map<std::string, std::pair<double, double>> amplitudes;

  [[nodiscard]] std::size_t peakNodes() const {
    std::size_t peak = 0;
    for (const auto& r : runs) {
      peak = std::max(peak, r.peakNodes);
    }
    return peak;
  }
  [[nodiscard]] std::size_t finalNodes() const {
    return runs.empty() ? 0 : runs.front().finalNodes;
  }
};

[[nodiscard]] inline bool sameStats(const path::RunStats& a,
                                    const path::RunStats& b,
                                    bool compareTimes) {
  if (a.peakNodes != b.peakNodes || a.finalNodes != b.finalNodes ||
      a.taskCount != b.taskCount || a.tasks.size() != b.tasks.size()) {
    return false;
  }
  if (compareTimes && a.elapsedNs != b.elapsedNs) {
    return false;
  }
  for (std::size_t i = 0; i < a.tasks.size(); ++i) {
    if (a.tasks[i].taskIndex != b.tasks[i].taskIndex ||
        a.tasks[i].resultNodes != b.tasks[i].resultNodes ||
        (compareTimes && a.tasks[i].elapsedNs != b.tasks[i].elapsedNs)) {
      return false;
    }
  }
  return true;
}

/// Structural equality; elapsed times only count when `compareTimes` is set.
[[nodiscard]] inline bool sameReport(const RunReport& a, const RunReport& b,
                                     bool compareTimes = true) {
  if (a.command != b.command || a.arguments != b.arguments ||
      a.sources != b.sources || a.qubits != b.qubits || a.gates != b.gates ||
      a.strategy != b.strategy || a.consistent != b.consistent ||
      a.fidelity != b.fidelity || a.amplitudes != b.amplitudes ||
      a.runs.size() != b.runs.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    if (!sameStats(a.runs[i], b.runs[i], compareTimes)) {
      return false;
    }
  }
  return true;
}

[[nodiscard]] inline nlohmann::json toJson(const RunReport& r) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& s : r.runs) {
    runs.push_back(path::toJson(s));
  }
  nlohmann::json j{{"command", r.command},
                   {"arguments", r.arguments},
                   {"circuit",
                    {{"sources", r.sources},
                     {"qubits", r.qubits},
                     {"gates", r.gates}}},
                   {"strategy", r.strategy},
                   {"runs", std::move(runs)},
                   {"peak_nodes", r.peakNodes()},
                   {"final_nodes", r.finalNodes()}};
  if (r.consistent) {
    j["verdict"] = *r.consistent ? "consistent" : "inconsistent";
  }
  if (r.fidelity) {
    j["fidelity"] = *r.fidelity;
  }
  if (!r.amplitudes.empty()) {
    nlohmann::json amps = nlohmann::json::object();
    for (const auto& [bits, value] : r.amplitudes) {
      amps[bits] = {value.first, value.second};
    }
    j["amplitudes"] = std::move(amps);
  }
  return j;
}

[[nodiscard]] inline RunReport reportFromJson(const nlohmann::json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.arguments = j.at("arguments").get<std::vector<std::string>>();
  const auto& circuit = j.at("circuit");
  r.sources = circuit.at("sources").get<std::vector<std::string>>();
  r.qubits = circuit.at("qubits").get<std::size_t>();
  r.gates = circuit.at("gates").get<std::size_t>();
  r.strategy = j.at("strategy").get<std::string>();
  for (const auto& s : j.at("runs")) {
    r.runs.push_back(path::runStatsFromJson(s));
  }
  if (j.contains("verdict")) {
    r.consistent = j.at("verdict").get<std::string>() == "consistent";
  }
  if (j.contains("fidelity")) {
    r.fidelity = j.at("fidelity").get<double>();
  }
  if (j.contains("amplitudes")) {
    for (const auto& [bits, value] : j.at("amplitudes").items()) {
      r.amplitudes[bits] = {value.at(0).get<double>(),
                            value.at(1).get<double>()};
    }
  }
  return r;
}

} // namespace ddpath::cli
