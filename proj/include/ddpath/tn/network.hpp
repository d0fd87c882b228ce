#pragma once

#include "ddpath/circuit/circuit.hpp"

#include "json.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ddpath::tn {

/// A tensor of the exported network. Every dimension is 2. Gate tensors list
/// their input indices (controls, then targets) followed by the matching
/// output indices.
struct Tensor {
  std::size_t id = 0;
  std::vector<std::string> indices;
  std::vector<std::size_t> shape;
  /// 0 for the initial state, otherwise the gate position k (1-based).
  std::size_t position = 0;

  [[nodiscard]] bool isState() const noexcept { return position == 0; }
  [[nodiscard]] std::size_t rank() const noexcept { return indices.size(); }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

struct TensorNetworkDescription {
  std::size_t qubits = 0;
  std::vector<Tensor> tensors;
  /// Open indices, one per qubit in qubit order.
  std::vector<std::string> outputIndices;

  friend bool operator==(const TensorNetworkDescription&,
                         const TensorNetworkDescription&) = default;
};

[[nodiscard]] inline std::string indexLabel(qc::Qubit q, std::size_t position) {
  return "q" + std::to_string(q) + "_" + std::to_string(position);
}

/// Circuit plus full rank-n initial state as a tensor network. Tensor ids
/// coincide with simulation-path indices: 0 is the state, k the k-th gate.
[[nodiscard]] inline TensorNetworkDescription
exportTensorNetwork(const qc::Circuit& c) {
  const std::size_t n = c.qubits();
  if (n == 0) {
    throw std::invalid_argument("cannot export a circuit without qubits");
  }
  TensorNetworkDescription tn;
  tn.qubits = n;
  std::vector<std::string> wire(n);
  Tensor state;
  for (qc::Qubit q = 0; q < n; ++q) {
    wire[q] = indexLabel(q, 0);
    state.indices.push_back(wire[q]);
  }
  state.shape.assign(n, 2);
  tn.tensors.push_back(std::move(state));

  for (std::size_t k = 1; k <= c.size(); ++k) {
    const auto& gate = c[k - 1];
    Tensor t;
    t.id = k;
    t.position = k;
    std::vector<qc::Qubit> lines = gate.controls;
    lines.insert(lines.end(), gate.targets.begin(), gate.targets.end());
    for (const auto q : lines) {
      t.indices.push_back(wire[q]);
    }
    for (const auto q : lines) {
      wire[q] = indexLabel(q, k);
      t.indices.push_back(wire[q]);
    }
    t.shape.assign(t.indices.size(), 2);
    tn.tensors.push_back(std::move(t));
  }
  tn.outputIndices = wire;
  return tn;
}

[[nodiscard]] inline nlohmann::json toJson(const TensorNetworkDescription& tn) {
  nlohmann::json tensors = nlohmann::json::array();
  for (const auto& t : tn.tensors) {
    nlohmann::json entry;
    entry["id"] = t.id;
    entry["indices"] = t.indices;
    entry["shape"] = t.shape;
    if (t.isState()) {
      entry["tag"] = "state";
    } else {
      entry["tag"] = t.position;
    }
    tensors.push_back(std::move(entry));
  }
  return {{"qubits", tn.qubits},
          {"tensors", std::move(tensors)},
          {"output_indices", tn.outputIndices}};
}

[[nodiscard]] inline TensorNetworkDescription
networkFromJson(const nlohmann::json& j) {
  TensorNetworkDescription tn;
  tn.qubits = j.at("qubits").get<std::size_t>();
  for (const auto& entry : j.at("tensors")) {
    Tensor t;
    t.id = entry.at("id").get<std::size_t>();
    t.indices = entry.at("indices").get<std::vector<std::string>>();
    t.shape = entry.at("shape").get<std::vector<std::size_t>>();
    const auto& tag = entry.at("tag");
    if (tag.is_string()) {
      if (tag.get<std::string>() != "state") {
        throw std::invalid_argument("unknown tensor tag '" +
                                    tag.get<std::string>() + "'");
      }
      t.position = 0;
    } else {
      t.position = tag.get<std::size_t>();
    }
    if (t.shape.size() != t.indices.size()) {
      throw std::invalid_argument("tensor " + std::to_string(t.id) +
                                  ": shape and indices differ in length");
    }
    tn.tensors.push_back(std::move(t));
  }
  tn.outputIndices = j.at("output_indices").get<std::vector<std::string>>();
  return tn;
}

} // namespace ddpath::tn
