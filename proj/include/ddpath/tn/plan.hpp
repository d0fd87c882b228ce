#pragma once

#include "ddpath/errors.hpp"
#include "ddpath/tn/network.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ddpath::tn {

/// Ordered pairwise contractions. Step k produces the id (largest id so far)
/// + 1, so with exported networks the ids coincide with path indices.
struct ContractionPlan {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  friend bool operator==(const ContractionPlan&, const ContractionPlan&) =
      default;
};

struct PlanCost {
  /// Sum over steps of 2^(number of distinct indices involved).
  double flops = 0.;
  /// Largest tensor that exists at any point, inputs included.
  double maxSize = 0.;
};

namespace detail {

using IndexSet = std::set<std::string>;

/// Indices surviving a contraction: those appearing in exactly one operand.
inline IndexSet contractIndices(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::inserter(out, out.end()));
  return out;
}

inline std::size_t unionSize(const IndexSet& a, const IndexSet& b) {
  std::size_t shared = 0;
  for (const auto& i : a) {
    shared += b.count(i);
  }
  return a.size() + b.size() - shared;
}

inline bool connected(const IndexSet& a, const IndexSet& b) {
  return std::any_of(a.begin(), a.end(),
                     [&](const auto& i) { return b.count(i) != 0; });
}

inline std::map<std::size_t, IndexSet>
initialTensors(const TensorNetworkDescription& tn) {
  std::map<std::size_t, IndexSet> live;
  for (const auto& t : tn.tensors) {
    if (!live.emplace(t.id, IndexSet(t.indices.begin(), t.indices.end()))
             .second) {
      throw PlanningError("duplicate tensor id " + std::to_string(t.id));
    }
  }
  return live;
}

} // namespace detail

/// Greedy planner: contracts the connected pair with the smallest result,
/// then the smallest combined input size, then the lowest id pair.
[[nodiscard]] inline ContractionPlan
greedyPlan(const TensorNetworkDescription& tn) {
  auto live = detail::initialTensors(tn);
  if (live.empty()) {
    throw PlanningError("network has no tensors");
  }
  std::size_t nextId = live.rbegin()->first + 1;
  ContractionPlan plan;
  while (live.size() > 1) {
    using Key = std::tuple<std::size_t, double, std::size_t, std::size_t>;
    std::optional<Key> best;
    for (auto a = live.begin(); a != live.end(); ++a) {
      for (auto b = std::next(a); b != live.end(); ++b) {
        if (!detail::connected(a->second, b->second)) {
          continue;
        }
        const auto rank = detail::contractIndices(a->second, b->second).size();
        const double inputs =
            std::ldexp(1., static_cast<int>(a->second.size())) +
            std::ldexp(1., static_cast<int>(b->second.size()));
        const Key key{rank, inputs, a->first, b->first};
        if (!best || key < *best) {
          best = key;
        }
      }
    }
    if (!best) {
      throw PlanningError("tensor network is disconnected");
    }
    const auto [rank, inputs, a, b] = *best;
    auto merged = detail::contractIndices(live.at(a), live.at(b));
    live.erase(a);
    live.erase(b);
    live.emplace(nextId++, std::move(merged));
    plan.pairs.emplace_back(a, b);
  }
  return plan;
}

/// A-priori cost from index sets alone.
[[nodiscard]] inline PlanCost planCost(const TensorNetworkDescription& tn,
                                       const ContractionPlan& plan) {
  auto live = detail::initialTensors(tn);
  if (live.empty()) {
    throw PlanningError("network has no tensors");
  }
  PlanCost cost;
  for (const auto& [id, indices] : live) {
    cost.maxSize =
        std::max(cost.maxSize, std::ldexp(1., static_cast<int>(indices.size())));
  }
  std::size_t nextId = live.rbegin()->first + 1;
  for (std::size_t step = 0; step < plan.pairs.size(); ++step) {
    const auto [a, b] = plan.pairs[step];
    const auto ia = live.find(a);
    const auto ib = live.find(b);
    if (a == b || ia == live.end() || ib == live.end()) {
      throw PlanningError("step " + std::to_string(step) + ": tensor " +
                          std::to_string(ia == live.end() ? a : b) +
                          " does not exist");
    }
    cost.flops += std::ldexp(
        1., static_cast<int>(detail::unionSize(ia->second, ib->second)));
    auto merged = detail::contractIndices(ia->second, ib->second);
    cost.maxSize =
        std::max(cost.maxSize, std::ldexp(1., static_cast<int>(merged.size())));
    live.erase(ia);
    live.erase(ib);
    live.emplace(nextId++, std::move(merged));
  }
  return cost;
}

/// Contractions in network order: the state absorbs the gates one by one.
[[nodiscard]] inline ContractionPlan sequentialPlan(std::size_t gateCount) {
  ContractionPlan plan;
  for (std::size_t k = 1; k <= gateCount; ++k) {
    plan.pairs.emplace_back(k == 1 ? 0 : gateCount + k - 1, k);
  }
  return plan;
}

[[nodiscard]] inline nlohmann::json toJson(const ContractionPlan& plan) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : plan.pairs) {
    pairs.push_back({a, b});
  }
  return {{"pairs", std::move(pairs)}};
}

/// Reads {"pairs": [[a,b], ...]}. A path file ({"path": ...}) is accepted
/// as well.
[[nodiscard]] inline ContractionPlan planFromJson(const nlohmann::json& j) {
  const auto& pairs = j.contains("pairs") ? j.at("pairs") : j.at("path");
  ContractionPlan plan;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) {
      throw std::invalid_argument("contraction entries must be pairs");
    }
    plan.pairs.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
  }
  return plan;
}

} // namespace ddpath::tn
