#include "ddpath/circuit/generators.hpp"
#include "ddpath/simpath/executor.hpp"
#include "ddpath/simpath/io.hpp"
#include "ddpath/simpath/strategies.hpp"
#include "ddpath/tn/import.hpp"
#include "ddpath/tn/network.hpp"
#include "ddpath/tn/plan.hpp"

#include <gtest/gtest.h>

#include <map>

namespace {

using namespace ddpath;
using tn::ContractionPlan;

dd::vEdge run(const qc::Circuit& c, const path::ValidatedPath& v,
              dd::Package& pkg) {
  const auto r = path::execute(c, pkg.makeZeroState(c.qubits()), v, pkg);
  dd::Package::incRef(r.state);
  return r.state;
}

TEST(Network, QftExport) {
  const auto net = tn::exportTensorNetwork(qc::qft(3));
  EXPECT_EQ(net.qubits, 3U);
  ASSERT_EQ(net.tensors.size(), 8U);
  EXPECT_TRUE(net.tensors[0].isState());
  EXPECT_EQ(net.tensors[0].shape, (std::vector<std::size_t>{2, 2, 2}));
  for (std::size_t k = 0; k < net.tensors.size(); ++k) {
    EXPECT_EQ(net.tensors[k].id, k);
    EXPECT_EQ(net.tensors[k].position, k);
  }
  EXPECT_EQ(net.tensors[1].indices,
            (std::vector<std::string>{"q0_0", "q0_1"}));
  EXPECT_EQ(net.outputIndices.size(), 3U);
}

TEST(Network, IndicesAreSharedByExactlyTwoTensors) {
  const auto net = tn::exportTensorNetwork(qc::randomCircuit(5, 40, 7));
  std::map<std::string, std::size_t> uses;
  for (const auto& t : net.tensors) {
    EXPECT_EQ(t.shape.size(), t.rank());
    for (const auto& i : t.indices) {
      ++uses[i];
    }
  }
  for (const auto& o : net.outputIndices) {
    EXPECT_EQ(uses.at(o), 1U) << o;
    uses.erase(o);
  }
  for (const auto& [index, count] : uses) {
    EXPECT_EQ(count, 2U) << index;
  }
}

TEST(Network, Ranks) {
  const auto net = tn::exportTensorNetwork(qc::ghz(2));
  ASSERT_EQ(net.tensors.size(), 3U);
  EXPECT_EQ(net.tensors[0].rank(), 2U);
  EXPECT_EQ(net.tensors[1].rank(), 2U);
  EXPECT_EQ(net.tensors[2].rank(), 4U);
  const auto empty = tn::exportTensorNetwork(qc::Circuit(4));
  ASSERT_EQ(empty.tensors.size(), 1U);
  EXPECT_EQ(empty.outputIndices, empty.tensors[0].indices);
  EXPECT_THROW((void)tn::exportTensorNetwork(qc::Circuit(0)),
               std::invalid_argument);
}

TEST(Network, JsonRoundTrip) {
  const auto net = tn::exportTensorNetwork(qc::qft(3));
  const auto j = tn::toJson(net);
  EXPECT_EQ(j.at("tensors").at(0).at("tag"), "state");
  EXPECT_EQ(j.at("tensors").at(3).at("tag"), 3);
  EXPECT_EQ(tn::networkFromJson(j), net);
  EXPECT_EQ(tn::networkFromJson(nlohmann::json::parse(j.dump())), net);
}

TEST(Plans, Greedy) {
  qc::Circuit one(1);
  one.h(0);
  EXPECT_EQ(tn::greedyPlan(tn::exportTensorNetwork(one)).pairs,
            (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
  const auto plan = tn::greedyPlan(tn::exportTensorNetwork(qc::qft(3)));
  EXPECT_EQ(plan.pairs.size(), 7U);
  EXPECT_TRUE(tn::greedyPlan(tn::exportTensorNetwork(qc::Circuit(2))).pairs.empty());
}

TEST(Plans, DisconnectedNetwork) {
  tn::TensorNetworkDescription net;
  net.qubits = 2;
  net.tensors = {{0, {"a"}, {2}, 0}, {1, {"b"}, {2}, 1}};
  EXPECT_THROW((void)tn::greedyPlan(net), PlanningError);
  EXPECT_THROW((void)tn::greedyPlan(tn::TensorNetworkDescription{}),
               PlanningError);
}

TEST(Plans, GreedyImportMatchesSequential) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto c = qc::qft(n);
    const auto plan = tn::greedyPlan(tn::exportTensorNetwork(c));
    dd::Package pkg;
    const auto v = tn::importPath(plan, c);
    EXPECT_EQ(run(c, v, pkg),
              run(c, path::validate(path::sequentialPath(c.size()), c.size()), pkg))
        << "n=" << n;
  }
}

TEST(Plans, Cost) {
  tn::TensorNetworkDescription net;
  net.qubits = 1;
  net.tensors = {{0, {"i", "j"}, {2, 2}, 0}, {1, {"j", "k"}, {2, 2}, 1}};
  const auto cost = tn::planCost(net, ContractionPlan{{{0, 1}}});
  EXPECT_DOUBLE_EQ(cost.flops, 8.);
  EXPECT_DOUBLE_EQ(cost.maxSize, 4.);

  const auto single = tn::exportTensorNetwork(qc::Circuit(1));
  EXPECT_DOUBLE_EQ(tn::planCost(single, ContractionPlan{}).flops, 0.);
  EXPECT_THROW((void)tn::planCost(net, ContractionPlan{{{0, 5}}}),
               PlanningError);
  EXPECT_THROW((void)tn::planCost(net, ContractionPlan{{{0, 0}}}),
               PlanningError);
}

TEST(Plans, GreedyIsNoWorseThanSequentialOnSmallQft) {
  // from n = 6 on the smallest-result rule builds wide gate clusters and
  // loses to the sequential order
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto c = qc::qft(n);
    const auto net = tn::exportTensorNetwork(c);
    const auto greedy = tn::planCost(net, tn::greedyPlan(net));
    const auto sequential = tn::planCost(net, tn::sequentialPlan(c.size()));
    EXPECT_LE(greedy.flops, sequential.flops) << "n=" << n;
    EXPECT_GE(greedy.maxSize, std::ldexp(1., static_cast<int>(n)));
  }
}

TEST(Plans, QftGreedyPlanAndCost) {
  const auto net = tn::exportTensorNetwork(qc::qft(3));
  const auto plan = tn::greedyPlan(net);
  EXPECT_EQ(plan.pairs,
            (std::vector<std::pair<std::size_t, std::size_t>>{
                {0, 1}, {2, 8}, {4, 9}, {3, 10}, {5, 11}, {6, 12}, {7, 13}}));
  const auto cost = tn::planCost(net, plan);
  EXPECT_DOUBLE_EQ(cost.flops, 176.);
  EXPECT_DOUBLE_EQ(cost.maxSize, 16.);
}

TEST(Import, FixturePlan) {
  const auto plan =
      tn::planFromJson(path::readJsonFile(DDPATH_FIXTURE_DIR "/qft3_plan.json"));
  const auto c = qc::qft(3);
  const auto v = tn::importPath(plan, c.size());
  dd::Package pkg;
  EXPECT_EQ(run(c, v, pkg),
            run(c, path::validate(path::sequentialPath(7), 7), pkg));
}

TEST(Import, NonCommutingPairIsRejected) {
  const auto c = qc::qft(3);
  const ContractionPlan plan{
      {{1, 3}, {0, 8}, {9, 2}, {10, 4}, {11, 5}, {12, 6}, {13, 7}}};
  try {
    (void)tn::importPath(plan, c);
    FAIL() << "plan was accepted";
  } catch (const ImportError& e) {
    EXPECT_EQ(e.step(), 0U);
    EXPECT_NE(std::string(e.what()).find("contraction step 0"),
              std::string::npos);
  }
  EXPECT_THROW((void)tn::importPath(ContractionPlan{{{0, 1}}}, 7), ImportError);
}

TEST(Import, CommutingBypassOnGraphState) {
  const auto c = qc::graphState(4);
  // H q0 with H q2 across H q1
  const ContractionPlan plan{
      {{1, 3}, {0, 9}, {10, 2}, {11, 4}, {12, 5}, {13, 6}, {14, 7}, {15, 8}}};
  EXPECT_THROW((void)tn::importPath(plan, c.size()), ImportError);
  const auto v = tn::importPath(plan, c);
  EXPECT_TRUE(v.tasks[0].bypass);
  dd::Package pkg;
  EXPECT_EQ(run(c, v, pkg),
            run(c, path::validate(path::sequentialPath(c.size()), c.size()), pkg));
}

TEST(Import, PlanJsonRoundTrip) {
  const ContractionPlan plan{{{0, 1}, {2, 8}}};
  EXPECT_EQ(tn::planFromJson(tn::toJson(plan)), plan);
  EXPECT_EQ(tn::planFromJson(nlohmann::json::parse(R"({"path": [[0, 1]]})")),
            (ContractionPlan{{{0, 1}}}));
  EXPECT_THROW((void)tn::planFromJson(nlohmann::json::parse(R"({"pairs": [[0]]})")),
               std::invalid_argument);
}

} // namespace
