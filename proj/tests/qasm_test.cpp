#include "ddpath/circuit/generators.hpp"
#include "ddpath/circuit/qasm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

namespace {

using namespace ddpath;
using qc::OpType;

const std::string HEADER = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";

std::size_t parseErrorLine(const std::string& text,
                           std::string* message = nullptr) {
  try {
    (void)qc::parseQasm(text);
  } catch (const ParseError& e) {
    if (message != nullptr) {
      *message = e.what();
    }
    return e.line();
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return 0;
}

TEST(Qasm, ParsesTheQftFixture) {
  const auto c = qc::parseQasmFile(DDPATH_FIXTURE_DIR "/qft3.qasm");
  EXPECT_EQ(c, qc::qft(3));
  std::size_t h = 0;
  std::size_t cp = 0;
  std::size_t swaps = 0;
  for (const auto& g : c.gates()) {
    h += g.kind() == qc::GateKind{OpType::H, 0};
    cp += g.kind() == qc::GateKind{OpType::P, 1};
    swaps += g.kind() == qc::GateKind{OpType::SWAP, 0};
  }
  EXPECT_EQ(h, 3U);
  EXPECT_EQ(cp, 3U);
  EXPECT_EQ(swaps, 1U);
}

TEST(Qasm, HeaderOnlyGivesEmptyCircuit) {
  const auto c = qc::parseQasm(HEADER + "qreg q[4];\n");
  EXPECT_EQ(c.qubits(), 4U);
  EXPECT_EQ(c.size(), 0U);
}

TEST(Qasm, AngleExpressions) {
  const auto c = qc::parseQasm(HEADER + "qreg q[1];\n"
                                        "p(pi/2) q[0];\n"
                                        "rz(-pi/4) q[0];\n"
                                        "ry(2*pi/3) q[0];\n"
                                        "p((pi+1)*-0.5) q[0];\n"
                                        "u1(1e-3) q[0];\n"
                                        "u2(0, pi) q[0];\n"
                                        "u3(0.1, 0.2, 0.3) q[0];\n");
  ASSERT_EQ(c.size(), 7U);
  EXPECT_DOUBLE_EQ(c[0].params[0], qc::PI / 2);
  EXPECT_DOUBLE_EQ(c[1].params[0], -qc::PI / 4);
  EXPECT_DOUBLE_EQ(c[2].params[0], 2 * qc::PI / 3);
  EXPECT_DOUBLE_EQ(c[3].params[0], (qc::PI + 1) * -0.5);
  EXPECT_EQ(c[4].op, OpType::P);
  EXPECT_DOUBLE_EQ(c[4].params[0], 1e-3);
  EXPECT_EQ(c[5].op, OpType::U);
  EXPECT_DOUBLE_EQ(c[5].params[0], qc::PI / 2);
  EXPECT_DOUBLE_EQ(c[5].params[2], qc::PI);
  EXPECT_DOUBLE_EQ(c[6].params[2], 0.3);
}

TEST(Qasm, ControlPrefixes) {
  const auto c = qc::parseQasm(HEADER + "qreg q[4];\n"
                                        "CX q[0], q[1];\n"
                                        "ccx q[0], q[1], q[2];\n"
                                        "cswap q[3], q[0], q[1];\n"
                                        "cu3(0.1,0.2,0.3) q[2], q[3];\n"
                                        "cz q[1], q[0];\n");
  ASSERT_EQ(c.size(), 5U);
  EXPECT_EQ(c[0], qc::cx(0, 1));
  EXPECT_EQ(c[1].kind(), (qc::GateKind{OpType::X, 2}));
  EXPECT_EQ(c[2].kind(), (qc::GateKind{OpType::SWAP, 1}));
  EXPECT_EQ(c[2].targets, (std::vector<qc::Qubit>{0, 1}));
  EXPECT_EQ(c[3].kind(), (qc::GateKind{OpType::U, 1}));
  EXPECT_EQ(c[4], qc::cz(1, 0));
}

TEST(Qasm, IgnoresClassicalStatements) {
  const auto c = qc::parseQasm(HEADER + "qreg q[2];\ncreg c[2];\n"
                                        "h q[0];\nbarrier q[0], q[1];\n"
                                        "measure q[0] -> c[0];\nreset q[1];\n");
  EXPECT_EQ(c.size(), 1U);
}

TEST(Qasm, UnknownGateNamesTheGate) {
  std::string message;
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[1];\nfoo q[0];\n", &message), 4U);
  EXPECT_NE(message.find("foo"), std::string::npos);
}

TEST(Qasm, MalformedInputsReportLines) {
  EXPECT_EQ(parseErrorLine("qreg q[1];\n"), 1U);
  EXPECT_EQ(parseErrorLine("OPENQASM 3.0;\n"), 1U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\nh q[0]\nh q[1];\n"), 5U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\n\ncx q[0], q[2];\n"), 5U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\ncx q[0], q[0];\n"), 4U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\np q[0];\n"), 4U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\nh r[0];\n"), 4U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\np(pi/) q[0];\n"), 4U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\nqreg r[2];\n"), 4U);
  EXPECT_EQ(parseErrorLine(HEADER + "h q[0];\n"), 3U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\ngate g a { h a; }\n"), 4U);
  EXPECT_EQ(parseErrorLine("OPENQASM 2.0;\ninclude \"other.inc\";\n"), 2U);
  EXPECT_EQ(parseErrorLine(HEADER + "qreg q[2];\nh q[0]; $\n"), 4U);
  EXPECT_EQ(parseErrorLine(HEADER), 3U);
}

TEST(Qasm, MissingFileIsAnIoError) {
  EXPECT_THROW((void)qc::parseQasmFile("/nonexistent/file.qasm"), IoError);
}

TEST(Qasm, EmitRoundTrips) {
  EXPECT_EQ(qc::parseQasm(qc::emitQasm(qc::qft(3))), qc::qft(3));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = qc::randomCircuit(5, 40, seed);
    EXPECT_EQ(qc::parseQasm(qc::emitQasm(c)), c) << "seed " << seed;
  }
}

} // namespace
