#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/circuit/transpile.hpp"
#include "ddpath/cli/report.hpp"
#include "ddpath/cli/source.hpp"
#include "ddpath/dd/export.hpp"
#include "ddpath/dd/package.hpp"
#include "ddpath/errors.hpp"
#include "ddpath/simpath/executor.hpp"
#include "ddpath/simpath/io.hpp"
#include "ddpath/simpath/strategies.hpp"
#include "ddpath/simpath/verify.hpp"
#include "ddpath/tn/import.hpp"
#include "ddpath/tn/network.hpp"
#include "ddpath/tn/plan.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddpath::cli {

enum ExitCode : int {
  EXIT_OK = 0,
  EXIT_INCONSISTENT = 1,
  EXIT_INPUT_ERROR = 2,
  EXIT_INTERNAL_ERROR = 3,
};

inline void writeFile(const std::string& filename, const std::string& text) {
  std::ofstream out(filename);
  if (!out) {
    throw IoError("cannot write '" + filename + "'");
  }
  out << text;
  if (!out) {
    throw IoError("failed writing '" + filename + "'");
  }
}

/// Simulation path for `c` from a --path / --strategy value: "sequential",
/// "greedy", "file:<path file>" or "plan:<contraction plan>". Plans are
/// imported against `c`, so the commuting bypass applies.
[[nodiscard]] inline path::ValidatedPath resolvePath(std::string_view spec,
                                                     const qc::Circuit& c) {
  if (spec == "sequential") {
    return path::validate(c.empty() ? path::SimulationPath{}
                                    : path::sequentialPath(c.size()),
                          c);
  }
  if (spec == "greedy") {
    return tn::importPath(tn::greedyPlan(tn::exportTensorNetwork(c)), c);
  }
  if (spec.starts_with("file:")) {
    const auto file =
        path::pathFileFromJson(path::readJsonFile(std::string(spec.substr(5))));
    if (file.gateCount != c.size()) {
      throw ValidationError(ValidationError::npos,
                            "path file is for " +
                                std::to_string(file.gateCount) +
                                " gates, circuit has " +
                                std::to_string(c.size()));
    }
    return path::validate(file.path, c);
  }
  if (spec.starts_with("plan:")) {
    return tn::importPath(
        tn::planFromJson(path::readJsonFile(std::string(spec.substr(5)))), c);
  }
  throw std::invalid_argument("unknown path '" + std::string(spec) + "'");
}

/// Parses --initial for verify: "zero", "ghz" or "basis:<count>".
[[nodiscard]] inline path::InitialStates parseInitial(std::string_view spec) {
  path::InitialStates init;
  if (spec == "zero") {
    init.kind = path::InitialStates::Kind::Zero;
  } else if (spec == "ghz") {
    init.kind = path::InitialStates::Kind::Ghz;
  } else if (spec.starts_with("basis:")) {
    init.kind = path::InitialStates::Kind::Basis;
    init.count = parseCount(spec.substr(6), "basis-state count");
    if (init.count == 0) {
      throw std::invalid_argument("basis-state count must be positive");
    }
  } else {
    throw std::invalid_argument("unknown initial state '" + std::string(spec) +
                                "'");
  }
  return init;
}

/// Path over G G'^-1 for a verify strategy name: "sequential",
/// "alternating", "heuristic", "greedy" or "plan:<plan.json>".
[[nodiscard]] inline path::SimulationPath
verificationPathFor(std::string_view strategy, const qc::Circuit& g,
                    const qc::Circuit& gPrime) {
  if (strategy == "sequential") {
    return path::verificationPath(path::Strategy::Sequential, g, gPrime);
  }
  if (strategy == "alternating") {
    return path::verificationPath(path::Strategy::Alternating, g, gPrime);
  }
  if (strategy == "heuristic") {
    return path::verificationPath(path::Strategy::Heuristic, g, gPrime);
  }
  if (strategy == "greedy" || strategy.starts_with("plan:")) {
    path::SimulationPath p;
    for (const auto& t :
         resolvePath(strategy, qc::concatInverse(g, gPrime)).tasks) {
      p.tasks.emplace_back(t.left, t.right);
    }
    return p;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(strategy) +
                              "'");
}

struct SimulateOptions {
  std::string source;
  std::string path = "sequential";
  std::string initial;
  std::vector<std::string> amplitudes;
  std::string statsOut;
};

[[nodiscard]] inline RunReport cmdSimulate(const SimulateOptions& opts,
                                           dd::Package& pkg) {
  const auto c = loadCircuit(opts.source);
  const auto validated = resolvePath(opts.path, c);
  const auto initial = opts.initial.empty()
                           ? pkg.makeZeroState(c.qubits())
                           : pkg.makeBasisState(c.qubits(), opts.initial);
  const auto run = path::execute(c, initial, validated, pkg);

  RunReport report;
  report.command = "simulate";
  report.sources = {opts.source};
  report.qubits = c.qubits();
  report.gates = c.size();
  report.strategy = opts.path;
  report.runs.push_back(run.stats);
  for (const auto& bits : opts.amplitudes) {
    const auto a = pkg.getAmplitude(run.state, bits);
    report.amplitudes[bits] = {a.real(), a.imag()};
  }
  if (!opts.statsOut.empty()) {
    writeFile(opts.statsOut, path::toJson(run.stats).dump(2) + "\n");
  }
  return report;
}

struct VerifyOptions {
  std::string g;
  std::string gPrime;
  std::string strategy = "heuristic";
  std::string initial = "zero";
  std::string statsOut;
};

[[nodiscard]] inline RunReport cmdVerify(const VerifyOptions& opts,
                                         dd::Package& pkg) {
  const auto g = loadCircuit(opts.g);
  const auto gPrime = loadCircuit(opts.gPrime);
  const auto combined = qc::concatInverse(g, gPrime);
  const auto p = verificationPathFor(opts.strategy, g, gPrime);
  const auto result =
      path::verify(g, gPrime, p, pkg, parseInitial(opts.initial));

  RunReport report;
  report.command = "verify";
  report.sources = {opts.g, opts.gPrime};
  report.qubits = g.qubits();
  report.gates = combined.size();
  report.strategy = opts.strategy;
  report.runs = result.runs;
  report.consistent = result.consistent;
  report.fidelity = result.fidelity;
  if (!opts.statsOut.empty() && !result.runs.empty()) {
    writeFile(opts.statsOut, path::toJson(result.runs.front()).dump(2) + "\n");
  }
  return report;
}

/// Writes the tensor network of `source` (and optionally a greedy plan).
inline void cmdExportTn(const std::string& source, const std::string& out,
                        const std::string& planOut, std::ostream& os) {
  const auto tn = tn::exportTensorNetwork(loadCircuit(source));
  const auto text = tn::toJson(tn).dump(2) + "\n";
  if (out.empty()) {
    os << text;
  } else {
    writeFile(out, text);
  }
  if (!planOut.empty()) {
    writeFile(planOut, tn::toJson(tn::greedyPlan(tn)).dump(2) + "\n");
  }
}

/// Writes the final state of a sequential simulation in dot format.
inline void cmdDot(const std::string& source, const std::string& out,
                   std::ostream& os, dd::Package& pkg) {
  const auto c = loadCircuit(source);
  const auto run = path::execute(c, pkg.makeZeroState(c.qubits()),
                                 resolvePath("sequential", c), pkg);
  const auto text = dd::toDot(run.state);
  if (out.empty()) {
    os << text;
  } else {
    writeFile(out, text);
  }
}

/// One benchmark sweep: `name:lo..hi:strategies`. `name` is a generator,
/// `<generator>-verify` (G' = G) or `<generator>-compiled`
/// (G' = transpile(G)); verification sweeps start from the GHZ state.
struct BenchSpec {
  std::string name;
  std::string generator;
  enum class Mode { Simulate, Verify, Compiled } mode = Mode::Simulate;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<std::string> strategies;
};

[[nodiscard]] inline BenchSpec parseBenchSpec(std::string_view text) {
  BenchSpec spec;
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw std::invalid_argument("bench spec '" + std::string(text) +
                                "' must look like name:lo..hi:strategies");
  }
  spec.name = parts[0];
  spec.generator = spec.name;
  for (const auto& [suffix, mode] :
       {std::pair{std::string_view{"-verify"}, BenchSpec::Mode::Verify},
        std::pair{std::string_view{"-compiled"}, BenchSpec::Mode::Compiled}}) {
    if (spec.name.ends_with(suffix)) {
      spec.generator = spec.name.substr(0, spec.name.size() - suffix.size());
      spec.mode = mode;
    }
  }
  if (generators().find(spec.generator) == generators().end()) {
    throw std::invalid_argument("unknown benchmark '" + spec.name + "'");
  }
  const std::string_view range = parts[1];
  if (const auto dots = range.find(".."); dots != std::string_view::npos) {
    spec.lo = parseCount(range.substr(0, dots), "range bound");
    spec.hi = parseCount(range.substr(dots + 2), "range bound");
  } else {
    spec.lo = spec.hi = parseCount(range, "qubit count");
  }
  if (spec.lo > spec.hi) {
    throw std::invalid_argument("empty range '" + std::string(range) + "'");
  }
  std::string list = parts.size() == 3 ? parts[2] : "sequential";
  list.erase(std::remove_if(list.begin(), list.end(),
                            [](char c) { return c == '{' || c == '}'; }),
             list.end());
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) {
      spec.strategies.push_back(item);
    }
  }
  if (spec.strategies.empty()) {
    throw std::invalid_argument("no strategies in '" + std::string(text) + "'");
  }
  return spec;
}

struct BenchRow {
  std::string benchmark;
  std::size_t qubits = 0;
  std::size_t gates = 0;
  std::string strategy;
  std::size_t peakNodes = 0;
  std::size_t finalNodes = 0;
  std::int64_t elapsedNs = 0;
};

inline constexpr std::string_view BENCH_CSV_HEADER =
    "benchmark,n,gates,strategy,peak_nodes,final_nodes,elapsed_ns";

[[nodiscard]] inline std::string toCsv(const BenchRow& r) {
  return r.benchmark + "," + std::to_string(r.qubits) + "," +
         std::to_string(r.gates) + "," + r.strategy + "," +
         std::to_string(r.peakNodes) + "," + std::to_string(r.finalNodes) +
         "," + std::to_string(r.elapsedNs);
}

/// Runs every (n, strategy) combination of a sweep, each on a fresh kernel.
[[nodiscard]] inline std::vector<BenchRow>
runBench(const BenchSpec& spec,
         const dd::PackageConfig& config = dd::PackageConfig::fromEnvironment()) {
  std::vector<BenchRow> rows;
  const auto& generate = generators().at(spec.generator);
  for (std::size_t n = spec.lo; n <= spec.hi; ++n) {
    const auto g = generate(n);
    for (const auto& strategy : spec.strategies) {
      dd::Package pkg(config);
      BenchRow row{spec.name, n, 0, strategy, 0, 0, 0};
      if (spec.mode == BenchSpec::Mode::Simulate) {
        const auto run = path::execute(g, pkg.makeZeroState(n),
                                       resolvePath(strategy, g), pkg);
        row.gates = g.size();
        row.peakNodes = run.stats.peakNodes;
        row.finalNodes = run.stats.finalNodes;
        row.elapsedNs = run.stats.elapsedNs;
      } else {
        const auto gPrime =
            spec.mode == BenchSpec::Mode::Verify ? g : qc::transpile(g);
        const auto result =
            path::verify(g, gPrime, verificationPathFor(strategy, g, gPrime),
                         pkg, parseInitial("ghz"));
        row.gates = result.gateCount;
        row.peakNodes = result.peakNodes();
        row.finalNodes = result.runs.front().finalNodes;
        row.elapsedNs = result.runs.front().elapsedNs;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

[[nodiscard]] inline nlohmann::json errorJson(std::string_view kind,
                                              std::string_view message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

namespace detail {

inline int fail(std::ostream& err, nlohmann::json error, int code) {
  err << error.dump() << "\n";
  return code;
}

} // namespace detail

/// Entry point. `args` excludes the program name. Reports go to `out`;
/// errors are written to `err` as {"error": {"kind", "message", ...}}.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Decision-diagram quantum circuit simulator with pluggable "
               "simulation paths",
               "ddpath"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a circuit");
  simulate->add_option("source", sim.source,
                       "Generator spec name:n, transpile:<source> or QASM file")
      ->required();
  simulate->add_option("--path", sim.path,
                       "sequential | greedy | file:<path.json> | "
                       "plan:<plan.json>");
  simulate->add_option("--initial", sim.initial,
                       "Initial basis state, most-significant qubit first");
  simulate->add_option("--amplitudes", sim.amplitudes,
                       "Comma-separated basis strings to report")
      ->delimiter(',');
  simulate->add_option("--stats-out", sim.statsOut, "Write RunStats JSON");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Check G against G'");
  verify->add_option("g", ver.g, "Circuit source for G")->required();
  verify->add_option("gprime", ver.gPrime, "Circuit source for G'")
      ->required();
  verify->add_option("--strategy", ver.strategy,
                     "sequential | alternating | heuristic | greedy | "
                     "plan:<plan.json>");
  verify->add_option("--initial", ver.initial, "zero | ghz | basis:<count>");
  verify->add_option("--stats-out", ver.statsOut, "Write RunStats JSON");

  std::string tnSource;
  std::string tnOut;
  std::string tnPlanOut;
  auto* exportTn = app.add_subcommand("export-tn", "Export a tensor network");
  exportTn->add_option("source", tnSource, "Circuit source")->required();
  exportTn->add_option("--out", tnOut, "Output file (default stdout)");
  exportTn->add_option("--plan-out", tnPlanOut, "Also write a greedy plan");

  std::vector<std::string> benchSpecs;
  std::string benchOut;
  auto* bench = app.add_subcommand("bench", "Run benchmark sweeps as CSV");
  bench->add_option("suite", benchSpecs, "name:lo..hi:strategy[,strategy]")
      ->required();
  bench->add_option("--out", benchOut, "Output file (default stdout)");

  std::string dotSource;
  std::string dotOut;
  auto* dot = app.add_subcommand("dot", "Final-state DD in dot format");
  dot->add_option("source", dotSource, "Circuit source")->required();
  dot->add_option("--out", dotOut, "Output file (default stdout)");

  const auto echoed = args;
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return EXIT_OK;
  } catch (const CLI::ParseError& e) {
    return detail::fail(err, errorJson("usage", e.what()), EXIT_INPUT_ERROR);
  }

  try {
    dd::Package pkg(dd::PackageConfig::fromEnvironment());
    if (simulate->parsed()) {
      auto report = cmdSimulate(sim, pkg);
      report.arguments = echoed;
      out << toJson(report).dump(2) << "\n";
      return EXIT_OK;
    }
    if (verify->parsed()) {
      auto report = cmdVerify(ver, pkg);
      report.arguments = echoed;
      out << toJson(report).dump(2) << "\n";
      return *report.consistent ? EXIT_OK : EXIT_INCONSISTENT;
    }
    if (exportTn->parsed()) {
      cmdExportTn(tnSource, tnOut, tnPlanOut, out);
      return EXIT_OK;
    }
    if (bench->parsed()) {
      std::vector<BenchSpec> specs;
      for (const auto& s : benchSpecs) {
        specs.push_back(parseBenchSpec(s));
      }
      std::ostringstream csv;
      csv << BENCH_CSV_HEADER << "\n";
      for (const auto& spec : specs) {
        for (const auto& row : runBench(spec)) {
          csv << toCsv(row) << "\n";
        }
      }
      if (benchOut.empty()) {
        out << csv.str();
      } else {
        writeFile(benchOut, csv.str());
      }
      return EXIT_OK;
    }
    if (dot->parsed()) {
      cmdDot(dotSource, dotOut, out, pkg);
      return EXIT_OK;
    }
  } catch (const ParseError& e) {
    auto j = errorJson("parse", e.what());
    j["error"]["line"] = e.line();
    return detail::fail(err, j, EXIT_INPUT_ERROR);
  } catch (const ValidationError& e) {
    auto j = errorJson("validation", e.what());
    if (e.task() != ValidationError::npos) {
      j["error"]["task"] = e.task();
    }
    return detail::fail(err, j, EXIT_INPUT_ERROR);
  } catch (const ImportError& e) {
    auto j = errorJson("import", e.what());
    if (e.step() != ImportError::npos) {
      j["error"]["step"] = e.step();
    }
    return detail::fail(err, j, EXIT_INPUT_ERROR);
  } catch (const PlanningError& e) {
    return detail::fail(err, errorJson("planning", e.what()),
                        EXIT_INPUT_ERROR);
  } catch (const UnsupportedGateError& e) {
    return detail::fail(err, errorJson("unsupported_gate", e.what()),
                        EXIT_INPUT_ERROR);
  } catch (const CapacityError& e) {
    return detail::fail(err, errorJson("capacity", e.what()),
                        EXIT_INPUT_ERROR);
  } catch (const IoError& e) {
    return detail::fail(err, errorJson("io", e.what()), EXIT_INPUT_ERROR);
  } catch (const nlohmann::json::exception& e) {
    return detail::fail(err, errorJson("json", e.what()), EXIT_INPUT_ERROR);
  } catch (const std::invalid_argument& e) {
    return detail::fail(err, errorJson("invalid_argument", e.what()),
                        EXIT_INPUT_ERROR);
  } catch (const std::exception& e) {
    return detail::fail(err, errorJson("internal", e.what()),
                        EXIT_INTERNAL_ERROR);
  }
  return detail::fail(err, errorJson("internal", "no command ran"),
                      EXIT_INTERNAL_ERROR);
}

} // namespace ddpath::cli
