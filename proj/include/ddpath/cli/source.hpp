#pragma once

#include "ddpath/circuit/circuit.hpp"
#include "ddpath/circuit/generators.hpp"
#include "ddpath/circuit/qasm.hpp"
#include "ddpath/circuit/transpile.hpp"

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ddpath::cli {

using Generator = std::function<qc::Circuit(std::size_t)>;

/// Generator identifiers accepted in `name:n` specs.
[[nodiscard]] inline const std::map<std::string, Generator, std::less<>>&
generators() {
  static const std::map<std::string, Generator, std::less<>> table{
      {"ghz", [](std::size_t n) { return qc::ghz(n); }},
      {"wstate", [](std::size_t n) { return qc::wState(n); }},
      {"graph", [](std::size_t n) { return qc::graphState(n); }},
      {"dj", [](std::size_t n) { return qc::deutschJozsa(n); }},
      {"qft", [](std::size_t n) { return qc::qft(n); }},
      {"qftentangled", [](std::size_t n) { return qc::entangledQft(n); }},
  };
  return table;
}

[[nodiscard]] inline std::size_t parseCount(std::string_view text,
                                            std::string_view what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("invalid " + std::string(what) + " '" +
                                std::string(text) + "'");
  }
  return value;
}

/// Resolves a circuit source: `transpile:<source>`, a generator spec
/// `name:n`, or the path of an OpenQASM file.
[[nodiscard]] inline qc::Circuit loadCircuit(std::string_view source) {
  constexpr std::string_view transpilePrefix = "transpile:";
  if (source.starts_with(transpilePrefix)) {
    return qc::transpile(loadCircuit(source.substr(transpilePrefix.size())));
  }
  if (const auto colon = source.find(':'); colon != std::string_view::npos) {
    const auto name = source.substr(0, colon);
    const auto& table = generators();
    if (const auto it = table.find(name); it != table.end()) {
      return it->second(parseCount(source.substr(colon + 1), "qubit count"));
    }
    if (!std::filesystem::exists(std::string(source))) {
      throw std::invalid_argument("unknown generator '" + std::string(name) +
                                  "' and no such file '" + std::string(source) +
                                  "'");
    }
  }
  return qc::parseQasmFile(std::string(source));
}

} // namespace ddpath::cli
