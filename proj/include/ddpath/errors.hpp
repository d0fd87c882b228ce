#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddpath {

/// Malformed OpenQASM input. Carries the 1-based source line.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A gate kind without a decomposition rule into the requested native set.
class UnsupportedGateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A simulation path that does not describe a valid multiplication order.
/// `task()` is the 0-based index of the offending task, or `npos` when the
/// path as a whole is malformed (e.g. wrong task count).
class ValidationError : public std::runtime_error {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ValidationError(std::size_t task, const std::string& message)
      : std::runtime_error(task == npos
                               ? message
                               : "task " + std::to_string(task) + ": " +
                                     message),
        task_(task), reason_(message) {}

  [[nodiscard]] std::size_t task() const noexcept { return task_; }
  /// The message without the task prefix.
  [[nodiscard]] const std::string& reason() const noexcept { return reason_; }

private:
  std::size_t task_;
  std::string reason_;
};

/// Tensor-network planning failure (disconnected network, invalid plan).
class PlanningError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A contraction plan that cannot be turned into a simulation path.
class ImportError : public std::runtime_error {
public:
  static constexpr std::size_t npos = ValidationError::npos;

  ImportError(std::size_t step, const std::string& message)
      : std::runtime_error(step == npos ? "contraction plan: " + message
                                        : "contraction step " +
                                              std::to_string(step) + ": " +
                                              message),
        step_(step) {}

  [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
  std::size_t step_;
};

/// A file that cannot be read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Request exceeding the dense oracle's memory guard.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ddpath
