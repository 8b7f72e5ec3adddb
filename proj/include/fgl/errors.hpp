#pragma once

#include <stdexcept>
#include <string>

namespace fgl {

/// Raised when a Young function fails the structural growth requirements
/// (sampled t·g(t)/G(t) not bounded inside (1, ∞), non-convexity, ...).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration parse/validation failure with line and field context.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string field = "")
      : std::runtime_error(format(message, line, field)),
        line_(line),
        field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& message, int line,
                            const std::string& field) {
    std::string out = "config error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " (field '" + field + "')";
    out += ": " + message;
    return out;
  }

  int line_;
  std::string field_;
};

}  // namespace fgl
