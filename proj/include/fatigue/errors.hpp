#pragma once

#include <stdexcept>
#include <string>

namespace fatigue {

// Error categories map onto CLI exit codes: input/config problems exit 2,
// external-service failures exit 3, degenerate models/calibrations exit 4.
enum class ErrorKind {
  Input,        // malformed data, bad arguments, schema violations
  Config,       // invalid configuration or unknown provider
  Transport,    // HTTP/network failure (retryable class)
  Auth,         // credential rejection (never retried)
  Geometry,     // degenerate landmark geometry
  Crop,         // crop region empty or outside the image
  Model,        // model file version/shape mismatch
  Calibration,  // degenerate mixture or optimization failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& m) : Error(ErrorKind::Input, m) {}
};
struct ParseError : InputError {
  ParseError(int line, const std::string& m)
      : InputError("line " + std::to_string(line) + ": " + m), line(line) {}
  int line;
};
struct SchemaError : InputError {
  explicit SchemaError(const std::string& m) : InputError(m) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(ErrorKind::Config, m) {}
};
struct TransportError : Error {
  explicit TransportError(const std::string& m) : Error(ErrorKind::Transport, m) {}
};
struct AuthError : Error {
  explicit AuthError(const std::string& m) : Error(ErrorKind::Auth, m) {}
};
struct GeometryError : Error {
  explicit GeometryError(const std::string& m) : Error(ErrorKind::Geometry, m) {}
};
struct CropError : Error {
  explicit CropError(const std::string& m) : Error(ErrorKind::Crop, m) {}
};
struct ModelError : Error {
  explicit ModelError(const std::string& m) : Error(ErrorKind::Model, m) {}
};
struct CalibrationError : Error {
  explicit CalibrationError(const std::string& m) : Error(ErrorKind::Calibration, m) {}
};

}  // namespace fatigue
