#pragma once

#include <stdexcept>
#include <string>

namespace sefield {

enum class ErrorKind { domain, size, numeric, config, input, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& m) : Error(ErrorKind::domain, m) {}
};

// Problem size over a configured cap.
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& m) : Error(ErrorKind::size, m) {}
};

// Quadrature or eigensolver failed to converge, factorization broke down, etc.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& m) : Error(ErrorKind::config, m) {}
};

// Malformed or incomplete user data.
class InputError : public Error {
 public:
  explicit InputError(const std::string& m) : Error(ErrorKind::input, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::io, m) {}
};

}  // namespace sefield
