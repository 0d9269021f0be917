#pragma once

#include <stdexcept>
#include <string>

namespace spectra_svi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver non-convergence, overflow, or an iterate leaving its set.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Raised by matrix_exp when the spectrum would overflow a double.
class OverflowError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Argument outside an operation's domain (non-Hermitian input, singular
/// divergence argument, mismatched dimensions, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed experiment configuration. Carries the offending key and line.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : Error(FormatMessage(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  static std::string FormatMessage(const std::string& key, int line, const std::string& what) {
    std::string msg = "config error";
    if (line > 0) msg += " at line " + std::to_string(line);
    if (!key.empty()) msg += " (key '" + key + "')";
    return msg + ": " + what;
  }

  std::string key_;
  int line_;
};

}  // namespace spectra_svi
