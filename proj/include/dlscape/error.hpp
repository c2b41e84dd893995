#pragma once

#include <stdexcept>
#include <string>

namespace dlscape {

/// Base class for every error raised by the library. Carries the module that
/// raised it and, when applicable, the parameter the caller should change.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string parameter, const std::string& message)
      : std::runtime_error(message),
        module_(std::move(module)),
        parameter_(std::move(parameter)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& parameter() const noexcept { return parameter_; }
  virtual const char* kind() const noexcept { return "error"; }

 private:
  std::string module_;
  std::string parameter_;
};

/// Bad arguments: empty source sets, invalid generator parameters, ...
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// A query falls outside the zone in which window distances are exact.
class ValidityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validity"; }
};

/// Window materialization would exceed the configured vertex budget.
class ResourceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource"; }
};

}  // namespace dlscape
