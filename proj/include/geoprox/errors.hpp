#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geoprox {

enum class ErrorKind {
  InvalidPoint,
  InvalidParameter,
  UnsupportedSpace,
  InvalidSet,
  NoConvergence,
  DegenerateInput,
  OutOfDomain,
  WrongMode,
  InvalidInstance,
};

std::string_view to_string(ErrorKind kind);

class GeoError : public std::runtime_error {
 public:
  GeoError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw GeoError(kind, what); }

}  // namespace geoprox
