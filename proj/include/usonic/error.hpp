#pragma once

#include <stdexcept>
#include <string>

namespace usonic {

enum class ErrorKind {
  config,
  io,
  format,
  unsupported_format,
  degenerate_input,
  design,
  unsupported_ratio,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so front-ends can map
/// it onto their own reporting (the CLI maps kinds onto exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace usonic
