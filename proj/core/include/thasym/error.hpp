#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thasym {

enum class ErrorKind {
  domain,
  branch,
  resolution,
  aliasing,
  zero_on_contour,
  winding,
  usage,
  division,
  existence,
  solvability,
  asymptotic_condition,
  model_inapplicable,
  validation,
};

std::string_view to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace thasym
