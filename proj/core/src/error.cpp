#include "thasym/error.hpp"

namespace thasym {

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::branch: return "branch";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::aliasing: return "aliasing";
    case ErrorKind::zero_on_contour: return "zero-on-contour";
    case ErrorKind::winding: return "winding";
    case ErrorKind::usage: return "usage";
    case ErrorKind::division: return "division";
    case ErrorKind::existence: return "existence";
    case ErrorKind::solvability: return "solvability";
    case ErrorKind::asymptotic_condition: return "asymptotic-condition";
    case ErrorKind::model_inapplicable: return "model-inapplicable";
    case ErrorKind::validation: return "validation";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace thasym
