#include "usonic/error.hpp"

namespace usonic {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config: return "config error";
    case ErrorKind::io: return "I/O error";
    case ErrorKind::format: return "format error";
    case ErrorKind::unsupported_format: return "unsupported format";
    case ErrorKind::degenerate_input: return "degenerate input";
    case ErrorKind::design: return "filter design error";
    case ErrorKind::unsupported_ratio: return "unsupported resampling ratio";
  }
  return "error";
}

}  // namespace usonic
