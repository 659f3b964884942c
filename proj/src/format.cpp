#include "gapfield/format.hpp"

#include <charconv>

namespace gapfield {

std::string format_double(double v) {
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace gapfield
