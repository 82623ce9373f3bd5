#include "vz/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace vz {

std::string shortest(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string significant(double x, int digits) {
  if (!std::isfinite(x)) return shortest(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace vz
