#include "polybarrier/format.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "polybarrier/error.hpp"

namespace polybarrier {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s) {
  const std::string str(s);
  if (str.empty()) throw DomainError("parse_double: empty string");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size() || (errno == ERANGE && std::isinf(v)))
    throw DomainError("parse_double: '" + str + "' is not a decimal number");
  return v;
}

}  // namespace polybarrier
