#include "dbd/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace dbd {

std::string format_real(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

std::string format_real(long double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*Lg", digits, value);
  return buffer;
}

double round_significant(double value, int digits) {
  return std::strtod(format_real(value, digits).c_str(), nullptr);
}

}  // namespace dbd
