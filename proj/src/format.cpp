#include "zipfkit/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace zipfkit {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kOutputDigits, v);
  return buf;
}

double round_sig(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

}  // namespace zipfkit
