#pragma once

#include <cstdio>
#include <string>

namespace netdesign {

// Twelve significant digits; used for every number the tools print.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace netdesign
