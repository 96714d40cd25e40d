#pragma once

#include <cstdio>
#include <string>

namespace agan {

// Serializes a double with 17 significant digits so reruns of a seeded
// command produce byte-identical files.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace agan
