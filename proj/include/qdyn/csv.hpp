#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace qdyn {

/// Fixed 12-significant-digit lowercase scientific formatting; the one
/// numeric format every CSV column uses, so outputs are reproducible
/// byte for byte.
inline std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.11e", x);
  return buf;
}

inline std::string join_csv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  out += '\n';
  return out;
}

}  // namespace qdyn
