// SPDX-License-Identifier: Apache-2.0
#include "bergmap/io_util.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace bergmap {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string config_hash(const std::string& canonical) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

std::pair<double, double> write_pgm(const std::string& path, int width,
                                    int height,
                                    const std::vector<double>& row_major) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : row_major)
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (!(hi > lo)) {
    lo = 0;
    hi = 1;
  }
  std::ofstream out(path, std::ios::binary);
  out << "P5\n" << width << " " << height << "\n255\n";
  for (double v : row_major) {
    double t = std::isfinite(v) ? (v - lo) / (hi - lo) : 0.0;
    unsigned char byte = static_cast<unsigned char>(std::lround(255.0 * t));
    out.write(reinterpret_cast<const char*>(&byte), 1);
  }
  return {lo, hi};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace bergmap
