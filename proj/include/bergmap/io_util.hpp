// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergmap/types.hpp"

namespace bergmap {

/// Shortest round-trip decimal representation (17 significant digits max);
/// the fixed formatting behind byte-stable CSV/JSON outputs.
std::string format_double(double v);

/// FNV-1a 64-bit over a canonical string; stable across runs and platforms.
std::string config_hash(const std::string& canonical);

/// 8-bit grayscale PPM (P5), row-major, min-max normalized.
/// Returns {min, max} used for normalization.
std::pair<double, double> write_pgm(const std::string& path, int width,
                                    int height,
                                    const std::vector<double>& row_major);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace bergmap
