#pragma once

#include <filesystem>
#include <string>

#include "paracalc/field.hpp"

namespace paracalc {

// Binary field format "PCF1": 8-byte magic "PARACF01", u32 LE dim,
// u32 LE n, then n^dim little-endian f64 values, row-major.
void save_pcf1(const Field& f, const std::filesystem::path& path);
Field load_pcf1(const std::filesystem::path& path);

}  // namespace paracalc
