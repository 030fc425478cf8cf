#pragma once

// Flat binary and CSV serialization of fields.
//
// Binary layout (little-endian host order): uint64 n, double L, double R, then
// n * n (re, im) double pairs in row-major node order.

#include <filesystem>
#include <ostream>
#include <string>

#include "cgo/grid.hpp"

namespace cgo {

void write_field_binary(std::ostream& os, const Field& f);
Field read_field_binary(std::istream& is);

// One row per node: x, y, re, im.
void write_field_csv(std::ostream& os, const Field& f);

// Writes to a sibling temporary file and renames it over the target, so a
// reader never sees a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

void save_field(const std::filesystem::path& path, const Field& f);
Field load_field(const std::filesystem::path& path);

}  // namespace cgo
