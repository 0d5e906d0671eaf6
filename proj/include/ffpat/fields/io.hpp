#ifndef FFPAT_FIELDS_IO_HPP
#define FFPAT_FIELDS_IO_HPP

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "ffpat/fields/grid.hpp"

namespace ffpat {

using Header = std::map<std::string, std::string>;

/// Raw little-endian float64 payload.
void write_raw_f64(const std::filesystem::path& path, std::span<const double> values);
Vector read_raw_f64(const std::filesystem::path& path);

/// key=value sidecar lines, sorted by key.
void write_header(const std::filesystem::path& path, const Header& header);
Header read_header(const std::filesystem::path& path);

/// Writes `<base>.bin` and `<base>.hdr` (n, extent, role).
void write_field(const std::filesystem::path& base, const Field2D& field, const std::string& role);
Field2D read_field(const std::filesystem::path& base, std::string* role = nullptr);

/// 8-bit binary PGM with linear min-max normalization; rows written from
/// top (largest x2) to bottom.
void write_pgm(const std::filesystem::path& path, const Field2D& field);
void write_pgm(const std::filesystem::path& path, std::span<const double> values, int width,
               int height);

}  // namespace ffpat

#endif  // FFPAT_FIELDS_IO_HPP
