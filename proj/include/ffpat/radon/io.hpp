#ifndef FFPAT_RADON_IO_HPP
#define FFPAT_RADON_IO_HPP

#include <filesystem>

#include "ffpat/radon/sinogram.hpp"

namespace ffpat {

/// Writes base.bin (little-endian float64, angle-major) and base.hdr.
void write_sinogram(const std::filesystem::path& base, const Sinogram& sin, const MaskSpec& spec);

/// Reads a sinogram written by write_sinogram; the mask is rebuilt from the
/// recorded spec. Throws ConfigError on a malformed or inconsistent header.
Sinogram read_sinogram(const std::filesystem::path& base, MaskSpec* spec = nullptr);

}  // namespace ffpat

#endif  // FFPAT_RADON_IO_HPP
