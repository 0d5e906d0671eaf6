#include "ffpat/fields/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ffpat/core/errors.hpp"

namespace ffpat {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const std::string& require(const Header& h, const std::string& key,
                           const std::filesystem::path& path) {
  auto it = h.find(key);
  if (it == h.end()) throw ConfigError(path.string() + ": header is missing '" + key + "'");
  return it->second;
}

}  // namespace

void write_raw_f64(const std::filesystem::path& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  for (double v : values) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    bits = to_little_endian(bits);
    out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!out) throw ConfigError("write failed: " + path.string());
}

Vector read_raw_f64(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  Vector values;
  std::uint64_t bits = 0;
  while (in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
    bits = to_little_endian(bits);
    double v = 0.0;
    std::memcpy(&v, &bits, sizeof v);
    values.push_back(v);
  }
  return values;
}

void write_header(const std::filesystem::path& path, const Header& header) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  for (const auto& [key, value] : header) out << key << '=' << value << '\n';
}

Header read_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  Header header;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path.string() + ": malformed line '" + line + "'");
    header[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return header;
}

void write_field(const std::filesystem::path& base, const Field2D& field, const std::string& role) {
  auto bin = base;
  bin += ".bin";
  auto hdr = base;
  hdr += ".hdr";
  write_raw_f64(bin, field.span());
  write_header(hdr, {{"n", std::to_string(field.grid().n)},
                     {"extent", format_double(field.grid().half_width)},
                     {"role", role},
                     {"dtype", "float64-le"},
                     {"layout", "row-major, rows along x2"}});
}

Field2D read_field(const std::filesystem::path& base, std::string* role) {
  auto bin = base;
  bin += ".bin";
  auto hdr = base;
  hdr += ".hdr";
  const Header h = read_header(hdr);
  const Grid grid(std::stoi(require(h, "n", hdr)), std::stod(require(h, "extent", hdr)));
  if (role) *role = require(h, "role", hdr);
  return Field2D(grid, read_raw_f64(bin));
}

void write_pgm(const std::filesystem::path& path, std::span<const double> values, int width,
               int height) {
  if (values.size() != static_cast<std::size_t>(width) * height) {
    throw StructuralError("write_pgm: size mismatch");
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  for (int row = height - 1; row >= 0; --row) {
    for (int col = 0; col < width; ++col) {
      const double v = values[static_cast<std::size_t>(row) * width + col];
      const double t = range > 0.0 ? (v - lo) / range : 0.0;
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
    }
  }
}

void write_pgm(const std::filesystem::path& path, const Field2D& field) {
  write_pgm(path, field.span(), field.grid().n, field.grid().n);
}

}  // namespace ffpat
