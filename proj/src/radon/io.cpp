#include "ffpat/radon/io.hpp"

#include <cmath>
#include <sstream>

#include "ffpat/core/errors.hpp"
#include "ffpat/fields/io.hpp"
#include "ffpat/radon/mask.hpp"

namespace ffpat {

namespace {

std::string exact(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const std::string& field(const Header& h, const char* key, const std::filesystem::path& path) {
  auto it = h.find(key);
  if (it == h.end()) throw ConfigError(path.string() + ": header is missing '" + key + "'");
  return it->second;
}

}  // namespace

void write_sinogram(const std::filesystem::path& base, const Sinogram& sin, const MaskSpec& spec) {
  auto bin = base;
  bin += ".bin";
  auto hdr = base;
  hdr += ".hdr";
  write_raw_f64(bin, sin.values);
  write_header(hdr, {{"n_theta", std::to_string(sin.geom.n_theta)},
                     {"n_s", std::to_string(sin.geom.n_s)},
                     {"s_spacing", exact(sin.geom.ds)},
                     {"angular_range_deg", "[0,180)"},
                     {"mask_exterior_radius", exact(spec.exterior_radius)},
                     {"mask_theta_min_deg", exact(spec.theta_min_deg)},
                     {"mask_theta_max_deg", exact(spec.theta_max_deg)},
                     {"dtype", "float64-le"},
                     {"layout", "row-major, angle-major"},
                     {"convention", kRadonConvention}});
}

Sinogram read_sinogram(const std::filesystem::path& base, MaskSpec* spec_out) {
  auto bin = base;
  bin += ".bin";
  auto hdr = base;
  hdr += ".hdr";
  const Header h = read_header(hdr);
  SinogramGeom geom;
  MaskSpec spec;
  try {
    geom.n_theta = std::stoi(field(h, "n_theta", hdr));
    geom.n_s = std::stoi(field(h, "n_s", hdr));
    geom.ds = std::stod(field(h, "s_spacing", hdr));
    spec.exterior_radius = std::stod(field(h, "mask_exterior_radius", hdr));
    spec.theta_min_deg = std::stod(field(h, "mask_theta_min_deg", hdr));
    spec.theta_max_deg = std::stod(field(h, "mask_theta_max_deg", hdr));
  } catch (const std::logic_error&) {
    throw ConfigError(hdr.string() + ": non-numeric header value");
  }
  if (field(h, "convention", hdr) != kRadonConvention) {
    throw ConfigError(hdr.string() + ": unknown angle convention");
  }
  geom.validate();
  Vector values = read_raw_f64(bin);
  if (values.size() != geom.size()) {
    throw ConfigError(bin.string() + ": expected " + std::to_string(geom.size()) + " values");
  }
  Sinogram sin(geom, std::move(values));
  sin.mask = mask_pattern(geom, spec);
  if (spec_out) *spec_out = spec;
  return sin;
}

}  // namespace ffpat
