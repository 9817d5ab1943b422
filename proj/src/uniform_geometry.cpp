#include "enaslab/uniform_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace enaslab {

const char* to_string(RegionKind kind) noexcept {
  switch (kind) {
    case RegionKind::A: return "A";
    case RegionKind::B: return "B";
    case RegionKind::C: return "C";
  }
  return "?";
}

UniformInstance::UniformInstance(int n)
    : n_(n),
      triangle_area_(0.5 * std::sin(2.0 * std::numbers::pi / n)),
      segment_area_(std::numbers::pi / n - triangle_area_),
      chord_distance_(std::cos(std::numbers::pi / n)) {}

UniformInstance make_instance(int n) {
  if (n < 8 || n % 4 != 0) {
    throw std::invalid_argument("invalid sector count n=" + std::to_string(n) +
                                ": n must satisfy n >= 8 and n % 4 == 0");
  }
  UniformInstance inst(n);
  // Every triangle must outweigh all segments combined so that (i, j) levels
  // order lexicographically.
  const double spare = inst.triangle_area() - 0.75 * n * inst.segment_area();
  if (!(spare > 0.0) || !(inst.segment_area() > 0.0)) {
    throw std::invalid_argument("dominance inequality fails for n=" + std::to_string(n));
  }
  return inst;
}

RegionSpec region_of(const UniformInstance& inst, int k) {
  if (k < 0 || k >= inst.n()) {
    throw std::out_of_range("sector index " + std::to_string(k) + " outside [0, " +
                            std::to_string(inst.n()) + ")");
  }
  switch (k % 4) {
    case 0: return {k, RegionKind::B};
    case 2: return {k, RegionKind::C};
    default: return {k, RegionKind::A};
  }
}

double normalize_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  return phi >= two_pi ? 0.0 : phi;
}

int sector_of(const UniformInstance& inst, double phi) {
  const double q = normalize_angle(phi) / inst.sector_width();
  auto k = static_cast<int>(std::floor(q));
  if (k > 0 && static_cast<double>(k) == q) --k;
  return std::clamp(k, 0, inst.n() - 1);
}

bool in_triangle(const UniformInstance& inst, const DiskPoint& p) {
  const int k = sector_of(inst, p.phi);
  const double offset = normalize_angle(p.phi) - k * inst.sector_width();
  const double half = 0.5 * inst.sector_width();
  return p.r * std::cos(offset - half) <= inst.chord_distance();
}

int label_point(const UniformInstance& inst, const DiskPoint& p) {
  const RegionSpec region = region_of(inst, sector_of(inst, p.phi));
  switch (region.kind) {
    case RegionKind::B: return 1;
    case RegionKind::A: return in_triangle(inst, p) ? 0 : 1;
    case RegionKind::C: return in_triangle(inst, p) ? 1 : 0;
  }
  return 0;
}

double green_fraction(const UniformInstance& inst) {
  const double t = inst.triangle_area();
  const double s = inst.segment_area();
  return (inst.b() * (t + s) + inst.a() * s + inst.c() * t) / std::numbers::pi;
}

DiskPoint disk_point_from_uniforms(double u, double v) {
  return {std::sqrt(u), normalize_angle(2.0 * std::numbers::pi * v)};
}

DiskPoint sample_disk_point(Rng& rng) {
  const double u = rng.uniform01();
  const double v = rng.uniform01();
  return disk_point_from_uniforms(u, v);
}

}  // namespace enaslab
