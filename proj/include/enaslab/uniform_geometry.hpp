#pragma once

#include <numbers>

#include "enaslab/random.hpp"

namespace enaslab {

// The UNIFORM binary classification problem on the unit disk (D = 2).
//
// The disk is cut into n equal sectors. Every sector splits into an inscribed
// isosceles triangle (bounded by the chord) and a circular segment beyond the
// chord. Each sector is one of three region kinds:
//   A: green segment, white triangle   (a half-space inside the disk)
//   B: fully green sector              (an unbounded polyhedron)
//   C: green triangle, white segment   (a bounded polyhedron)
// with a = n/2, b = c = n/4. Sector kinds follow the fixed period-4 pattern
// B, A, C, A starting at angle 0.

enum class RegionKind { A, B, C };

const char* to_string(RegionKind kind) noexcept;

class UniformInstance {
 public:
  int n() const noexcept { return n_; }
  int a() const noexcept { return n_ / 2; }
  int b() const noexcept { return n_ / 4; }
  int c() const noexcept { return n_ / 4; }

  /// Area of one inscribed triangle, (1/2) sin(2 pi / n).
  double triangle_area() const noexcept { return triangle_area_; }
  /// Area of one circular segment, pi / n - triangle_area.
  double segment_area() const noexcept { return segment_area_; }

  double sector_width() const noexcept { return 2.0 * std::numbers::pi / n_; }
  /// cos(pi / n): distance from the origin to every chord.
  double chord_distance() const noexcept { return chord_distance_; }

  friend UniformInstance make_instance(int n);

 private:
  explicit UniformInstance(int n);

  int n_;
  double triangle_area_;
  double segment_area_;
  double chord_distance_;
};

struct RegionSpec {
  int index;
  RegionKind kind;
};

/// Polar point of the closed unit disk; phi in [0, 2 pi).
struct DiskPoint {
  double r;
  double phi;
};

/// Throws std::invalid_argument unless n >= 8 and n % 4 == 0.
UniformInstance make_instance(int n);

/// Throws std::out_of_range for k outside [0, n).
RegionSpec region_of(const UniformInstance& inst, int k);

/// Sector containing angle phi. A point on the ray between two sectors
/// belongs to the lower-index one; the ray at angle 0 belongs to sector 0.
int sector_of(const UniformInstance& inst, double phi);

/// True when p lies in the inscribed triangle of its sector (chord included).
bool in_triangle(const UniformInstance& inst, const DiskPoint& p);

/// Ground-truth label: 1 on green areas, 0 on white areas.
int label_point(const UniformInstance& inst, const DiskPoint& p);

/// Fraction of the disk area carrying label 1.
double green_fraction(const UniformInstance& inst);

/// Maps two unit uniforms to a uniformly distributed disk point
/// (r = sqrt(u), phi = 2 pi v).
DiskPoint disk_point_from_uniforms(double u, double v);

DiskPoint sample_disk_point(Rng& rng);

double normalize_angle(double phi);

}  // namespace enaslab
