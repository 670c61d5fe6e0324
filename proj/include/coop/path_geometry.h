#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace coop {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct VehicleDims {
  double length = 4.5;
  double width = 1.8;

  friend bool operator==(const VehicleDims&, const VehicleDims&) = default;
};

struct PathPoint {
  Vec2 position;
  double psi = 0.0;    // heading [rad]
  double kappa = 0.0;  // signed curvature [1/m]
};

/// Polyline reference path parametrized by arc length. Immutable once built.
class Path {
 public:
  /// Throws Error{kInvalidInput} for < 2 points or a corridor narrower than
  /// the vehicle, Error{kDegenerateGeometry} for repeated consecutive points.
  static Path Build(std::vector<Vec2> waypoints, double corridor_halfwidth,
                    VehicleDims dims);

  const std::vector<Vec2>& waypoints() const { return waypoints_; }
  const std::vector<double>& cumulative_arclength() const { return arclength_; }
  double length() const { return arclength_.back(); }
  double corridor_halfwidth() const { return corridor_halfwidth_; }
  const VehicleDims& dims() const { return dims_; }
  double vehicle_length() const { return dims_.length; }
  double vehicle_width() const { return dims_.width; }

  /// Throws Error{kOutOfRange} when s is outside [0, length()].
  PathPoint Eval(double s) const;
  Vec2 PositionAt(double s) const;
  double HeadingAt(double s) const;
  /// Turning angle per unit length at the vertices, interpolated linearly
  /// along each segment; zero at both ends.
  double CurvatureAt(double s) const;

  friend bool operator==(const Path& a, const Path& b) {
    return a.waypoints_ == b.waypoints_ &&
           a.corridor_halfwidth_ == b.corridor_halfwidth_ &&
           a.dims_ == b.dims_;
  }

 private:
  Path() = default;
  std::size_t SegmentIndex(double s) const;

  std::vector<Vec2> waypoints_;
  std::vector<double> arclength_;
  std::vector<double> segment_heading_;  // unwrapped, one per segment
  std::vector<double> vertex_curvature_;
  double corridor_halfwidth_ = 0.0;
  VehicleDims dims_;
};

struct ArcInterval {
  double s_in = 0.0;
  double s_out = 0.0;

  double length() const { return s_out - s_in; }
  friend bool operator==(const ArcInterval&, const ArcInterval&) = default;
};

/// Arc-length intervals on two paths outside of which the footprints can
/// never overlap. Multiple overlap regions are merged into one hull.
struct CollisionZone {
  ArcInterval interval_a;
  ArcInterval interval_b;
  bool empty = true;

  CollisionZone Mirrored() const { return {interval_b, interval_a, empty}; }
  friend bool operator==(const CollisionZone&, const CollisionZone&) = default;
};

/// Heading-aligned rectangle centered on the path point at s.
std::array<Vec2, 4> FootprintAt(const Path& path, double s);

/// Separating-axis overlap test; touching edges count as overlap.
bool RectanglesOverlap(std::span<const Vec2, 4> a, std::span<const Vec2, 4> b);

/// Coarse 0.1 m grid over (s_a, s_b), then bisection of every hull boundary
/// down to 1 mm. Boundaries are reported on the non-overlapping side.
CollisionZone ComputeCollisionZone(const Path& path_a, const Path& path_b);

}  // namespace coop
