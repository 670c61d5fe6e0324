#include "coop/path_geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "coop/errors.h"

namespace coop {
namespace {

constexpr double kHeadingBlend = 0.25;
constexpr double kCoarseGrid = 0.1;
constexpr double kFineGrid = 0.02;
constexpr double kBoundaryTolerance = 1e-3;

double Cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
double Dist(const Vec2& a, const Vec2& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

std::vector<double> Grid(double length, double step) {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor(length / step));
  out.reserve(n + 2);
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = static_cast<double>(i) * step;
    if (s < length) out.push_back(s);
  }
  out.push_back(length);
  return out;
}

struct Footprint {
  std::array<Vec2, 4> corners;
  Vec2 center;
};

Footprint MakeFootprint(const Path& path, double s) {
  return {FootprintAt(path, s), path.PositionAt(s)};
}

double HalfDiagonal(const Path& path) {
  return 0.5 * std::hypot(path.vehicle_length(), path.vehicle_width());
}

bool FootprintsOverlap(const Footprint& a, const Footprint& b, double reach) {
  const double dx = a.center.x - b.center.x;
  const double dy = a.center.y - b.center.y;
  if (dx * dx + dy * dy > reach * reach) return false;
  return RectanglesOverlap(a.corners, b.corners);
}

/// True if the footprint at s on `path` overlaps any footprint sampled along
/// `other` at fine resolution.
bool OverlapsAnywhere(const Path& path, double s,
                      const std::vector<Footprint>& other, double reach) {
  const Footprint probe = MakeFootprint(path, s);
  return std::any_of(other.begin(), other.end(), [&](const Footprint& f) {
    return FootprintsOverlap(probe, f, reach);
  });
}

/// Hull of the arc-length positions on `path` where its footprint can touch a
/// footprint on `other`.
std::optional<ArcInterval> OverlapHull(const Path& path, const Path& other) {
  const double reach = HalfDiagonal(path) + HalfDiagonal(other) + 1e-9;

  const std::vector<double> grid = Grid(path.length(), kCoarseGrid);
  std::vector<Footprint> coarse_other;
  for (double s : Grid(other.length(), kCoarseGrid)) {
    coarse_other.push_back(MakeFootprint(other, s));
  }
  std::vector<Footprint> fine_other;
  for (double s : Grid(other.length(), kFineGrid)) {
    fine_other.push_back(MakeFootprint(other, s));
  }

  auto fine_hit = [&](double s) {
    return OverlapsAnywhere(path, s, fine_other, reach);
  };

  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (OverlapsAnywhere(path, grid[i], coarse_other, reach)) {
      first = i;
      break;
    }
  }
  if (!first) return std::nullopt;
  std::size_t last = *first;
  for (std::size_t i = grid.size(); i-- > *first;) {
    if (OverlapsAnywhere(path, grid[i], coarse_other, reach)) {
      last = i;
      break;
    }
  }

  // Bisect between a known-free and a known-overlapping position; the free
  // side is returned so the hull stays conservative.
  auto refine = [&](double free_s, double hit_s) {
    while (std::abs(hit_s - free_s) > kBoundaryTolerance) {
      const double mid = 0.5 * (free_s + hit_s);
      if (fine_hit(mid)) {
        hit_s = mid;
      } else {
        free_s = mid;
      }
    }
    return free_s;
  };

  ArcInterval hull{grid[*first], grid[last]};
  if (*first > 0) hull.s_in = refine(grid[*first - 1], grid[*first]);
  if (last + 1 < grid.size()) hull.s_out = refine(grid[last + 1], grid[last]);
  return hull;
}

}  // namespace

Path Path::Build(std::vector<Vec2> waypoints, double corridor_halfwidth,
                 VehicleDims dims) {
  if (waypoints.size() < 2) {
    throw Error(ErrorCode::kInvalidInput, "path needs at least 2 waypoints");
  }
  if (!(dims.length > 0.0) || !(dims.width > 0.0)) {
    throw Error(ErrorCode::kInvalidInput, "vehicle dimensions must be positive");
  }
  if (!(corridor_halfwidth >= dims.width / 2.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "corridor half-width is narrower than half the vehicle width");
  }
  Path path;
  path.arclength_.reserve(waypoints.size());
  path.arclength_.push_back(0.0);
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const double len = Dist(waypoints[i - 1], waypoints[i]);
    if (!(len > 0.0)) {
      throw Error(ErrorCode::kDegenerateGeometry,
                  "duplicate consecutive waypoints at index " + std::to_string(i));
    }
    path.arclength_.push_back(path.arclength_.back() + len);
    const double heading = std::atan2(waypoints[i].y - waypoints[i - 1].y,
                                      waypoints[i].x - waypoints[i - 1].x);
    if (path.segment_heading_.empty()) {
      path.segment_heading_.push_back(heading);
    } else {
      double delta = heading - path.segment_heading_.back();
      delta = std::remainder(delta, 2.0 * std::numbers::pi);
      path.segment_heading_.push_back(path.segment_heading_.back() + delta);
    }
  }
  // Turning angle over the mean length of the two adjacent segments.
  path.vertex_curvature_.assign(waypoints.size(), 0.0);
  for (std::size_t k = 1; k + 1 < waypoints.size(); ++k) {
    const double turn = path.segment_heading_[k] - path.segment_heading_[k - 1];
    const double span = 0.5 * (path.arclength_[k + 1] - path.arclength_[k - 1]);
    path.vertex_curvature_[k] = turn / span;
  }
  path.waypoints_ = std::move(waypoints);
  path.corridor_halfwidth_ = corridor_halfwidth;
  path.dims_ = dims;
  return path;
}

std::size_t Path::SegmentIndex(double s) const {
  auto it = std::upper_bound(arclength_.begin(), arclength_.end(), s);
  auto idx = static_cast<std::size_t>(std::distance(arclength_.begin(), it));
  if (idx == 0) return 0;
  return std::min(idx - 1, arclength_.size() - 2);
}

Vec2 Path::PositionAt(double s) const {
  if (!(s >= 0.0 && s <= length())) {
    throw Error(ErrorCode::kOutOfRange,
                "arc length " + std::to_string(s) + " outside path range [0, " +
                    std::to_string(length()) + "]");
  }
  const std::size_t i = SegmentIndex(s);
  const double seg = arclength_[i + 1] - arclength_[i];
  const double t = (s - arclength_[i]) / seg;
  const Vec2& p = waypoints_[i];
  const Vec2& q = waypoints_[i + 1];
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

double Path::HeadingAt(double s) const {
  if (!(s >= 0.0 && s <= length())) {
    throw Error(ErrorCode::kOutOfRange, "arc length outside path range");
  }
  const std::size_t i = SegmentIndex(s);
  // Blend linearly across a short window around each interior vertex.
  auto blend_width = [&](std::size_t vertex) {
    const double prev = arclength_[vertex] - arclength_[vertex - 1];
    const double next = arclength_[vertex + 1] - arclength_[vertex];
    return std::min({kHeadingBlend, 0.5 * prev, 0.5 * next});
  };
  if (i > 0) {
    const double h = blend_width(i);
    const double d = s - arclength_[i];
    if (d < h) {
      const double t = 0.5 + 0.5 * d / h;
      return segment_heading_[i - 1] +
             t * (segment_heading_[i] - segment_heading_[i - 1]);
    }
  }
  if (i + 2 < arclength_.size()) {
    const double h = blend_width(i + 1);
    const double d = arclength_[i + 1] - s;
    if (d < h) {
      const double t = 0.5 - 0.5 * d / h;
      return segment_heading_[i] +
             t * (segment_heading_[i + 1] - segment_heading_[i]);
    }
  }
  return segment_heading_[i];
}

double Path::CurvatureAt(double s) const {
  if (!(s >= 0.0 && s <= length())) {
    throw Error(ErrorCode::kOutOfRange, "arc length outside path range");
  }
  const std::size_t i = SegmentIndex(s);
  const double t = (s - arclength_[i]) / (arclength_[i + 1] - arclength_[i]);
  return vertex_curvature_[i] + t * (vertex_curvature_[i + 1] - vertex_curvature_[i]);
}

PathPoint Path::Eval(double s) const {
  return {PositionAt(s), HeadingAt(s), CurvatureAt(s)};
}

std::array<Vec2, 4> FootprintAt(const Path& path, double s) {
  const Vec2 c = path.PositionAt(s);
  const double psi = path.HeadingAt(s);
  const double hl = 0.5 * path.vehicle_length();
  const double hw = 0.5 * path.vehicle_width();
  const Vec2 f{std::cos(psi), std::sin(psi)};
  const Vec2 l{-f.y, f.x};
  return {Vec2{c.x + hl * f.x + hw * l.x, c.y + hl * f.y + hw * l.y},
          Vec2{c.x - hl * f.x + hw * l.x, c.y - hl * f.y + hw * l.y},
          Vec2{c.x - hl * f.x - hw * l.x, c.y - hl * f.y - hw * l.y},
          Vec2{c.x + hl * f.x - hw * l.x, c.y + hl * f.y - hw * l.y}};
}

bool RectanglesOverlap(std::span<const Vec2, 4> a, std::span<const Vec2, 4> b) {
  auto separated_along = [](std::span<const Vec2, 4> r, std::span<const Vec2, 4> p,
                            std::span<const Vec2, 4> q) {
    for (int e = 0; e < 2; ++e) {
      const Vec2 axis{r[e + 1].x - r[e].x, r[e + 1].y - r[e].y};
      double pmin = 1e300, pmax = -1e300, qmin = 1e300, qmax = -1e300;
      for (int k = 0; k < 4; ++k) {
        const double pp = p[k].x * axis.x + p[k].y * axis.y;
        const double qq = q[k].x * axis.x + q[k].y * axis.y;
        pmin = std::min(pmin, pp);
        pmax = std::max(pmax, pp);
        qmin = std::min(qmin, qq);
        qmax = std::max(qmax, qq);
      }
      if (pmax < qmin || qmax < pmin) return true;
    }
    return false;
  };
  return !separated_along(a, a, b) && !separated_along(b, a, b);
}

CollisionZone ComputeCollisionZone(const Path& path_a, const Path& path_b) {
  const auto on_a = OverlapHull(path_a, path_b);
  if (!on_a) return {};
  const auto on_b = OverlapHull(path_b, path_a);
  if (!on_b) return {};
  return {*on_a, *on_b, false};
}

}  // namespace coop
