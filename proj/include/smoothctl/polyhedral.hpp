#pragma once

#include <optional>
#include <vector>

#include "smoothctl/numeric.hpp"

namespace smoothctl {

/// Axis-aligned box {x : lower <= x <= upper}, coordinatewise.
struct Box {
  Vec lower;
  Vec upper;

  /// Validates matching dimensions, finiteness, lower <= upper.
  static Box make(Vec lower, Vec upper);

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Vec& x, double tol = 1e-7) const;
  Vec clamp(const Vec& x) const;
  Vec center() const { return 0.5 * (lower + upper); }
};

/// Euclidean diameter of the box, ||upper - lower||_2.
double diameter(const Box& b);

/// Closed halfspace {x : normal . x <= offset}.
struct Halfspace {
  Vec normal;
  double offset = 0.0;

  static Halfspace make(Vec normal, double offset);
};

/// Intersection of a bounding box with finitely many halfspaces.
/// Always bounded; may be empty.
class Polyhedron {
 public:
  Polyhedron() = default;
  explicit Polyhedron(Box box) : box_(std::move(box)) {}
  Polyhedron(Box box, std::vector<Halfspace> halfspaces);

  int dim() const { return box_.dim(); }
  const Box& box() const { return box_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  void add_halfspace(Halfspace h);

  /// Membership within additive tolerance tol on every constraint.
  bool contains(const Vec& x, double tol = 1e-7) const;

  /// Euclidean projection of point onto the set; nullopt when the set is
  /// empty. Exact via active-set enumeration over constraint subsets
  /// (dim <= 4 when halfspaces are present); clip-based fast path in 2-D.
  std::optional<Vec> project(const Vec& point) const;

  /// All vertices: feasible intersection points of dim() active constraint
  /// boundaries, deduplicated within 1e-9 and sorted lexicographically.
  /// Throws UnsupportedDimensionError above the cap.
  std::vector<Vec> vertices(int dim_cap = 4) const;

 private:
  Box box_;
  std::vector<Halfspace> halfspaces_;
};

namespace detail {

/// Exhaustive active-set paths (any dim up to the cap).
std::vector<Vec> vertices_combinatorial(const Polyhedron& p, int dim_cap);
std::optional<Vec> project_combinatorial(const Polyhedron& p, const Vec& point);

/// 2-D convex polygon clipping paths; exact same contracts, used when the
/// constraint count makes subset enumeration wasteful.
std::vector<Vec> vertices_clip2d(const Polyhedron& p);
std::optional<Vec> project_clip2d(const Polyhedron& p, const Vec& point);

/// The clipped feasible polygon itself (CCW, possibly degenerate).
std::vector<Eigen::Vector2d> clip_polygon(const Polyhedron& p);

}  // namespace detail

}  // namespace smoothctl
