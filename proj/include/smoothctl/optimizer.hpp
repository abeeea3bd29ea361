#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "smoothctl/polyhedral.hpp"
#include "smoothctl/surrogate.hpp"

namespace smoothctl {

/// Structure of the exact subproblems the weight pair induces.
enum class ConvexityCase {
  ConvexQuadPieces_tSq,  // alpha > 0 >= beta: convex quadratic per (i,j) region
  ConvexQuadPieces_t,    // alpha > beta > 0: convex quadratic, <= t min-pieces
  LinearPieces,          // alpha == beta: linear on every region
  SingleConcave,         // beta > alpha > 0: concave quadratic
  ConcavePieces_t,       // beta > 0 >= alpha: concave quadratic, <= t max-pieces
};

/// Throws on (0,0) weights or alpha + beta < 0.
ConvexityCase classify(double alpha, double beta);

/// Restriction of the surrogate to one linearity region of the control set:
/// m(z, u) = curvature*(u.u) + slope.u + intercept for u in region.
struct RegionQuadratic {
  Polyhedron region;
  double curvature = 0.0;
  Vec slope;
  double intercept = 0.0;
  /// Piece indices this region fixes; -1 on a side whose weight is zero.
  int source_min_piece = -1;
  int source_max_piece = -1;

  double eval(const Vec& u) const {
    return curvature * u.squaredNorm() + slope.dot(u) + intercept;
  }
};

/// Splits the control set by which bound pieces are active. At most t^2
/// regions; their union covers the control set. Pieces dominated everywhere
/// on the control box by another piece are dropped up front (value-exact).
std::vector<RegionQuadratic> enumerate_regions(const Dataset& d,
                                               const SurrogateSpec& spec,
                                               const Vec& z,
                                               const Polyhedron& control_set);

/// Exact minimum of one region quadratic; nullopt when the region is empty.
/// Positive curvature projects the stationary point; otherwise the optimum
/// sits on a vertex. Value ties resolve to the lexicographically smallest u.
std::optional<std::pair<Vec, double>> solve_region(const RegionQuadratic& rq);

struct SolveReport {
  Vec minimizer;
  double value = 0.0;
  int regions_examined = 0;
  int regions_nonempty = 0;
  double solve_time = 0.0;  // seconds
};

/// Global exact minimization of the surrogate over the control set at
/// context z, by solving every region subproblem.
SolveReport minimize_surrogate(const Dataset& d, const SurrogateSpec& spec,
                               const Vec& z, const Polyhedron& control_set);

/// Exhaustive evaluation over an axis-aligned grid of feasible points.
/// Ties keep the lexicographically smallest point. Throws GridBudgetError
/// when the grid would exceed the point budget.
std::pair<Vec, double> grid_minimize(
    const std::function<double(const Vec&)>& f, const Polyhedron& control_set,
    double spacing, std::int64_t budget = 10'000'000);

/// Per-axis spacing variant.
std::pair<Vec, double> grid_minimize(
    const std::function<double(const Vec&)>& f, const Polyhedron& control_set,
    const Vec& spacing, std::int64_t budget = 10'000'000);

/// Upper bound on ||grad_u m|| over the control box, from the piece slopes.
/// Scales the slack term of grid-versus-exact comparisons.
double surrogate_gradient_bound(const Dataset& d, const SurrogateSpec& spec,
                                const Vec& z, const Box& control_box);

}  // namespace smoothctl
