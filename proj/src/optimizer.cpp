#include "smoothctl/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "smoothctl/errors.hpp"

namespace smoothctl {

namespace {

/// One bound piece restricted to the control coordinates at fixed context:
/// value(u) = a . u + b.
struct FoldedPiece {
  Vec a;
  double b = 0.0;
};

std::vector<FoldedPiece> fold_context(const std::vector<LinearPiece>& pieces,
                                      const Vec& z, int dim_u) {
  const int dim_z = static_cast<int>(z.size());
  std::vector<FoldedPiece> out;
  out.reserve(pieces.size());
  for (const LinearPiece& p : pieces) {
    FoldedPiece f;
    f.a = p.slope.tail(dim_u);
    f.b = p.slope.head(dim_z).dot(z) + p.intercept;
    out.push_back(std::move(f));
  }
  return out;
}

double min_over_box(const Vec& a, double b, const Box& box) {
  double v = b;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    v += a[k] > 0.0 ? a[k] * box.lower[k] : a[k] * box.upper[k];
  }
  return v;
}

double max_over_box(const Vec& a, double b, const Box& box) {
  double v = b;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    v += a[k] > 0.0 ? a[k] * box.upper[k] : a[k] * box.lower[k];
  }
  return v;
}

/// Indices of pieces that can attain the envelope somewhere on the box.
/// A piece loses when a single other piece beats it across the whole box
/// (ties keep the smaller index). Dropping losers never changes the
/// envelope's value, so downstream regions stay exact.
std::vector<int> surviving_pieces(const std::vector<FoldedPiece>& pieces,
                                  const Box& box, bool min_side) {
  const int t = static_cast<int>(pieces.size());
  std::vector<int> kept;
  kept.reserve(t);
  for (int i = 0; i < t; ++i) {
    bool dominated = false;
    for (int k = 0; k < t && !dominated; ++k) {
      if (k == i) continue;
      const Vec diff = pieces[i].a - pieces[k].a;
      const double db = pieces[i].b - pieces[k].b;
      if (min_side) {
        const double worst = min_over_box(diff, db, box);
        dominated = worst > 0.0 || (worst >= 0.0 && k < i);
      } else {
        const double best = max_over_box(diff, db, box);
        dominated = best < 0.0 || (best <= 0.0 && k < i);
      }
    }
    if (!dominated) kept.push_back(i);
  }
  return kept;
}

/// Dominance inequality "piece `win` beats piece `other` at u"; returns
/// false when the region is provably empty instead.
bool add_dominance(Polyhedron& region, const FoldedPiece& win,
                   const FoldedPiece& other, bool min_side) {
  Vec n = min_side ? Vec(win.a - other.a) : Vec(other.a - win.a);
  double off = min_side ? other.b - win.b : win.b - other.b;
  const double scale = std::max({1.0, win.a.lpNorm<Eigen::Infinity>(),
                                 other.a.lpNorm<Eigen::Infinity>()});
  if (n.lpNorm<Eigen::Infinity>() <= 1e-13 * scale) {
    return off >= -1e-11 * std::max(1.0, std::abs(win.b) + std::abs(other.b));
  }
  const double norm = n.norm();
  region.add_halfspace(Halfspace{n / norm, off / norm});
  return true;
}

}  // namespace

ConvexityCase classify(double alpha, double beta) {
  if (alpha == 0.0 && beta == 0.0) {
    throw ConfigError("weights (alpha, beta) must not both be zero");
  }
  if (alpha + beta < 0.0) {
    throw AntiObjectiveError(
        "alpha + beta < 0 rewards widening the bound gap; rejected");
  }
  if (alpha == beta) return ConvexityCase::LinearPieces;
  if (alpha > 0.0 && beta <= 0.0) return ConvexityCase::ConvexQuadPieces_tSq;
  if (beta > 0.0 && alpha <= 0.0) return ConvexityCase::ConcavePieces_t;
  if (alpha > beta) return ConvexityCase::ConvexQuadPieces_t;
  return ConvexityCase::SingleConcave;
}

std::vector<RegionQuadratic> enumerate_regions(const Dataset& d,
                                               const SurrogateSpec& spec,
                                               const Vec& z,
                                               const Polyhedron& control_set) {
  spec.validate();
  d.require_nonempty();
  if (z.size() != d.dim_z()) {
    throw DimensionError("context dimension does not match dataset");
  }
  if (control_set.dim() != d.dim_u()) {
    throw DimensionError("control set dimension does not match dataset");
  }
  classify(spec.alpha, spec.beta);

  const DCDecomposition dc = dc_decompose(d, spec);
  const int dim_u = d.dim_u();
  const Box& ubox = control_set.box();

  const bool use_min = spec.alpha != 0.0;
  const bool use_max = spec.beta != 0.0;
  std::vector<FoldedPiece> min_pieces, max_pieces;
  std::vector<int> min_kept{-1}, max_kept{-1};
  if (use_min) {
    min_pieces = fold_context(dc.f2_pieces, z, dim_u);
    min_kept = surviving_pieces(min_pieces, ubox, /*min_side=*/true);
  }
  if (use_max) {
    max_pieces = fold_context(dc.f3_pieces, z, dim_u);
    max_kept = surviving_pieces(max_pieces, ubox, /*min_side=*/false);
  }

  const double base_intercept = dc.quad_coeff * z.squaredNorm();
  std::vector<RegionQuadratic> regions;
  regions.reserve(min_kept.size() * max_kept.size());
  for (int i : min_kept) {
    for (int j : max_kept) {
      RegionQuadratic rq;
      rq.region = control_set;
      rq.curvature = dc.quad_coeff;
      rq.slope = Vec::Zero(dim_u);
      rq.intercept = base_intercept;
      rq.source_min_piece = i;
      rq.source_max_piece = j;
      bool feasible = true;
      if (i >= 0) {
        rq.slope += spec.alpha * min_pieces[i].a;
        rq.intercept += spec.alpha * min_pieces[i].b;
        for (int k : min_kept) {
          if (k == i) continue;
          if (!add_dominance(rq.region, min_pieces[i], min_pieces[k], true)) {
            feasible = false;
            break;
          }
        }
      }
      if (feasible && j >= 0) {
        rq.slope += spec.beta * max_pieces[j].a;
        rq.intercept += spec.beta * max_pieces[j].b;
        for (int l : max_kept) {
          if (l == j) continue;
          if (!add_dominance(rq.region, max_pieces[j], max_pieces[l], false)) {
            feasible = false;
            break;
          }
        }
      }
      if (feasible) regions.push_back(std::move(rq));
    }
  }
  return regions;
}

std::optional<std::pair<Vec, double>> solve_region(const RegionQuadratic& rq) {
  if (rq.curvature > 0.0) {
    const Vec stationary = rq.slope / (-2.0 * rq.curvature);
    if (rq.region.contains(stationary, 1e-9)) {
      return std::make_pair(stationary, rq.eval(stationary));
    }
    std::optional<Vec> proj = rq.region.project(stationary);
    if (!proj) return std::nullopt;
    return std::make_pair(*proj, rq.eval(*proj));
  }
  // Linear or concave: the minimum sits on a vertex.
  const std::vector<Vec> verts = rq.region.vertices();
  if (verts.empty()) return std::nullopt;
  const Vec* best = nullptr;
  double best_value = 0.0;
  for (const Vec& v : verts) {  // lexicographic order; first win keeps ties
    const double value = rq.eval(v);
    if (!best || value < best_value) {
      best = &v;
      best_value = value;
    }
  }
  return std::make_pair(*best, best_value);
}

SolveReport minimize_surrogate(const Dataset& d, const SurrogateSpec& spec,
                               const Vec& z, const Polyhedron& control_set) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<RegionQuadratic> regions =
      enumerate_regions(d, spec, z, control_set);

  SolveReport report;
  report.regions_examined = static_cast<int>(regions.size());
  bool have = false;
  for (const RegionQuadratic& rq : regions) {
    auto sol = solve_region(rq);
    if (!sol) continue;
    ++report.regions_nonempty;
    if (!have || sol->second < report.value ||
        (sol->second == report.value && lex_less(sol->first, report.minimizer))) {
      report.minimizer = sol->first;
      report.value = sol->second;
      have = true;
    }
  }
  if (!have) {
    throw ConfigError("control set is empty: no region admits a feasible point");
  }
  report.solve_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::pair<Vec, double> grid_minimize(const std::function<double(const Vec&)>& f,
                                     const Polyhedron& control_set,
                                     double spacing, std::int64_t budget) {
  Vec h = Vec::Constant(control_set.dim(), spacing);
  return grid_minimize(f, control_set, h, budget);
}

std::pair<Vec, double> grid_minimize(const std::function<double(const Vec&)>& f,
                                     const Polyhedron& control_set,
                                     const Vec& spacing, std::int64_t budget) {
  const Box& box = control_set.box();
  const int dim = control_set.dim();
  if (spacing.size() != dim) {
    throw DimensionError("spacing dimension does not match control set");
  }
  std::vector<std::int64_t> counts(dim);
  std::int64_t total = 1;
  for (int k = 0; k < dim; ++k) {
    if (!(spacing[k] > 0.0)) throw ConfigError("grid spacing must be positive");
    counts[k] =
        static_cast<std::int64_t>((box.upper[k] - box.lower[k]) / spacing[k] +
                                  1e-9) +
        1;
    total *= counts[k];
    if (total > budget) {
      throw GridBudgetError("grid would exceed the point budget");
    }
  }

  const bool check_halfspaces = !control_set.halfspaces().empty();
  std::vector<std::int64_t> idx(dim, 0);
  Vec u(dim);
  bool have = false;
  Vec best_u;
  double best_value = 0.0;
  while (true) {
    for (int k = 0; k < dim; ++k) {
      u[k] = std::min(box.lower[k] + idx[k] * spacing[k], box.upper[k]);
    }
    bool feasible = true;
    if (check_halfspaces) {
      for (const Halfspace& hs : control_set.halfspaces()) {
        if (hs.normal.dot(u) > hs.offset + 1e-9) {
          feasible = false;
          break;
        }
      }
    }
    if (feasible) {
      const double value = f(u);
      if (!have || value < best_value) {  // first win keeps lexicographic ties
        best_u = u;
        best_value = value;
        have = true;
      }
    }
    int k = dim - 1;
    while (k >= 0 && ++idx[k] == counts[k]) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  if (!have) throw ConfigError("no feasible grid point in the control set");
  return {best_u, best_value};
}

double surrogate_gradient_bound(const Dataset& d, const SurrogateSpec& spec,
                                const Vec& z, const Box& control_box) {
  const DCDecomposition dc = dc_decompose(d, spec);
  const int dim_u = control_box.dim();
  double max_min_slope = 0.0;
  double max_max_slope = 0.0;
  for (const LinearPiece& p : dc.f2_pieces) {
    max_min_slope = std::max(max_min_slope, p.slope.tail(dim_u).norm());
  }
  for (const LinearPiece& p : dc.f3_pieces) {
    max_max_slope = std::max(max_max_slope, p.slope.tail(dim_u).norm());
  }
  double corner = 0.0;
  for (int k = 0; k < dim_u; ++k) {
    corner += std::pow(
        std::max(std::abs(control_box.lower[k]), std::abs(control_box.upper[k])),
        2);
  }
  return std::abs(spec.alpha) * max_min_slope +
         std::abs(spec.beta) * max_max_slope +
         2.0 * std::abs(dc.quad_coeff) * std::sqrt(corner);
}

}  // namespace smoothctl
