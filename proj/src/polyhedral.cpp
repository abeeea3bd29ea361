#include "smoothctl/polyhedral.hpp"

#include <algorithm>
#include <cmath>

#include "smoothctl/errors.hpp"

namespace smoothctl {

namespace {

constexpr double kFeasTol = 1e-8;    // candidate acceptance
constexpr double kDedupTol = 1e-9;   // vertex merging
constexpr int kClipThreshold = 12;   // constraint count above which 2-D clips

/// Unified constraint view: rows of N x <= b covering box faces then halfspaces.
struct ConstraintList {
  Eigen::MatrixXd normals;  // one row per constraint
  Vec offsets;

  explicit ConstraintList(const Polyhedron& p) {
    const Box& box = p.box();
    const int d = p.dim();
    const int n = 2 * d + static_cast<int>(p.halfspaces().size());
    normals = Eigen::MatrixXd::Zero(n, d);
    offsets.resize(n);
    for (int k = 0; k < d; ++k) {
      normals(2 * k, k) = -1.0;  // -x_k <= -lower_k
      offsets[2 * k] = -box.lower[k];
      normals(2 * k + 1, k) = 1.0;  // x_k <= upper_k
      offsets[2 * k + 1] = box.upper[k];
    }
    int row = 2 * d;
    for (const Halfspace& h : p.halfspaces()) {
      normals.row(row) = h.normal.transpose();
      offsets[row] = h.offset;
      ++row;
    }
  }

  int count() const { return static_cast<int>(offsets.size()); }

  bool feasible(const Vec& x, double tol) const {
    for (int i = 0; i < count(); ++i) {
      if (normals.row(i).dot(x) > offsets[i] + tol) return false;
    }
    return true;
  }
};

/// Visits every strictly increasing index subset of {0..n-1} with size k.
template <typename F>
void for_each_subset(int n, int k, F&& visit) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k == 0) {
    visit(idx);
    return;
  }
  if (k > n) return;
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<Vec> sorted_dedup(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Vec> out;
  for (const Vec& v : pts) {
    if (!out.empty() && approx_equal(out.back(), v, kDedupTol)) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace

Box Box::make(Vec lower, Vec upper) {
  if (lower.size() != upper.size()) {
    throw DimensionError("box bounds have mismatched dimensions");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i])) {
      throw ConfigError("box bounds must be finite");
    }
    if (lower[i] > upper[i]) {
      throw ConfigError("box lower bound exceeds upper bound");
    }
  }
  return Box{std::move(lower), std::move(upper)};
}

bool Box::contains(const Vec& x, double tol) const {
  if (x.size() != lower.size()) {
    throw DimensionError("point dimension does not match box");
  }
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lower[i] - tol || x[i] > upper[i] + tol) return false;
  }
  return true;
}

Vec Box::clamp(const Vec& x) const {
  Vec y = x;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y[i] = std::min(std::max(y[i], lower[i]), upper[i]);
  }
  return y;
}

double diameter(const Box& b) { return (b.upper - b.lower).norm(); }

Halfspace Halfspace::make(Vec normal, double offset) {
  if (normal.size() == 0 || normal.lpNorm<Eigen::Infinity>() == 0.0) {
    throw ConfigError("halfspace normal must be nonzero");
  }
  return Halfspace{std::move(normal), offset};
}

Polyhedron::Polyhedron(Box box, std::vector<Halfspace> halfspaces)
    : box_(std::move(box)), halfspaces_(std::move(halfspaces)) {
  for (const Halfspace& h : halfspaces_) {
    if (h.normal.size() != box_.lower.size()) {
      throw DimensionError("halfspace dimension does not match box");
    }
  }
}

void Polyhedron::add_halfspace(Halfspace h) {
  if (h.normal.size() != box_.lower.size()) {
    throw DimensionError("halfspace dimension does not match box");
  }
  halfspaces_.push_back(std::move(h));
}

bool Polyhedron::contains(const Vec& x, double tol) const {
  if (!box_.contains(x, tol)) return false;
  for (const Halfspace& h : halfspaces_) {
    if (h.normal.dot(x) > h.offset + tol) return false;
  }
  return true;
}

std::optional<Vec> Polyhedron::project(const Vec& point) const {
  if (point.size() != box_.lower.size()) {
    throw DimensionError("point dimension does not match polyhedron");
  }
  if (halfspaces_.empty()) return box_.clamp(point);
  if (dim() == 2 &&
      static_cast<int>(halfspaces_.size()) + 4 > kClipThreshold) {
    return detail::project_clip2d(*this, point);
  }
  if (dim() > 4) {
    throw UnsupportedDimensionError(
        "exact projection with general halfspaces is limited to dim <= 4");
  }
  return detail::project_combinatorial(*this, point);
}

std::vector<Vec> Polyhedron::vertices(int dim_cap) const {
  if (dim() > dim_cap) {
    throw UnsupportedDimensionError("vertex enumeration above configured cap");
  }
  if (dim() == 2 &&
      static_cast<int>(halfspaces_.size()) + 4 > kClipThreshold) {
    return detail::vertices_clip2d(*this);
  }
  return detail::vertices_combinatorial(*this, dim_cap);
}

namespace detail {

std::optional<Vec> project_combinatorial(const Polyhedron& p, const Vec& point) {
  const ConstraintList cons(p);
  const int d = p.dim();
  const int n = cons.count();

  std::optional<Vec> best;
  double best_dist2 = 0.0;
  auto consider = [&](const Vec& x) {
    if (!cons.feasible(x, kFeasTol)) return;
    const double dist2 = (x - point).squaredNorm();
    if (!best || dist2 < best_dist2 ||
        (dist2 == best_dist2 && lex_less(x, *best))) {
      best = x;
      best_dist2 = dist2;
    }
  };

  consider(point);  // empty active set
  for (int k = 1; k <= d; ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& idx) {
      Eigen::MatrixXd N(k, d);
      Vec b(k);
      for (int r = 0; r < k; ++r) {
        N.row(r) = cons.normals.row(idx[r]);
        b[r] = cons.offsets[idx[r]];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(N);
      if (lu.rank() < k) return;  // rank-deficient active set: skip
      Eigen::MatrixXd gram = N * N.transpose();
      Vec lambda = gram.fullPivLu().solve(N * point - b);
      consider(point - N.transpose() * lambda);
    });
  }
  return best;
}

std::vector<Vec> vertices_combinatorial(const Polyhedron& p, int dim_cap) {
  const int d = p.dim();
  if (d > dim_cap) {
    throw UnsupportedDimensionError("vertex enumeration above configured cap");
  }
  const ConstraintList cons(p);
  const int n = cons.count();

  std::vector<Vec> found;
  for_each_subset(n, d, [&](const std::vector<int>& idx) {
    Eigen::MatrixXd N(d, d);
    Vec b(d);
    for (int r = 0; r < d; ++r) {
      N.row(r) = cons.normals.row(idx[r]);
      b[r] = cons.offsets[idx[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(N);
    if (lu.rank() < d) return;
    Vec x = lu.solve(b);
    if (cons.feasible(x, kFeasTol)) found.push_back(std::move(x));
  });
  return sorted_dedup(std::move(found));
}

std::vector<Eigen::Vector2d> clip_polygon(const Polyhedron& p) {
  const Box& box = p.box();
  std::vector<Eigen::Vector2d> poly = {
      {box.lower[0], box.lower[1]},
      {box.upper[0], box.lower[1]},
      {box.upper[0], box.upper[1]},
      {box.lower[0], box.upper[1]},
  };
  for (const Halfspace& h : p.halfspaces()) {
    if (poly.empty()) break;
    const Eigen::Vector2d n(h.normal[0], h.normal[1]);
    const double b = h.offset;
    const double eps = 1e-12 * (1.0 + std::abs(b));
    std::vector<Eigen::Vector2d> next;
    next.reserve(poly.size() + 1);
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Vector2d& v1 = poly[i];
      const Eigen::Vector2d& v2 = poly[(i + 1) % m];
      const double f1 = n.dot(v1) - b;
      const double f2 = n.dot(v2) - b;
      const bool in1 = f1 <= eps;
      const bool in2 = f2 <= eps;
      if (in1) next.push_back(v1);
      if (in1 != in2 && std::abs(f1 - f2) > 0.0) {
        const double t = f1 / (f1 - f2);
        if (t > 0.0 && t < 1.0) next.push_back(v1 + t * (v2 - v1));
      }
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<Vec> vertices_clip2d(const Polyhedron& p) {
  std::vector<Vec> pts;
  for (const Eigen::Vector2d& v : clip_polygon(p)) {
    Vec x(2);
    x << v[0], v[1];
    pts.push_back(std::move(x));
  }
  return sorted_dedup(std::move(pts));
}

std::optional<Vec> project_clip2d(const Polyhedron& p, const Vec& point) {
  if (p.contains(point, 1e-12)) return point;
  const std::vector<Eigen::Vector2d> poly = clip_polygon(p);
  if (poly.empty()) return std::nullopt;
  const Eigen::Vector2d q(point[0], point[1]);

  Eigen::Vector2d best = poly[0];
  double best_dist2 = (poly[0] - q).squaredNorm();
  auto consider = [&](const Eigen::Vector2d& c) {
    const double dist2 = (c - q).squaredNorm();
    if (dist2 < best_dist2) {
      best = c;
      best_dist2 = dist2;
    }
  };
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector2d& a = poly[i];
    const Eigen::Vector2d& b = poly[(i + 1) % m];
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 > 0.0) {
      const double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
      consider(a + t * ab);
    } else {
      consider(a);
    }
  }
  Vec x(2);
  x << best[0], best[1];
  return x;
}

}  // namespace detail

}  // namespace smoothctl
