#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "smoothctl/numeric.hpp"

namespace smoothctl {

/// One oracle observation: location, value, and gradient of the cost there.
struct FirstOrderSample {
  Vec q;
  double value = 0.0;
  Vec gradient;
};

/// Immutable collection of samples over the joint context-control space.
/// Extension copies (copy-on-append), so concurrent readers stay valid.
class Dataset {
 public:
  Dataset() = default;
  Dataset(int dim_z, int dim_u) : dim_z_(dim_z), dim_u_(dim_u) {}

  int dim_z() const { return dim_z_; }
  int dim_u() const { return dim_u_; }
  int dim() const { return dim_z_ + dim_u_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const std::vector<FirstOrderSample>& samples() const { return samples_; }
  const FirstOrderSample& operator[](std::size_t i) const { return samples_[i]; }

  /// Returns a new dataset with the sample appended; *this is untouched.
  Dataset with_sample(FirstOrderSample s) const;

  /// Throws NoDataError when empty; bound construction needs >= 1 sample.
  void require_nonempty() const;

  /// Squared distance from s to the nearest sample location.
  double min_sq_distance(const Vec& s) const;

  /// Header: q_0..q_{d-1},value,grad_0..grad_{d-1}; round-trip decimals.
  void write_csv(std::ostream& os) const;
  static Dataset read_csv(std::istream& is, int dim_z, int dim_u);

 private:
  int dim_z_ = 0;
  int dim_u_ = 0;
  std::vector<FirstOrderSample> samples_;
};

enum class Monotonicity { Decreasing, Increasing };

/// Declared structural knowledge about the cost, used to tighten bounds.
struct SideInfo {
  struct Monotone {
    int coordinate = 0;
    Monotonicity direction = Monotonicity::Decreasing;
  };
  std::vector<Monotone> monotone;
  bool convex = false;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  /// Off-coordinate agreement width for monotone comparisons; 0 means the
  /// remaining coordinates must match exactly (vacuous in 1-D).
  double slab_width = 0.0;

  bool any() const {
    return convex || lower_bound || upper_bound || !monotone.empty();
  }
};

/// Weights of the blended bound objective plus the smoothness constant.
struct SurrogateSpec {
  double alpha = 0.0;
  double beta = 1.0;
  double lipschitz_gradient = 1.0;
  SideInfo side_info;

  /// Throws unless lipschitz_gradient > 0, (alpha,beta) != (0,0), and
  /// alpha + beta >= 0.
  void validate() const;

  /// Same minimizers, weights scaled onto the unit circle.
  SurrogateSpec normalized() const;
};

/// Pointwise upper bound: min_i [ l(s; q_i) + (L/2)||s - q_i||^2 ].
double majorant(const Dataset& d, const SurrogateSpec& spec, const Vec& s);

/// Pointwise lower bound: max_i [ l(s; q_i) - (L/2)||s - q_i||^2 ].
double minorant(const Dataset& d, const SurrogateSpec& spec, const Vec& s);

/// majorant - minorant; nonnegative, and 0 at sample locations.
double gap(const Dataset& d, const SurrogateSpec& spec, const Vec& s);

/// Blended surrogate alpha*majorant + beta*minorant.
double m_eval(const Dataset& d, const SurrogateSpec& spec, const Vec& s);

/// Affine function slope . s + intercept.
struct LinearPiece {
  Vec slope;
  double intercept = 0.0;

  double eval(const Vec& s) const { return slope.dot(s) + intercept; }
};

/// m(s) = quad_coeff*(s.s) + alpha*min_i f2[i](s) + beta*max_j f3[j](s).
/// Splits the surrogate into one quadratic plus two piecewise-linear parts.
struct DCDecomposition {
  double quad_coeff = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<LinearPiece> f2_pieces;
  std::vector<LinearPiece> f3_pieces;

  double eval(const Vec& s) const;
};

DCDecomposition dc_decompose(const Dataset& d, const SurrogateSpec& spec);

/// Tangent-plane lower bound max_i l(s; q_i); valid when the cost is convex.
double convex_minorant(const Dataset& d, const Vec& s);

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
};

/// Intersects the two-sided bound with every piece of declared side info.
/// Throws SideInfoError if the result crosses (lower > upper + 1e-9).
BoundPair tighten_with_side_info(const Dataset& d, const SurrogateSpec& spec,
                                 const Vec& s);

}  // namespace smoothctl
