#include "smoothctl/surrogate.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "smoothctl/errors.hpp"

namespace smoothctl {

namespace {

/// l(s; q_i) +/- (L/2)||s - q_i||^2 without temporaries.
double piece_value(const FirstOrderSample& smp, double half_l, const Vec& s,
                   double sign) {
  double lin = smp.value;
  double dist2 = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double dk = s[k] - smp.q[k];
    lin += smp.gradient[k] * dk;
    dist2 += dk * dk;
  }
  return lin + sign * half_l * dist2;
}

void check_point(const Dataset& d, const Vec& s) {
  d.require_nonempty();
  if (s.size() != d.dim()) {
    throw DimensionError("query point dimension does not match dataset");
  }
}

}  // namespace

Dataset Dataset::with_sample(FirstOrderSample s) const {
  if (s.q.size() != dim() || s.gradient.size() != dim()) {
    throw DimensionError("sample dimension does not match dataset");
  }
  if (!std::isfinite(s.value)) throw ConfigError("sample value must be finite");
  Dataset next = *this;
  next.samples_.push_back(std::move(s));
  return next;
}

void Dataset::require_nonempty() const {
  if (samples_.empty()) {
    throw NoDataError("operation requires at least one sample");
  }
}

double Dataset::min_sq_distance(const Vec& s) const {
  require_nonempty();
  double best = std::numeric_limits<double>::infinity();
  for (const FirstOrderSample& smp : samples_) {
    double dist2 = 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      const double dk = s[k] - smp.q[k];
      dist2 += dk * dk;
    }
    best = std::min(best, dist2);
  }
  return best;
}

void Dataset::write_csv(std::ostream& os) const {
  const int d = dim();
  for (int k = 0; k < d; ++k) os << "q_" << k << ",";
  os << "value";
  for (int k = 0; k < d; ++k) os << ",grad_" << k;
  os << "\n";
  for (const FirstOrderSample& smp : samples_) {
    for (int k = 0; k < d; ++k) os << format_double(smp.q[k]) << ",";
    os << format_double(smp.value);
    for (int k = 0; k < d; ++k) os << "," << format_double(smp.gradient[k]);
    os << "\n";
  }
}

Dataset Dataset::read_csv(std::istream& is, int dim_z, int dim_u) {
  Dataset out(dim_z, dim_u);
  const int d = out.dim();
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("dataset csv: missing header");
  std::size_t expected = static_cast<std::size_t>(2 * d + 1);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != expected) {
      throw ConfigError("dataset csv: wrong field count");
    }
    FirstOrderSample smp;
    smp.q.resize(d);
    smp.gradient.resize(d);
    for (int k = 0; k < d; ++k) smp.q[k] = parse_double(fields[k]);
    smp.value = parse_double(fields[d]);
    for (int k = 0; k < d; ++k) smp.gradient[k] = parse_double(fields[d + 1 + k]);
    out.samples_.push_back(std::move(smp));
  }
  return out;
}

void SurrogateSpec::validate() const {
  if (!(lipschitz_gradient > 0.0)) {
    throw ConfigError("lipschitz_gradient must be positive");
  }
  if (alpha == 0.0 && beta == 0.0) {
    throw ConfigError("weights (alpha, beta) must not both be zero");
  }
  if (alpha + beta < 0.0) {
    throw AntiObjectiveError(
        "alpha + beta < 0 rewards widening the bound gap; rejected");
  }
}

SurrogateSpec SurrogateSpec::normalized() const {
  const double norm = std::hypot(alpha, beta);
  SurrogateSpec out = *this;
  if (norm > 0.0) {
    out.alpha /= norm;
    out.beta /= norm;
  }
  return out;
}

double majorant(const Dataset& d, const SurrogateSpec& spec, const Vec& s) {
  check_point(d, s);
  const double half_l = 0.5 * spec.lipschitz_gradient;
  double best = std::numeric_limits<double>::infinity();
  for (const FirstOrderSample& smp : d.samples()) {
    best = std::min(best, piece_value(smp, half_l, s, +1.0));
  }
  return best;
}

double minorant(const Dataset& d, const SurrogateSpec& spec, const Vec& s) {
  check_point(d, s);
  const double half_l = 0.5 * spec.lipschitz_gradient;
  double best = -std::numeric_limits<double>::infinity();
  for (const FirstOrderSample& smp : d.samples()) {
    best = std::max(best, piece_value(smp, half_l, s, -1.0));
  }
  return best;
}

double gap(const Dataset& d, const SurrogateSpec& spec, const Vec& s) {
  return majorant(d, spec, s) - minorant(d, spec, s);
}

double m_eval(const Dataset& d, const SurrogateSpec& spec, const Vec& s) {
  return spec.alpha * majorant(d, spec, s) + spec.beta * minorant(d, spec, s);
}

double DCDecomposition::eval(const Vec& s) const {
  double f2 = std::numeric_limits<double>::infinity();
  for (const LinearPiece& p : f2_pieces) f2 = std::min(f2, p.eval(s));
  double f3 = -std::numeric_limits<double>::infinity();
  for (const LinearPiece& p : f3_pieces) f3 = std::max(f3, p.eval(s));
  return quad_coeff * s.squaredNorm() + alpha * f2 + beta * f3;
}

DCDecomposition dc_decompose(const Dataset& d, const SurrogateSpec& spec) {
  d.require_nonempty();
  spec.validate();
  const double l = spec.lipschitz_gradient;
  DCDecomposition out;
  out.quad_coeff = 0.5 * l * (spec.alpha - spec.beta);
  out.alpha = spec.alpha;
  out.beta = spec.beta;
  out.f2_pieces.reserve(d.size());
  out.f3_pieces.reserve(d.size());
  for (const FirstOrderSample& smp : d.samples()) {
    const double gq = smp.gradient.dot(smp.q);
    const double qq = smp.q.squaredNorm();
    LinearPiece lower_part;  // l(s; q) - L*l(s; s.s/2; q)
    lower_part.slope = smp.gradient - l * smp.q;
    lower_part.intercept = smp.value - gq + 0.5 * l * qq;
    out.f2_pieces.push_back(std::move(lower_part));
    LinearPiece upper_part;  // l(s; q) + L*l(s; s.s/2; q)
    upper_part.slope = smp.gradient + l * smp.q;
    upper_part.intercept = smp.value - gq - 0.5 * l * qq;
    out.f3_pieces.push_back(std::move(upper_part));
  }
  return out;
}

double convex_minorant(const Dataset& d, const Vec& s) {
  check_point(d, s);
  double best = -std::numeric_limits<double>::infinity();
  for (const FirstOrderSample& smp : d.samples()) {
    double lin = smp.value;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      lin += smp.gradient[k] * (s[k] - smp.q[k]);
    }
    best = std::max(best, lin);
  }
  return best;
}

BoundPair tighten_with_side_info(const Dataset& d, const SurrogateSpec& spec,
                                 const Vec& s) {
  check_point(d, s);
  BoundPair b;
  b.lower = minorant(d, spec, s);
  b.upper = majorant(d, spec, s);

  const SideInfo& info = spec.side_info;
  if (info.convex) b.lower = std::max(b.lower, convex_minorant(d, s));
  if (info.lower_bound) b.lower = std::max(b.lower, *info.lower_bound);
  if (info.upper_bound) b.upper = std::min(b.upper, *info.upper_bound);

  for (const SideInfo::Monotone& mono : info.monotone) {
    const int k = mono.coordinate;
    if (k < 0 || k >= d.dim()) {
      throw ConfigError("monotone side info names a coordinate out of range");
    }
    const double sign =
        mono.direction == Monotonicity::Decreasing ? 1.0 : -1.0;
    for (const FirstOrderSample& smp : d.samples()) {
      bool comparable = true;
      for (Eigen::Index j = 0; j < s.size(); ++j) {
        if (j == k) continue;
        if (std::abs(s[j] - smp.q[j]) > info.slab_width + 1e-12) {
          comparable = false;
          break;
        }
      }
      if (!comparable) continue;
      const double delta = sign * (s[k] - smp.q[k]);
      // A decreasing cost can only fall past larger coordinates: samples
      // "before" s cap it from above, samples "after" s prop it from below.
      if (delta >= 0.0) {
        b.upper = std::min(b.upper, smp.value);
      }
      if (delta <= 0.0) {
        b.lower = std::max(b.lower, smp.value);
      }
    }
  }

  if (b.lower > b.upper + 1e-9) {
    throw SideInfoError("declared side info contradicts the data");
  }
  return b;
}

}  // namespace smoothctl
