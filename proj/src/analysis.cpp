#include "smoothctl/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "smoothctl/errors.hpp"

namespace smoothctl {

BoundConstants BoundConstants::derive(double lipschitz_gradient, double alpha,
                                      double beta, double diam_zu,
                                      double grad_max, int d) {
  if (!(lipschitz_gradient > 0.0)) {
    throw ConfigError("lipschitz_gradient must be positive");
  }
  if (!(alpha + beta > 0.0)) {
    throw ConfigError("need alpha + beta > 0 for regret constants");
  }
  if (!(diam_zu > 0.0)) throw ConfigError("diam_zu must be positive");
  if (d <= 0) throw ConfigError("d must be positive");

  BoundConstants bc;
  bc.lipschitz_gradient = lipschitz_gradient;
  bc.alpha = alpha;
  bc.beta = beta;
  bc.diam_zu = diam_zu;
  bc.grad_max =
      grad_max > 0.0 ? grad_max : lipschitz_gradient * diam_zu;
  bc.d = d;
  bc.per_step_coeff =
      lipschitz_gradient * (1.0 + std::abs(alpha) / (alpha + beta));
  bc.count_coeff =
      std::pow(diam_zu * std::sqrt(bc.per_step_coeff * d), double(d));
  return bc;
}

double average_regret(const RegretSeries& rs) {
  if (rs.rho.empty()) throw NoDataError("regret series is empty");
  if (static_cast<int>(rs.rho.size()) != rs.horizon - rs.seed_steps) {
    throw ConfigError("regret series length disagrees with horizon");
  }
  double sum = 0.0;
  for (double r : rs.rho) sum += r;
  return sum / static_cast<double>(rs.rho.size());
}

int proximity_threshold(int d, double diam, double eps) {
  if (d <= 0 || !(diam > 0.0) || !(eps > 0.0)) {
    throw ConfigError("need d, diam, eps positive");
  }
  const double raw = std::pow(diam * std::sqrt(double(d) / eps), double(d));
  return static_cast<int>(std::ceil(raw - 1e-9)) + 1;
}

bool check_volume_counting(const std::vector<Vec>& points, double S_diam,
                           double eps) {
  if (!(eps > 0.0)) throw ConfigError("eps must be positive");
  const double diam_tol = S_diam * (1.0 + 1e-9) + 1e-12;
  bool close = false;
  for (std::size_t j = 1; j < points.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double d2 = (points[j] - points[i]).squaredNorm();
      if (d2 == 0.0) throw ConfigError("points must be distinct");
      if (d2 > diam_tol * diam_tol) {
        throw ConfigError("points exceed the stated diameter");
      }
      if (d2 <= eps) close = true;
    }
  }
  return close;
}

bool check_count_bound(const RegretSeries& rs, const BoundConstants& bc,
                       double delta) {
  if (!(bc.alpha <= 0.0 && bc.alpha + bc.beta > 0.0)) {
    throw ConfigError("count bound needs alpha <= 0 < alpha + beta");
  }
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  std::int64_t count = 0;
  for (double r : rs.rho) {
    if (r >= delta + rs.slack) ++count;
  }
  const double limit =
      bc.count_coeff * std::pow(delta, -0.5 * double(bc.d));
  return static_cast<double>(count) <= limit;
}

std::vector<double> count_bound_failures(const RegretSeries& rs,
                                         const BoundConstants& bc,
                                         double delta_lo, double delta_hi,
                                         int n_deltas) {
  if (!(0.0 < delta_lo && delta_lo <= delta_hi) || n_deltas < 1) {
    throw ConfigError("bad delta grid");
  }
  std::vector<double> failing;
  const double log_lo = std::log(delta_lo);
  const double log_hi = std::log(delta_hi);
  for (int k = 0; k < n_deltas; ++k) {
    const double frac =
        n_deltas == 1 ? 0.0 : double(k) / double(n_deltas - 1);
    const double delta = std::exp(log_lo + frac * (log_hi - log_lo));
    if (!check_count_bound(rs, bc, delta)) failing.push_back(delta);
  }
  return failing;
}

bool check_series_lemma(const std::vector<double>& n, double A, double mu,
                        double T) {
  if (!(A > 0.0)) throw ConfigError("A must be positive");
  if (!(mu >= 1.0)) throw ConfigError("mu must be at least 1");
  if (T < 0.0) throw ConfigError("T must be non-negative");
  double sum = 0.0;
  double series = 0.0;
  for (std::size_t idx = 0; idx < n.size(); ++idx) {
    const double k = static_cast<double>(idx + 1);
    const double nk = n[idx];
    if (nk < 0.0) throw ConfigError("sequence entries must be non-negative");
    const double cap = A * std::exp(mu * k);
    if (nk > cap * (1.0 + 1e-12) + 1e-12) {
      throw ConfigError("sequence entry exceeds A e^{mu k}");
    }
    sum += nk;
    series += nk * std::exp(-k);
  }
  if (std::abs(sum - T) > 1e-9 * std::max(1.0, std::abs(T))) {
    throw ConfigError("sequence does not sum to T");
  }
  double limit;
  if (mu > 1.0) {
    limit = mu / (mu - 1.0) * std::pow(A, 1.0 / mu) *
            std::pow(T, 1.0 - 1.0 / mu);
  } else if (T < A) {
    limit = T;
  } else {
    limit = A * (std::log(T / A) + 1.0);
  }
  return series <= limit * (1.0 + 1e-12) + 1e-12;
}

int per_step_bound_violations(const std::vector<double>& regret,
                              const std::vector<double>& bound,
                              double slack) {
  if (regret.size() != bound.size()) {
    throw ConfigError("regret and bound series differ in length");
  }
  int violations = 0;
  for (std::size_t i = 0; i < regret.size(); ++i) {
    if (regret[i] > bound[i] + slack) ++violations;
  }
  return violations;
}

bool sublinearity_witness(const std::vector<double>& cumulative) {
  for (std::size_t i = 1; i < cumulative.size(); ++i) {
    if (!(cumulative[i] < 2.0 * cumulative[i - 1] + 1e-12)) return false;
  }
  return true;
}

std::vector<std::pair<double, double>> bound_curves(
    int d, const std::vector<double>& T_range, bool normalize) {
  if (d < 2) throw ConfigError("decay envelopes need d >= 2");
  if (!normalize) {
    throw ConfigError("no absolute envelope constants exist; use normalize");
  }
  std::vector<std::pair<double, double>> table;
  table.reserve(T_range.size());
  for (double T : T_range) {
    if (!(T > 0.0)) throw ConfigError("horizon values must be positive");
    double value;
    if (d == 2) {
      value = std::log(T) / T + 1.0 / T;
    } else {
      value = std::pow(T, -2.0 / double(d));
    }
    table.emplace_back(T, value);
  }
  return table;
}

}  // namespace smoothctl
