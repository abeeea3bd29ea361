#pragma once

#include <vector>

#include "smoothctl/numeric.hpp"

namespace smoothctl {

/// Per-step regret measurements from one closed-loop run.
struct RegretSeries {
  std::vector<double> rho;
  int seed_steps = 0;   // steps before control started
  int horizon = 0;      // total steps including seeding
  int d = 0;            // joint context + control dimension
  double slack = 0.0;   // grid-oracle tolerance carried by every entry
};

/// Constants the regret guarantees are phrased in.  per_step_coeff multiplies
/// the squared distance to the nearest sample; count_coeff multiplies
/// delta^{-d/2} in the high-regret step count bound.
struct BoundConstants {
  double lipschitz_gradient = 1.0;
  double alpha = 0.0;
  double beta = 1.0;
  double diam_zu = 0.0;
  double grad_max = 0.0;
  int d = 0;
  double per_step_coeff = 0.0;
  double count_coeff = 0.0;

  /// Fills the derived coefficients.  grad_max <= 0 falls back to the
  /// worst-case envelope lipschitz_gradient * diam_zu.
  static BoundConstants derive(double lipschitz_gradient, double alpha,
                               double beta, double diam_zu, double grad_max,
                               int d);
};

/// Mean of the per-step regrets.  Throws NoDataError when empty and
/// ConfigError when the length disagrees with horizon - seed_steps.
double average_regret(const RegretSeries& rs);

/// Smallest point count that forces two points of a set with the given
/// diameter within squared distance eps of each other.
int proximity_threshold(int d, double diam, double eps);

/// True iff some point lies within squared distance eps of an earlier one.
/// Validates that the points are distinct and fit the stated diameter.
bool check_volume_counting(const std::vector<Vec>& points, double S_diam,
                           double eps);

/// True iff |{t : rho_t >= delta + slack}| <= count_coeff * delta^{-d/2}.
/// Requires alpha <= 0 < alpha + beta.
bool check_count_bound(const RegretSeries& rs, const BoundConstants& bc,
                       double delta);

/// Runs check_count_bound over a log-spaced delta grid; returns the deltas
/// that fail (empty means the bound held everywhere).
std::vector<double> count_bound_failures(const RegretSeries& rs,
                                         const BoundConstants& bc,
                                         double delta_lo, double delta_hi,
                                         int n_deltas);

/// Validates sum n_k = T, n_k in [0, A e^{mu k}] (k starting at 1), then
/// checks sum n_k e^{-k} against the closed-form envelope: for mu > 1,
/// mu/(mu-1) * A^{1/mu} * T^{1-1/mu}; for mu = 1, T when T < A and
/// A(ln(T/A) + 1) otherwise.
bool check_series_lemma(const std::vector<double>& n, double A, double mu,
                        double T);

/// Violations of rho_t <= bound_t + slack, elementwise.
int per_step_bound_violations(const std::vector<double>& regret,
                              const std::vector<double>& bound, double slack);

/// True iff cumulative regret less than doubles at every doubling of the
/// horizon.  Input: cumulative regret at T, 2T, 4T, ...
bool sublinearity_witness(const std::vector<double>& cumulative);

/// Normalized decay envelopes: T^{-2/d} for d >= 3, log(T)/T + 1/T for
/// d = 2.  d < 2 is rejected, as is normalize = false (no absolute
/// constants exist to scale by).
std::vector<std::pair<double, double>> bound_curves(
    int d, const std::vector<double>& T_range, bool normalize = true);

}  // namespace smoothctl
