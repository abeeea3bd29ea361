#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "smoothctl/analysis.hpp"
#include "smoothctl/errors.hpp"

using namespace smoothctl;

namespace {

RegretSeries series(std::vector<double> rho, int seed_steps, int horizon,
                    int d = 2, double slack = 0.0) {
  RegretSeries rs;
  rs.rho = std::move(rho);
  rs.seed_steps = seed_steps;
  rs.horizon = horizon;
  rs.d = d;
  rs.slack = slack;
  return rs;
}

Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("average regret arithmetic") {
  CHECK(average_regret(series({0, 0, 0}, 0, 3)) == 0.0);
  CHECK(average_regret(series({1, 0.5, 0.25}, 0, 3)) ==
        doctest::Approx(0.583333333333333).epsilon(1e-12));
  CHECK(average_regret(series({0.7}, 4, 5)) == doctest::Approx(0.7));
  CHECK_THROWS_AS(average_regret(series({}, 0, 0)), NoDataError);
  CHECK_THROWS_AS(average_regret(series({1, 2}, 0, 3)), ConfigError);
}

TEST_CASE("proximity threshold formula") {
  CHECK(proximity_threshold(1, 1.0, 0.01) == 11);
  CHECK(proximity_threshold(2, std::sqrt(2.0), 0.25) == 17);
  CHECK(proximity_threshold(1, 1.0, 1.0) == 2);
}

TEST_CASE("volume counting on hand-built point sets") {
  // two points at distance 1, eps = 4: trivially within reach
  std::vector<Vec> close = {v1(0), v1(1)};
  CHECK(check_volume_counting(close, 1.0, 4.0));

  // ten evenly spaced points in [0,1]: spacing 1/9, squared 0.0123 > 0.01
  std::vector<Vec> spaced;
  for (int i = 0; i < 10; ++i) spaced.push_back(v1(i / 9.0));
  CHECK_FALSE(check_volume_counting(spaced, 1.0, 0.01));

  // at the threshold count, some pair must fall within sqrt(eps)
  std::vector<Vec> eleven;
  for (int i = 0; i < 11; ++i) eleven.push_back(v1(i * 0.095));
  CHECK(check_volume_counting(eleven, 1.0, 0.01));
}

TEST_CASE("volume counting over random threshold-sized sets") {
  UniformSource src(71);
  const struct {
    int d;
    double eps;
  } setups[] = {{1, 0.01}, {2, 0.25}, {3, 0.75}};
  for (const auto& s : setups) {
    const double diam = std::sqrt(double(s.d));
    const int count = proximity_threshold(s.d, diam, s.eps);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Vec> pts;
      for (int i = 0; i < count; ++i) {
        pts.push_back(src.next_in_box(Vec::Zero(s.d), Vec::Ones(s.d)));
      }
      CHECK(check_volume_counting(pts, diam, s.eps));
    }
  }
}

TEST_CASE("bound constants derivation") {
  BoundConstants bc = BoundConstants::derive(10.0, 0.0, 1.0, 2.0, 5.0, 4);
  CHECK(bc.per_step_coeff == doctest::Approx(10.0));
  CHECK(bc.count_coeff ==
        doctest::Approx(std::pow(2.0 * std::sqrt(40.0), 4)).epsilon(1e-12));
  CHECK(bc.grad_max == 5.0);

  BoundConstants neg = BoundConstants::derive(10.0, -0.5, 1.0, 2.0, 5.0, 4);
  CHECK(neg.per_step_coeff == doctest::Approx(20.0));

  // nonpositive grad_max falls back to the worst-case envelope
  BoundConstants fb = BoundConstants::derive(10.0, 0.0, 1.0, 2.0, 0.0, 4);
  CHECK(fb.grad_max == doctest::Approx(20.0));

  CHECK_THROWS_AS(BoundConstants::derive(0.0, 0.0, 1.0, 2.0, 5.0, 4),
                  ConfigError);
  CHECK_THROWS_AS(BoundConstants::derive(10.0, 1.0, -2.0, 2.0, 5.0, 4),
                  ConfigError);
}

TEST_CASE("count bound on easy series") {
  BoundConstants bc = BoundConstants::derive(10.0, 0.0, 1.0, 2.0, 5.0, 4);
  RegretSeries zeros = series({0, 0, 0, 0}, 0, 4, 4);
  CHECK(check_count_bound(zeros, bc, 1e-3));
  CHECK(check_count_bound(zeros, bc, 1.0));
  CHECK(count_bound_failures(zeros, bc, 1e-3, 1.0, 61).empty());

  // a huge delta empties the count no matter the regrets
  RegretSeries big = series({5, 5, 5}, 0, 3, 4);
  CHECK(check_count_bound(big, bc, 1e9));
}

TEST_CASE("count bound rejects non-qualifying weights") {
  BoundConstants bc = BoundConstants::derive(10.0, 0.5, 0.5, 2.0, 5.0, 4);
  RegretSeries rs = series({0, 0}, 0, 2, 4);
  CHECK_THROWS_AS(check_count_bound(rs, bc, 0.1), ConfigError);
}

TEST_CASE("series lemma single-term and boundary examples") {
  // n = [T]: sum n_k e^{-k} = T/e, admissible when A >= T e^{-mu}
  const double T = 10.0;
  for (double mu : {1.5, 2.0, 3.0}) {
    const double A = T * std::exp(-mu) * 1.001;
    CHECK(check_series_lemma({T}, A, mu, T));
  }
  // mu = 1: A >= T/e, bound A(ln(T/A)+1) or T itself when T < A
  CHECK(check_series_lemma({T}, T / std::exp(1.0) * 1.001, 1.0, T));
  CHECK(check_series_lemma({}, 1.0, 1.0, 0.0));
}

TEST_CASE("series lemma rejects hypothesis violations") {
  // n_1 = 10 > A e^{mu} with A tiny
  CHECK_THROWS_AS(check_series_lemma({10.0}, 1e-3, 1.0, 10.0), ConfigError);
  // sum mismatch
  CHECK_THROWS_AS(check_series_lemma({1.0, 1.0}, 10.0, 2.0, 5.0), ConfigError);
  // negative entries
  CHECK_THROWS_AS(check_series_lemma({-1.0, 11.0}, 100.0, 2.0, 10.0),
                  ConfigError);
  // mu below one
  CHECK_THROWS_AS(check_series_lemma({1.0}, 10.0, 0.5, 1.0), ConfigError);
}

TEST_CASE("series lemma randomized certification") {
  UniformSource src(301);
  const double mus[] = {1.0, 1.5, 2.0, 3.0};
  for (int trial = 0; trial < 2000; ++trial) {
    const double mu = mus[trial % 4];
    const double A = std::pow(10.0, src.next(-1, 2));
    const int terms = 1 + int(src.next_u64() % 25);
    std::vector<double> n(terms);
    double T = 0.0;
    for (int k = 1; k <= terms; ++k) {
      const double cap = A * std::exp(mu * k);
      double v = src.next_unit() * std::min(cap, 1e6);
      if (trial % 7 == 0) v = std::min(cap, 1e6);  // ride the cap
      if (trial % 11 == 0 && k % 2 == 0) v = 0.0;
      n[k - 1] = v;
      T += v;
    }
    CHECK(check_series_lemma(n, A, mu, T));
  }
}

TEST_CASE("per-step bound violation counting") {
  CHECK(per_step_bound_violations({1, 2, 3}, {1, 2, 3}, 0.0) == 0);
  CHECK(per_step_bound_violations({1.1, 2, 3}, {1, 2, 3}, 0.05) == 1);
  CHECK(per_step_bound_violations({1.1, 2.2, 3}, {1, 2, 3}, 0.01) == 2);
  CHECK_THROWS_AS(per_step_bound_violations({1}, {1, 2}, 0.0), ConfigError);
}

TEST_CASE("sublinearity witness") {
  CHECK(sublinearity_witness({1.0, 1.8, 3.2, 6.0}));
  CHECK_FALSE(sublinearity_witness({1.0, 2.5}));
  CHECK(sublinearity_witness({5.0}));   // nothing to compare
  CHECK(sublinearity_witness({0.0, 0.0}));  // flat zero counts as sublinear
}

TEST_CASE("normalized decay envelopes") {
  auto c4 = bound_curves(4, {16.0});
  REQUIRE(c4.size() == 1);
  CHECK(c4[0].second == doctest::Approx(0.25).epsilon(1e-12));

  auto c2 = bound_curves(2, {std::exp(1.0)});
  CHECK(c2[0].second == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-12));

  std::vector<double> Ts = {2, 4, 8, 16, 32};
  for (int d : {3, 4, 5, 7}) {
    auto curve = bound_curves(d, Ts);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].second < curve[i - 1].second);
    }
  }
  // slower decay in higher dimension at every T > 1
  auto c3 = bound_curves(3, Ts), c7 = bound_curves(7, Ts);
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    CHECK(c7[i].second > c3[i].second);
  }

  CHECK_THROWS_AS(bound_curves(1, Ts), ConfigError);
  CHECK_THROWS_AS(bound_curves(4, Ts, false), ConfigError);
}
