#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "smoothctl/environments.hpp"
#include "smoothctl/errors.hpp"

using namespace smoothctl;
using nlohmann::json;

namespace {

const double kPi = 3.14159265358979323846;

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// Unicycle vector field for the RK4 cross-check.
Vec uni_rhs(const Vec& x, const Vec& u) {
  Vec d(3);
  d << u[0] * std::cos(x[2]), u[0] * std::sin(x[2]), u[1];
  return d;
}

Vec rk4(const Vec& x0, const Vec& u, double Ts, int substeps,
        Vec (*rhs)(const Vec&, const Vec&)) {
  Vec x = x0;
  const double h = Ts / substeps;
  for (int i = 0; i < substeps; ++i) {
    Vec k1 = rhs(x, u);
    Vec k2 = rhs(x + 0.5 * h * k1, u);
    Vec k3 = rhs(x + 0.5 * h * k2, u);
    Vec k4 = rhs(x + h * k3, u);
    x += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return x;
}

}  // namespace

TEST_CASE("unicycle straight line, pure rotation, and arc") {
  Vec straight = unicycle_step(v3(0, 0, 0), v2(1, 0), 0.1);
  CHECK((straight - v3(0.1, 0, 0)).norm() < 1e-15);

  Vec spin = unicycle_step(v3(0, 0, 0), v2(0, kPi), 0.1);
  CHECK((spin - v3(0, 0, 0.1 * kPi)).norm() < 1e-15);

  Vec arc = unicycle_step(v3(0, 0, 0), v2(1, kPi), 0.1);
  Vec expect = v3(std::sin(0.1 * kPi) / kPi, (1 - std::cos(0.1 * kPi)) / kPi,
                  0.1 * kPi);
  CHECK((arc - expect).norm() < 1e-14);
}

TEST_CASE("closed-form unicycle step matches fine RK4 integration") {
  UniformSource src(13);
  for (int i = 0; i < 50; ++i) {
    Vec x = src.next_in_box(v3(-3, -3, -3), v3(3, 3, 3));
    Vec u = v2(src.next(-4, 4), src.next(-kPi, kPi));
    Vec exact = unicycle_step(x, u, 0.1);
    Vec numeric = rk4(x, u, 0.1, 100, uni_rhs);
    // exact step wraps the heading; wrap the reference the same way
    numeric[2] = std::remainder(numeric[2], 2 * kPi);
    Vec diff = exact - numeric;
    diff[2] = std::remainder(diff[2], 2 * kPi);
    CHECK(diff.norm() < 1e-8);
  }
}

TEST_CASE("unicycle context map round-trips") {
  json cfg = {{"env", "unicycle"}};
  auto env = make_environment(cfg);
  UniformSource src(19);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    Vec x = src.next_in_box(v3(-20, -20, -kPi + 1e-9), v3(20, 20, kPi));
    Vec back = env->state_of(env->context_of(x));
    worst = std::max(worst, (back - x).norm());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("aircraft derivatives at the reference flight condition") {
  // Hand-computed aerodynamic forces at V=115.5, zero angle of attack:
  // lift 68.6*1.25*115.5^2 = 1143926.4375, drag (2.7+3.08*1.25^2)*115.5^2
  // = 100218.628125.  With zero thrust and level flight the step must
  // reproduce the implied accelerations.
  const double lift = 1143926.4375;
  const double drag = 100218.628125;
  const double mass = 54900.0, g = 9.81, V = 115.5;
  const double vdot = -drag / mass;
  const double gdot = lift / (mass * V) - g / V;

  // One short step divided by Ts recovers the derivative up to O(Ts) terms.
  const double Ts = 1e-5;
  Vec x = v3(V, 0, 50);
  Vec next = aircraft_step(x, v2(0, 0), Ts, false, AircraftParams{});
  CHECK((next[0] - x[0]) / Ts == doctest::Approx(vdot).epsilon(1e-4));
  CHECK((next[1] - x[1]) / Ts == doctest::Approx(gdot).epsilon(1e-4));
  CHECK(std::abs((next[2] - x[2]) / Ts) < 1e-3);
}

TEST_CASE("damage terms shift the accelerations by T/(2m) components") {
  const double Ts = 1e-5;
  const AircraftParams p{};
  Vec x = v3(110, 0.05, 40);
  Vec u = v2(0.2, 0.05);
  Vec plain = aircraft_step(x, u, Ts, false, p);
  Vec damaged = aircraft_step(x, u, Ts, true, p);
  const double thrust = 0.2 * p.thrust_max;
  const double dv = thrust * std::sin(0.05) / (2 * p.mass);
  const double dg = thrust * std::cos(0.05) / (2 * p.mass * 110.0);
  CHECK((damaged[0] - plain[0]) / Ts == doctest::Approx(dv).epsilon(1e-4));
  CHECK((damaged[1] - plain[1]) / Ts == doctest::Approx(dg).epsilon(1e-4));
}

TEST_CASE("altitude strictly decreases in unpowered descent") {
  Vec x = v3(115.5, -0.05, 50);
  Vec next = aircraft_step(x, v2(0, 0), 0.1, false, AircraftParams{});
  CHECK(next[2] < x[2]);
}

TEST_CASE("vanishing airspeed raises the stall error") {
  // Zero thrust in a near-vertical climb: gravity alone drains the airspeed
  // below zero before the step completes.
  Vec x = v3(0.2, 1.5, 10);
  CHECK_THROWS_AS(aircraft_step(x, v2(0, 0), 0.1, false, AircraftParams{}),
                  StallError);
}

TEST_CASE("lq step and cost") {
  json cfg = {{"env", "lq"}};
  auto env = make_environment(cfg);
  CHECK(env->name() == "lq");
  Vec zero = Vec::Zero(2);
  OracleResponse at_origin = oracle_query(*env, zero, zero);
  CHECK(at_origin.cost == 0.0);
  CHECK(at_origin.next_state.norm() == 0.0);
  CHECK(at_origin.gradient.norm() < 1e-9);

  // x+ = 0.5 x + u; cost of the next state from x=(1,0), u=0 is 0.25.
  Vec x = v2(1, 0);
  OracleResponse r = oracle_query(*env, x, zero);
  CHECK(r.cost == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("lq analytic gradient matches finite differences") {
  json cfg = {{"env", "lq"}};
  auto env = make_environment(cfg);
  REQUIRE(env->has_analytic_gradient());
  UniformSource src(23);
  for (int i = 0; i < 50; ++i) {
    Vec x = src.next_in_box(v2(-2, -2), v2(2, 2));
    Vec u = src.next_in_box(v2(0, 0), v2(1, 1));
    OracleResponse fd = oracle_query(*env, x, u, GradientMode::FiniteDifference);
    OracleResponse an = oracle_query(*env, x, u, GradientMode::Analytic);
    double scale = std::max(1.0, an.gradient.norm());
    CHECK((fd.gradient - an.gradient).norm() / scale < 1e-5);
  }
}

TEST_CASE("oracle cost is exactly the stage cost of the next state") {
  json cfg = {{"env", "unicycle"}};
  auto env = make_environment(cfg);
  UniformSource src(43);
  for (int i = 0; i < 100; ++i) {
    Vec x = src.next_in_box(v3(-3, -3, -3), v3(3, 3, 3));
    Vec u = src.next_in_box(v2(-4, -kPi), v2(4, kPi));
    OracleResponse r = oracle_query(*env, x, u);
    CHECK(r.cost == env->stage_cost(r.next_state, u));
  }
}

TEST_CASE("unicycle oracle at the origin is stationary in position") {
  json cfg = {{"env", "unicycle"}};
  auto env = make_environment(cfg);
  OracleResponse r = oracle_query(*env, v3(0, 0, 0), v2(0, 0));
  CHECK(r.cost == 0.0);
  CHECK(std::abs(r.gradient[0]) < 1e-9);
  CHECK(std::abs(r.gradient[1]) < 1e-9);
}

TEST_CASE("environment config parsing") {
  CHECK_THROWS_AS(make_environment(json{{"env", "rocket"}}), ConfigError);
  json cfg = {{"env", "unicycle"}, {"Ts", 0.05}};
  auto env = make_environment(cfg);
  CHECK(env->dim_z() == 4);
  CHECK(env->dim_u() == 2);
  Box ubox = env->control_set().box();
  CHECK(ubox.lower[0] == -4.0);
  CHECK(ubox.upper[0] == 4.0);
  Vec after = env->step(v3(0, 0, 0), v2(1, 0)).x;
  CHECK(after[0] == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("control clipping is applied and flagged") {
  json cfg = {{"env", "unicycle"}};
  auto env = make_environment(cfg);
  StepOutcome out = env->step(v3(0, 0, 0), v2(9, 0));
  CHECK(out.control_clipped);
  CHECK(out.x[0] == doctest::Approx(0.4).epsilon(1e-12));  // v clipped to 4
}

TEST_CASE("empirical smoothness estimate stays below the configured constant") {
  json cfg = {{"env", "lq"}};
  auto env = make_environment(cfg);
  // For x+ = 0.5x + u with quadratic stage cost, the exact constant is
  // 2*lambda_max([A B][A B]^T) = 2*(0.25 + 1) = 2.5.
  double est = empirical_lipschitz_gradient(*env, 400, 7);
  CHECK(est <= 2.5 + 1e-6);
  CHECK(est > 1.5);
}
