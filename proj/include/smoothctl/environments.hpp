#pragma once

#include <memory>
#include <json.hpp>
#include <string>

#include "smoothctl/polyhedral.hpp"
#include "smoothctl/surrogate.hpp"

namespace smoothctl {

/// Result of advancing the plant one sample period.
struct StepOutcome {
  Vec x;
  bool state_clipped = false;
  bool control_clipped = false;
};

/// What the cost oracle reports for one (state, control) query.
struct OracleResponse {
  Vec next_state;
  double cost = 0.0;
  Vec gradient;             // over the joint (context, control) coordinates
  bool fd_fallback = false;  // a perturbation left the state box; one-sided
};

enum class GradientMode { Auto, FiniteDifference, Analytic };

/// A discrete-time plant with a declared state box, control set, context
/// map, and stage cost. Dynamics are deterministic.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual int dim_x() const = 0;
  virtual int dim_z() const = 0;
  virtual int dim_u() const = 0;

  virtual const Box& state_box() const = 0;
  virtual const Polyhedron& control_set() const = 0;
  /// Box bounding the image of the context map; sides with unit range for
  /// trigonometric coordinates.
  virtual const Box& context_box() const = 0;
  /// Controls drawn during the seeding phase.
  virtual const Box& seed_box() const = 0;
  /// Where the smoothness audit samples; the region runs actually visit.
  virtual const Box& audit_box() const = 0;

  virtual Vec context_of(const Vec& x) const = 0;
  virtual Vec state_of(const Vec& z) const = 0;

  /// Pure dynamics, no clipping; may throw StallError.
  virtual Vec step_raw(const Vec& x, const Vec& u) const = 0;

  /// Simulation step: control clamped into the control box, state clamped
  /// into the state box, both flagged.
  StepOutcome step(const Vec& x, const Vec& u) const;

  virtual double stage_cost(const Vec& next_x, const Vec& u) const = 0;

  virtual bool has_analytic_gradient() const { return false; }
  virtual Vec analytic_gradient(const Vec& x, const Vec& u) const;
};

/// Exact zero-order-hold arc step of the planar unicycle.
/// State (px, py, theta), control (speed, turn rate); theta wraps to (-pi, pi].
Vec unicycle_step(const Vec& x, const Vec& u, double Ts);

struct AircraftParams {
  double mass = 54900.0;   // kg
  double gravity = 9.81;   // m/s^2
  double thrust_max = 1.6e5;  // N
};

/// One RK4 step of the point-mass flight dynamics. State (V, gamma, h),
/// control (thrust fraction, angle of attack). Damage adds the asymmetric
/// thrust terms. Throws StallError if airspeed reaches zero.
Vec aircraft_step(const Vec& x, const Vec& u, double Ts, bool damaged,
                  const AircraftParams& params);

/// Linear plant x+ = A x + B u.
Vec lq_step(const Vec& x, const Vec& u, const Eigen::MatrixXd& A,
            const Eigen::MatrixXd& B);

/// Cost value, next state, and gradient at (x, u). Central finite
/// differences over the joint (context, control) point with per-coordinate
/// step 1e-5*(1+|coordinate|); falls back to a one-sided difference (and
/// flags it) when a perturbation leaves the state box or stalls the plant.
OracleResponse oracle_query(const Environment& env, const Vec& x, const Vec& u,
                            GradientMode mode = GradientMode::Auto);

/// Constructs an environment from its JSON description:
///   {"env": "unicycle"|"aircraft"|"lq", "Ts": 0.1, "U": {...},
///    "params": {...}, "damage": false}
std::unique_ptr<Environment> make_environment(const nlohmann::json& config);

/// Largest ||grad C(a) - grad C(b)|| / ||a - b|| over sampled pairs drawn
/// from the audit box. Flags an under-set smoothness constant before runs.
double empirical_lipschitz_gradient(const Environment& env, int n_pairs,
                                    std::uint64_t seed);

}  // namespace smoothctl
