#include "smoothctl/environments.hpp"

#include <cmath>
#include <numbers>

#include "smoothctl/errors.hpp"

namespace smoothctl {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
  return std::remainder(theta, 2.0 * kPi);
}

double sinc(double x) {
  return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}

Vec vec_from_json(const nlohmann::json& j) {
  Vec v(j.size());
  std::size_t i = 0;
  for (const auto& e : j) v[i++] = e.get<double>();
  return v;
}

Eigen::MatrixXd mat_from_json(const nlohmann::json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j.at(r).size() != cols) throw ConfigError("ragged matrix in config");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
  }
  return m;
}

Polyhedron control_set_from_json(const nlohmann::json& u, const Box& fallback) {
  if (u.is_null()) return Polyhedron(fallback);
  Box box = Box::make(vec_from_json(u.at("lower")), vec_from_json(u.at("upper")));
  Polyhedron p(box);
  if (u.contains("halfspaces")) {
    for (const auto& h : u.at("halfspaces")) {
      p.add_halfspace(Halfspace::make(vec_from_json(h.at("normal")),
                                      h.at("offset").get<double>()));
    }
  }
  return p;
}

Box box_from_json_or(const nlohmann::json& cfg, const char* key,
                     const Box& fallback) {
  if (!cfg.contains(key)) return fallback;
  return Box::make(vec_from_json(cfg.at(key).at("lower")),
                   vec_from_json(cfg.at(key).at("upper")));
}

}  // namespace

StepOutcome Environment::step(const Vec& x, const Vec& u) const {
  StepOutcome out;
  const Box& ubox = control_set().box();
  Vec uc = ubox.clamp(u);
  out.control_clipped = !approx_equal(uc, u, 0.0);
  Vec next = step_raw(x, uc);
  out.x = state_box().clamp(next);
  out.state_clipped = !approx_equal(out.x, next, 0.0);
  return out;
}

Vec Environment::analytic_gradient(const Vec&, const Vec&) const {
  throw Error("environment provides no analytic gradient");
}

Vec unicycle_step(const Vec& x, const Vec& u, double Ts) {
  if (x.size() != 3 || u.size() != 2) {
    throw DimensionError("unicycle expects state (px,py,theta), control (v,w)");
  }
  const double v = u[0];
  const double w = u[1];
  const double half_arc = 0.5 * w * Ts;
  const double chord = v * Ts * sinc(half_arc);
  Vec next(3);
  next[0] = x[0] + chord * std::cos(x[2] + half_arc);
  next[1] = x[1] + chord * std::sin(x[2] + half_arc);
  next[2] = wrap_angle(x[2] + w * Ts);
  return next;
}

namespace {

struct AircraftDeriv {
  double Vdot, gdot, hdot;
};

AircraftDeriv aircraft_deriv(const Vec& x, double thrust, double alpha,
                             bool damaged, const AircraftParams& p) {
  const double V = x[0];
  const double gamma = x[1];
  if (V <= 0.0) throw StallError("airspeed reached zero during integration");
  const double coef = 1.25 + 4.2 * alpha;
  const double lift = 68.6 * coef * V * V;
  const double drag = (2.7 + 3.08 * coef * coef) * V * V;
  AircraftDeriv d;
  d.Vdot = (thrust * std::cos(alpha) - drag) / p.mass -
           p.gravity * std::sin(gamma);
  d.gdot = (thrust * std::sin(alpha) + lift) / (p.mass * V) -
           p.gravity * std::cos(gamma) / V;
  d.hdot = V * std::sin(gamma);
  if (damaged) {
    d.Vdot += thrust * std::sin(alpha) / (2.0 * p.mass);
    d.gdot += thrust * std::cos(alpha) / (2.0 * p.mass * V);
  }
  return d;
}

}  // namespace

Vec aircraft_step(const Vec& x, const Vec& u, double Ts, bool damaged,
                  const AircraftParams& params) {
  if (x.size() != 3 || u.size() != 2) {
    throw DimensionError(
        "aircraft expects state (V,gamma,h), control (thrust fraction, aoa)");
  }
  const double thrust = u[0] * params.thrust_max;
  const double alpha = u[1];
  auto f = [&](const Vec& s) {
    AircraftDeriv d = aircraft_deriv(s, thrust, alpha, damaged, params);
    Vec out(3);
    out << d.Vdot, d.gdot, d.hdot;
    return out;
  };
  const Vec k1 = f(x);
  const Vec k2 = f(x + 0.5 * Ts * k1);
  const Vec k3 = f(x + 0.5 * Ts * k2);
  const Vec k4 = f(x + Ts * k3);
  Vec next = x + (Ts / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (next[0] <= 0.0) throw StallError("airspeed reached zero during integration");
  return next;
}

Vec lq_step(const Vec& x, const Vec& u, const Eigen::MatrixXd& A,
            const Eigen::MatrixXd& B) {
  if (A.rows() != x.size() || A.cols() != x.size() || B.rows() != x.size() ||
      B.cols() != u.size()) {
    throw DimensionError("lq matrices do not match state/control dimensions");
  }
  return A * x + B * u;
}

namespace {

class UnicycleEnv final : public Environment {
 public:
  UnicycleEnv(double Ts, Polyhedron control, Box seed, Box audit)
      : Ts_(Ts),
        control_(std::move(control)),
        seed_(std::move(seed)),
        audit_(std::move(audit)),
        state_box_(Box::make((Vec(3) << -20, -20, -kPi).finished(),
                             (Vec(3) << 20, 20, kPi).finished())),
        context_box_(Box::make((Vec(4) << -20, -20, -1, -1).finished(),
                               (Vec(4) << 20, 20, 1, 1).finished())) {}

  std::string name() const override { return "unicycle"; }
  int dim_x() const override { return 3; }
  int dim_z() const override { return 4; }
  int dim_u() const override { return 2; }
  const Box& state_box() const override { return state_box_; }
  const Polyhedron& control_set() const override { return control_; }
  const Box& context_box() const override { return context_box_; }
  const Box& seed_box() const override { return seed_; }
  const Box& audit_box() const override { return audit_; }

  Vec context_of(const Vec& x) const override {
    Vec z(4);
    z << x[0], x[1], std::sin(x[2]), std::cos(x[2]);
    return z;
  }

  Vec state_of(const Vec& z) const override {
    Vec x(3);
    x << z[0], z[1], std::atan2(z[2], z[3]);
    return x;
  }

  Vec step_raw(const Vec& x, const Vec& u) const override {
    return unicycle_step(x, u, Ts_);
  }

  double stage_cost(const Vec& next_x, const Vec&) const override {
    return next_x[0] * next_x[0] + next_x[1] * next_x[1];
  }

 private:
  double Ts_;
  Polyhedron control_;
  Box seed_;
  Box audit_;
  Box state_box_;
  Box context_box_;
};

class AircraftEnv final : public Environment {
 public:
  AircraftEnv(double Ts, Polyhedron control, Box seed, Box audit,
              AircraftParams params, bool damaged, std::string cost_variant)
      : Ts_(Ts),
        control_(std::move(control)),
        seed_(std::move(seed)),
        audit_(std::move(audit)),
        params_(params),
        damaged_(damaged),
        cost_variant_(std::move(cost_variant)),
        state_box_(Box::make((Vec(3) << 30, -0.6, -50).finished(),
                             (Vec(3) << 250, 0.6, 600).finished())) {
    if (cost_variant_ != "h2_gamma2" && cost_variant_ != "h2_alpha2") {
      throw ConfigError("aircraft cost_variant must be h2_gamma2 or h2_alpha2");
    }
  }

  std::string name() const override { return "aircraft"; }
  int dim_x() const override { return 3; }
  int dim_z() const override { return 3; }
  int dim_u() const override { return 2; }
  const Box& state_box() const override { return state_box_; }
  const Polyhedron& control_set() const override { return control_; }
  const Box& context_box() const override { return state_box_; }
  const Box& seed_box() const override { return seed_; }
  const Box& audit_box() const override { return audit_; }

  Vec context_of(const Vec& x) const override { return x; }
  Vec state_of(const Vec& z) const override { return z; }

  Vec step_raw(const Vec& x, const Vec& u) const override {
    return aircraft_step(x, u, Ts_, damaged_, params_);
  }

  double stage_cost(const Vec& next_x, const Vec& u) const override {
    const double h = next_x[2];
    if (cost_variant_ == "h2_alpha2") return h * h + u[1] * u[1];
    return h * h + next_x[1] * next_x[1];
  }

 private:
  double Ts_;
  Polyhedron control_;
  Box seed_;
  Box audit_;
  AircraftParams params_;
  bool damaged_;
  std::string cost_variant_;
  Box state_box_;
};

class LqEnv final : public Environment {
 public:
  LqEnv(Eigen::MatrixXd A, Eigen::MatrixXd B, Polyhedron control, Box state_box,
        Box seed)
      : A_(std::move(A)),
        B_(std::move(B)),
        control_(std::move(control)),
        state_box_(std::move(state_box)),
        seed_(std::move(seed)),
        audit_(state_box_) {}

  std::string name() const override { return "lq"; }
  int dim_x() const override { return static_cast<int>(A_.rows()); }
  int dim_z() const override { return dim_x(); }
  int dim_u() const override { return static_cast<int>(B_.cols()); }
  const Box& state_box() const override { return state_box_; }
  const Polyhedron& control_set() const override { return control_; }
  const Box& context_box() const override { return state_box_; }
  const Box& seed_box() const override { return seed_; }
  const Box& audit_box() const override { return audit_; }

  Vec context_of(const Vec& x) const override { return x; }
  Vec state_of(const Vec& z) const override { return z; }

  Vec step_raw(const Vec& x, const Vec& u) const override {
    return lq_step(x, u, A_, B_);
  }

  double stage_cost(const Vec& next_x, const Vec&) const override {
    return next_x.squaredNorm();
  }

  bool has_analytic_gradient() const override { return true; }

  Vec analytic_gradient(const Vec& x, const Vec& u) const override {
    const Vec r = A_ * x + B_ * u;
    Vec g(dim_z() + dim_u());
    g.head(dim_z()) = 2.0 * A_.transpose() * r;
    g.tail(dim_u()) = 2.0 * B_.transpose() * r;
    return g;
  }

 private:
  Eigen::MatrixXd A_, B_;
  Polyhedron control_;
  Box state_box_;
  Box seed_;
  Box audit_;
};

}  // namespace

OracleResponse oracle_query(const Environment& env, const Vec& x, const Vec& u,
                            GradientMode mode) {
  OracleResponse out;
  const StepOutcome step = env.step(x, u);
  out.next_state = step.x;
  out.cost = env.stage_cost(step.x, u);

  if (mode == GradientMode::Analytic ||
      (mode == GradientMode::Auto && env.has_analytic_gradient())) {
    out.gradient = env.analytic_gradient(x, u);
    return out;
  }

  const int dim_z = env.dim_z();
  const int dim_u = env.dim_u();
  const Vec z0 = env.context_of(x);
  Vec s(dim_z + dim_u);
  s.head(dim_z) = z0;
  s.tail(dim_u) = u;

  // Cost of the smooth local extension; the declared state box bounds where
  // the extension is trusted.
  auto eval_at = [&](const Vec& point, double& value) {
    const Vec xs = env.state_of(point.head(dim_z));
    if (!env.state_box().contains(xs, 1e-9)) return false;
    try {
      const Vec next = env.step_raw(xs, point.tail(dim_u));
      value = env.stage_cost(next, point.tail(dim_u));
    } catch (const StallError&) {
      return false;
    }
    return true;
  };

  out.gradient.resize(dim_z + dim_u);
  double center = 0.0;
  bool have_center = false;
  Vec probe = s;
  for (int k = 0; k < dim_z + dim_u; ++k) {
    const double h = 1e-5 * (1.0 + std::abs(s[k]));
    double up = 0.0, down = 0.0;
    probe[k] = s[k] + h;
    const bool ok_up = eval_at(probe, up);
    probe[k] = s[k] - h;
    const bool ok_down = eval_at(probe, down);
    probe[k] = s[k];
    if (ok_up && ok_down) {
      out.gradient[k] = (up - down) / (2.0 * h);
      continue;
    }
    out.fd_fallback = true;
    if (!have_center) {
      if (!eval_at(s, center)) center = out.cost;
      have_center = true;
    }
    if (ok_up) {
      out.gradient[k] = (up - center) / h;
    } else if (ok_down) {
      out.gradient[k] = (center - down) / h;
    } else {
      out.gradient[k] = 0.0;
    }
  }
  return out;
}

std::unique_ptr<Environment> make_environment(const nlohmann::json& config) {
  const std::string kind = config.value("env", "");
  const double Ts = config.value("Ts", 0.1);
  const nlohmann::json u_json = config.contains("U") ? config.at("U") : nullptr;
  const nlohmann::json params = config.value("params", nlohmann::json::object());

  if (kind == "unicycle") {
    Box udef = Box::make((Vec(2) << -4, -kPi).finished(),
                         (Vec(2) << 4, kPi).finished());
    Polyhedron control = control_set_from_json(u_json, udef);
    Box seed = box_from_json_or(
        config, "seed_box",
        Box::make((Vec(2) << -4, -kPi).finished(), (Vec(2) << 0, kPi).finished()));
    Box audit = box_from_json_or(
        config, "audit_box",
        Box::make((Vec(3) << -3.5, -3.5, -kPi).finished(),
                  (Vec(3) << 3.5, 3.5, kPi).finished()));
    return std::make_unique<UnicycleEnv>(Ts, std::move(control), std::move(seed),
                                         std::move(audit));
  }

  if (kind == "aircraft") {
    const double deg10 = 10.0 * kPi / 180.0;
    Box udef = Box::make((Vec(2) << 0.1, -deg10).finished(),
                         (Vec(2) << 0.3, deg10).finished());
    Polyhedron control = control_set_from_json(u_json, udef);
    Box seed = box_from_json_or(config, "seed_box", control.box());
    Box audit = box_from_json_or(
        config, "audit_box",
        Box::make((Vec(3) << 100, -0.2, 0).finished(),
                  (Vec(3) << 120, 0.2, 60).finished()));
    AircraftParams p;
    p.mass = params.value("mass", 54900.0);
    p.gravity = params.value("gravity", 9.81);
    p.thrust_max = params.value("thrust_max", 1.6e5);
    const bool damaged = config.value("damage", false);
    const std::string variant = params.value("cost_variant", "h2_gamma2");
    return std::make_unique<AircraftEnv>(Ts, std::move(control), std::move(seed),
                                         std::move(audit), p, damaged, variant);
  }

  if (kind == "lq") {
    Eigen::MatrixXd A = params.contains("A")
                            ? mat_from_json(params.at("A"))
                            : Eigen::MatrixXd(0.5 * Eigen::MatrixXd::Identity(2, 2));
    Eigen::MatrixXd B = params.contains("B")
                            ? mat_from_json(params.at("B"))
                            : Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2));
    const int nx = static_cast<int>(A.rows());
    const int nu = static_cast<int>(B.cols());
    Box udef = Box::make(Vec::Zero(nu), Vec::Ones(nu));
    Polyhedron control = control_set_from_json(u_json, udef);
    Box state_box = box_from_json_or(
        config, "X",
        Box::make(Vec::Constant(nx, -10.0), Vec::Constant(nx, 10.0)));
    Box seed = box_from_json_or(config, "seed_box", control.box());
    return std::make_unique<LqEnv>(std::move(A), std::move(B), std::move(control),
                                   std::move(state_box), std::move(seed));
  }

  throw ConfigError("unknown env kind: '" + kind + "'");
}

double empirical_lipschitz_gradient(const Environment& env, int n_pairs,
                                    std::uint64_t seed) {
  UniformSource rng(seed);
  const Box& xs = env.audit_box();
  const Box& us = env.control_set().box();
  double worst = 0.0;
  for (int i = 0; i < n_pairs; ++i) {
    const Vec x1 = rng.next_in_box(xs.lower, xs.upper);
    const Vec u1 = rng.next_in_box(us.lower, us.upper);
    const Vec x2 = rng.next_in_box(xs.lower, xs.upper);
    const Vec u2 = rng.next_in_box(us.lower, us.upper);
    const OracleResponse r1 = oracle_query(env, x1, u1);
    const OracleResponse r2 = oracle_query(env, x2, u2);
    Vec s1(env.dim_z() + env.dim_u());
    s1.head(env.dim_z()) = env.context_of(x1);
    s1.tail(env.dim_u()) = u1;
    Vec s2(env.dim_z() + env.dim_u());
    s2.head(env.dim_z()) = env.context_of(x2);
    s2.tail(env.dim_u()) = u2;
    const double dist = (s1 - s2).norm();
    if (dist < 1e-9) continue;
    worst = std::max(worst, (r1.gradient - r2.gradient).norm() / dist);
  }
  return worst;
}

}  // namespace smoothctl
