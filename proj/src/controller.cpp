#include "smoothctl/controller.hpp"

#include <cmath>
#include <ostream>

#include "smoothctl/errors.hpp"

namespace smoothctl {

bool TargetBall::contains(const Vec& x) const {
  double dist2 = 0.0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double d = x[coords[i]] - center[static_cast<Eigen::Index>(i)];
    dist2 += d * d;
  }
  return dist2 <= radius * radius;
}

EpisodeConfig EpisodeConfig::from_json(const nlohmann::json& j) {
  EpisodeConfig cfg;
  cfg.env_config = nlohmann::json::object();
  for (const char* key : {"env", "Ts", "U", "params", "damage", "seed_box",
                          "audit_box", "X"}) {
    if (j.contains(key)) cfg.env_config[key] = j.at(key);
  }
  cfg.surrogate.alpha = j.value("alpha", 0.0);
  cfg.surrogate.beta = j.value("beta", 1.0);
  cfg.surrogate.lipschitz_gradient = j.value("lc", 1.0);
  cfg.seed_steps = j.value("N", 1);
  cfg.horizon = j.value("T", 100);
  cfg.seed = j.value("seed", static_cast<std::uint64_t>(1));
  if (!j.contains("x0")) throw ConfigError("config missing x0");
  const auto& x0 = j.at("x0");
  cfg.x0.resize(x0.size());
  for (std::size_t i = 0; i < x0.size(); ++i) cfg.x0[i] = x0.at(i).get<double>();
  if (j.contains("target") && !j.at("target").is_null()) {
    const auto& t = j.at("target");
    TargetBall ball;
    for (const auto& c : t.at("coords")) ball.coords.push_back(c.get<int>());
    const auto& center = t.at("center");
    ball.center.resize(center.size());
    for (std::size_t i = 0; i < center.size(); ++i) {
      ball.center[i] = center.at(i).get<double>();
    }
    ball.radius = t.at("radius").get<double>();
    cfg.target = std::move(ball);
  }
  cfg.compute_regret = j.value("compute_regret", true);
  cfg.grid_spacing_frac = j.value("grid_spacing_frac", 0.01);
  const std::string mode = j.value("gradient_mode", "fd");
  if (mode == "fd") {
    cfg.gradient_mode = GradientMode::FiniteDifference;
  } else if (mode == "analytic") {
    cfg.gradient_mode = GradientMode::Analytic;
  } else if (mode == "auto") {
    cfg.gradient_mode = GradientMode::Auto;
  } else {
    throw ConfigError("gradient_mode must be fd, analytic, or auto");
  }
  return cfg;
}

void EpisodeConfig::validate() const {
  surrogate.validate();
  if (seed_steps < 0 || seed_steps >= horizon) {
    throw ConfigError("need 0 <= N < T");
  }
  if (!(grid_spacing_frac > 0.0)) {
    throw ConfigError("grid_spacing_frac must be positive");
  }
}

namespace {

Vec joint_point(const Vec& z, const Vec& u) {
  Vec s(z.size() + u.size());
  s.head(z.size()) = z;
  s.tail(u.size()) = u;
  return s;
}

Vec default_spacing(const Environment& env, double frac) {
  const Box& ubox = env.control_set().box();
  Vec h(ubox.dim());
  for (int k = 0; k < ubox.dim(); ++k) {
    const double range = ubox.upper[k] - ubox.lower[k];
    h[k] = range > 0.0 ? frac * range : 1.0;
  }
  return h;
}

}  // namespace

std::pair<Vec, double> optimal_one_step(const Environment& env, const Vec& x,
                                        const Vec& spacing) {
  auto realized_cost = [&](const Vec& u) {
    return env.stage_cost(env.step(x, u).x, u);
  };
  return grid_minimize(realized_cost, env.control_set(), spacing);
}

EpisodeTrace run_episode(const EpisodeConfig& config) {
  config.validate();
  const std::unique_ptr<Environment> env = make_environment(config.env_config);
  if (config.x0.size() != env->dim_x()) {
    throw ConfigError("x0 dimension does not match environment");
  }

  EpisodeTrace trace;
  trace.dataset = Dataset(env->dim_z(), env->dim_u());
  trace.grid_spacing = default_spacing(*env, config.grid_spacing_frac);

  const double weight_sum = config.surrogate.alpha + config.surrogate.beta;
  const bool have_bound = config.surrogate.alpha <= 0.0 && weight_sum > 0.0;
  const double bound_coef =
      have_bound ? config.surrogate.lipschitz_gradient *
                       (1.0 + std::abs(config.surrogate.alpha) / weight_sum)
                 : 0.0;

  RandomController seeder(env->seed_box(), config.seed);
  Vec x = config.x0;
  double grad_max_seen = 0.0;

  try {
    for (int k = 0; k < config.seed_steps; ++k) {
      const Vec u = seeder.next();
      const OracleResponse obs =
          oracle_query(*env, x, u, config.gradient_mode);
      if (obs.fd_fallback) ++trace.fd_fallbacks;
      grad_max_seen =
          std::max(grad_max_seen, obs.gradient.tail(env->dim_u()).norm());
      trace.dataset = trace.dataset.with_sample(
          {joint_point(env->context_of(x), u), obs.cost, obs.gradient});
      const StepOutcome next = env->step(x, u);
      if (next.state_clipped) ++trace.state_clips;
      x = next.x;
    }

    for (int t = config.seed_steps; t < config.horizon; ++t) {
      if (config.target && config.target->contains(x)) {
        trace.terminated_at_target = true;
        trace.steps_to_target = t - config.seed_steps;
        break;
      }
      const Vec z = env->context_of(x);
      const SolveReport plan = minimize_surrogate(
          trace.dataset, config.surrogate, z, env->control_set());
      const Vec u = plan.minimizer;
      const OracleResponse obs =
          oracle_query(*env, x, u, config.gradient_mode);
      if (obs.fd_fallback) ++trace.fd_fallbacks;
      grad_max_seen =
          std::max(grad_max_seen, obs.gradient.tail(env->dim_u()).norm());

      StepRecord rec;
      rec.t = t;
      rec.state = x;
      rec.context = z;
      rec.action = u;
      rec.cost = obs.cost;
      rec.solve_time = plan.solve_time;
      if (have_bound) {
        rec.regret_bound =
            bound_coef * trace.dataset.min_sq_distance(joint_point(z, u));
      }
      if (config.compute_regret) {
        const auto [best_u, best_cost] =
            optimal_one_step(*env, x, trace.grid_spacing);
        (void)best_u;
        rec.regret = std::max(0.0, obs.cost - best_cost);
      }
      trace.steps.push_back(std::move(rec));

      trace.dataset = trace.dataset.with_sample(
          {joint_point(z, u), obs.cost, obs.gradient});
      const StepOutcome next = env->step(x, u);
      if (next.state_clipped) ++trace.state_clips;
      x = next.x;
    }

    if (!trace.terminated_at_target && config.target &&
        config.target->contains(x)) {
      trace.terminated_at_target = true;
      trace.steps_to_target =
          static_cast<int>(trace.steps.size());
    }
  } catch (const Error& e) {
    trace.error = e.what();
  }

  trace.grid_slack =
      0.5 * grad_max_seen * trace.grid_spacing.norm() + 1e-9;
  return trace;
}

void write_trace_csv(std::ostream& os, const Environment& env,
                     const EpisodeTrace& trace) {
  os << "t";
  for (int k = 0; k < env.dim_x(); ++k) os << ",x_" << k;
  for (int k = 0; k < env.dim_z(); ++k) os << ",z_" << k;
  for (int k = 0; k < env.dim_u(); ++k) os << ",u_" << k;
  os << ",cost,regret,regret_bound\n";
  for (const StepRecord& rec : trace.steps) {
    os << rec.t;
    for (int k = 0; k < env.dim_x(); ++k) os << "," << format_double(rec.state[k]);
    for (int k = 0; k < env.dim_z(); ++k) os << "," << format_double(rec.context[k]);
    for (int k = 0; k < env.dim_u(); ++k) os << "," << format_double(rec.action[k]);
    os << "," << format_double(rec.cost);
    os << ",";
    if (rec.regret) os << format_double(*rec.regret);
    os << ",";
    if (rec.regret_bound) os << format_double(*rec.regret_bound);
    os << "\n";
  }
}

void write_times_csv(std::ostream& os, const EpisodeTrace& trace) {
  os << "t,solve_ms\n";
  for (const StepRecord& rec : trace.steps) {
    os << rec.t << "," << format_double(rec.solve_time * 1e3) << "\n";
  }
}

nlohmann::json summarize(const EpisodeConfig& config, const Environment& env,
                         const EpisodeTrace& trace) {
  double cum = 0.0;
  std::int64_t n_regret = 0;
  for (const StepRecord& rec : trace.steps) {
    if (rec.regret) {
      cum += *rec.regret;
      ++n_regret;
    }
  }
  const double diam_z = diameter(env.context_box());
  const double diam_u = diameter(env.control_set().box());
  const double diam_zu = std::hypot(diam_z, diam_u);
  const double lc = config.surrogate.lipschitz_gradient;

  nlohmann::json summary;
  summary["env"] = env.name();
  summary["alpha"] = config.surrogate.alpha;
  summary["beta"] = config.surrogate.beta;
  summary["lc"] = lc;
  summary["N"] = config.seed_steps;
  summary["T"] = config.horizon;
  summary["seed"] = config.seed;
  summary["n_steps"] = trace.steps.size();
  summary["avg_regret"] = n_regret ? cum / static_cast<double>(n_regret) : 0.0;
  summary["cum_regret"] = cum;
  summary["steps_to_target"] = trace.steps_to_target;
  summary["terminated_at_target"] = trace.terminated_at_target;
  summary["grid_slack"] = trace.grid_slack;
  summary["fd_fallbacks"] = trace.fd_fallbacks;
  summary["state_clips"] = trace.state_clips;
  summary["error"] = trace.error;

  nlohmann::json cfg_canonical;
  cfg_canonical["env_config"] = config.env_config;
  cfg_canonical["alpha"] = config.surrogate.alpha;
  cfg_canonical["beta"] = config.surrogate.beta;
  cfg_canonical["lc"] = lc;
  cfg_canonical["N"] = config.seed_steps;
  cfg_canonical["T"] = config.horizon;
  cfg_canonical["seed"] = config.seed;
  summary["config_hash"] = fnv1a_hex(cfg_canonical.dump());

  double grad_max = 0.0;
  for (const FirstOrderSample& s : trace.dataset.samples()) {
    grad_max = std::max(grad_max, s.gradient.norm());
  }

  nlohmann::json analysis;
  analysis["d"] = env.dim_z() + env.dim_u();
  analysis["diam_zu"] = diam_zu;
  analysis["grad_max"] = grad_max;
  const double weight_sum = config.surrogate.alpha + config.surrogate.beta;
  analysis["qualifying"] =
      config.surrogate.alpha <= 0.0 && weight_sum > 0.0;
  analysis["per_step_coeff"] =
      weight_sum > 0.0
          ? lc * (1.0 + std::abs(config.surrogate.alpha) / weight_sum)
          : 0.0;
  summary["analysis"] = analysis;
  return summary;
}

}  // namespace smoothctl
