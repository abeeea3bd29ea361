#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "smoothctl/environments.hpp"
#include "smoothctl/optimizer.hpp"

namespace smoothctl {

/// Stopping region ||x[coords] - center|| <= radius over selected state
/// coordinates.
struct TargetBall {
  std::vector<int> coords;
  Vec center;
  double radius = 0.0;

  bool contains(const Vec& x) const;
};

/// Everything one closed-loop run needs; parsed from a single JSON config.
struct EpisodeConfig {
  nlohmann::json env_config;  // the env/Ts/U/params/damage block
  SurrogateSpec surrogate;
  int seed_steps = 1;    // N: random exploration steps before control starts
  int horizon = 100;     // T: total steps including seeding
  std::uint64_t seed = 1;
  Vec x0;
  std::optional<TargetBall> target;
  bool compute_regret = true;
  double grid_spacing_frac = 0.01;  // of each control coordinate's range
  GradientMode gradient_mode = GradientMode::FiniteDifference;

  static EpisodeConfig from_json(const nlohmann::json& j);
  void validate() const;
};

struct StepRecord {
  int t = 0;
  Vec state;    // x_t
  Vec context;  // z_t
  Vec action;   // u_t
  double cost = 0.0;
  double solve_time = 0.0;  // seconds
  std::optional<double> regret;
  std::optional<double> regret_bound;
};

struct EpisodeTrace {
  std::vector<StepRecord> steps;
  Dataset dataset;  // all samples gathered, seeding included
  bool terminated_at_target = false;
  int steps_to_target = -1;  // controlled steps taken to reach the target
  std::string error;         // nonempty when the run aborted early
  Vec grid_spacing;
  double grid_slack = 0.0;
  int fd_fallbacks = 0;
  int state_clips = 0;
};

/// Seeds with random controls, then repeatedly minimizes the surrogate
/// exactly and applies the resulting control.
EpisodeTrace run_episode(const EpisodeConfig& config);

/// Grid oracle for the best one-step control from state x.
std::pair<Vec, double> optimal_one_step(const Environment& env, const Vec& x,
                                        const Vec& spacing);

/// Uniform draws from a box; deterministic for a given seed.
class RandomController {
 public:
  RandomController(Box box, std::uint64_t seed)
      : box_(std::move(box)), rng_(seed) {}

  Vec next() { return rng_.next_in_box(box_.lower, box_.upper); }

 private:
  Box box_;
  UniformSource rng_;
};

/// Deterministic columns only: t,x_*,z_*,u_*,cost,regret,regret_bound.
void write_trace_csv(std::ostream& os, const Environment& env,
                     const EpisodeTrace& trace);

/// Per-step solver wall time: t,solve_ms.
void write_times_csv(std::ostream& os, const EpisodeTrace& trace);

/// Deterministic run summary (avg/cum regret, steps_to_target, config_hash,
/// bound constants block for certification).
nlohmann::json summarize(const EpisodeConfig& config, const Environment& env,
                         const EpisodeTrace& trace);

}  // namespace smoothctl
