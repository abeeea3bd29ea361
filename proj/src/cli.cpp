#include "smoothctl/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "smoothctl/analysis.hpp"
#include "smoothctl/controller.hpp"
#include "smoothctl/errors.hpp"

namespace smoothctl::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  os << text;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  return os;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

// Scalar demo cost: negative log of the standard normal CDF.  Smooth,
// convex, decreasing, and nonnegative, so every side-info rule applies.
double demo_cost(double z) { return -std::log(normal_cdf(z)); }

double demo_cost_grad(double z) { return -normal_pdf(z) / normal_cdf(z); }

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 1;
  if (dynamic_cast<const AntiObjectiveError*>(&e)) return 1;
  if (dynamic_cast<const json::exception*>(&e)) return 1;
  return 2;
}

int report_failure(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return exit_code_for(e);
}

json prepared_config(const RunManifest& m) {
  json cfg = m.config_path.empty() ? json::object()
                                   : load_config(m.config_path);
  for (const std::string& kv : m.overrides) apply_override(cfg, kv);
  if (m.seed) cfg["seed"] = *m.seed;
  return cfg;
}

std::string cell_name(std::size_t idx) {
  std::ostringstream os;
  os << "cell_";
  std::string digits = std::to_string(idx);
  for (std::size_t k = digits.size(); k < 4; ++k) os << '0';
  os << digits;
  return os.str();
}

void set_path(json& j, const std::string& key, const json& value) {
  json* node = &j;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = key.find('.', start);
    if (dot == std::string::npos) break;
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ConfigError("empty segment in key " + key);
    if (!node->contains(part) || !(*node)[part].is_object()) {
      (*node)[part] = json::object();
    }
    node = &(*node)[part];
    start = dot + 1;
  }
  const std::string leaf = key.substr(start);
  if (leaf.empty()) throw ConfigError("empty segment in key " + key);
  (*node)[leaf] = value;
}

struct RunOutputs {
  json summary;
  std::string error;
};

RunOutputs execute_run(json cfg, const fs::path& dir) {
  fill_run_defaults(cfg);
  const EpisodeConfig ec = EpisodeConfig::from_json(cfg);
  ec.validate();
  const std::unique_ptr<Environment> env = make_environment(ec.env_config);
  const EpisodeTrace trace = run_episode(ec);

  ensure_dir(dir.string());
  {
    std::ofstream os = open_out(dir / "trace.csv");
    write_trace_csv(os, *env, trace);
  }
  {
    std::ofstream os = open_out(dir / "times.csv");
    write_times_csv(os, trace);
  }
  {
    std::ofstream os = open_out(dir / "dataset.csv");
    trace.dataset.write_csv(os);
  }
  RunOutputs out;
  out.summary = summarize(ec, *env, trace);
  out.error = trace.error;
  write_text(dir / "summary.json", out.summary.dump(2) + "\n");
  write_text(dir / "config.json", cfg.dump(2) + "\n");
  return out;
}

struct TraceColumns {
  std::vector<double> regret;         // every step that measured regret
  std::vector<double> paired_regret;  // steps with both regret and bound
  std::vector<double> paired_bound;
};

TraceColumns read_trace_columns(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path.string());
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty trace " + path.string());
  const std::vector<std::string> header = split_csv_line(line);
  int i_regret = -1;
  int i_bound = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "regret") i_regret = static_cast<int>(i);
    if (header[i] == "regret_bound") i_bound = static_cast<int>(i);
  }
  if (i_regret < 0) throw ConfigError("trace lacks a regret column");
  TraceColumns tc;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ConfigError("ragged trace row in " + path.string());
    }
    const std::string& r = fields[static_cast<std::size_t>(i_regret)];
    if (r.empty()) continue;
    const double regret = parse_double(r);
    tc.regret.push_back(regret);
    if (i_bound >= 0) {
      const std::string& b = fields[static_cast<std::size_t>(i_bound)];
      if (!b.empty()) {
        tc.paired_regret.push_back(regret);
        tc.paired_bound.push_back(parse_double(b));
      }
    }
  }
  return tc;
}

json certify_run(const std::string& dir, bool& all_ok) {
  const json summary = load_config(dir + "/summary.json");
  const TraceColumns tc = read_trace_columns(fs::path(dir) / "trace.csv");
  json row;
  row["dir"] = dir;
  row["n_regret_steps"] = tc.regret.size();
  const json& analysis = summary.at("analysis");
  const bool qualifying = analysis.value("qualifying", false);
  row["qualifying"] = qualifying;
  if (!summary.value("error", std::string()).empty()) {
    row["run_error"] = summary["error"];
    all_ok = false;
    return row;
  }
  if (!qualifying) return row;

  const double slack = summary.value("grid_slack", 0.0);
  const int violations =
      per_step_bound_violations(tc.paired_regret, tc.paired_bound, slack);
  row["per_step_violations"] = violations;
  if (violations != 0) all_ok = false;

  RegretSeries rs;
  rs.rho = tc.regret;
  rs.seed_steps = summary.value("N", 0);
  rs.horizon = rs.seed_steps + static_cast<int>(rs.rho.size());
  rs.d = analysis.value("d", 0);
  rs.slack = slack;
  const BoundConstants bc = BoundConstants::derive(
      summary.value("lc", 1.0), summary.value("alpha", 0.0),
      summary.value("beta", 1.0), analysis.value("diam_zu", 0.0),
      analysis.value("grad_max", 0.0), rs.d);
  const std::vector<double> failing =
      count_bound_failures(rs, bc, 1e-3, 1.0, 61);
  row["count_bound_ok"] = failing.empty();
  row["count_bound_failing_deltas"] = failing;
  if (!failing.empty()) all_ok = false;
  return row;
}

json run_volume_trials(int trials, std::uint64_t seed, bool& all_ok) {
  struct Setup {
    int d;
    double eps;
  };
  const Setup setups[] = {{1, 0.01}, {2, 0.25}, {3, 0.75}};
  UniformSource rng(seed);
  int failures = 0;
  int total = 0;
  for (int trial = 0; trial < trials; ++trial) {
    for (const Setup& su : setups) {
      const double diam = std::sqrt(double(su.d));
      const int n = proximity_threshold(su.d, diam, su.eps);
      std::vector<Vec> points;
      points.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        Vec p(su.d);
        for (int k = 0; k < su.d; ++k) p[k] = rng.next_unit();
        points.push_back(std::move(p));
      }
      ++total;
      if (!check_volume_counting(points, diam, su.eps)) ++failures;
    }
  }
  if (failures != 0) all_ok = false;
  json out;
  out["trials"] = total;
  out["failures"] = failures;
  out["ok"] = failures == 0;
  return out;
}

json run_series_trials(int trials, std::uint64_t seed, bool& all_ok) {
  const double mus[] = {1.0, 1.5, 2.0, 3.0};
  UniformSource rng(seed);
  int failures = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const double mu = mus[trial % 4];
    const int terms = 1 + static_cast<int>(rng.next_u64() % 30);
    const double A = std::pow(10.0, rng.next(-1.0, 2.0));
    std::vector<double> n(static_cast<std::size_t>(terms));
    for (int k = 1; k <= terms; ++k) {
      const double cap = A * std::exp(mu * k);
      double value = rng.next_unit() * cap;
      if (trial % 7 == 0) value = cap;   // boundary of the hypothesis
      if (trial % 11 == 0) value = 0.0;  // degenerate sequence
      n[static_cast<std::size_t>(k - 1)] = value;
    }
    double T = 0.0;
    for (double v : n) T += v;
    if (!check_series_lemma(n, A, mu, T)) ++failures;
  }
  if (failures != 0) all_ok = false;
  json out;
  out["trials"] = trials;
  out["failures"] = failures;
  out["ok"] = failures == 0;
  return out;
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Minimal deterministic line chart; axes are linear in the given values.
std::string svg_chart(const std::vector<Series>& series, int width,
                      int height) {
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                           "#9467bd", "#ff7f0e", "#8c564b"};
  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  bool first = true;
  for (const Series& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        first = false;
      }
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi <= y_lo) y_hi = y_lo + 1;
  const double margin = 40.0;
  const double plot_w = width - 2 * margin;
  const double plot_h = height - 2 * margin;
  auto px = [&](double x) {
    return margin + (x - x_lo) / (x_hi - x_lo) * plot_w;
  };
  auto py = [&](double y) {
    return margin + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
     << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"#888\"/>\n";
  std::size_t color = 0;
  double legend_y = margin + 14.0;
  for (const Series& s : series) {
    const char* stroke = palette[color % 6];
    ++color;
    os << "<polyline fill=\"none\" stroke=\"" << stroke
       << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
      os << format_double(px(x)) << "," << format_double(py(y)) << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << margin + 8 << "\" y=\"" << format_double(legend_y)
       << "\" font-size=\"11\" fill=\"" << stroke << "\">" << s.name
       << "</text>\n";
    legend_y += 13.0;
  }
  os << "<text x=\"" << margin << "\" y=\"" << height - 8
     << "\" font-size=\"10\" fill=\"#444\">x: [" << format_double(x_lo)
     << ", " << format_double(x_hi) << "]  y: [" << format_double(y_lo)
     << ", " << format_double(y_hi) << "]</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace

json load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path);
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("bad JSON in " + path + ": " + e.what());
  }
}

void apply_override(json& j, const std::string& kv) {
  const std::size_t eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like key=value: " + kv);
  }
  const std::string key = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;  // unquoted strings like env names
  }
  set_path(j, key, value);
}

void fill_run_defaults(json& cfg) {
  if (!cfg.contains("env")) throw ConfigError("run config needs env");
  const std::string kind = cfg["env"].get<std::string>();
  if (kind == "unicycle") {
    if (!cfg.contains("x0")) cfg["x0"] = {-2.0, -2.5, M_PI / 2.0};
    if (!cfg.contains("lc")) cfg["lc"] = 10.0;
    if (!cfg.contains("target")) {
      cfg["target"] = {{"coords", {0, 1}},
                       {"center", {0.0, 0.0}},
                       {"radius", 0.25}};
    }
  } else if (kind == "aircraft") {
    if (!cfg.contains("x0")) cfg["x0"] = {115.5, 0.0, 50.0};
    if (!cfg.contains("lc")) cfg["lc"] = 10.0;
    if (!cfg.contains("target")) {
      cfg["target"] = {{"coords", {2}}, {"center", {0.0}}, {"radius", 5.0}};
    }
  } else if (kind == "lq") {
    if (!cfg.contains("x0")) cfg["x0"] = {1.0, 1.0};
    if (!cfg.contains("lc")) cfg["lc"] = 2.5;
  }
}

int cmd_run(const RunManifest& m) {
  try {
    const json cfg = prepared_config(m);
    const RunOutputs out = execute_run(cfg, m.out_dir);
    if (!out.error.empty()) {
      std::cerr << "episode aborted: " << out.error << "\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    return report_failure(e);
  }
}

int cmd_sweep(const RunManifest& m) {
  try {
    if (m.config_path.empty()) throw ConfigError("sweep needs --config");
    json cfg = load_config(m.config_path);
    for (const std::string& kv : m.overrides) apply_override(cfg, kv);
    if (!cfg.contains("base") || !cfg["base"].is_object()) {
      throw ConfigError("sweep config needs a base object");
    }
    if (!cfg.contains("grid") || !cfg["grid"].is_object() ||
        cfg["grid"].empty()) {
      throw ConfigError("sweep config needs a non-empty grid object");
    }
    json base = cfg["base"];
    if (m.seed) base["seed"] = *m.seed;

    std::vector<std::string> keys;
    std::vector<std::vector<json>> values;
    for (auto it = cfg["grid"].begin(); it != cfg["grid"].end(); ++it) {
      if (!it.value().is_array() || it.value().empty()) {
        throw ConfigError("grid entry " + it.key() +
                          " must be a non-empty array");
      }
      keys.push_back(it.key());
      values.emplace_back(it.value().begin(), it.value().end());
    }
    std::size_t n_cells = 1;
    for (const auto& v : values) n_cells *= v.size();

    struct Cell {
      json config;
      std::vector<json> grid_values;
      json summary;
      std::string error;
      int exit_code = 0;
    };
    std::vector<Cell> cells(n_cells);
    for (std::size_t idx = 0; idx < n_cells; ++idx) {
      json c = base;
      std::vector<json> cell_values(keys.size());
      std::size_t rem = idx;
      for (std::size_t k = keys.size(); k-- > 0;) {
        const std::size_t digit = rem % values[k].size();
        rem /= values[k].size();
        cell_values[k] = values[k][digit];
        set_path(c, keys[k], values[k][digit]);
      }
      cells[idx].config = std::move(c);
      cells[idx].grid_values = std::move(cell_values);
    }

    ensure_dir(m.out_dir);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_cells) return;
        Cell& cell = cells[i];
        try {
          const RunOutputs out =
              execute_run(cell.config, fs::path(m.out_dir) / cell_name(i));
          cell.summary = out.summary;
          if (!out.error.empty()) {
            cell.error = out.error;
            cell.exit_code = 2;
          }
        } catch (const std::exception& e) {
          cell.error = e.what();
          cell.exit_code = exit_code_for(e);
        }
      }
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_workers = std::max(
        1u, std::min({hw == 0 ? 1u : hw, 8u, unsigned(n_cells)}));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    std::ostringstream csv;
    csv << "cell";
    for (const std::string& k : keys) csv << "," << k;
    csv << ",n_steps,avg_regret,cum_regret,steps_to_target,"
           "terminated_at_target,config_hash,error\n";
    json rows = json::array();
    int exit_code = 0;
    for (std::size_t i = 0; i < n_cells; ++i) {
      const Cell& cell = cells[i];
      exit_code = std::max(exit_code, cell.exit_code);
      csv << i;
      for (const json& v : cell.grid_values) {
        csv << "," << (v.is_string() ? v.get<std::string>() : v.dump());
      }
      json row;
      row["cell"] = i;
      for (std::size_t k = 0; k < keys.size(); ++k) {
        row[keys[k]] = cell.grid_values[k];
      }
      if (!cell.summary.is_null()) {
        const json& s = cell.summary;
        csv << "," << s["n_steps"] << ","
            << format_double(s["avg_regret"].get<double>()) << ","
            << format_double(s["cum_regret"].get<double>()) << ","
            << s["steps_to_target"] << "," << s["terminated_at_target"]
            << "," << s["config_hash"].get<std::string>();
        row["summary"] = s;
      } else {
        csv << ",,,,,,";
      }
      std::string safe_error = cell.error;
      std::replace(safe_error.begin(), safe_error.end(), ',', ';');
      std::replace(safe_error.begin(), safe_error.end(), '\n', ' ');
      csv << "," << safe_error << "\n";
      row["error"] = cell.error;
      rows.push_back(std::move(row));
    }
    write_text(fs::path(m.out_dir) / "sweep.csv", csv.str());
    json index;
    index["cells"] = rows;
    index["config_hash"] = fnv1a_hex(cfg.dump());
    write_text(fs::path(m.out_dir) / "sweep.json", index.dump(2) + "\n");
    return exit_code;
  } catch (const std::exception& e) {
    return report_failure(e);
  }
}

int cmd_certify(const RunManifest& m) {
  try {
    if (m.config_path.empty()) throw ConfigError("certify needs --config");
    json cfg = load_config(m.config_path);
    for (const std::string& kv : m.overrides) apply_override(cfg, kv);

    bool all_ok = true;
    json report;
    report["config_hash"] = fnv1a_hex(cfg.dump());

    json runs = json::array();
    for (const std::string& dir :
         cfg.value("runs", std::vector<std::string>{})) {
      runs.push_back(certify_run(dir, all_ok));
    }
    report["runs"] = runs;

    if (cfg.contains("doubling")) {
      std::vector<double> cum;
      for (const std::string& dir :
           cfg.at("doubling").get<std::vector<std::string>>()) {
        const json summary = load_config(dir + "/summary.json");
        cum.push_back(summary.at("cum_regret").get<double>());
      }
      const bool ok = sublinearity_witness(cum);
      report["doubling_cum_regret"] = cum;
      report["sublinearity_ok"] = ok;
      if (!ok) all_ok = false;
    }

    const json rnd = cfg.value("randomized", json::object());
    const std::uint64_t seed = m.seed.value_or(
        rnd.value("seed", static_cast<std::uint64_t>(12345)));
    report["volume_counting"] =
        run_volume_trials(rnd.value("volume_trials", 200), seed, all_ok);
    report["series"] =
        run_series_trials(rnd.value("series_trials", 2000), seed + 1, all_ok);

    report["overall_ok"] = all_ok;
    ensure_dir(m.out_dir);
    write_text(fs::path(m.out_dir) / "certification.json",
               report.dump(2) + "\n");
    if (!all_ok) {
      std::cerr << "certification failed; see certification.json\n";
      return 3;
    }
    return 0;
  } catch (const std::exception& e) {
    return report_failure(e);
  }
}

int cmd_sandwich(const RunManifest& m) {
  try {
    const json cfg = prepared_config(m);
    const double z_lo = cfg.value("z_lo", -2.0);
    const double z_hi = cfg.value("z_hi", 5.0);
    const double step = cfg.value("step", 0.01);
    const double lc = cfg.value("lc", 3.0);
    if (!(step > 0.0) || !(z_hi > z_lo)) {
      throw ConfigError("need z_lo < z_hi and step > 0");
    }
    std::vector<double> sample_locs =
        cfg.value("samples", std::vector<double>{0.0, 3.0});

    Dataset data(1, 0);
    for (double q : sample_locs) {
      Vec loc(1);
      loc[0] = q;
      Vec grad(1);
      grad[0] = demo_cost_grad(q);
      data = data.with_sample({loc, demo_cost(q), grad});
    }

    SideInfo monotone;
    monotone.monotone.push_back({0, Monotonicity::Decreasing});
    SideInfo full = monotone;
    full.convex = true;
    full.lower_bound = 0.0;
    const std::vector<std::pair<std::string, SideInfo>> levels = {
        {"none", SideInfo{}}, {"monotone", monotone}, {"full", full}};

    const int n_points =
        static_cast<int>(std::floor((z_hi - z_lo) / step + 1e-9)) + 1;
    ensure_dir(m.out_dir);
    json summary;
    summary["config_hash"] = fnv1a_hex(cfg.dump());
    summary["lc"] = lc;
    summary["samples"] = sample_locs;
    json level_stats = json::array();

    std::vector<double> prev_gap;
    for (const auto& [name, side] : levels) {
      SurrogateSpec spec;
      spec.lipschitz_gradient = lc;
      spec.side_info = side;
      std::ostringstream csv;
      csv << "z,cost,lower,upper\n";
      Series s_cost{"cost", {}};
      Series s_lo{"lower", {}};
      Series s_hi{"upper", {}};
      double max_gap = 0.0;
      std::vector<double> gaps(static_cast<std::size_t>(n_points));
      for (int i = 0; i < n_points; ++i) {
        const double z = std::min(z_lo + i * step, z_hi);
        Vec s(1);
        s[0] = z;
        const BoundPair b = tighten_with_side_info(data, spec, s);
        const double truth = demo_cost(z);
        csv << format_double(z) << "," << format_double(truth) << ","
            << format_double(b.lower) << "," << format_double(b.upper)
            << "\n";
        s_cost.points.emplace_back(z, truth);
        s_lo.points.emplace_back(z, b.lower);
        s_hi.points.emplace_back(z, b.upper);
        gaps[static_cast<std::size_t>(i)] = b.upper - b.lower;
        max_gap = std::max(max_gap, b.upper - b.lower);
      }
      if (!prev_gap.empty()) {
        for (std::size_t i = 0; i < gaps.size(); ++i) {
          if (gaps[i] > prev_gap[i] + 1e-9) {
            throw Error("side info widened the bound gap at a grid point");
          }
        }
      }
      prev_gap = gaps;
      write_text(fs::path(m.out_dir) / ("bounds_" + name + ".csv"),
                 csv.str());
      write_text(fs::path(m.out_dir) / ("bounds_" + name + ".svg"),
                 svg_chart({s_cost, s_lo, s_hi}, 640, 400));

      Vec probe(1);
      probe[0] = 4.0;
      const BoundPair at4 = tighten_with_side_info(data, spec, probe);
      json stat;
      stat["level"] = name;
      stat["max_gap"] = max_gap;
      stat["gap_at_4"] = at4.upper - at4.lower;
      level_stats.push_back(std::move(stat));
    }
    summary["levels"] = level_stats;
    write_text(fs::path(m.out_dir) / "bounds_summary.json",
               summary.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    return report_failure(e);
  }
}

int cmd_curves(const RunManifest& m) {
  try {
    const json cfg = prepared_config(m);
    const std::vector<int> dims =
        cfg.value("dims", std::vector<int>{3, 4, 5, 7});
    std::vector<double> T_range;
    if (cfg.contains("T")) {
      T_range = cfg.at("T").get<std::vector<double>>();
    } else {
      for (double T = 1.0; T <= 16384.0; T *= 2.0) T_range.push_back(T);
    }
    ensure_dir(m.out_dir);
    std::vector<Series> chart;
    for (int d : dims) {
      const auto table = bound_curves(d, T_range, true);
      std::ostringstream csv;
      csv << "T,bound_value\n";
      Series series{"d=" + std::to_string(d), {}};
      for (const auto& [T, v] : table) {
        csv << format_double(T) << "," << format_double(v) << "\n";
        series.points.emplace_back(std::log2(T), v);
      }
      chart.push_back(std::move(series));
      write_text(fs::path(m.out_dir) /
                     ("curve_d" + std::to_string(d) + ".csv"),
                 csv.str());
    }
    write_text(fs::path(m.out_dir) / "curves.svg", svg_chart(chart, 640, 400));
    json index;
    index["dims"] = dims;
    index["T"] = T_range;
    index["config_hash"] = fnv1a_hex(cfg.dump());
    write_text(fs::path(m.out_dir) / "curves.json", index.dump(2) + "\n");
    return 0;
  } catch (const std::exception& e) {
    return report_failure(e);
  }
}

}  // namespace smoothctl::cli
