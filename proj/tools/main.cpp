#include <CLI11.hpp>
#include <string>
#include <vector>

#include "smoothctl/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"data-driven one-step control of smooth systems"};
  app.require_subcommand(1);

  smoothctl::cli::RunManifest m;
  std::uint64_t seed_value = 0;
  bool seed_given = false;
  std::vector<std::string> convenience;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* cfg = sub->add_option("--config", m.config_path,
                                "JSON config file");
    if (config_required) cfg->required()->check(CLI::ExistingFile);
    sub->add_option("--out", m.out_dir, "output directory (default: out)");
    sub->add_option("--seed", seed_value, "seed override")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--set", m.overrides,
                    "key=value config override; dots descend into objects");
  };

  auto add_shortcut = [&](CLI::App* sub, const std::string& key) {
    sub->add_option(
        "--" + key,
        [&convenience, key](const std::vector<std::string>& vals) {
          for (const std::string& v : vals) {
            convenience.push_back(key + "=" + v);
          }
          return true;
        },
        "shortcut for --set " + key + "=VALUE");
  };

  CLI::App* run = app.add_subcommand("run", "one closed-loop episode");
  add_common(run, false);
  for (const char* key : {"env", "alpha", "beta", "lc", "N", "T"}) {
    add_shortcut(run, key);
  }

  CLI::App* sweep =
      app.add_subcommand("sweep", "cross-product of config overrides");
  add_common(sweep, true);

  CLI::App* certify = app.add_subcommand(
      "certify", "check regret bounds over stored runs");
  add_common(certify, true);

  CLI::App* sandwich = app.add_subcommand(
      "sandwich", "1-D cost bound illustration with side info levels");
  add_common(sandwich, false);

  CLI::App* curves =
      app.add_subcommand("curves", "normalized average-regret envelopes");
  add_common(curves, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (seed_given) m.seed = seed_value;
  convenience.insert(convenience.end(), m.overrides.begin(),
                     m.overrides.end());
  m.overrides = std::move(convenience);

  if (app.got_subcommand(run)) return smoothctl::cli::cmd_run(m);
  if (app.got_subcommand(sweep)) return smoothctl::cli::cmd_sweep(m);
  if (app.got_subcommand(certify)) return smoothctl::cli::cmd_certify(m);
  if (app.got_subcommand(sandwich)) return smoothctl::cli::cmd_sandwich(m);
  if (app.got_subcommand(curves)) return smoothctl::cli::cmd_curves(m);
  return 1;
}
