// Command-line front end: simulate | analytic | optimize | sweep | validate.
// Each subcommand reads an optional key=value config file, then applies
// flags on top (flags win).  Identical config + seed produces byte-identical
// CSV output.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relaysec/config.hpp"
#include "relaysec/experiment.hpp"

namespace {

struct FlagSet {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
  cmd->add_option("--config", flags.config_path, "key=value config file");
  auto track = [&flags](const std::string& key) {
    return [&flags, key](const std::string& value) {
      flags.overrides.emplace_back(key, value);
    };
  };
  cmd->add_option_function<std::string>("--seed", track("seed"), "master RNG seed");
  cmd->add_option_function<std::string>("--slots", track("n_slots"),
                                        "total Monte Carlo slots");
  cmd->add_option_function<std::string>("--reps", track("replications"),
                                        "independent replications");
  cmd->add_option_function<std::string>("--out", track("out"),
                                        "output CSV path (default stdout)");
  cmd->add_option_function<std::string>("--mode", track("mechanism"),
                                        "transmission mechanism: adaptive|fixed");
  cmd->add_option_function<std::string>("--alpha", track("alpha"),
                                        "hop-1 SNR threshold (linear)");
  cmd->add_option_function<std::string>("--beta", track("beta"),
                                        "hop-2 SNR threshold (linear)");
  cmd->add_option_function<std::string>("--rs", track("r_s"),
                                        "secret rate, bits/channel use");
  cmd->add_option_function<std::string>("--ra", track("r_a"),
                                        "fixed codeword rate, bits/channel use");
  cmd->add_option_function<std::string>("--gamma-ar-db", track("gamma_ar_db"),
                                        "source->relay mean SNR, dB");
  cmd->add_option_function<std::string>("--gamma-rb-db", track("gamma_rb_db"),
                                        "relay->destination mean SNR, dB");
  cmd->add_option_function<std::string>("--gamma-ae-db", track("gamma_ae_db"),
                                        "source->eavesdropper mean SNR, dB");
  cmd->add_option_function<std::string>("--gamma-re-db", track("gamma_re_db"),
                                        "relay->eavesdropper mean SNR, dB");
  cmd->add_option_function<std::string>("--mu", track("mu"), "end-to-end SOP ceiling");
  cmd->add_option_function<std::string>("--nu", track("nu"), "idle-probability ceiling");
  cmd->add_option_function<std::string>("--theta", track("theta"),
                                        "secrecy-outage-capacity floor");
  cmd->add_option_function<std::string>("--problem", track("problem"),
                                        "PA1|PA2|PA3|PF1|PF2|PF3");
}

int run_with(relaysec::RunMode mode, const FlagSet& flags) {
  using namespace relaysec;
  ExperimentConfig cfg = default_config();
  if (const char* env = std::getenv("RELAYSEC_SEED")) {
    try {
      apply_override(cfg, "seed", env);
    } catch (const std::exception& e) {
      std::cerr << "error: RELAYSEC_SEED: " << e.what() << '\n';
      return 2;
    }
  }
  try {
    if (!flags.config_path.empty()) {
      cfg = parse_config_file(flags.config_path, cfg);
    }
    for (const auto& [key, value] : flags.overrides) {
      apply_override(cfg, key, value);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  cfg.mode = mode;
  return run_experiment(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-selection policies for a buffer-aided relay network "
               "with an eavesdropper on both hops: Monte Carlo simulation, "
               "closed-form evaluation and policy optimization."};
  app.require_subcommand(1);

  FlagSet flags;
  relaysec::RunMode mode = relaysec::RunMode::Analytic;

  auto* sim = app.add_subcommand("simulate", "Monte Carlo metric estimates");
  add_common_flags(sim, flags);
  sim->callback([&] { mode = relaysec::RunMode::Simulate; });

  auto* ana = app.add_subcommand("analytic", "closed-form metric evaluation");
  add_common_flags(ana, flags);
  std::string batch;
  ana->add_option("--batch", batch,
                  "parameter CSV to annotate with metric columns");
  ana->callback([&] {
    mode = relaysec::RunMode::Analytic;
    if (!batch.empty()) flags.overrides.emplace_back("batch", batch);
  });

  auto* opt = app.add_subcommand("optimize", "solve a policy-design problem");
  add_common_flags(opt, flags);
  opt->callback([&] { mode = relaysec::RunMode::Optimize; });

  auto* sweep = app.add_subcommand("sweep", "sweep one parameter");
  add_common_flags(sweep, flags);
  std::string param, target;
  double start = 0.0, stop = 0.0;
  int steps = 0;
  sweep->add_option("--param", param, "config key to sweep")->required();
  sweep->add_option("--start", start, "first value")->required();
  sweep->add_option("--stop", stop, "last value")->required();
  sweep->add_option("--steps", steps, "number of points (>= 2)")->required();
  sweep->add_option("--target", target, "analytic|simulate|optimize per point");
  sweep->callback([&] {
    mode = relaysec::RunMode::Sweep;
    flags.overrides.emplace_back("sweep_param", param);
    flags.overrides.emplace_back("sweep_start", relaysec::format_number(start));
    flags.overrides.emplace_back("sweep_stop", relaysec::format_number(stop));
    flags.overrides.emplace_back("sweep_steps", std::to_string(steps));
    if (!target.empty()) flags.overrides.emplace_back("sweep_target", target);
  });

  auto* val = app.add_subcommand(
      "validate", "simulated vs analytic end-to-end SOP with pass/fail rows");
  add_common_flags(val, flags);
  val->callback([&] { mode = relaysec::RunMode::Validate; });

  CLI11_PARSE(app, argc, argv);
  return run_with(mode, flags);
}
