#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relaysec {

enum class RunMode { Simulate, Analytic, Optimize, Sweep, Validate };

const char* to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

/// One experiment, fully described.  Defaults reproduce the reference
/// operating point: channel gains 5/10/0/2 dB, alpha 7, beta 8, secret rate
/// 1 bit, fixed codeword rate 4 bits, one million slots over eight
/// replications.
struct ExperimentConfig {
  RunMode mode = RunMode::Analytic;

  double gamma_ar_db = 5.0;
  double gamma_rb_db = 10.0;
  double gamma_ae_db = 0.0;
  double gamma_re_db = 2.0;

  double alpha = 7.0;
  double beta = 8.0;
  double r_s = 1.0;
  double r_a = 4.0;
  std::string mechanism = "adaptive";  // adaptive | fixed

  std::string problem = "PA1";  // PA1..PF3 for optimize/sweep
  double mu = 0.1;    // end-to-end SOP ceiling
  double nu = 0.2;    // idle-probability ceiling
  double theta = 0.4; // secrecy-outage-capacity floor

  std::string sweep_param;  // any numeric key below
  double sweep_start = 0.0;
  double sweep_stop = 0.0;
  int sweep_steps = 0;
  std::string sweep_target = "analytic";  // analytic | simulate | optimize

  std::uint64_t n_slots = 1'000'000;
  int replications = 8;
  std::uint64_t seed = 12345;

  std::string out;    // output CSV path; empty writes to stdout
  std::string batch;  // analytic mode: parameter CSV to annotate

  void validate() const;  // throws std::invalid_argument
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_number(line) {}
  int line_number;
};

ExperimentConfig default_config();

/// Parse flat key=value text ('#' comments, blank lines allowed) on top of
/// the given base config.  Unknown keys and malformed values raise
/// ConfigError with the offending line number.
ExperimentConfig parse_config_text(const std::string& text,
                                   ExperimentConfig base = default_config());

ExperimentConfig parse_config_file(const std::string& path,
                                   ExperimentConfig base = default_config());

/// Set one key from its textual value (same names as the config file).
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

}  // namespace relaysec
