#include "relaysec/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "relaysec/problems.hpp"

namespace relaysec {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Simulate: return "simulate";
    case RunMode::Analytic: return "analytic";
    case RunMode::Optimize: return "optimize";
    case RunMode::Sweep: return "sweep";
    case RunMode::Validate: return "validate";
  }
  return "?";
}

RunMode run_mode_from_string(const std::string& s) {
  for (RunMode m : {RunMode::Simulate, RunMode::Analytic, RunMode::Optimize,
                    RunMode::Sweep, RunMode::Validate}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown mode: " + s);
}

void ExperimentConfig::validate() const {
  if (mechanism != "adaptive" && mechanism != "fixed") {
    throw std::invalid_argument("mechanism must be adaptive or fixed");
  }
  if (sweep_target != "analytic" && sweep_target != "simulate" &&
      sweep_target != "optimize") {
    throw std::invalid_argument("sweep_target must be analytic, simulate or optimize");
  }
  problem_kind_from_string(problem);
  if (mode == RunMode::Sweep) {
    if (sweep_param.empty()) throw std::invalid_argument("sweep_param is required");
    if (sweep_steps < 2) throw std::invalid_argument("sweep needs >= 2 steps");
  }
  if (n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  for (double g : {gamma_ar_db, gamma_rb_db, gamma_ae_db, gamma_re_db}) {
    if (!std::isfinite(g)) throw std::invalid_argument("channel gains must be finite");
  }
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v) {
  std::size_t used = 0;
  double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  return x;
}

std::uint64_t parse_u64(const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = std::stoull(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  return x;
}

int parse_int(const std::string& v) {
  std::size_t used = 0;
  long x = std::stol(v, &used);
  if (used != v.size()) throw std::invalid_argument("trailing characters");
  return static_cast<int>(x);
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "mode") {
    cfg.mode = run_mode_from_string(value);
  } else if (key == "gamma_ar_db") {
    cfg.gamma_ar_db = parse_double(value);
  } else if (key == "gamma_rb_db") {
    cfg.gamma_rb_db = parse_double(value);
  } else if (key == "gamma_ae_db") {
    cfg.gamma_ae_db = parse_double(value);
  } else if (key == "gamma_re_db") {
    cfg.gamma_re_db = parse_double(value);
  } else if (key == "alpha") {
    cfg.alpha = parse_double(value);
  } else if (key == "beta") {
    cfg.beta = parse_double(value);
  } else if (key == "r_s") {
    cfg.r_s = parse_double(value);
  } else if (key == "r_a") {
    cfg.r_a = parse_double(value);
  } else if (key == "mechanism") {
    cfg.mechanism = value;
  } else if (key == "problem") {
    cfg.problem = value;
  } else if (key == "mu") {
    cfg.mu = parse_double(value);
  } else if (key == "nu") {
    cfg.nu = parse_double(value);
  } else if (key == "theta") {
    cfg.theta = parse_double(value);
  } else if (key == "sweep_param") {
    cfg.sweep_param = value;
  } else if (key == "sweep_start") {
    cfg.sweep_start = parse_double(value);
  } else if (key == "sweep_stop") {
    cfg.sweep_stop = parse_double(value);
  } else if (key == "sweep_steps") {
    cfg.sweep_steps = parse_int(value);
  } else if (key == "sweep_target") {
    cfg.sweep_target = value;
  } else if (key == "n_slots") {
    cfg.n_slots = parse_u64(value);
  } else if (key == "replications") {
    cfg.replications = parse_int(value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(value);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "batch") {
    cfg.batch = value;
  } else {
    throw std::invalid_argument("unknown key: " + key);
  }
}

ExperimentConfig parse_config_text(const std::string& text,
                                   ExperimentConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line_no, "expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    try {
      apply_override(base, key, value);
    } catch (const std::exception& e) {
      throw ConfigError(line_no, std::string(e.what()) + " (key '" + key + "')");
    }
  }
  return base;
}

ExperimentConfig parse_config_file(const std::string& path,
                                   ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), base);
}

}  // namespace relaysec
