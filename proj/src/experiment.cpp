#include "relaysec/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "relaysec/problems.hpp"

namespace relaysec {

ChannelParams channel_from(const ExperimentConfig& cfg) {
  ChannelParams ch;
  ch.mean_ar = mean_snr_from_db(cfg.gamma_ar_db);
  ch.mean_rb = mean_snr_from_db(cfg.gamma_rb_db);
  ch.mean_ae = mean_snr_from_db(cfg.gamma_ae_db);
  ch.mean_re = mean_snr_from_db(cfg.gamma_re_db);
  return ch;
}

PolicyParams policy_from(const ExperimentConfig& cfg) {
  PolicyParams p;
  p.alpha = cfg.alpha;
  p.beta = cfg.beta;
  p.rate_secret = cfg.r_s;
  p.rate_fixed = cfg.r_a;
  p.mode = cfg.mechanism == "fixed" ? Mode::Fixed : Mode::Adaptive;
  return p;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double sop_e2e_sigma(const MetricSet& an, std::uint64_t slots) {
  const double n1 = std::max(an.rho_a * static_cast<double>(slots), 1.0);
  const double n2 = std::max(an.rho_r * static_cast<double>(slots), 1.0);
  const double s1 = std::sqrt(an.sop_hop1 * (1.0 - an.sop_hop1) / n1);
  const double s2 = std::sqrt(an.sop_hop2 * (1.0 - an.sop_hop2) / n2);
  return std::hypot((1.0 - an.sop_hop2) * s1, (1.0 - an.sop_hop1) * s2);
}

void set_numeric_param(ExperimentConfig& cfg, const std::string& key, double v) {
  if (key == "alpha") cfg.alpha = v;
  else if (key == "beta") cfg.beta = v;
  else if (key == "r_s") cfg.r_s = v;
  else if (key == "r_a") cfg.r_a = v;
  else if (key == "mu") cfg.mu = v;
  else if (key == "nu") cfg.nu = v;
  else if (key == "theta") cfg.theta = v;
  else if (key == "gamma_ar_db") cfg.gamma_ar_db = v;
  else if (key == "gamma_rb_db") cfg.gamma_rb_db = v;
  else if (key == "gamma_ae_db") cfg.gamma_ae_db = v;
  else if (key == "gamma_re_db") cfg.gamma_re_db = v;
  else throw std::invalid_argument("not a sweepable numeric key: " + key);
}

namespace {

constexpr const char* kMetricHeader =
    "rho_a,rho_a_ci,rho_r,rho_r_ci,rho_id,rho_id_ci,"
    "sop1,sop1_ci,sop2,sop2_ci,sop_e2e,sop_e2e_ci,"
    "tau_ar,tau_ar_ci,tau_rb,tau_rb_ci,soct,soct_ci";

constexpr const char* kEchoHeader =
    "mechanism,gamma_ar_db,gamma_rb_db,gamma_ae_db,gamma_re_db,"
    "alpha,beta,r_s,r_a,n_slots,replications,seed";

void check_probability(double v, const char* what) {
  if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) {
    throw std::logic_error(std::string("metric out of range before write: ") + what);
  }
}

void check_partition(double a, double r, double id) {
  if (std::abs(a + r + id - 1.0) > 1e-9) {
    throw std::logic_error("rho partition identity violated before write");
  }
}

std::string echo_cells(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << cfg.mechanism << ',' << format_number(cfg.gamma_ar_db) << ','
     << format_number(cfg.gamma_rb_db) << ',' << format_number(cfg.gamma_ae_db)
     << ',' << format_number(cfg.gamma_re_db) << ',' << format_number(cfg.alpha)
     << ',' << format_number(cfg.beta) << ',' << format_number(cfg.r_s) << ','
     << format_number(cfg.r_a) << ',' << cfg.n_slots << ',' << cfg.replications
     << ',' << cfg.seed;
  return os.str();
}

std::string metric_cells(const SimEstimates& e) {
  check_partition(e.rho_a.value, e.rho_r.value, e.rho_id.value);
  for (const Estimate* p : {&e.rho_a, &e.rho_r, &e.rho_id, &e.sop_hop1,
                            &e.sop_hop2, &e.sop_e2e}) {
    check_probability(p->value, "probability estimate");
  }
  std::ostringstream os;
  for (const Estimate* p :
       {&e.rho_a, &e.rho_r, &e.rho_id, &e.sop_hop1, &e.sop_hop2, &e.sop_e2e,
        &e.tau_ar, &e.tau_rb, &e.soct}) {
    os << format_number(p->value) << ',' << format_number(p->ci) << ',';
  }
  std::string s = os.str();
  s.pop_back();
  return s;
}

std::string metric_cells(const MetricSet& m) {
  check_partition(m.rho_a, m.rho_r, m.rho_id);
  for (double v : {m.rho_a, m.rho_r, m.rho_id, m.sop_hop1, m.sop_hop2, m.sop_e2e}) {
    check_probability(v, "analytic probability");
  }
  std::ostringstream os;
  for (double v : {m.rho_a, m.rho_r, m.rho_id, m.sop_hop1, m.sop_hop2,
                   m.sop_e2e, m.tau_ar, m.tau_rb, m.soct}) {
    os << format_number(v) << ",0,";
  }
  std::string s = os.str();
  s.pop_back();
  return s;
}

void provenance(const ExperimentConfig& cfg, std::ostream& os) {
  os << "# relaysec mode=" << to_string(cfg.mode)
     << " mechanism=" << cfg.mechanism << " gamma_ar_db=" << cfg.gamma_ar_db
     << " gamma_rb_db=" << cfg.gamma_rb_db << " gamma_ae_db=" << cfg.gamma_ae_db
     << " gamma_re_db=" << cfg.gamma_re_db << " alpha=" << cfg.alpha
     << " beta=" << cfg.beta << " r_s=" << cfg.r_s << " r_a=" << cfg.r_a
     << " problem=" << cfg.problem << " mu=" << cfg.mu << " nu=" << cfg.nu
     << " theta=" << cfg.theta << " n_slots=" << cfg.n_slots
     << " replications=" << cfg.replications << " seed=" << cfg.seed;
  if (!cfg.sweep_param.empty()) {
    os << " sweep=" << cfg.sweep_param << ':' << cfg.sweep_start << ".."
       << cfg.sweep_stop << 'x' << cfg.sweep_steps << " target="
       << cfg.sweep_target;
  }
  os << '\n';
}

MetricSet analytic_metrics(const ExperimentConfig& cfg) {
  const ChannelParams ch = channel_from(cfg);
  if (cfg.mechanism == "fixed") {
    return evaluate_fixed(ch, cfg.alpha, cfg.beta, cfg.r_a, cfg.r_s);
  }
  return evaluate_adaptive(ch, cfg.alpha, cfg.beta, cfg.r_s);
}

std::string simulate_row(const ExperimentConfig& cfg) {
  SimConfig sc;
  sc.channel = channel_from(cfg);
  sc.policy = policy_from(cfg);
  sc.n_slots = cfg.n_slots;
  sc.seed = cfg.seed;
  sc.replications = cfg.replications;
  const SimEstimates est = run(sc);
  return echo_cells(cfg) + "," + metric_cells(est);
}

std::string optimize_header() {
  return "problem,branch,mu,nu,theta,r_a,alpha,beta,r_s,objective,"
         "soct,sop_e2e,rho_id,tau_ar,tau_rb,min_residual,residuals,iterations,status";
}

std::string optimize_row(const ExperimentConfig& cfg) {
  const ProblemKind kind = problem_kind_from_string(cfg.problem);
  ProblemConstants consts;
  consts.sop_cap = cfg.mu;
  consts.idle_cap = cfg.nu;
  consts.soc_floor = cfg.theta;
  consts.rate_fixed = cfg.r_a;
  const ChannelParams ch = channel_from(cfg);
  const PolicyOptimum opt = optimize_policy(kind, ch, consts);

  std::ostringstream os;
  os << cfg.problem << ',';
  if (!opt.feasible) {
    os << "none," << format_number(cfg.mu) << ',' << format_number(cfg.nu) << ','
       << format_number(cfg.theta) << ',' << format_number(cfg.r_a)
       << ",0,0,0,0,0,0,0,0,0,0,,0,infeasible";
    return os.str();
  }

  const Vec& x = opt.result.x;
  MetricSet m = is_fixed_rate(kind)
                    ? evaluate_fixed(ch, x[0], x[1], cfg.r_a, x[2])
                    : evaluate_adaptive(ch, x[0], x[1], x[2]);
  double min_res = 1e300;
  std::string res_list;
  for (double r : opt.result.residuals) {
    min_res = std::min(min_res, r);
    if (!res_list.empty()) res_list += ';';
    res_list += format_number(r);
  }
  const char* branch = opt.branch == FixedBranch::BelowGate   ? "below"
                       : opt.branch == FixedBranch::AboveGate ? "above"
                                                              : "none";
  const char* status =
      opt.result.status == SolveStatus::Converged ? "converged" : "max_iter";
  os << branch << ',' << format_number(cfg.mu) << ',' << format_number(cfg.nu)
     << ',' << format_number(cfg.theta) << ',' << format_number(cfg.r_a) << ','
     << format_number(x[0]) << ',' << format_number(x[1]) << ','
     << format_number(x[2]) << ',' << format_number(opt.result.objective) << ','
     << format_number(m.soct) << ',' << format_number(m.sop_e2e) << ','
     << format_number(m.rho_id) << ',' << format_number(m.tau_ar) << ','
     << format_number(m.tau_rb) << ',' << format_number(min_res) << ','
     << res_list << ',' << opt.result.iterations << ',' << status;
  return os.str();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace

void write_simulate(const ExperimentConfig& cfg, std::ostream& os) {
  const std::string row = simulate_row(cfg);
  provenance(cfg, os);
  os << kEchoHeader << ',' << kMetricHeader << '\n';
  os << row << '\n';
}

void write_analytic(const ExperimentConfig& cfg, std::ostream& os) {
  if (cfg.batch.empty()) {
    // Evaluate before emitting anything so errors leave no partial output.
    const std::string row =
        echo_cells(cfg) + "," + metric_cells(analytic_metrics(cfg));
    provenance(cfg, os);
    os << kEchoHeader << ',' << kMetricHeader << '\n';
    os << row << '\n';
    return;
  }
  provenance(cfg, os);
  {
    std::ifstream in(cfg.batch);
    if (!in) throw std::runtime_error("cannot open batch file: " + cfg.batch);
    std::string line;
    bool header = true;
    std::vector<std::string> keys;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (header) {
        keys = split_csv(line);
        os << line << ',' << kMetricHeader << '\n';
        header = false;
        continue;
      }
      const auto cells = split_csv(line);
      if (cells.size() != keys.size()) {
        throw std::runtime_error("batch row width mismatch: " + line);
      }
      ExperimentConfig row = cfg;
      for (std::size_t i = 0; i < keys.size(); ++i) {
        apply_override(row, keys[i], cells[i]);
      }
      const std::string metrics = metric_cells(analytic_metrics(row));
      os << line << ',' << metrics << '\n';
    }
  }
}

void write_optimize(const ExperimentConfig& cfg, std::ostream& os) {
  provenance(cfg, os);
  os << optimize_header() << '\n';
  os << optimize_row(cfg) << '\n';
}

void write_sweep(const ExperimentConfig& cfg, std::ostream& os) {
  provenance(cfg, os);
  std::vector<ExperimentConfig> points;
  for (int i = 0; i < cfg.sweep_steps; ++i) {
    ExperimentConfig pt = cfg;
    const double v = cfg.sweep_start + (cfg.sweep_stop - cfg.sweep_start) * i /
                                           (cfg.sweep_steps - 1);
    set_numeric_param(pt, cfg.sweep_param, v);
    pt.seed = cfg.seed + 1000003ull * static_cast<std::uint64_t>(i);
    points.push_back(pt);
  }
  if (cfg.sweep_target == "optimize") {
    os << "sweep_value," << optimize_header() << '\n';
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double v = cfg.sweep_start + (cfg.sweep_stop - cfg.sweep_start) *
                                             static_cast<double>(i) /
                                             (cfg.sweep_steps - 1);
      os << format_number(v) << ',' << optimize_row(points[i]) << '\n';
    }
    return;
  }
  os << kEchoHeader << ',' << kMetricHeader << '\n';
  for (const ExperimentConfig& pt : points) {
    const std::string row =
        cfg.sweep_target == "simulate"
            ? simulate_row(pt)
            : echo_cells(pt) + "," + metric_cells(analytic_metrics(pt));
    os << row << '\n';
  }
}

void write_validate(const ExperimentConfig& cfg, std::ostream& os) {
  provenance(cfg, os);
  os << "mechanism,r_a,r_s,sim_sop_e2e,analytic_sop_e2e,abs_diff,sigma3,status\n";

  std::vector<double> rs_values;
  if (cfg.sweep_param == "r_s" && cfg.sweep_steps >= 2) {
    for (int i = 0; i < cfg.sweep_steps; ++i) {
      rs_values.push_back(cfg.sweep_start + (cfg.sweep_stop - cfg.sweep_start) *
                                                i / (cfg.sweep_steps - 1));
    }
  } else {
    rs_values = {0.5, 1.0, 1.5, 2.0, 2.5};
  }

  struct Case {
    const char* mechanism;
    double r_a;  // 0 for adaptive
  };
  // One adaptive case plus both fixed-rate regimes: the decoding gate above
  // alpha and the gate exactly at alpha.
  const std::vector<Case> cases = {
      {"adaptive", 0.0},
      {"fixed", cfg.r_a},
      {"fixed", std::log2(1.0 + cfg.alpha)},
  };

  int row = 0;
  for (const Case& c : cases) {
    for (double rs : rs_values) {
      ExperimentConfig pt = cfg;
      pt.mechanism = c.mechanism;
      pt.r_s = rs;
      if (c.r_a > 0.0) pt.r_a = c.r_a;
      pt.seed = cfg.seed + 1000003ull * static_cast<std::uint64_t>(row++);

      const MetricSet an = analytic_metrics(pt);
      SimConfig sc;
      sc.channel = channel_from(pt);
      sc.policy = policy_from(pt);
      sc.n_slots = pt.n_slots;
      sc.seed = pt.seed;
      sc.replications = pt.replications;
      const SimEstimates est = run(sc);

      const double sigma3 = 3.0 * sop_e2e_sigma(an, est.slots);
      const double diff = std::abs(est.sop_e2e.value - an.sop_e2e);
      os << c.mechanism << ',' << format_number(c.r_a) << ','
         << format_number(rs) << ',' << format_number(est.sop_e2e.value) << ','
         << format_number(an.sop_e2e) << ',' << format_number(diff) << ','
         << format_number(sigma3) << ',' << (diff <= sigma3 ? "PASS" : "FAIL")
         << '\n';
    }
  }
}

int run_experiment(const ExperimentConfig& cfg) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  try {
    cfg.validate();
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output path: " + cfg.out);
      os = &file;
    }
    switch (cfg.mode) {
      case RunMode::Simulate: write_simulate(cfg, *os); break;
      case RunMode::Analytic: write_analytic(cfg, *os); break;
      case RunMode::Optimize: write_optimize(cfg, *os); break;
      case RunMode::Sweep: write_sweep(cfg, *os); break;
      case RunMode::Validate: write_validate(cfg, *os); break;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace relaysec
