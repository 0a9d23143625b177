#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "relaysec/experiment.hpp"

using namespace relaysec;

namespace {

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

int count_cells(const std::string& line) {
  int n = 1;
  for (char c : line) n += c == ',';
  return n;
}

}  // namespace

TEST_CASE("validate output is byte-identical across runs") {
  ExperimentConfig cfg = default_config();
  cfg.mode = RunMode::Validate;
  cfg.n_slots = 100'000;
  std::ostringstream a, b;
  write_validate(cfg, a);
  write_validate(cfg, b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("# relaysec", 0) == 0);
  // 3 cases x 5 secret rates, plus the header.
  CHECK(data_lines(a.str()).size() == 16);
  // A different seed changes the bytes.
  std::ostringstream c;
  cfg.seed += 1;
  write_validate(cfg, c);
  CHECK(a.str() != c.str());
}

TEST_CASE("validate rows pass their own three-sigma gate") {
  ExperimentConfig cfg = default_config();
  cfg.mode = RunMode::Validate;
  cfg.n_slots = 200'000;
  std::ostringstream os;
  write_validate(cfg, os);
  int pass = 0, fail = 0;
  for (const std::string& line : data_lines(os.str())) {
    if (line.find("PASS") != std::string::npos) ++pass;
    if (line.find("FAIL") != std::string::npos) ++fail;
  }
  CHECK(pass == 15);
  CHECK(fail == 0);
}

TEST_CASE("simulate and analytic rows share the column contract") {
  ExperimentConfig cfg = default_config();
  cfg.n_slots = 50'000;
  std::ostringstream sim, ana;
  write_simulate(cfg, sim);
  write_analytic(cfg, ana);
  const auto sim_lines = data_lines(sim.str());
  const auto ana_lines = data_lines(ana.str());
  REQUIRE(sim_lines.size() == 2);
  REQUIRE(ana_lines.size() == 2);
  CHECK(sim_lines[0] == ana_lines[0]);  // identical headers
  CHECK(count_cells(sim_lines[1]) == count_cells(sim_lines[0]));
  CHECK(count_cells(ana_lines[1]) == count_cells(ana_lines[0]));
}

TEST_CASE("batch analytic annotation preserves input columns") {
  const std::string path = "/tmp/relaysec_batch_test.csv";
  {
    std::ofstream f(path);
    f << "alpha,beta,r_s\n7,8,1\n3,4,0.5\n";
  }
  ExperimentConfig cfg = default_config();
  cfg.batch = path;
  std::ostringstream os;
  write_analytic(cfg, os);
  const auto lines = data_lines(os.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("alpha,beta,r_s,rho_a,", 0) == 0);
  CHECK(lines[1].rfind("7,8,1,", 0) == 0);
  CHECK(lines[2].rfind("3,4,0.5,", 0) == 0);
  // Annotated metrics match a direct evaluation.
  const MetricSet m = evaluate_adaptive(channel_from(cfg), 7.0, 8.0, 1.0);
  CHECK(lines[1].find(format_number(m.sop_e2e)) != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("sweep emits one row per point in axis order") {
  ExperimentConfig cfg = default_config();
  cfg.mode = RunMode::Sweep;
  cfg.sweep_param = "r_s";
  cfg.sweep_start = 0.5;
  cfg.sweep_stop = 2.5;
  cfg.sweep_steps = 5;
  std::ostringstream os;
  write_sweep(cfg, os);
  const auto lines = data_lines(os.str());
  REQUIRE(lines.size() == 6);
  double prev = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    // r_s is the 8th echo column.
    std::istringstream in(lines[i]);
    std::string cell;
    for (int j = 0; j < 8; ++j) std::getline(in, cell, ',');
    const double rs = std::stod(cell);
    CHECK(rs > prev);
    prev = rs;
  }
}

TEST_CASE("numeric sweep keys are validated") {
  ExperimentConfig cfg = default_config();
  CHECK_THROWS_AS(set_numeric_param(cfg, "mechanism", 1.0),
                  std::invalid_argument);
  set_numeric_param(cfg, "nu", 0.35);
  CHECK(cfg.nu == 0.35);
}

TEST_CASE("run_experiment reports configuration errors as nonzero status") {
  ExperimentConfig cfg = default_config();
  cfg.mode = RunMode::Sweep;  // missing sweep_param
  CHECK(run_experiment(cfg) == 1);
  cfg = default_config();
  cfg.out = "/nonexistent-dir/x.csv";
  CHECK(run_experiment(cfg) == 1);
}

TEST_CASE("larger slot budgets tighten the three-sigma bound") {
  const MetricSet m = evaluate_adaptive(channel_from(default_config()), 7.0,
                                        8.0, 1.0);
  CHECK(sop_e2e_sigma(m, 4'000'000) ==
        doctest::Approx(0.5 * sop_e2e_sigma(m, 1'000'000)).epsilon(1e-12));
}
