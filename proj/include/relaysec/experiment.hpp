#pragma once

#include <iosfwd>
#include <string>

#include "relaysec/analytic.hpp"
#include "relaysec/config.hpp"
#include "relaysec/simulator.hpp"

namespace relaysec {

ChannelParams channel_from(const ExperimentConfig& cfg);
PolicyParams policy_from(const ExperimentConfig& cfg);

/// Deterministic number formatting used in every CSV cell.
std::string format_number(double v);

/// One standard deviation of the simulated end-to-end SOP around its
/// analytic value at the given slot budget (delta method over the two
/// conditional outage frequencies with expected per-hop slot counts).
double sop_e2e_sigma(const MetricSet& analytic, std::uint64_t slots);

/// Set a numeric parameter by config-file key (sweep axis support).
void set_numeric_param(ExperimentConfig& cfg, const std::string& key, double v);

// Mode writers; each emits a provenance comment, a header row and data rows.
void write_simulate(const ExperimentConfig& cfg, std::ostream& os);
void write_analytic(const ExperimentConfig& cfg, std::ostream& os);
void write_optimize(const ExperimentConfig& cfg, std::ostream& os);
void write_sweep(const ExperimentConfig& cfg, std::ostream& os);
void write_validate(const ExperimentConfig& cfg, std::ostream& os);

/// Run the configured experiment, writing CSV to cfg.out (or stdout).
/// Returns a process exit status; configuration problems print a
/// machine-readable "error: ..." line and return nonzero.
int run_experiment(const ExperimentConfig& cfg);

}  // namespace relaysec
