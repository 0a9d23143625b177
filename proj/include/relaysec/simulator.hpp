#pragma once

#include <cstdint>
#include <vector>

#include "relaysec/channel.hpp"
#include "relaysec/selection.hpp"

namespace relaysec {

struct SimConfig {
  ChannelParams channel;
  PolicyParams policy;
  std::uint64_t n_slots = 1'000'000;  // total slot budget across replications
  std::uint64_t seed = 12345;
  int replications = 8;

  void validate() const;
  std::uint64_t slots_per_replication() const;
};

/// Everything observable about one simulated slot.
struct SlotOutcome {
  SnrDraw draw;
  Decision decision = Decision::Idle;
  double rate_codeword = 0.0;  // hop-1: adaptive or fixed rate; hop-2: channel rate
  int outage_hop1 = -1;        // 0/1 when decision == SrcToRelay, else -1
  int outage_hop2 = -1;        // 0/1 when decision == RelayToDst, else -1
  double queue_after = 0.0;    // relay buffer level after the slot, bits
};

/// Point estimate with a 95% confidence half-width from replications.
struct Estimate {
  double value = 0.0;
  double ci = 0.0;
};

struct SimEstimates {
  Estimate rho_a, rho_r, rho_id;
  Estimate sop_hop1, sop_hop2, sop_e2e;
  Estimate tau_ar, tau_rb, soct;
  std::uint64_t slots = 0;
  int replications = 0;
  // True when the tau_ar - tau_rb confidence interval straddles zero, i.e.
  // the run sits at the edge of the non-absorbing queue regime.
  bool absorbing_edge = false;
};

/// Relay buffer update: admit rate_secret bits on a hop-1 slot, drain up to
/// rate_secret on a hop-2 slot, hold otherwise.  Never goes negative.
double evolve_queue(double q_prev, Decision d, double rate_secret);

/// Hop-1 secrecy outage: the eavesdropper capacity eats the rate redundancy,
/// i.e. rate_secret > rate_codeword - log2(1 + g_ae).
bool secrecy_outage_hop1(double rate_codeword, double g_ae, double rate_secret);

/// Hop-2 secrecy outage: rate_secret > log2(1 + g_rb) - log2(1 + g_re).
bool secrecy_outage_hop2(double g_rb, double g_re, double rate_secret);

/// Sequential slot-by-slot simulator for a single stream; owns the relay
/// queue.  The policy sees only the legitimate SNRs; eavesdropper draws feed
/// the outage bookkeeping alone.
class SlotSimulator {
 public:
  SlotSimulator(const ChannelParams& ch, const PolicyParams& policy,
                SlotRng rng);

  SlotOutcome step();

  double queue() const { return queue_; }
  double admitted() const { return admitted_; }
  double drained() const { return drained_; }

 private:
  ChannelParams channel_;
  PolicyParams policy_;
  SlotRng rng_;
  double queue_ = 0.0;
  double admitted_ = 0.0;
  double drained_ = 0.0;
};

/// Per-replication time averages.
struct ReplicationStats {
  std::uint64_t slots = 0;
  double rho_a = 0, rho_r = 0, rho_id = 0;
  double sop_hop1 = 0, sop_hop2 = 0;  // conditional frequencies; 0 if no slots
  double tau_ar = 0, tau_rb = 0, soct = 0;
  std::uint64_t count_hop1 = 0, count_hop2 = 0;
  std::uint64_t outages_hop1 = 0, outages_hop2 = 0;
  double queue_final = 0;
};

ReplicationStats run_replication(const SimConfig& cfg, int replication_index);

/// Monte Carlo estimates; replications run in parallel (OpenMP), each on its
/// own stream, and reduce in replication order so results match run_serial
/// bit for bit.
SimEstimates run(const SimConfig& cfg);

/// Serial reference implementation; identical results to run().
SimEstimates run_serial(const SimConfig& cfg);

/// 97.5% Student-t quantile used for the confidence half-widths.
double student_t_975(int dof);

}  // namespace relaysec
