#include "relaysec/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relaysec {

void SimConfig::validate() const {
  channel.validate();
  policy.validate();
  if (n_slots < 1) throw std::invalid_argument("n_slots must be >= 1");
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (static_cast<std::uint64_t>(replications) > n_slots) {
    throw std::invalid_argument("more replications than slots");
  }
}

std::uint64_t SimConfig::slots_per_replication() const {
  return (n_slots + replications - 1) / replications;
}

double evolve_queue(double q_prev, Decision d, double rate_secret) {
  switch (d) {
    case Decision::SrcToRelay:
      return q_prev + rate_secret;
    case Decision::RelayToDst:
      return std::max(q_prev - rate_secret, 0.0);
    case Decision::Idle:
      return q_prev;
  }
  return q_prev;
}

bool secrecy_outage_hop1(double rate_codeword, double g_ae, double rate_secret) {
  return rate_secret > rate_codeword - std::log2(1.0 + g_ae);
}

bool secrecy_outage_hop2(double g_rb, double g_re, double rate_secret) {
  return rate_secret > std::log2(1.0 + g_rb) - std::log2(1.0 + g_re);
}

SlotSimulator::SlotSimulator(const ChannelParams& ch, const PolicyParams& policy,
                             SlotRng rng)
    : channel_(ch), policy_(policy), rng_(rng) {
  channel_.validate();
  policy_.validate();
}

SlotOutcome SlotSimulator::step() {
  SlotOutcome out;
  out.draw = sample_slot(channel_, rng_);
  out.decision = select(out.draw.ar, out.draw.rb, policy_);

  const double rs = policy_.rate_secret;
  if (out.decision == Decision::SrcToRelay) {
    out.rate_codeword = policy_.mode == Mode::Adaptive
                            ? std::log2(1.0 + out.draw.ar)
                            : policy_.rate_fixed;
    // Selection gates guarantee the codeword rate covers the secret rate.
    if (out.rate_codeword < rs) {
      throw std::logic_error("codeword-rate guarantee violated on hop 1");
    }
    out.outage_hop1 =
        secrecy_outage_hop1(out.rate_codeword, out.draw.ae, rs) ? 1 : 0;
    const double before = queue_;
    queue_ = evolve_queue(queue_, out.decision, rs);
    admitted_ += queue_ - before;
  } else if (out.decision == Decision::RelayToDst) {
    out.rate_codeword = std::log2(1.0 + out.draw.rb);
    if (out.rate_codeword < rs) {
      throw std::logic_error("codeword-rate guarantee violated on hop 2");
    }
    out.outage_hop2 = secrecy_outage_hop2(out.draw.rb, out.draw.re, rs) ? 1 : 0;
    const double before = queue_;
    queue_ = evolve_queue(queue_, out.decision, rs);
    drained_ += before - queue_;
  } else {
    queue_ = evolve_queue(queue_, out.decision, rs);
  }
  out.queue_after = queue_;
  return out;
}

ReplicationStats run_replication(const SimConfig& cfg, int replication_index) {
  const std::uint64_t n = cfg.slots_per_replication();
  SlotSimulator sim(cfg.channel, cfg.policy,
                    SlotRng(cfg.seed, static_cast<std::uint64_t>(replication_index)));
  const double rs = cfg.policy.rate_secret;

  std::uint64_t count_a = 0, count_r = 0;
  std::uint64_t out1 = 0, out2 = 0, safe1 = 0;
  double delivered = 0.0;

  for (std::uint64_t k = 0; k < n; ++k) {
    const double q_before = sim.queue();
    SlotOutcome s = sim.step();
    if (s.decision == Decision::SrcToRelay) {
      ++count_a;
      out1 += static_cast<std::uint64_t>(s.outage_hop1);
      safe1 += static_cast<std::uint64_t>(s.outage_hop1 == 0);
    } else if (s.decision == Decision::RelayToDst) {
      ++count_r;
      out2 += static_cast<std::uint64_t>(s.outage_hop2);
      if (s.outage_hop2 == 0) delivered += std::min(rs, q_before);
    }
    if (s.queue_after < 0.0) throw std::logic_error("negative relay queue");
  }

  // Flow conservation: admitted - drained must equal the final queue level.
  const double residual =
      std::abs(sim.admitted() - sim.drained() - sim.queue());
  if (residual > 1e-6 * std::max(1.0, sim.admitted())) {
    throw std::logic_error("queue accounting identity violated");
  }

  ReplicationStats st;
  st.slots = n;
  const double dn = static_cast<double>(n);
  st.rho_a = static_cast<double>(count_a) / dn;
  st.rho_r = static_cast<double>(count_r) / dn;
  st.rho_id = static_cast<double>(n - count_a - count_r) / dn;
  st.count_hop1 = count_a;
  st.count_hop2 = count_r;
  st.outages_hop1 = out1;
  st.outages_hop2 = out2;
  st.sop_hop1 = count_a ? static_cast<double>(out1) / count_a : 0.0;
  st.sop_hop2 = count_r ? static_cast<double>(out2) / count_r : 0.0;
  st.tau_ar = static_cast<double>(safe1) * rs / dn;
  st.tau_rb = delivered / dn;
  st.soct = static_cast<double>(count_r) * rs / dn;
  st.queue_final = sim.queue();
  return st;
}

double student_t_975(int dof) {
  static constexpr double table[] = {
      0,     12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
      2.262, 2.228,  2.201, 2.179, 2.160, 2.145, 2.131, 2.120, 2.110,
      2.101, 2.093,  2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056,
      2.052, 2.048,  2.045, 2.042};
  if (dof <= 0) return 0.0;
  if (dof <= 30) return table[dof];
  if (dof <= 40) return 2.021;
  if (dof <= 60) return 2.000;
  if (dof <= 120) return 1.980;
  return 1.960;
}

namespace {

Estimate reduce(const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  Estimate e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.value = sum / n;
  if (n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.value) * (x - e.value);
    const double sd = std::sqrt(ss / (n - 1));
    e.ci = student_t_975(n - 1) * sd / std::sqrt(static_cast<double>(n));
  }
  return e;
}

SimEstimates aggregate(const std::vector<ReplicationStats>& reps) {
  const int R = static_cast<int>(reps.size());
  auto collect = [&](auto&& get) {
    std::vector<double> xs(R);
    for (int i = 0; i < R; ++i) xs[i] = get(reps[i]);
    return xs;
  };

  SimEstimates est;
  est.replications = R;
  for (const auto& r : reps) est.slots += r.slots;
  est.rho_a = reduce(collect([](const ReplicationStats& r) { return r.rho_a; }));
  est.rho_r = reduce(collect([](const ReplicationStats& r) { return r.rho_r; }));
  est.rho_id =
      reduce(collect([](const ReplicationStats& r) { return r.rho_id; }));
  est.sop_hop1 =
      reduce(collect([](const ReplicationStats& r) { return r.sop_hop1; }));
  est.sop_hop2 =
      reduce(collect([](const ReplicationStats& r) { return r.sop_hop2; }));
  est.sop_e2e = reduce(collect([](const ReplicationStats& r) {
    return 1.0 - (1.0 - r.sop_hop1) * (1.0 - r.sop_hop2);
  }));
  est.tau_ar =
      reduce(collect([](const ReplicationStats& r) { return r.tau_ar; }));
  est.tau_rb =
      reduce(collect([](const ReplicationStats& r) { return r.tau_rb; }));
  est.soct = reduce(collect([](const ReplicationStats& r) { return r.soct; }));

  Estimate gap = reduce(collect(
      [](const ReplicationStats& r) { return r.tau_ar - r.tau_rb; }));
  est.absorbing_edge = std::abs(gap.value) <= gap.ci;
  return est;
}

}  // namespace

SimEstimates run(const SimConfig& cfg) {
  cfg.validate();
  std::vector<ReplicationStats> reps(cfg.replications);
  std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < cfg.replications; ++i) {
    try {
      reps[i] = run_replication(cfg, i);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return aggregate(reps);
}

SimEstimates run_serial(const SimConfig& cfg) {
  cfg.validate();
  std::vector<ReplicationStats> reps(cfg.replications);
  for (int i = 0; i < cfg.replications; ++i) {
    reps[i] = run_replication(cfg, i);
  }
  return aggregate(reps);
}

}  // namespace relaysec
