#pragma once

#include <utility>

#include "relaysec/channel.hpp"
#include "relaysec/selection.hpp"

namespace relaysec {

/// Stationary metrics of a link-selection policy.
struct MetricSet {
  double rho_a = 0.0;     // fraction of slots the source transmits
  double rho_r = 0.0;     // fraction of slots the relay transmits
  double rho_id = 0.0;    // fraction of idle slots
  double sop_hop1 = 0.0;  // secrecy outage probability given hop-1 transmit
  double sop_hop2 = 0.0;  // secrecy outage probability given hop-2 transmit
  double sop_e2e = 0.0;   // end-to-end secrecy outage probability
  double tau_ar = 0.0;    // secret bits/slot arriving at the relay queue
  double tau_rb = 0.0;    // secret bits/slot delivered to the destination
  double soct = 0.0;      // secrecy outage capacity rho_r * rate_secret
};

// ---------------------------------------------------------------------------
// Adaptive-rate mechanism (CSI feedback, codeword rate tracks the channel)
// ---------------------------------------------------------------------------

double adaptive_rho_a(const ChannelParams& ch, double alpha, double beta);
double adaptive_rho_r(const ChannelParams& ch, double alpha, double beta);
double adaptive_rho_id(const ChannelParams& ch, double alpha, double beta);

/// Conditional secrecy outage probabilities per hop.  Require
/// min(alpha, beta) >= 2^rate_secret - 1 so the selected link always covers
/// the secret rate; otherwise std::domain_error.
double adaptive_sop_hop1(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret);
double adaptive_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret);

/// Compose per-hop conditional outage probabilities: 1 - (1-p1)(1-p2).
double sop_e2e(double p1, double p2);

double adaptive_tau_ar(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret);
double adaptive_tau_rb(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret);

/// tau_ar split into the contributions of slots with g_rb below / at-or-above
/// beta.  The two parts sum to adaptive_tau_ar exactly (used as an algebraic
/// self-check).
std::pair<double, double> adaptive_tau_ar_split(const ChannelParams& ch,
                                                double alpha, double beta,
                                                double rate_secret);

// ---------------------------------------------------------------------------
// Fixed-rate mechanism (no CSI feedback, codeword rate rate_fixed on hop 1)
// ---------------------------------------------------------------------------
// Every expression branches on alpha vs 2^rate_fixed - 1 and is continuous
// across that seam; at or above the seam it reduces to the adaptive form.

double fixed_rho_a(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed);
double fixed_rho_r(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed);
double fixed_rho_id(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed);

/// Hop-1 outage under a fixed codeword rate depends only on the
/// source->eavesdropper mean and the rate pair: exp(-(2^(Ra-Rs)-1)/mean_ae).
double fixed_sop_hop1(double mean_ae, double rate_fixed, double rate_secret);

double fixed_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                      double rate_fixed, double rate_secret);

double fixed_tau_ar(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret);
double fixed_tau_rb(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret);

// ---------------------------------------------------------------------------
// Full metric sets
// ---------------------------------------------------------------------------

MetricSet evaluate_adaptive(const ChannelParams& ch, double alpha, double beta,
                            double rate_secret);
MetricSet evaluate_fixed(const ChannelParams& ch, double alpha, double beta,
                         double rate_fixed, double rate_secret);
MetricSet evaluate(const ChannelParams& ch, const PolicyParams& policy);

// Unvalidated evaluators.  These compute the same formulas without the
// precondition checks; the optimizer probes them at slightly infeasible
// points for finite differences.  Results are only meaningful probabilities
// when the public preconditions hold.
namespace raw {
double adaptive_rho_a(const ChannelParams& ch, double alpha, double beta);
double adaptive_rho_r(const ChannelParams& ch, double alpha, double beta);
double adaptive_rho_id(const ChannelParams& ch, double alpha, double beta);
double adaptive_sop_hop1(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret);
double adaptive_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret);
double adaptive_tau_ar(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret);
double adaptive_tau_rb(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret);
double fixed_rho_a(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed);
double fixed_rho_r(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed);
double fixed_rho_id(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed);
double fixed_sop_hop1(double mean_ae, double rate_fixed, double rate_secret);
double fixed_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                      double rate_fixed, double rate_secret);
double fixed_tau_ar(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret);
double fixed_tau_rb(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret);
}  // namespace raw

}  // namespace relaysec
