#include "relaysec/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace relaysec {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

void check_thresholds(double alpha, double beta) {
  require(alpha > 0.0 && std::isfinite(alpha) && beta > 0.0 && std::isfinite(beta),
          "thresholds must be positive and finite");
}

void check_rate_floor(double alpha, double beta, double rate_secret) {
  check_thresholds(alpha, beta);
  require(rate_secret > 0.0 && std::isfinite(rate_secret),
          "rate_secret must be positive");
  const double floor = std::exp2(rate_secret) - 1.0;
  require(std::min(alpha, beta) >= floor,
          "min(alpha, beta) must be >= 2^rate_secret - 1");
}

void check_fixed_rates(double rate_fixed, double rate_secret) {
  require(rate_fixed > 0.0 && std::isfinite(rate_fixed), "rate_fixed must be positive");
  require(rate_secret > 0.0 && rate_secret < rate_fixed,
          "need 0 < rate_secret < rate_fixed");
}

// Joint probability of {hop-1 selected, hop-1 secrecy outage}.  Factored as
// exp(-alpha/a) * scale so the huge-threshold limit underflows cleanly.
double hop1_outage_mass(const ChannelParams& ch, double alpha, double beta,
                        double rate_secret) {
  const double a = ch.mean_ar, r = ch.mean_rb, e = ch.mean_ae;
  const double t = std::exp2(rate_secret);
  const double k = t * e / (t * e + a);
  const double expo = std::exp(-alpha / a - (alpha + 1.0 - t) / (t * e));
  const double c = r / a + r / (t * e);
  const double bracket = 1.0 - c / (beta / alpha + c) * std::exp(-beta / r);
  return k * expo * bracket;
}

double hop2_outage_mass(const ChannelParams& ch, double alpha, double beta,
                        double rate_secret) {
  ChannelParams swapped;
  swapped.mean_ar = ch.mean_rb;
  swapped.mean_rb = ch.mean_ar;
  swapped.mean_ae = ch.mean_re;
  swapped.mean_re = ch.mean_ae;
  return hop1_outage_mass(swapped, beta, alpha, rate_secret);
}

// Joint probability of {hop-2 selected, outage} restricted to the extra
// region the fixed-rate policy hands to hop 2 when alpha sits below the
// decoding gate 2^rate_fixed - 1 (the wedge alpha < g_ar < gate,
// beta < g_rb < (beta/alpha) g_ar).  Zero at and above the seam.
double fixed_wedge_outage_mass(const ChannelParams& ch, double alpha,
                               double beta, double rate_fixed,
                               double rate_secret) {
  const double gate = std::exp2(rate_fixed) - 1.0;
  if (alpha >= gate) return 0.0;
  const double a = ch.mean_ar, r = ch.mean_rb, e = ch.mean_re;
  const double t = std::exp2(rate_secret);
  const double k = t * e / (t * e + r);
  const double p = std::exp(-beta / r - (beta + 1.0 - t) / (t * e));
  const double f = beta * a / (alpha * r) + beta * a / (alpha * t * e);
  const double d = 1.0 + f;
  const double z = gate / a + beta * gate / (alpha * r) +
                   (beta * gate / alpha + 1.0 - t) / (t * e);
  return k * ((f / d) * p * std::exp(-alpha / a) - p * std::exp(-gate / a) +
              std::exp(-z) / d);
}

}  // namespace

namespace raw {

double adaptive_rho_a(const ChannelParams& ch, double alpha, double beta) {
  const double a = ch.mean_ar, r = ch.mean_rb;
  const double share = alpha * r / (alpha * r + beta * a);
  return std::exp(-alpha / a) * (1.0 - share * std::exp(-beta / r));
}

double adaptive_rho_r(const ChannelParams& ch, double alpha, double beta) {
  const double a = ch.mean_ar, r = ch.mean_rb;
  const double share = beta * a / (beta * a + alpha * r);
  return std::exp(-beta / r) * (1.0 - share * std::exp(-alpha / a));
}

double adaptive_rho_id(const ChannelParams& ch, double alpha, double beta) {
  return (1.0 - std::exp(-alpha / ch.mean_ar)) *
         (1.0 - std::exp(-beta / ch.mean_rb));
}

double adaptive_sop_hop1(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret) {
  // Conditional form with the common exp(-alpha/a) cancelled, stable for
  // arbitrarily large alpha.
  const double a = ch.mean_ar, r = ch.mean_rb, e = ch.mean_ae;
  const double t = std::exp2(rate_secret);
  const double k = t * e / (t * e + a);
  const double expo = std::exp(-(alpha + 1.0 - t) / (t * e));
  const double c = r / a + r / (t * e);
  const double num = 1.0 - c / (beta / alpha + c) * std::exp(-beta / r);
  const double share = alpha * r / (alpha * r + beta * a);
  const double den = 1.0 - share * std::exp(-beta / r);
  return k * expo * num / den;
}

double adaptive_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret) {
  ChannelParams swapped;
  swapped.mean_ar = ch.mean_rb;
  swapped.mean_rb = ch.mean_ar;
  swapped.mean_ae = ch.mean_re;
  swapped.mean_re = ch.mean_ae;
  return raw::adaptive_sop_hop1(swapped, beta, alpha, rate_secret);
}

double adaptive_tau_ar(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret) {
  return (raw::adaptive_rho_a(ch, alpha, beta) -
          hop1_outage_mass(ch, alpha, beta, rate_secret)) *
         rate_secret;
}

double adaptive_tau_rb(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret) {
  return (raw::adaptive_rho_r(ch, alpha, beta) -
          hop2_outage_mass(ch, alpha, beta, rate_secret)) *
         rate_secret;
}

double fixed_rho_a(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed) {
  const double a = ch.mean_ar, r = ch.mean_rb;
  const double gate = std::max(alpha, std::exp2(rate_fixed) - 1.0);
  const double share = alpha * r / (alpha * r + beta * a);
  return std::exp(-gate / a) *
         (1.0 - share * std::exp(-beta * gate / (alpha * r)));
}

double fixed_rho_r(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed) {
  const double a = ch.mean_ar, r = ch.mean_rb;
  const double gate = std::max(alpha, std::exp2(rate_fixed) - 1.0);
  const double share = alpha * r / (alpha * r + beta * a);
  return std::exp(-beta / r) * (1.0 - std::exp(-gate / a)) +
         share * std::exp(-gate / a - beta * gate / (alpha * r));
}

double fixed_rho_id(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed) {
  const double gate = std::max(alpha, std::exp2(rate_fixed) - 1.0);
  return (1.0 - std::exp(-gate / ch.mean_ar)) *
         (1.0 - std::exp(-beta / ch.mean_rb));
}

double fixed_sop_hop1(double mean_ae, double rate_fixed, double rate_secret) {
  return std::exp(-(std::exp2(rate_fixed - rate_secret) - 1.0) / mean_ae);
}

double fixed_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                      double rate_fixed, double rate_secret) {
  const double mass = hop2_outage_mass(ch, alpha, beta, rate_secret) +
                      fixed_wedge_outage_mass(ch, alpha, beta, rate_fixed,
                                              rate_secret);
  const double rho = raw::fixed_rho_r(ch, alpha, beta, rate_fixed);
  if (rho <= 0.0) return 0.0;
  return mass / rho;
}

double fixed_tau_ar(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret) {
  return raw::fixed_rho_a(ch, alpha, beta, rate_fixed) *
         (1.0 - raw::fixed_sop_hop1(ch.mean_ae, rate_fixed, rate_secret)) *
         rate_secret;
}

double fixed_tau_rb(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret) {
  const double mass = hop2_outage_mass(ch, alpha, beta, rate_secret) +
                      fixed_wedge_outage_mass(ch, alpha, beta, rate_fixed,
                                              rate_secret);
  return (raw::fixed_rho_r(ch, alpha, beta, rate_fixed) - mass) * rate_secret;
}

}  // namespace raw

double adaptive_rho_a(const ChannelParams& ch, double alpha, double beta) {
  ch.validate();
  check_thresholds(alpha, beta);
  return raw::adaptive_rho_a(ch, alpha, beta);
}

double adaptive_rho_r(const ChannelParams& ch, double alpha, double beta) {
  ch.validate();
  check_thresholds(alpha, beta);
  return raw::adaptive_rho_r(ch, alpha, beta);
}

double adaptive_rho_id(const ChannelParams& ch, double alpha, double beta) {
  ch.validate();
  require(alpha >= 0.0 && beta >= 0.0, "thresholds must be >= 0");
  return raw::adaptive_rho_id(ch, alpha, beta);
}

double adaptive_sop_hop1(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  return raw::adaptive_sop_hop1(ch, alpha, beta, rate_secret);
}

double adaptive_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  return raw::adaptive_sop_hop2(ch, alpha, beta, rate_secret);
}

double sop_e2e(double p1, double p2) {
  require(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0,
          "per-hop outage probabilities must lie in [0, 1]");
  return 1.0 - (1.0 - p1) * (1.0 - p2);
}

double adaptive_tau_ar(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  return raw::adaptive_tau_ar(ch, alpha, beta, rate_secret);
}

double adaptive_tau_rb(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  return raw::adaptive_tau_rb(ch, alpha, beta, rate_secret);
}

std::pair<double, double> adaptive_tau_ar_split(const ChannelParams& ch,
                                                double alpha, double beta,
                                                double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  const double a = ch.mean_ar, r = ch.mean_rb, e = ch.mean_ae;
  const double t = std::exp2(rate_secret);
  const double k = t * e / (t * e + a);
  // Slots with g_rb < beta: hop 1 needs g_ar above both alpha and the
  // eavesdropper-dependent secrecy threshold.
  const double low = std::exp(-alpha / a) * (1.0 - std::exp(-beta / r)) *
                     (1.0 - k * std::exp(-(alpha + 1.0 - t) / (t * e)));
  // Slots with g_rb >= beta: the ratio test replaces the alpha gate.
  const double win = beta * a / (beta * a + alpha * r);
  const double denom = 1.0 + alpha * r / (beta * a) + alpha * r / (beta * t * e);
  const double high =
      win * std::exp(-beta / r - alpha / a) -
      k * std::exp(-alpha / a - beta / r - (alpha + 1.0 - t) / (t * e)) / denom;
  return {low * rate_secret, high * rate_secret};
}

double fixed_rho_a(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed) {
  ch.validate();
  check_thresholds(alpha, beta);
  require(rate_fixed > 0.0, "rate_fixed must be positive");
  return raw::fixed_rho_a(ch, alpha, beta, rate_fixed);
}

double fixed_rho_r(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed) {
  ch.validate();
  check_thresholds(alpha, beta);
  require(rate_fixed > 0.0, "rate_fixed must be positive");
  return raw::fixed_rho_r(ch, alpha, beta, rate_fixed);
}

double fixed_rho_id(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed) {
  ch.validate();
  check_thresholds(alpha, beta);
  require(rate_fixed > 0.0, "rate_fixed must be positive");
  return raw::fixed_rho_id(ch, alpha, beta, rate_fixed);
}

double fixed_sop_hop1(double mean_ae, double rate_fixed, double rate_secret) {
  require(mean_ae > 0.0 && std::isfinite(mean_ae), "mean_ae must be positive");
  check_fixed_rates(rate_fixed, rate_secret);
  return raw::fixed_sop_hop1(mean_ae, rate_fixed, rate_secret);
}

double fixed_sop_hop2(const ChannelParams& ch, double alpha, double beta,
                      double rate_fixed, double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  check_fixed_rates(rate_fixed, rate_secret);
  return raw::fixed_sop_hop2(ch, alpha, beta, rate_fixed, rate_secret);
}

double fixed_tau_ar(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  check_fixed_rates(rate_fixed, rate_secret);
  return raw::fixed_tau_ar(ch, alpha, beta, rate_fixed, rate_secret);
}

double fixed_tau_rb(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  check_fixed_rates(rate_fixed, rate_secret);
  return raw::fixed_tau_rb(ch, alpha, beta, rate_fixed, rate_secret);
}

MetricSet evaluate_adaptive(const ChannelParams& ch, double alpha, double beta,
                            double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  MetricSet m;
  m.rho_a = raw::adaptive_rho_a(ch, alpha, beta);
  m.rho_r = raw::adaptive_rho_r(ch, alpha, beta);
  m.rho_id = raw::adaptive_rho_id(ch, alpha, beta);
  m.sop_hop1 = raw::adaptive_sop_hop1(ch, alpha, beta, rate_secret);
  m.sop_hop2 = raw::adaptive_sop_hop2(ch, alpha, beta, rate_secret);
  m.sop_e2e = sop_e2e(m.sop_hop1, m.sop_hop2);
  m.tau_ar = raw::adaptive_tau_ar(ch, alpha, beta, rate_secret);
  m.tau_rb = raw::adaptive_tau_rb(ch, alpha, beta, rate_secret);
  m.soct = m.rho_r * rate_secret;
  return m;
}

MetricSet evaluate_fixed(const ChannelParams& ch, double alpha, double beta,
                         double rate_fixed, double rate_secret) {
  ch.validate();
  check_rate_floor(alpha, beta, rate_secret);
  check_fixed_rates(rate_fixed, rate_secret);
  MetricSet m;
  m.rho_a = raw::fixed_rho_a(ch, alpha, beta, rate_fixed);
  m.rho_r = raw::fixed_rho_r(ch, alpha, beta, rate_fixed);
  m.rho_id = raw::fixed_rho_id(ch, alpha, beta, rate_fixed);
  m.sop_hop1 = raw::fixed_sop_hop1(ch.mean_ae, rate_fixed, rate_secret);
  m.sop_hop2 = raw::fixed_sop_hop2(ch, alpha, beta, rate_fixed, rate_secret);
  m.sop_e2e = sop_e2e(m.sop_hop1, m.sop_hop2);
  m.tau_ar = raw::fixed_tau_ar(ch, alpha, beta, rate_fixed, rate_secret);
  m.tau_rb = raw::fixed_tau_rb(ch, alpha, beta, rate_fixed, rate_secret);
  m.soct = m.rho_r * rate_secret;
  return m;
}

MetricSet evaluate(const ChannelParams& ch, const PolicyParams& policy) {
  policy.validate();
  if (policy.mode == Mode::Adaptive) {
    return evaluate_adaptive(ch, policy.alpha, policy.beta, policy.rate_secret);
  }
  return evaluate_fixed(ch, policy.alpha, policy.beta, policy.rate_fixed,
                        policy.rate_secret);
}

}  // namespace relaysec
