#include "relaysec/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace relaysec::oracle {

using quad::QuadratureError;
using quad::QuadResult;

namespace {

double need(const QuadResult& r, const char* what) {
  if (!r.converged) throw QuadratureError(what, r.abs_err);
  return r.value;
}

constexpr double one(double) { return 1.0; }

// Secrecy-outage threshold on the eavesdropper SNR given the legitimate SNR
// g: outage iff g_e > (g + 1 - 2^rs) / 2^rs.  Nonnegative whenever
// g >= 2^rs - 1, which the selection gate guarantees.
double eve_threshold(double g, double pow2_rs) {
  return (g + 1.0 - pow2_rs) / pow2_rs;
}

// Joint mass of {hop-1 selected} x {predicate on the eavesdropper}, with the
// inner eavesdropper factor supplied by the caller.  Splits the outer g_rb
// axis at beta, where the hop-1 SNR gate switches from alpha to the ratio
// line (alpha/beta) g_rb.
template <class EveFactor>
double hop1_mass(const ChannelParams& ch, double alpha, double beta,
                 const EveFactor& eve, double tol) {
  const double a = ch.mean_ar, r = ch.mean_rb;
  auto inner_from = [&](double gate) {
    return need(quad::exp_tail(eve, a, gate, tol * 0.05), "hop-1 inner");
  };
  const double below =
      need(quad::exp_range(one, r, 0.0, beta, tol * 0.1), "hop-1 rb mass") *
      inner_from(alpha);
  const double above = need(
      quad::exp_tail([&](double z) { return inner_from(alpha / beta * z); }, r,
                     beta, tol * 0.1),
      "hop-1 outer");
  return below + above;
}

ChannelParams swap_hops(const ChannelParams& ch) {
  ChannelParams s;
  s.mean_ar = ch.mean_rb;
  s.mean_rb = ch.mean_ar;
  s.mean_ae = ch.mean_re;
  s.mean_re = ch.mean_ae;
  return s;
}

// Mass of the wedge the fixed-rate policy reassigns to hop 2 when
// alpha < 2^rate_fixed - 1, weighted by an eavesdropper factor.
template <class EveFactor>
double wedge_mass(const ChannelParams& ch, double alpha, double beta,
                  double rate_fixed, const EveFactor& eve, double tol) {
  const double gate = std::exp2(rate_fixed) - 1.0;
  if (alpha >= gate) return 0.0;
  const double a = ch.mean_ar, r = ch.mean_rb;
  auto rb_slice = [&](double x) {
    return need(
        quad::exp_range([&](double z) { return eve(z); }, r, beta,
                        beta / alpha * x, tol * 0.05),
        "wedge inner");
  };
  return need(quad::exp_range(rb_slice, a, alpha, gate, tol * 0.1),
              "wedge outer");
}

}  // namespace

double rho_a_adaptive(const ChannelParams& ch, double alpha, double beta,
                      double tol) {
  return hop1_mass(ch, alpha, beta, one, tol);
}

double rho_r_adaptive(const ChannelParams& ch, double alpha, double beta,
                      double tol) {
  return hop1_mass(swap_hops(ch), beta, alpha, one, tol);
}

double rho_id_adaptive(const ChannelParams& ch, double alpha, double beta,
                       double tol) {
  const double pa = need(
      quad::exp_range(one, ch.mean_ar, 0.0, alpha, tol * 0.5), "idle ar");
  const double pr = need(
      quad::exp_range(one, ch.mean_rb, 0.0, beta, tol * 0.5), "idle rb");
  return pa * pr;
}

double sop_hop1_adaptive(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret, double tol) {
  const double t = std::exp2(rate_secret);
  auto outage = [&](double x) {
    return need(quad::exp_tail(one, ch.mean_ae, eve_threshold(x, t), tol * 0.01),
                "eve tail");
  };
  const double mass = hop1_mass(ch, alpha, beta, outage, tol);
  return mass / hop1_mass(ch, alpha, beta, one, tol);
}

double sop_hop2_adaptive(const ChannelParams& ch, double alpha, double beta,
                         double rate_secret, double tol) {
  return sop_hop1_adaptive(swap_hops(ch), beta, alpha, rate_secret, tol);
}

double tau_ar_adaptive(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret, double tol) {
  const double t = std::exp2(rate_secret);
  auto safe = [&](double x) {
    return need(
        quad::exp_range(one, ch.mean_ae, 0.0, eve_threshold(x, t), tol * 0.01),
        "eve range");
  };
  return rate_secret * hop1_mass(ch, alpha, beta, safe, tol);
}

double tau_rb_adaptive(const ChannelParams& ch, double alpha, double beta,
                       double rate_secret, double tol) {
  return tau_ar_adaptive(swap_hops(ch), beta, alpha, rate_secret, tol);
}

double rho_a_fixed(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed, double tol) {
  const double gate = std::max(alpha, std::exp2(rate_fixed) - 1.0);
  const double a = ch.mean_ar, r = ch.mean_rb;
  // The ratio line crosses the gate at g_rb = beta*gate/alpha.
  const double knee = beta * gate / alpha;
  const double below =
      need(quad::exp_range(one, r, 0.0, knee, tol * 0.1), "fixed rb mass") *
      need(quad::exp_tail(one, a, gate, tol * 0.1), "fixed ar tail");
  const double above = need(
      quad::exp_tail(
          [&](double z) {
            return need(quad::exp_tail(one, a, alpha / beta * z, tol * 0.05),
                        "fixed inner");
          },
          r, knee, tol * 0.1),
      "fixed outer");
  return below + above;
}

double rho_r_fixed(const ChannelParams& ch, double alpha, double beta,
                   double rate_fixed, double tol) {
  return rho_r_adaptive(ch, alpha, beta, tol) +
         wedge_mass(ch, alpha, beta, rate_fixed, one, tol);
}

double rho_id_fixed(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double tol) {
  const double gate = std::max(alpha, std::exp2(rate_fixed) - 1.0);
  const double pa = need(
      quad::exp_range(one, ch.mean_ar, 0.0, gate, tol * 0.5), "idle ar");
  const double pr = need(
      quad::exp_range(one, ch.mean_rb, 0.0, beta, tol * 0.5), "idle rb");
  return pa * pr;
}

double sop_hop1_fixed(double mean_ae, double rate_fixed, double rate_secret,
                      double tol) {
  const double thr = std::exp2(rate_fixed - rate_secret) - 1.0;
  return need(quad::exp_tail(one, mean_ae, thr, tol), "fixed hop-1 tail");
}

double sop_hop2_fixed(const ChannelParams& ch, double alpha, double beta,
                      double rate_fixed, double rate_secret, double tol) {
  const ChannelParams sw = swap_hops(ch);
  const double t = std::exp2(rate_secret);
  auto outage = [&](double z) {
    return need(quad::exp_tail(one, ch.mean_re, eve_threshold(z, t), tol * 0.01),
                "eve tail");
  };
  const double mass = hop1_mass(sw, beta, alpha, outage, tol) +
                      wedge_mass(ch, alpha, beta, rate_fixed, outage, tol);
  return mass / rho_r_fixed(ch, alpha, beta, rate_fixed, tol);
}

double tau_ar_fixed(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret, double tol) {
  const double thr = std::exp2(rate_fixed - rate_secret) - 1.0;
  const double safe = need(
      quad::exp_range(one, ch.mean_ae, 0.0, thr, tol * 0.5), "fixed eve range");
  return rate_secret * rho_a_fixed(ch, alpha, beta, rate_fixed, tol) * safe;
}

double tau_rb_fixed(const ChannelParams& ch, double alpha, double beta,
                    double rate_fixed, double rate_secret, double tol) {
  const ChannelParams sw = swap_hops(ch);
  const double t = std::exp2(rate_secret);
  auto safe = [&](double z) {
    return need(
        quad::exp_range(one, ch.mean_re, 0.0, eve_threshold(z, t), tol * 0.01),
        "eve range");
  };
  return rate_secret * (hop1_mass(sw, beta, alpha, safe, tol) +
                        wedge_mass(ch, alpha, beta, rate_fixed, safe, tol));
}

}  // namespace relaysec::oracle
