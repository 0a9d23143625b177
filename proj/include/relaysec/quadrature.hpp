#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaysec/channel.hpp"

namespace relaysec::quad {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_tol)
      : std::runtime_error(what + " (achieved tolerance " +
                           std::to_string(achieved_tol) + ")"),
        achieved(achieved_tol) {}
  double achieved;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr double kNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813};
inline constexpr double kWeightsK[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785,
    0.169004726639267, 0.140653259715525, 0.104790010322250,
    0.063092092629979, 0.022935322010529};
inline constexpr double kWeightsG[4] = {
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <class F>
void gauss_kronrod(F&& f, double a, double b, double& value, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = kWeightsK[0] * f0;
  double g7 = kWeightsG[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kNodes[i];
    const double fi = f(mid + dx) + f(mid - dx);
    k15 += kWeightsK[i] * fi;
    if (i % 2 == 0) g7 += kWeightsG[i / 2] * fi;
  }
  value = k15 * half;
  err = std::abs((k15 - g7) * half);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute tolerance.
template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                     int max_intervals = 20000) {
  QuadResult out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  struct Seg {
    double a, b, value, err;
  };
  std::vector<Seg> stack;
  {
    double v, e;
    detail::gauss_kronrod(f, a, b, v, e);
    stack.push_back({a, b, v, e});
  }
  const double span = b - a;
  std::vector<Seg> done;
  int used = 1;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    // Local budget proportional to interval length.
    const double budget = abs_tol * (s.b - s.a) / span;
    if (s.err <= budget || used >= max_intervals ||
        (s.b - s.a) < 1e-14 * span) {
      done.push_back(s);
      continue;
    }
    const double mid = 0.5 * (s.a + s.b);
    double v1, e1, v2, e2;
    detail::gauss_kronrod(f, s.a, mid, v1, e1);
    detail::gauss_kronrod(f, mid, s.b, v2, e2);
    used += 2;
    stack.push_back({s.a, mid, v1, e1});
    stack.push_back({mid, s.b, v2, e2});
  }
  for (const Seg& s : done) {
    out.value += s.value;
    out.abs_err += s.err;
  }
  out.converged = out.abs_err <= abs_tol;
  return out;
}

/// Expectation of f against an exponential density with the given mean,
/// restricted to [lo, inf).  Maps the tail onto [0, 1) with
/// x = lo - mean*ln(1 - t), which absorbs the weight exactly:
///   integral = exp(-lo/mean) * int_0^1 f(x(t)) dt.
template <class F>
QuadResult exp_tail(F&& f, double mean, double lo, double abs_tol = 1e-10) {
  const double scale = std::exp(-lo / mean);
  if (scale == 0.0) return {0.0, 0.0, true};
  auto g = [&](double t) { return f(lo - mean * std::log1p(-t)); };
  QuadResult r = integrate(g, 0.0, 1.0, abs_tol / scale);
  r.value *= scale;
  r.abs_err *= scale;
  return r;
}

/// Expectation of f against an exponential density restricted to [lo, hi).
template <class F>
QuadResult exp_range(F&& f, double mean, double lo, double hi,
                     double abs_tol = 1e-10) {
  if (!(hi > lo)) return {0.0, 0.0, true};
  const double scale = std::exp(-lo / mean);
  if (scale == 0.0) return {0.0, 0.0, true};
  const double tmax = -std::expm1(-(hi - lo) / mean);
  auto g = [&](double t) { return f(lo - mean * std::log1p(-t)); };
  QuadResult r = integrate(g, 0.0, tmax, abs_tol / scale);
  r.value *= scale;
  r.abs_err *= scale;
  return r;
}

}  // namespace relaysec::quad

namespace relaysec::oracle {

// Numerical-quadrature versions of every closed-form metric, evaluated as
// nested integrals of the defining events against the exponential SNR
// densities.  Independent of the closed-form algebra; used for
// cross-validation.  All evaluate to the stated absolute tolerance or throw
// QuadratureError with the achieved tolerance.

inline constexpr double kDefaultTol = 1e-9;

double rho_a_adaptive(const ChannelParams&, double alpha, double beta,
                      double tol = kDefaultTol);
double rho_r_adaptive(const ChannelParams&, double alpha, double beta,
                      double tol = kDefaultTol);
double rho_id_adaptive(const ChannelParams&, double alpha, double beta,
                       double tol = kDefaultTol);
double sop_hop1_adaptive(const ChannelParams&, double alpha, double beta,
                         double rate_secret, double tol = kDefaultTol);
double sop_hop2_adaptive(const ChannelParams&, double alpha, double beta,
                         double rate_secret, double tol = kDefaultTol);
double tau_ar_adaptive(const ChannelParams&, double alpha, double beta,
                       double rate_secret, double tol = kDefaultTol);
double tau_rb_adaptive(const ChannelParams&, double alpha, double beta,
                       double rate_secret, double tol = kDefaultTol);

double rho_a_fixed(const ChannelParams&, double alpha, double beta,
                   double rate_fixed, double tol = kDefaultTol);
double rho_r_fixed(const ChannelParams&, double alpha, double beta,
                   double rate_fixed, double tol = kDefaultTol);
double rho_id_fixed(const ChannelParams&, double alpha, double beta,
                    double rate_fixed, double tol = kDefaultTol);
double sop_hop1_fixed(double mean_ae, double rate_fixed, double rate_secret,
                      double tol = kDefaultTol);
double sop_hop2_fixed(const ChannelParams&, double alpha, double beta,
                      double rate_fixed, double rate_secret,
                      double tol = kDefaultTol);
double tau_ar_fixed(const ChannelParams&, double alpha, double beta,
                    double rate_fixed, double rate_secret,
                    double tol = kDefaultTol);
double tau_rb_fixed(const ChannelParams&, double alpha, double beta,
                    double rate_fixed, double rate_secret,
                    double tol = kDefaultTol);

}  // namespace relaysec::oracle
