#include "relaysec/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaysec {

bool PolicyParams::valid() const {
  const double floor = std::exp2(rate_secret) - 1.0;
  if (!(rate_secret > 0.0) || !std::isfinite(rate_secret)) return false;
  if (!(alpha >= floor) || !(beta >= floor)) return false;
  if (!std::isfinite(alpha) || !std::isfinite(beta)) return false;
  if (mode == Mode::Fixed && !(rate_secret < rate_fixed)) return false;
  return true;
}

void PolicyParams::validate() const {
  if (!valid()) {
    throw std::invalid_argument(
        "policy thresholds must satisfy alpha,beta >= 2^rate_secret - 1"
        " (and rate_secret < rate_fixed in Fixed mode)");
  }
}

namespace {

void check_snrs(double g_ar, double g_rb) {
  if (!std::isfinite(g_ar) || !std::isfinite(g_rb) || g_ar < 0.0 || g_rb < 0.0) {
    throw std::invalid_argument("instantaneous SNRs must be finite and >= 0");
  }
}

}  // namespace

Decision select_with_feedback(double g_ar, double g_rb, const PolicyParams& p) {
  check_snrs(g_ar, g_rb);
  // Relative quality g_ar/alpha vs g_rb/beta, cross-multiplied; ties go to
  // the first hop.
  const bool src_better = g_ar * p.beta >= g_rb * p.alpha;
  if (g_ar >= p.alpha && src_better) return Decision::SrcToRelay;
  if (g_rb >= p.beta && !src_better) return Decision::RelayToDst;
  return Decision::Idle;
}

Decision select_without_feedback(double g_ar, double g_rb, const PolicyParams& p) {
  check_snrs(g_ar, g_rb);
  const double hop1_gate = std::max(p.alpha, std::exp2(p.rate_fixed) - 1.0);
  if (g_ar >= hop1_gate) {
    return (g_ar * p.beta >= g_rb * p.alpha) ? Decision::SrcToRelay
                                             : Decision::RelayToDst;
  }
  if (g_rb >= p.beta) return Decision::RelayToDst;
  return Decision::Idle;
}

Decision select(double g_ar, double g_rb, const PolicyParams& p) {
  return p.mode == Mode::Adaptive ? select_with_feedback(g_ar, g_rb, p)
                                  : select_without_feedback(g_ar, g_rb, p);
}

}  // namespace relaysec
