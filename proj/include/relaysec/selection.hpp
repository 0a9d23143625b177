#pragma once

namespace relaysec {

enum class Mode { Adaptive, Fixed };

/// Link-selection thresholds and coding rates.
struct PolicyParams {
  double alpha = 7.0;        // SNR threshold for the source->relay link (linear)
  double beta = 8.0;         // SNR threshold for the relay->destination link (linear)
  double rate_secret = 1.0;  // confidential-message rate R_s, bits/channel use
  double rate_fixed = 4.0;   // codeword rate R_a in Fixed mode, bits/channel use
  Mode mode = Mode::Adaptive;

  // alpha, beta >= 2^rate_secret - 1 so either selected link can carry the
  // secret rate; Fixed mode additionally needs 0 < rate_secret < rate_fixed.
  bool valid() const;
  void validate() const;  // throws std::invalid_argument
};

/// Per-slot link decision.
enum class Decision : int {
  Idle = -1,        // neither link clears its threshold
  SrcToRelay = 0,   // first hop transmits
  RelayToDst = 1,   // second hop transmits
};

inline int indicator(Decision d) { return static_cast<int>(d); }

/// Decision when the relay feeds the measured first-hop CSI back to the
/// source (source then uses an adaptive codeword rate).  Picks the first hop
/// iff g_ar >= alpha and g_ar/alpha >= g_rb/beta, the second hop iff
/// g_rb >= beta and g_rb/beta > g_ar/alpha, and stays idle otherwise.
/// Non-finite or negative SNRs are rejected.
Decision select_with_feedback(double g_ar, double g_rb, const PolicyParams& p);

/// Decision without CSI feedback (source transmits at the fixed codeword
/// rate).  The first hop additionally requires g_ar >= 2^rate_fixed - 1 so a
/// decoding outage cannot occur; slots where that lifts the effective first-
/// hop threshold above alpha may fall through to the second hop.
Decision select_without_feedback(double g_ar, double g_rb, const PolicyParams& p);

/// Dispatch on p.mode.
Decision select(double g_ar, double g_rb, const PolicyParams& p);

}  // namespace relaysec
