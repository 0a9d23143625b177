#pragma once

#include <cstdint>
#include <random>

namespace relaysec {

/// Mean SNRs of the four links (linear scale, not dB).
///
/// Transmit powers and noise variances are folded into these means: a link
/// with power P, noise variance d2 and average channel gain W has mean SNR
/// P*W/d2.  Configure that product directly.
struct ChannelParams {
  double mean_ar = 1.0;  // source -> relay
  double mean_rb = 1.0;  // relay  -> destination
  double mean_ae = 1.0;  // source -> eavesdropper
  double mean_re = 1.0;  // relay  -> eavesdropper

  bool valid() const;
  void validate() const;  // throws std::invalid_argument
};

/// Instantaneous per-slot SNRs (linear), one exponential draw per link.
struct SnrDraw {
  double ar = 0.0;
  double rb = 0.0;
  double ae = 0.0;
  double re = 0.0;
};

/// dB -> linear: 10^(db/10).
double mean_snr_from_db(double db);

/// Seedable random stream for one worker.
///
/// Stream derivation is fixed so sequences are portable: the 64-bit master
/// seed is advanced `stream_index + 1` times through SplitMix64 and the
/// result seeds a std::mt19937_64 (both algorithms are fully specified).
/// Exponential variates use the inverse CDF -mean*ln(U) with U drawn as
/// 1 - (x >> 11) * 2^-53, so U lies in (0, 1] and the mapping
/// (seed, stream, call index) -> variate is pure.
class SlotRng {
 public:
  explicit SlotRng(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01();

  /// Exponential with the given mean (mean > 0).
  double exponential(double mean);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// One slot's worth of independent link SNRs, drawn in the fixed order
/// ar, rb, ae, re (four engine calls per slot).
SnrDraw sample_slot(const ChannelParams& params, SlotRng& rng);

}  // namespace relaysec
