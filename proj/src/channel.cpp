#include "relaysec/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace relaysec {

bool ChannelParams::valid() const {
  for (double m : {mean_ar, mean_rb, mean_ae, mean_re}) {
    if (!(m > 0.0) || !std::isfinite(m)) return false;
  }
  return true;
}

void ChannelParams::validate() const {
  if (!valid()) {
    throw std::invalid_argument("channel means must be positive and finite");
  }
}

double mean_snr_from_db(double db) { return std::pow(10.0, db / 10.0); }

namespace {

// SplitMix64, used only to derive engine seeds from (master seed, stream).
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

SlotRng::SlotRng(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t state = master_seed;
  std::uint64_t seed = splitmix64(state);
  for (std::uint64_t i = 0; i < stream_index; ++i) seed = splitmix64(state);
  engine_.seed(seed);
}

double SlotRng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SlotRng::exponential(double mean) {
  // U in (0, 1]; excludes 0 so the log stays finite.
  double u = 1.0 - uniform01();
  return -mean * std::log(u);
}

SnrDraw sample_slot(const ChannelParams& params, SlotRng& rng) {
  SnrDraw d;
  d.ar = rng.exponential(params.mean_ar);
  d.rb = rng.exponential(params.mean_rb);
  d.ae = rng.exponential(params.mean_ae);
  d.re = rng.exponential(params.mean_re);
  return d;
}

}  // namespace relaysec
