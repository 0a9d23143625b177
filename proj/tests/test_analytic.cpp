#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "relaysec/analytic.hpp"
#include "relaysec/channel.hpp"

using namespace relaysec;

namespace {

ChannelParams unit_channel() {
  return ChannelParams{1.0, 1.0, 1.0, 1.0};
}

ChannelParams reference_channel() {
  ChannelParams ch;
  ch.mean_ar = mean_snr_from_db(5.0);
  ch.mean_rb = mean_snr_from_db(10.0);
  ch.mean_ae = mean_snr_from_db(0.0);
  ch.mean_re = mean_snr_from_db(2.0);
  return ch;
}

// Log-spaced parameter draws for property checks.
struct ParamDraw {
  ChannelParams ch;
  double alpha, beta, rs;
};

ParamDraw random_params(SlotRng& rng) {
  auto logu = [&](double lo, double hi) {
    return lo * std::pow(hi / lo, rng.uniform01());
  };
  ParamDraw d;
  d.ch.mean_ar = logu(0.2, 30.0);
  d.ch.mean_rb = logu(0.2, 30.0);
  d.ch.mean_ae = logu(0.1, 10.0);
  d.ch.mean_re = logu(0.1, 10.0);
  d.alpha = logu(0.05, 40.0);
  d.beta = logu(0.05, 40.0);
  const double cap = std::log2(1.0 + std::min(d.alpha, d.beta));
  d.rs = cap * (0.05 + 0.9 * rng.uniform01());
  return d;
}

}  // namespace

TEST_CASE("selection probabilities at the symmetric unit point") {
  const ChannelParams ch = unit_channel();
  // exp(-1) - exp(-2)/2, cross-checked by Monte Carlo below.
  CHECK(adaptive_rho_a(ch, 1.0, 1.0) == doctest::Approx(0.3002118).epsilon(1e-6));
  CHECK(adaptive_rho_r(ch, 1.0, 1.0) ==
        doctest::Approx(adaptive_rho_a(ch, 1.0, 1.0)).epsilon(1e-12));
  CHECK(adaptive_rho_id(ch, 1.0, 1.0) ==
        doctest::Approx(0.39957640089).epsilon(1e-9));

  // Monte Carlo cross-check of the closed form.
  SlotRng rng(17, 0);
  const int n = 2'000'000;
  int src = 0;
  for (int i = 0; i < n; ++i) {
    const double ga = rng.exponential(1.0);
    const double gb = rng.exponential(1.0);
    if (ga >= 1.0 && ga >= gb) ++src;
  }
  CHECK(std::abs(static_cast<double>(src) / n - 0.3002118) < 0.001);
}

TEST_CASE("selection probability limits") {
  const ChannelParams ch = reference_channel();
  CHECK(adaptive_rho_a(ch, 1e9, 8.0) == doctest::Approx(0.0));
  CHECK(adaptive_rho_r(ch, 7.0, 1e9) == doctest::Approx(0.0));
  CHECK(adaptive_rho_id(ch, 0.0, 8.0) == doctest::Approx(0.0));
  CHECK(adaptive_rho_id(ch, 1e9, 1e9) == doctest::Approx(1.0));
  CHECK_THROWS_AS(adaptive_rho_a(ch, 0.0, 1.0), std::domain_error);
}

TEST_CASE("rho partition identity on random parameters") {
  SlotRng rng(202, 0);
  for (int i = 0; i < 10'000; ++i) {
    const ParamDraw d = random_params(rng);
    const double sa = adaptive_rho_a(d.ch, d.alpha, d.beta) +
                      adaptive_rho_r(d.ch, d.alpha, d.beta) +
                      adaptive_rho_id(d.ch, d.alpha, d.beta);
    REQUIRE(std::abs(sa - 1.0) <= 1e-12);
    const double ra = 0.3 + 5.0 * rng.uniform01();
    const double sf = fixed_rho_a(d.ch, d.alpha, d.beta, ra) +
                      fixed_rho_r(d.ch, d.alpha, d.beta, ra) +
                      fixed_rho_id(d.ch, d.alpha, d.beta, ra);
    REQUIRE(std::abs(sf - 1.0) <= 1e-12);
  }
}

TEST_CASE("end-to-end SOP composition") {
  CHECK(sop_e2e(0.0, 0.0) == 0.0);
  CHECK(sop_e2e(0.1, 0.2) == doctest::Approx(0.28).epsilon(1e-15));
  CHECK(sop_e2e(1.0, 0.3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(sop_e2e(-0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(sop_e2e(0.1, 1.5), std::domain_error);
}

TEST_CASE("conditional outage probabilities at the reference point") {
  const ChannelParams ch = reference_channel();
  // Frozen values, cross-validated by quadrature and simulation elsewhere.
  CHECK(adaptive_sop_hop1(ch, 7.0, 8.0, 1.0) ==
        doctest::Approx(0.0174434492).epsilon(1e-7));
  CHECK(adaptive_sop_hop2(ch, 7.0, 8.0, 1.0) ==
        doctest::Approx(0.0254502868).epsilon(1e-7));
}

TEST_CASE("hop outage vanishes with the eavesdropper") {
  ChannelParams ch = reference_channel();
  ch.mean_ae = 1e-9;
  CHECK(adaptive_sop_hop1(ch, 7.0, 8.0, 1.0) < 1e-12);
  ch = reference_channel();
  ch.mean_re = 1e-9;
  CHECK(adaptive_sop_hop2(ch, 7.0, 8.0, 1.0) < 1e-12);
  CHECK(fixed_sop_hop2(ch, 7.0, 8.0, 4.0, 1.0) < 1e-12);
}

TEST_CASE("hop exchange maps hop-1 onto hop-2 expressions") {
  SlotRng rng(77, 0);
  for (int i = 0; i < 2'000; ++i) {
    const ParamDraw d = random_params(rng);
    ChannelParams sw;
    sw.mean_ar = d.ch.mean_rb;
    sw.mean_rb = d.ch.mean_ar;
    sw.mean_ae = d.ch.mean_re;
    sw.mean_re = d.ch.mean_ae;
    REQUIRE(adaptive_sop_hop1(d.ch, d.alpha, d.beta, d.rs) ==
            doctest::Approx(adaptive_sop_hop2(sw, d.beta, d.alpha, d.rs))
                .epsilon(1e-12));
    REQUIRE(adaptive_tau_ar(d.ch, d.alpha, d.beta, d.rs) ==
            doctest::Approx(adaptive_tau_rb(sw, d.beta, d.alpha, d.rs))
                .epsilon(1e-12));
  }
}

TEST_CASE("throughput limits and bounds") {
  ChannelParams ch = reference_channel();
  ChannelParams quiet = ch;
  quiet.mean_ae = 1e-12;
  quiet.mean_re = 1e-12;
  // No eavesdropper: every transmit slot delivers the secret rate.
  CHECK(adaptive_tau_ar(quiet, 7.0, 8.0, 1.0) ==
        doctest::Approx(adaptive_rho_a(quiet, 7.0, 8.0)).epsilon(1e-12));
  CHECK(adaptive_tau_rb(quiet, 7.0, 8.0, 1.0) ==
        doctest::Approx(adaptive_rho_r(quiet, 7.0, 8.0)).epsilon(1e-12));
  CHECK(fixed_tau_ar(quiet, 7.0, 8.0, 4.0, 1.0) ==
        doctest::Approx(fixed_rho_a(quiet, 7.0, 8.0, 4.0)).epsilon(1e-9));
  CHECK(fixed_tau_rb(quiet, 7.0, 8.0, 4.0, 1.0) ==
        doctest::Approx(fixed_rho_r(quiet, 7.0, 8.0, 4.0)).epsilon(1e-9));

  // Secret rate at its ceiling with a loud eavesdropper: throughput collapses.
  ChannelParams loud = ch;
  loud.mean_ae = 1e6;
  CHECK(adaptive_tau_ar(loud, 3.0, 3.0, 2.0) < 1e-4);
  // Secret rate at the fixed codeword rate: no redundancy left.
  CHECK(fixed_tau_ar(ch, 16.0, 16.0, 4.0, 4.0 - 1e-9) < 1e-9);

  SlotRng rng(31, 0);
  for (int i = 0; i < 2'000; ++i) {
    const ParamDraw d = random_params(rng);
    const double ta = adaptive_tau_ar(d.ch, d.alpha, d.beta, d.rs);
    const double tr = adaptive_tau_rb(d.ch, d.alpha, d.beta, d.rs);
    REQUIRE(ta >= -1e-15);
    REQUIRE(tr >= -1e-15);
    REQUIRE(ta <= d.rs * adaptive_rho_a(d.ch, d.alpha, d.beta) + 1e-12);
    REQUIRE(tr <= d.rs * adaptive_rho_r(d.ch, d.alpha, d.beta) + 1e-12);
  }
}

TEST_CASE("tau_ar splits into below-beta and above-beta parts") {
  SlotRng rng(13, 0);
  for (int i = 0; i < 2'000; ++i) {
    const ParamDraw d = random_params(rng);
    const auto [low, high] = adaptive_tau_ar_split(d.ch, d.alpha, d.beta, d.rs);
    const double whole = adaptive_tau_ar(d.ch, d.alpha, d.beta, d.rs);
    REQUIRE(std::abs(low + high - whole) <= 1e-10);
  }
}

TEST_CASE("fixed-rate hop-1 outage depends only on the rate pair and the "
          "source-eavesdropper mean") {
  CHECK(fixed_sop_hop1(1.0, 4.0, 1.0) ==
        doctest::Approx(9.11881965555e-4).epsilon(1e-9));  // exp(-7)
  CHECK(fixed_sop_hop1(1.0, 30.0, 1.0) < 1e-300);
  CHECK(fixed_sop_hop1(1.0, 1.0, 1.0 - 1e-12) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fixed_sop_hop1(1.0, 1.0, 1.0), std::domain_error);
  ChannelParams ch = reference_channel();
  const double base = fixed_sop_hop1(ch.mean_ae, 4.0, 1.0);
  // The thresholds play no role.
  SlotRng rng(3, 0);
  for (int i = 0; i < 20; ++i) {
    ChannelParams c2 = ch;
    const double al = 0.5 + 10.0 * rng.uniform01();
    const double be = 0.5 + 10.0 * rng.uniform01();
    MetricSet m = evaluate_fixed(c2, std::max(al, 1.0), std::max(be, 1.0), 4.0, 1.0);
    REQUIRE(std::abs(m.sop_hop1 - base) <= 1e-12);
  }
}

TEST_CASE("fixed-rate forms reduce to adaptive ones at and above the gate") {
  const ChannelParams ch = reference_channel();
  // rate_fixed -> 0 drops the gate entirely.
  CHECK(fixed_rho_a(ch, 7.0, 8.0, 1e-12) ==
        doctest::Approx(adaptive_rho_a(ch, 7.0, 8.0)).epsilon(1e-9));
  // alpha at the gate: both branches coincide.
  for (double ra : {2.0, 3.0, 4.0}) {
    const double gate = std::exp2(ra) - 1.0;
    CHECK(fixed_rho_a(ch, gate, 8.0, ra) ==
          doctest::Approx(adaptive_rho_a(ch, gate, 8.0)).epsilon(1e-12));
    CHECK(fixed_rho_r(ch, gate, 8.0, ra) ==
          doctest::Approx(adaptive_rho_r(ch, gate, 8.0)).epsilon(1e-12));
    CHECK(fixed_rho_id(ch, gate, 8.0, ra) ==
          doctest::Approx(adaptive_rho_id(ch, gate, 8.0)).epsilon(1e-12));
  }
  // Above the gate the policies agree, so all hop-2 metrics reduce.
  CHECK(fixed_sop_hop2(ch, 7.0, 8.0, 3.0, 1.0) ==
        doctest::Approx(adaptive_sop_hop2(ch, 7.0, 8.0, 1.0)).epsilon(1e-12));
  CHECK(fixed_tau_rb(ch, 7.5, 8.0, 3.0, 1.0) ==
        doctest::Approx(adaptive_tau_rb(ch, 7.5, 8.0, 1.0)).epsilon(1e-12));
  // Below the gate the idle region factorizes; a zero second-hop threshold
  // kills it (raw form: the public API rejects beta = 0).
  CHECK(raw::fixed_rho_id(ch, 1.0, 0.0, 4.0) == 0.0);
}

TEST_CASE("fixed-rate forms are continuous across the gate") {
  const ChannelParams ch = reference_channel();
  for (double ra : {2.5, 3.0, 4.0}) {
    const double gate = std::exp2(ra) - 1.0;
    const double lo = gate * (1.0 - 1e-10);
    const double hi = gate * (1.0 + 1e-10);
    for (double beta : {3.0, 8.0, 15.0}) {
      CHECK(std::abs(fixed_rho_a(ch, lo, beta, ra) -
                     fixed_rho_a(ch, hi, beta, ra)) < 1e-9);
      CHECK(std::abs(fixed_rho_r(ch, lo, beta, ra) -
                     fixed_rho_r(ch, hi, beta, ra)) < 1e-9);
      CHECK(std::abs(fixed_sop_hop2(ch, lo, beta, ra, 1.0) -
                     fixed_sop_hop2(ch, hi, beta, ra, 1.0)) < 1e-9);
      CHECK(std::abs(fixed_tau_rb(ch, lo, beta, ra, 1.0) -
                     fixed_tau_rb(ch, hi, beta, ra, 1.0)) < 1e-9);
    }
  }
}

TEST_CASE("idle probability grows with either threshold") {
  const ChannelParams ch = reference_channel();
  double prev_a = -1.0;
  for (double al = 0.5; al < 20.0; al *= 1.4) {
    const double v = adaptive_rho_id(ch, al, 8.0);
    REQUIRE(v >= prev_a);
    prev_a = v;
  }
  double prev_b = -1.0;
  for (double be = 0.5; be < 20.0; be *= 1.4) {
    const double v = adaptive_rho_id(ch, 7.0, be);
    REQUIRE(v >= prev_b);
    prev_b = v;
  }
}

TEST_CASE("precondition violations raise domain errors") {
  const ChannelParams ch = reference_channel();
  CHECK_THROWS_AS(adaptive_sop_hop1(ch, 0.5, 8.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(adaptive_tau_rb(ch, 7.0, 0.9, 1.0), std::domain_error);
  CHECK_THROWS_AS(fixed_sop_hop2(ch, 7.0, 8.0, 1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(evaluate_fixed(ch, 7.0, 8.0, 4.0, 4.5), std::domain_error);
}

TEST_CASE("metric sets are internally consistent") {
  const ChannelParams ch = reference_channel();
  const MetricSet a = evaluate_adaptive(ch, 7.0, 8.0, 1.0);
  CHECK(a.rho_a == doctest::Approx(adaptive_rho_a(ch, 7.0, 8.0)).epsilon(1e-15));
  CHECK(a.sop_e2e ==
        doctest::Approx(sop_e2e(a.sop_hop1, a.sop_hop2)).epsilon(1e-15));
  CHECK(a.soct == doctest::Approx(a.rho_r * 1.0).epsilon(1e-15));
  PolicyParams pol;
  pol.mode = Mode::Fixed;
  const MetricSet f = evaluate(ch, pol);
  CHECK(f.sop_hop1 == doctest::Approx(fixed_sop_hop1(ch.mean_ae, 4.0, 1.0)));
}
