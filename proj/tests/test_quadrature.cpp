#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "relaysec/analytic.hpp"
#include "relaysec/quadrature.hpp"

using namespace relaysec;

namespace {

ChannelParams reference_channel() {
  ChannelParams ch;
  ch.mean_ar = mean_snr_from_db(5.0);
  ch.mean_rb = mean_snr_from_db(10.0);
  ch.mean_ae = mean_snr_from_db(0.0);
  ch.mean_re = mean_snr_from_db(2.0);
  return ch;
}

constexpr double one(double) { return 1.0; }

}  // namespace

TEST_CASE("basic integrator on a polynomial") {
  auto r = quad::integrate([](double x) { return x * x; }, 0.0, 3.0, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("separable joint event: first SNR above, second below") {
  // Pr[X >= 1] * Pr[Y < 1] with unit means: exp(-1)(1 - exp(-1)).
  const double above = quad::exp_tail(one, 1.0, 1.0, 1e-10).value;
  const double below = quad::exp_range(one, 1.0, 0.0, 1.0, 1e-10).value;
  CHECK(above * below == doctest::Approx(0.2325441579).epsilon(1e-7));
}

TEST_CASE("idle-region probability matches the product form") {
  const ChannelParams ch = reference_channel();
  const double got = oracle::rho_id_adaptive(ch, 7.0, 8.0, 1e-9);
  CHECK(std::abs(got - adaptive_rho_id(ch, 7.0, 8.0)) < 1e-7);
}

TEST_CASE("quadrature agrees with the adaptive closed forms") {
  const ChannelParams ch = reference_channel();
  for (double al : {2.0, 7.0}) {
    for (double be : {4.0, 8.0}) {
      for (double rs : {0.5, 1.0}) {
        CAPTURE(al);
        CAPTURE(be);
        CAPTURE(rs);
        CHECK(oracle::rho_a_adaptive(ch, al, be) ==
              doctest::Approx(adaptive_rho_a(ch, al, be)).epsilon(1e-7));
        CHECK(oracle::rho_r_adaptive(ch, al, be) ==
              doctest::Approx(adaptive_rho_r(ch, al, be)).epsilon(1e-7));
        CHECK(oracle::sop_hop1_adaptive(ch, al, be, rs) ==
              doctest::Approx(adaptive_sop_hop1(ch, al, be, rs)).epsilon(1e-6));
        CHECK(oracle::sop_hop2_adaptive(ch, al, be, rs) ==
              doctest::Approx(adaptive_sop_hop2(ch, al, be, rs)).epsilon(1e-6));
        CHECK(oracle::tau_ar_adaptive(ch, al, be, rs) ==
              doctest::Approx(adaptive_tau_ar(ch, al, be, rs)).epsilon(1e-6));
        CHECK(oracle::tau_rb_adaptive(ch, al, be, rs) ==
              doctest::Approx(adaptive_tau_rb(ch, al, be, rs)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("quadrature agrees with the fixed-rate closed forms") {
  const ChannelParams ch = reference_channel();
  for (double ra : {3.0, 4.0}) {
    for (double al : {2.0, 7.0, 20.0}) {
      for (double be : {4.0, 8.0}) {
        CAPTURE(ra);
        CAPTURE(al);
        CAPTURE(be);
        CHECK(oracle::rho_a_fixed(ch, al, be, ra) ==
              doctest::Approx(fixed_rho_a(ch, al, be, ra)).epsilon(1e-7));
        CHECK(oracle::rho_r_fixed(ch, al, be, ra) ==
              doctest::Approx(fixed_rho_r(ch, al, be, ra)).epsilon(1e-7));
        CHECK(oracle::rho_id_fixed(ch, al, be, ra) ==
              doctest::Approx(fixed_rho_id(ch, al, be, ra)).epsilon(1e-7));
        CHECK(oracle::sop_hop2_fixed(ch, al, be, ra, 1.0) ==
              doctest::Approx(fixed_sop_hop2(ch, al, be, ra, 1.0)).epsilon(1e-6));
        CHECK(oracle::tau_rb_fixed(ch, al, be, ra, 1.0) ==
              doctest::Approx(fixed_tau_rb(ch, al, be, ra, 1.0)).epsilon(1e-6));
        CHECK(oracle::tau_ar_fixed(ch, al, be, ra, 1.0) ==
              doctest::Approx(fixed_tau_ar(ch, al, be, ra, 1.0)).epsilon(1e-6));
      }
    }
  }
  CHECK(oracle::sop_hop1_fixed(reference_channel().mean_ae, 4.0, 1.0) ==
        doctest::Approx(std::exp(-7.0)).epsilon(1e-9));
}

TEST_CASE("vanishing secret rate limit agrees with quadrature") {
  const ChannelParams ch = reference_channel();
  const double closed = adaptive_sop_hop1(ch, 7.0, 8.0, 1e-9);
  const double numeric = oracle::sop_hop1_adaptive(ch, 7.0, 8.0, 1e-9);
  CHECK(std::abs(closed - numeric) < 1e-6);
}

TEST_CASE("non-convergence is reported with the achieved tolerance") {
  // An oscillation far too fast for the interval budget.
  auto wave = [](double x) { return std::sin(400.0 * x); };
  auto r = quad::integrate(wave, 0.0, 1.0, 1e-12, /*max_intervals=*/3);
  CHECK_FALSE(r.converged);
  CHECK(r.abs_err > 1e-12);
  const quad::QuadratureError err("wave", r.abs_err);
  CHECK(err.achieved == r.abs_err);
  CHECK(std::string(err.what()).find("achieved tolerance") != std::string::npos);
}
