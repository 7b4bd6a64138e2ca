#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "scatcert/trial_profile.hpp"

using namespace scatcert;
using doctest::Approx;

TEST_CASE("cos2 bump constants") {
  const auto p = build_trial_profile(ProfileKind::cos2_bump);
  CHECK(p.amplitude() * p.amplitude() == Approx(oracle::cos2::amplitude_sq).epsilon(1e-13));
  CHECK(p.norm2_sq == Approx(1.0).epsilon(1e-13));
  CHECK(p.norm4_4 == Approx(oracle::cos2::norm4_4).epsilon(1e-12));
  CHECK(p.lap_neg_l1 == Approx(oracle::cos2::lap_neg_l1).epsilon(1e-11));
  CHECK(p.kinetic == Approx(oracle::cos2::kinetic).epsilon(1e-12));
  CHECK(p.norm_inf_sq == Approx(oracle::cos2::amplitude_sq).epsilon(1e-13));
  for (double r : {0.1, 0.4, 0.9}) {
    CHECK(p.g0(r) == Approx(oracle::cos2::g(r)).epsilon(1e-13));
    CHECK(p.g0_prime(r) == Approx(oracle::cos2::gp(r)).epsilon(1e-13));
  }
  CHECK(p.g0(1.0) == Approx(0.0).scale(1.0));
  CHECK(p.g0(1.5) == 0.0);
}

TEST_CASE("kinetic integral by independent quadrature") {
  const double kin = oracle::radial([](double r) { return oracle::cos2::gp(r) * oracle::cos2::gp(r); }, 0, 1);
  CHECK(kin == Approx(oracle::cos2::kinetic).epsilon(1e-12));
  // g Delta g integrates to -kinetic, so its negative part dominates it
  const auto p = build_trial_profile(ProfileKind::cos2_bump);
  const double gl = oracle::radial([&](double r) { return p.g0(r) * p.laplacian(r); }, 0, 1);
  CHECK(gl == Approx(-oracle::cos2::kinetic).epsilon(1e-10));
  CHECK(p.lap_neg_l1 >= p.kinetic);
}

TEST_CASE("quartic bump") {
  const auto p = build_trial_profile(ProfileKind::quartic_bump);
  CHECK(p.amplitude() * p.amplitude() == Approx(oracle::quartic_amplitude_sq).epsilon(1e-13));
  CHECK(p.norm2_sq == Approx(1.0).epsilon(1e-13));
  const double lap_neg = oracle::radial(
      [&](double r) { return std::max(0.0, -p.g0(r) * p.laplacian(r)); }, 0, 1);
  CHECK(p.lap_neg_l1 == Approx(lap_neg).epsilon(1e-8));
}

TEST_CASE("scaled norms") {
  const auto p = build_trial_profile(ProfileKind::cos2_bump);
  for (double L : {2.0, 10.0, 1000.0}) {
    CHECK(p.norm4_4_at(L) == Approx(p.norm4_4 / (L * L * L)).epsilon(1e-15));
    CHECK(p.norm_inf_sq_at(L) == Approx(p.norm_inf_sq / (L * L * L)).epsilon(1e-15));
    CHECK(p.lap_neg_l1_at(L) == Approx(p.lap_neg_l1 / (L * L)).epsilon(1e-15));
  }
}

TEST_CASE("radial sampler inverts the distribution") {
  const auto p = build_trial_profile(ProfileKind::cos2_bump);
  for (double u : {1e-6, 0.1, 0.5, 0.9, 1 - 1e-9}) {
    const double r = p.sample_unit_radius(u);
    const double cdf = oracle::radial([&](double s) { return p.g0(s) * p.g0(s); }, 0, r);
    CHECK(cdf == Approx(u).epsilon(1e-9));
  }
  double last = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double r = p.sample_unit_radius(i / 1000.0);
    CHECK(r > last);
    last = r;
  }
}
