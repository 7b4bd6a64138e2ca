#include "doctest.h"
#include "oracles.hpp"
#include "scatcert/error.hpp"
#include "scatcert/two_body.hpp"

using namespace scatcert;
using doctest::Approx;

TEST_CASE("deep well against the transcendental equation") {
  const auto r = ground_state_energy(RadialPotential::square_well(12, 1));
  const double E = oracle::square_well_E2(12, 1);
  CHECK(E == Approx(-3.12591505553106).epsilon(1e-12));
  CHECK(std::abs(r.E2 - E) <= 1e-7 * std::abs(E));
  CHECK(r.bound_state_exists);
  REQUIRE_FALSE(r.eigenprofile.empty());
  double norm = 0.0;
  for (std::size_t i = 0; i + 1 < r.r.size(); ++i) {
    norm += 0.5 * (r.r[i + 1] - r.r[i]) *
            (r.eigenprofile[i] * r.eigenprofile[i] + r.eigenprofile[i + 1] * r.eigenprofile[i + 1]);
  }
  CHECK(norm == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("threshold at kappa R0 = pi/2") {
  const double threshold = oracle::pi * oracle::pi / 2;
  for (double f : {0.5, 0.9, 0.99}) {
    const auto r = ground_state_energy(RadialPotential::square_well(f * threshold, 1), 200, 20000);
    CHECK_FALSE(r.bound_state_exists);
    CHECK(r.E2 == 0.0);
  }
  for (double f : {1.01, 1.1, 2.0}) {
    const double E = oracle::square_well_E2(f * threshold, 1);
    // keep the wall 20 decay lengths out
    const double r_max = std::max(200.0, 20.0 / std::sqrt(-E / 2));
    const auto r = ground_state_energy(RadialPotential::square_well(f * threshold, 1), r_max,
                                       static_cast<int>(100 * r_max));
    CHECK(r.bound_state_exists);
    CHECK(r.E2 == Approx(E).epsilon(1e-6));
  }
}

TEST_CASE("default box follows weakly bound states") {
  const double V0 = 1.05 * oracle::pi * oracle::pi / 2;
  const auto r = ground_state_energy(RadialPotential::square_well(V0, 1));
  CHECK(r.E2 == Approx(oracle::square_well_E2(V0, 1)).epsilon(1e-6));
}

TEST_CASE("no bound state below threshold and for the zero potential") {
  CHECK(ground_state_energy(RadialPotential::square_well(4, 1)).E2 == 0.0);
  CHECK(ground_state_energy(RadialPotential::zero()).E2 == 0.0);
  CHECK_FALSE(ground_state_energy(RadialPotential::barrier(2, 1)).bound_state_exists);
  CHECK_FALSE(ground_state_energy(RadialPotential::gaussian(1, 1)).bound_state_exists);
}

TEST_CASE("E2 is monotone in the depth") {
  double previous = 0.0;
  for (double V0 = 5.0; V0 <= 40.0; V0 += 5.0) {
    const double E = ground_state_energy(RadialPotential::square_well(V0, 1)).E2;
    CHECK(E <= previous);
    previous = E;
  }
}

TEST_CASE("sturm count") {
  // tridiag(-1, 2, -1), n = 4: eigenvalues 2 - 2 cos(k pi / 5)
  const std::vector<double> d(4, 2.0), e(3, -1.0);
  CHECK(sturm_count(d, e, 0.0) == 0);
  CHECK(sturm_count(d, e, 2.0 - 2.0 * std::cos(oracle::pi / 5) + 1e-12) == 1);
  CHECK(sturm_count(d, e, 2.0) == 2);
  CHECK(sturm_count(d, e, 4.0) == 4);
}

TEST_CASE("box must contain the potential") {
  CHECK_THROWS_AS(ground_state_energy(RadialPotential::square_well(12, 1), 5.0, 1000), Error);
}
