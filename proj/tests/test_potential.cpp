#include "doctest.h"
#include "oracles.hpp"
#include "scatcert/error.hpp"
#include "scatcert/potential.hpp"

using namespace scatcert;
using doctest::Approx;

TEST_CASE("eval_v on the reference kinds") {
  const auto well = RadialPotential::square_well(4, 1);
  CHECK(eval_v(well, 0.5) == -4.0);
  CHECK(eval_v(well, 2.0) == 0.0);
  CHECK(eval_v(RadialPotential::gaussian(1, 1), 0.0) == -1.0);
  CHECK(eval_v(RadialPotential::barrier(2, 1), 0.3) == 2.0);
  CHECK(eval_v(RadialPotential::zero(), 0.3) == 0.0);

  const auto shell = RadialPotential::square_well(3, 2, 1);
  CHECK(shell(0.5) == 0.0);
  CHECK(shell(1.5) == -3.0);
}

TEST_CASE("norms of the square well and barrier") {
  const auto well = RadialPotential::square_well(4, 1);
  CHECK(l1_norm(well) == Approx(16 * oracle::pi / 3).epsilon(1e-14));
  CHECK(integral_v(well) == Approx(-16 * oracle::pi / 3).epsilon(1e-14));
  CHECK(integral_v(RadialPotential::barrier(2, 1)) == Approx(8 * oracle::pi / 3).epsilon(1e-14));
  CHECK(l1_norm(RadialPotential::zero()) == 0.0);
  CHECK(tail_integral(well, 1.0) == 0.0);
  CHECK(tail_integral(well, 0.5) == Approx(-4 * (4 * oracle::pi / 3) * 0.875).epsilon(1e-14));
}

TEST_CASE("closed forms agree with quadrature") {
  const std::vector<RadialPotential> kinds{
      RadialPotential::square_well(4, 1), RadialPotential::barrier(2, 1.5),
      RadialPotential::gaussian(1, 1), RadialPotential::gaussian(-3, 0.4),
      RadialPotential::square_well(3, 2, 0.7)};
  for (const auto& p : kinds) {
    CAPTURE(to_string(p.kind()));
    CHECK(quadrature_l1_norm(p).value == Approx(l1_norm(p)).epsilon(1e-10));
    CHECK(quadrature_integral_v(p).value == Approx(integral_v(p)).epsilon(1e-10));
    for (double R : {0.3, 1.0, 2.5}) {
      const double closed = tail_integral(p, R);
      const double quad = quadrature_tail_integral(p, R).value;
      CHECK(std::abs(quad - closed) <= 1e-10 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("gaussian against the incomplete-Gaussian oracle") {
  const auto g = RadialPotential::gaussian(1, 1);
  CHECK(l1_norm(g) == Approx(oracle::gaussian_l1(1, 1)).epsilon(1e-12));
  CHECK(l1_norm(g) == Approx(15.7496099457224).epsilon(1e-12));
  for (double R : {0.5, 2.0, 5.0}) {
    CHECK(tail_integral(g, R) == Approx(oracle::gaussian_tail(1, 1, R)).epsilon(1e-10));
  }
  const auto wide = RadialPotential::gaussian(2.5, 1.7);
  CHECK(tail_integral(wide, 5 * 1.7) == Approx(oracle::gaussian_tail(2.5, 1.7, 5 * 1.7)).epsilon(1e-10));
  CHECK(std::abs(g(g.cut_radius())) <= kTailTolerance * 1.0001);
}

TEST_CASE("sum is linear") {
  const auto well = RadialPotential::square_well(4, 1);
  const auto bar = RadialPotential::barrier(4, 2, 1);
  const auto both = RadialPotential::sum({well, bar});
  CHECK(quadrature_integral_v(both).value ==
        Approx(integral_v(well) + integral_v(bar)).epsilon(1e-10));
  CHECK(both(0.5) == -4.0);
  CHECK(both(1.5) == 4.0);
}

TEST_CASE("triangle inequality and tail monotonicity") {
  const std::vector<RadialPotential> kinds{
      RadialPotential::square_well(4, 1), RadialPotential::barrier(2, 1),
      RadialPotential::gaussian(1, 1),
      RadialPotential::sum_of_gaussians({{2, 0.5}, {-1, 1.2}}),
      RadialPotential::tabulated({0.1, 0.5, 1.0, 1.5, 2.0}, {-3, -2, 0.5, 0.2, 0.0})};
  for (const auto& p : kinds) {
    CHECK(l1_norm(p) >= std::abs(integral_v(p)) * (1 - 1e-9));
    // the tail is bounded by int_{|x|>R} |v|, which decreases in R
    double previous = INFINITY;
    for (double R = 0.25; R < 64; R *= 2) {
      double bound = oracle::radial([&](double r) { return std::abs(p(r)); }, 64, INFINITY);
      std::vector<double> cuts{R};
      for (double c : {0.1, 0.5, 1.0, 1.5, 2.0, 64.0}) {
        if (c > R) cuts.push_back(c);
      }
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        bound += oracle::radial([&](double r) { return std::abs(p(r)); }, cuts[i], cuts[i + 1]);
      }
      CHECK(std::abs(quadrature_tail_integral(p, R).value) <= bound * (1 + 1e-9) + 1e-15);
      CHECK(bound <= previous);
      previous = bound;
    }
    CHECK(std::abs(tail_integral(p, 64.0)) < 1e-12);
    if (p.compact()) CHECK(tail_integral(p, p.support_radius()) == 0.0);
  }
}

TEST_CASE("tabulated interpolation and extrapolation") {
  const auto t = RadialPotential::tabulated({0.5, 1.0, 1.5, 2.0}, {-2, -1, -0.5, -0.25});
  CHECK(t(0.1) == -2.0);
  CHECK(t(1.0) == Approx(-1.0));
  CHECK(t(2.5) == 0.0);
  // monotone data stays monotone between samples
  for (double r = 0.5; r < 2.0; r += 0.01) CHECK(t(r + 0.01) >= t(r) - 1e-14);
}

TEST_CASE("check_assumptions") {
  auto well = check_assumptions(RadialPotential::square_well(4, 1));
  CHECK(well.pass);
  auto zero = check_assumptions(RadialPotential::zero());
  CHECK(zero.pass);
  CHECK(zero.l1 == 0.0);
  CHECK(zero.negative_part_l32 == 0.0);

  // v = -r^{-2.5}: integrable but v_-^{3/2} ~ r^{-15/4} is not.
  std::vector<double> r, v;
  for (double x = 0.01; x <= 2.0; x *= 1.2) {
    r.push_back(x);
    v.push_back(-std::pow(x, -2.5));
  }
  auto singular = check_assumptions(RadialPotential::tabulated(r, v));
  CHECK_FALSE(singular.pass);
  CHECK(singular.l1_finite);
  CHECK_FALSE(singular.negative_part_l32_finite);
  REQUIRE(singular.origin_exponent);
  CHECK(*singular.origin_exponent == Approx(-2.5).epsilon(1e-10));
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(RadialPotential::gaussian(1, 0), Error);
  CHECK_THROWS_AS(RadialPotential::tabulated({1, 0.5}, {0, 0}), Error);
  CHECK_THROWS_AS(RadialPotential::square_well(1, 1, 2), Error);
  CHECK_THROWS_AS(potential_kind_from_string("lennard_jones"), Error);
}
