#include "doctest.h"
#include "oracles.hpp"
#include "scatcert/certifier.hpp"
#include "scatcert/error.hpp"
#include "scatcert/mc_oracle.hpp"
#include "scatcert/philox.hpp"

using namespace scatcert;
using doctest::Approx;

TEST_CASE("philox known-answer vectors") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  PhiloxStream s(1, 2, 3, 4);
  double mean = 0.0;
  bool inside = true;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    inside = inside && u > 0.0 && u < 1.0;
    mean += u;
  }
  CHECK(inside);
  CHECK(mean / 100000 == Approx(0.5).epsilon(0.01));
}

namespace {

struct Fixture {
  RadialPotential v = RadialPotential::square_well(4, 1);
  CertifierContext ctx = prepare_certifier(v, CertifyConfig{});
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_CASE("free particles: kinetic energy of the orbital") {
  const auto v = RadialPotential::zero();
  const auto sol = solve_a_R(v, 1.0);
  const auto p = build_trial_profile(ProfileKind::cos2_bump);
  const double L = 3.0;
  const auto e = mc_energy(v, sol, p, 2, L, 200000, 11);
  const double expected = 2.0 * oracle::cos2::kinetic / (L * L);
  CHECK(std::abs(e.value - expected) <= 3.0 * e.std_error);
  CHECK(std::abs(e.laplacian_value - expected) <= 3.0 * e.laplacian_std_error);
  CHECK(e.norm == Approx(1.0).epsilon(1e-9));
  CHECK(e.batches >= 32);
}

TEST_CASE("gradient identity and seed determinism") {
  const auto& f = fixture();
  for (int N : {2, 3, 5, 8}) {
    const auto a = mc_energy(f.v, *f.ctx.sol, f.ctx.profile, N, 5.0, 4000, 99);
    const auto b = mc_energy(f.v, *f.ctx.sol, f.ctx.profile, N, 5.0, 4000, 99);
    CHECK(std::abs(a.gradient_identity_mean - 2.0) <= 1e-12);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.norm == b.norm);
    const auto c = mc_energy(f.v, *f.ctx.sol, f.ctx.profile, N, 5.0, 4000, 100);
    CHECK(a.value != c.value);
  }
}

TEST_CASE("integration by parts: gradient and Laplacian forms agree") {
  const auto& f = fixture();
  for (int N : {2, 3}) {
    for (double L : {5.0, 10.0}) {
      const auto e = mc_energy(f.v, *f.ctx.sol, f.ctx.profile, N, L, 200000, 5);
      const double combined = std::hypot(e.std_error, e.laplacian_std_error);
      CHECK(std::abs(e.value - e.laplacian_value) <= 3.0 * combined);
    }
  }
}

TEST_CASE("two particles: nonnegative form") {
  const auto& f = fixture();
  for (double L : {2.0, 5.0, 10.0}) {
    const auto e = mc_energy(f.v, *f.ctx.sol, f.ctx.profile, 2, L, 100000, 3);
    CHECK(e.value >= -3.0 * e.std_error);
  }
}

TEST_CASE("four particles at L = 10 stay below the bound") {
  const auto& f = fixture();
  const auto e = mc_energy(f.v, *f.ctx.sol, f.ctx.profile, 4, 10.0, 200000, 8);
  const auto B = bound_B(4, 10.0, f.ctx.profile, *f.ctx.h, *f.ctx.sol, f.v);
  CHECK(e.value <= B.B + 3.0 * e.std_error);
}

TEST_CASE("argument checks") {
  const auto& f = fixture();
  CHECK_THROWS_AS(mc_energy(f.v, *f.ctx.sol, f.ctx.profile, 1, 5.0, 1000, 1), Error);
  CHECK_THROWS_AS(mc_energy(f.v, *f.ctx.sol, f.ctx.profile, 9, 5.0, 1000, 1), Error);
  CHECK_THROWS_AS(mc_energy(f.v, *f.ctx.sol, f.ctx.profile, 2, 5.0, 0, 1), Error);
}
