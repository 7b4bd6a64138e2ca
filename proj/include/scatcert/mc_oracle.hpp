#pragma once

#include <cstdint>

#include "scatcert/potential.hpp"
#include "scatcert/scattering.hpp"
#include "scatcert/trial_profile.hpp"

namespace scatcert {

/// Monte-Carlo estimate of <Psi|H_N Psi> for Psi = phi(t) prod g(x_k), with
/// x_k drawn i.i.d. from g^2 and t the minimal pair distance.
struct MCEstimate {
  int N = 0;
  double L = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  double value = 0.0;            // gradient form
  double std_error = 0.0;
  double norm = 0.0;             // <Psi|Psi> = E[phi(t)^2]
  double norm_std_error = 0.0;
  double laplacian_value = 0.0;  // -g Delta g form of the kinetic energy
  double laplacian_std_error = 0.0;
  double kinetic_value = 0.0;    // kinetic part of the gradient form
  double kinetic_std_error = 0.0;
  double gradient_identity_mean = 0.0;  // E[sum_k |grad_k t|^2], exactly 2
  int batches = 0;
  std::int64_t resamples = 0;
};

constexpr int kMaxMCParticles = 8;

/// Batches are Philox streams keyed by the seed, with the batch index in the
/// counter, so results do not depend on evaluation order.
/// Throws Error(Config) for N outside [2, 8] or fewer than 32 samples;
/// Error(DegenerateSample) if the orbital underflows too often.
MCEstimate mc_energy(const RadialPotential& v, const ScatteringSolution& sol,
                     const TrialProfile& profile, int N, double L, std::int64_t samples,
                     std::uint64_t seed);

}  // namespace scatcert
