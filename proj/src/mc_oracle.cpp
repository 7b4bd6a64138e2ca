#include "scatcert/mc_oracle.hpp"

#include <array>
#include <cmath>
#include <string>

#include "scatcert/error.hpp"
#include "scatcert/philox.hpp"
#include "scatcert/quadrature.hpp"

namespace scatcert {

namespace {

constexpr int kMaxResamplesPerDraw = 64;

struct Particle {
  std::array<double, 3> x;
  std::array<double, 3> grad_log_g;  // grad g / g
  double lap_over_g;                 // Delta g / g
};

struct Accumulator {
  double value = 0.0, laplacian = 0.0, norm = 0.0, kinetic = 0.0;
};

// Returns false if the orbital underflows at the drawn radius.
bool draw(PhiloxStream& rng, const TrialProfile& profile, double L, Particle& p) {
  const double rho = profile.sample_unit_radius(rng.uniform());
  const double cos_theta = 2.0 * rng.uniform() - 1.0;
  const double azimuth = 2.0 * kPi * rng.uniform();
  const double g = profile.g0(rho);
  if (!(rho < 1.0) || !(g > 0.0) || !std::isnormal(g)) return false;
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  const std::array<double, 3> dir{sin_theta * std::cos(azimuth), sin_theta * std::sin(azimuth),
                                  cos_theta};
  const double d_log = profile.g0_prime(rho) / (g * L);
  for (int i = 0; i < 3; ++i) {
    p.x[i] = L * rho * dir[i];
    p.grad_log_g[i] = d_log * dir[i];
  }
  p.lap_over_g = profile.laplacian(rho) / (g * L * L);
  return true;
}

}  // namespace

MCEstimate mc_energy(const RadialPotential& v, const ScatteringSolution& sol,
                     const TrialProfile& profile, int N, double L, std::int64_t samples,
                     std::uint64_t seed) {
  if (N < 2 || N > kMaxMCParticles) {
    throw Error(ErrorCode::Config, "mc_energy requires 2 <= N <= 8, got " + std::to_string(N));
  }
  if (samples < 32) throw Error(ErrorCode::Config, "mc_energy requires at least 32 samples");
  if (!(L > 0.0)) throw Error(ErrorCode::Config, "mc_energy requires L > 0");

  MCEstimate out;
  out.N = N;
  out.L = L;
  out.samples = samples;
  out.seed = seed;
  out.batches = samples >= 64 ? 64 : 32;

  std::array<Particle, kMaxMCParticles> particles{};
  std::vector<Accumulator> batch_means(out.batches);
  Accumulator total;
  double identity_sum = 0.0;

  for (int b = 0; b < out.batches; ++b) {
    const std::int64_t count = samples / out.batches + (b < samples % out.batches ? 1 : 0);
    Accumulator acc;
    for (std::int64_t s = 0; s < count; ++s) {
      PhiloxStream rng(seed, static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(b),
                       static_cast<std::uint32_t>(s >> 32));
      for (int k = 0; k < N; ++k) {
        int attempts = 0;
        while (!draw(rng, profile, L, particles[k])) {
          ++out.resamples;
          if (++attempts > kMaxResamplesPerDraw) {
            throw Error(ErrorCode::DegenerateSample,
                        "orbital underflow persisted after resampling");
          }
        }
      }

      // Minimal pair distance; strict comparison keeps the lowest index pair.
      double t = INFINITY, pot = 0.0;
      int mi = 0, mj = 1;
      std::array<double, 3> dmin{};
      for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
          std::array<double, 3> d;
          for (int c = 0; c < 3; ++c) d[c] = particles[i].x[c] - particles[j].x[c];
          const double dist = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
          pot += v(dist);
          if (dist < t) {
            t = dist;
            mi = i;
            mj = j;
            dmin = d;
          }
        }
      }
      if (!(t > 0.0)) throw Error(ErrorCode::DegenerateSample, "coincident particles");

      const double phi = sol.phi(t);
      const double dphi = sol.phi_prime(t);
      double cross = 0.0, grad_sq = 0.0, lap = 0.0, identity = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double e = dmin[c] / t;
        cross += e * (particles[mi].grad_log_g[c] - particles[mj].grad_log_g[c]);
        identity += 2.0 * e * e;
      }
      for (int k = 0; k < N; ++k) {
        const auto& gl = particles[k].grad_log_g;
        grad_sq += gl[0] * gl[0] + gl[1] * gl[1] + gl[2] * gl[2];
        lap += particles[k].lap_over_g;
      }
      const double kinetic = 2.0 * dphi * dphi + 2.0 * phi * dphi * cross + phi * phi * grad_sq;
      acc.kinetic += kinetic;
      acc.value += kinetic + phi * phi * pot;
      acc.laplacian += 2.0 * dphi * dphi - phi * phi * lap + phi * phi * pot;
      acc.norm += phi * phi;
      identity_sum += identity;
    }
    total.value += acc.value;
    total.laplacian += acc.laplacian;
    total.norm += acc.norm;
    total.kinetic += acc.kinetic;
    const double n = static_cast<double>(count);
    batch_means[b] = {acc.value / n, acc.laplacian / n, acc.norm / n, acc.kinetic / n};
  }

  const double n = static_cast<double>(samples);
  out.value = total.value / n;
  out.laplacian_value = total.laplacian / n;
  out.norm = total.norm / n;
  out.kinetic_value = total.kinetic / n;
  out.gradient_identity_mean = identity_sum / n;

  double sv = 0.0, sl = 0.0, sn = 0.0, sk = 0.0;
  for (const auto& m : batch_means) {
    sv += (m.value - out.value) * (m.value - out.value);
    sl += (m.laplacian - out.laplacian_value) * (m.laplacian - out.laplacian_value);
    sn += (m.norm - out.norm) * (m.norm - out.norm);
    sk += (m.kinetic - out.kinetic_value) * (m.kinetic - out.kinetic_value);
  }
  const double denom = static_cast<double>(out.batches) * (out.batches - 1);
  out.std_error = std::sqrt(sv / denom);
  out.laplacian_std_error = std::sqrt(sl / denom);
  out.norm_std_error = std::sqrt(sn / denom);
  out.kinetic_std_error = std::sqrt(sk / denom);
  return out;
}

}  // namespace scatcert
