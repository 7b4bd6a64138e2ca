#pragma once

// Independent reference values: closed forms, transcendental roots and brute
// quadrature. Nothing here calls into the library's numerics.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

constexpr double pi = 3.14159265358979323846;

// Zero-energy s-wave: u = sin(kr) inside, a = R0 (1 - tan(k R0) / (k R0)).
inline double square_well_a(double V0, double R0) {
  const double k = std::sqrt(V0 / 2.0);
  return R0 * (1.0 - std::tan(k * R0) / (k * R0));
}

inline double barrier_a(double V0, double R0) {
  const double k = std::sqrt(V0 / 2.0);
  return R0 * (1.0 - std::tanh(k * R0) / (k * R0));
}

// Free exterior: u = (r - a) / (R - a) normalized to 1 at R.
inline double compact_a_R(double a, double R) { return a / (1.0 - a / R); }

// Lowest eigenvalue of -2 u'' - V0 u = E u on (0, R0), u = exp(-q r) beyond:
// k cot(k R0) = -q with 2k^2 = V0 + E, 2q^2 = -E.
inline double square_well_E2(double V0, double R0) {
  const double kappa = std::sqrt(V0 / 2.0);
  if (kappa * R0 <= pi / 2) return 0.0;
  const auto G = [&](double k) {
    return k / std::tan(k * R0) + std::sqrt(std::max(0.0, kappa * kappa - k * k));
  };
  double lo = pi / (2 * R0) * (1 + 1e-15), hi = std::min(pi / R0 * (1 - 1e-15), kappa);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (G(mid) > 0 ? lo : hi) = mid;
  }
  const double k = 0.5 * (lo + hi);
  return 2.0 * k * k - V0;
}

// 4 pi int_a^b f, adaptive Gauss-Kronrod.
inline double radial(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return 4.0 * pi * gauss_kronrod<double, 61>::integrate(
                        [&](double r) { return f(r) * r * r; }, a, b, 15, 1e-12);
}

// Fixed 20-point Gauss-Legendre version, for smooth pieces.
inline double radial_gauss(const std::function<double(double)>& f, double a, double b) {
  using boost::math::quadrature::gauss;
  return 4.0 * pi * gauss<double, 20>::integrate([&](double r) { return f(r) * r * r; }, a, b);
}

// Finite-ball functional 4 pi int_0^R (2 f'^2 + v f^2) r^2 dr for a trial f
// (callers split at discontinuities of v).
inline double functional_of(const std::function<double(double)>& v,
                            const std::function<double(double)>& f,
                            const std::function<double(double)>& fp, double a, double b) {
  return radial([&](double r) { return 2.0 * fp(r) * fp(r) + v(r) * f(r) * f(r); }, a, b);
}

inline double gaussian_l1(double V0, double sigma) {
  return std::abs(V0) * std::pow(2.0 * pi, 1.5) * sigma * sigma * sigma;
}

// 4 pi int_R^inf -V0 exp(-r^2/2s^2) r^2 dr; with x = R/s this is
// -V0 4 pi s^3 [x exp(-x^2/2) + sqrt(pi/2) erfc(x / sqrt 2)].
inline double gaussian_tail(double V0, double sigma, double R) {
  const double x = R / sigma;
  return -V0 * 4.0 * pi * sigma * sigma * sigma *
         (x * std::exp(-0.5 * x * x) + std::sqrt(pi / 2.0) * std::erfc(x / std::sqrt(2.0)));
}

// cos^2 bump g0 = A (1 + cos pi r)/2 on [0, 1]; constants from 50-digit
// quadrature.
namespace cos2 {
constexpr double amplitude_sq = 2.65157564034362;  // 2 / (pi (1 - 15/(2 pi^2)))
constexpr double norm4_4 = 1.08350942057068;
constexpr double lap_neg_l1 = 12.1943556186795;
constexpr double kinetic = 11.6200386858376;
inline double g(double r) { return std::sqrt(amplitude_sq) * 0.5 * (1.0 + std::cos(pi * r)); }
inline double gp(double r) { return -std::sqrt(amplitude_sq) * 0.5 * pi * std::sin(pi * r); }
}  // namespace cos2

// Quartic bump (1 - r^2)^2: int_0^1 r^2 (1 - r^2)^4 dr = 128/3465.
constexpr double quartic_amplitude_sq = 3465.0 / (4.0 * pi * 128.0);

// Spherical-average autocorrelation C(r) = int F(x) F(x + r e) dx of a radial
// density F supported in [0, L], by nested Gauss-Legendre in (s, mu).
inline double autocorrelation(const std::function<double(double)>& F, double L, double r) {
  using boost::math::quadrature::gauss;
  constexpr int panels = 64;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = L * p / panels, b = L * (p + 1) / panels;
    total += gauss<double, 30>::integrate(
        [&](double s) {
          // the inner integrand has a kink where |x + r e| = L
          const auto inner = [&](double mu) {
            const double d = std::sqrt(std::max(0.0, s * s + r * r + 2 * s * r * mu));
            return d < L ? F(d) : 0.0;
          };
          double mu_cut = 1.0;
          if (s > 0 && r > 0) mu_cut = std::clamp((L * L - s * s - r * r) / (2 * s * r), -1.0, 1.0);
          double in = 0.0;
          if (mu_cut > -1.0) in = gauss<double, 30>::integrate(inner, -1.0, mu_cut);
          return 2.0 * pi * s * s * F(s) * in;
        },
        a, b);
  }
  return total;
}

// Three-body term of the combined display bound and its sharper per-pair
// version (with (N-2)(N-3) and (N-2) factors), summed over N(N-1)/2 pairs.
inline double display_threebody(double N, double c, double R, double v_l1, double g4, double ginf) {
  return (1 + c) * N * (pi / 3) * N * N * R * R * R * v_l1 * g4 * (N * g4 + 4 * ginf);
}
inline double sharper_threebody(double N, double c, double R, double v_l1, double g4, double ginf) {
  return 0.5 * N * (N - 1) * (1 + c) * (2 * pi / 3) * (N - 2) * R * R * R * v_l1 *
         ((N - 3) * g4 * g4 + 4 * ginf * g4);
}

}  // namespace oracle
