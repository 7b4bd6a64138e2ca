#pragma once

#include <functional>
#include <span>
#include <vector>

namespace scatcert {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// Adaptive Gauss-Kronrod (15/31) integration of `f` over [a, b], split at
/// every breakpoint that falls strictly inside the interval. `b` may be
/// +infinity. Throws Error(DivergentNorm) when the estimated error exceeds
/// `abs_tol + rel_tol * |value|` after refinement.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     std::span<const double> breakpoints = {}, double rel_tol = 1e-13,
                     double abs_tol = 1e-300);

/// Fixed-order Gauss-Legendre rule on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b);

/// Gauss-Legendre nodes/weights of order `n` mapped to [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_rule(int n);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourPi = 4.0 * kPi;
inline constexpr double kEightPi = 8.0 * kPi;

}  // namespace scatcert
