#pragma once

#include <vector>

#include "scatcert/potential.hpp"

namespace scatcert {

struct TwoBodyGridReport {
  double r_max = 0.0;
  int n = 0;                   // intervals on the coarsest level
  double raw[3] = {0, 0, 0};   // Dirichlet eigenvalues at n, 2n, 4n
  double extrapolated_coarse = 0.0;
  double extrapolated_fine = 0.0;
};

/// Lowest s-wave eigenvalue of -2 d^2/dr^2 + v on the relative coordinate.
struct TwoBodyResult {
  double E2 = 0.0;  // clamped to <= 0 (continuum edge)
  double lowest_dirichlet = 0.0;
  bool bound_state_exists = false;
  std::vector<double> r;             // eigenprofile nodes, empty if unbound
  std::vector<double> eigenprofile;  // u(r), int u^2 dr = 1
  TwoBodyGridReport grid_report;
};

inline constexpr double kBoundStateTolerance = 1e-8;

/// Three-point differences on a breakpoint-aligned mesh, Dirichlet at 0 and
/// r_max, Sturm-sequence bisection for the lowest eigenvalue, Richardson over
/// n, 2n and 4n. Throws Error(NotConverged) if the two extrapolants differ by
/// more than 1e-8 max(1, |E2|).
TwoBodyResult ground_state_energy(const RadialPotential& v, double r_max, int n);
TwoBodyResult ground_state_energy(const RadialPotential& v);

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below lambda.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double lambda);

}  // namespace scatcert
