#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scatcert/potential.hpp"

namespace scatcert {

enum class GridSpacing { uniform, graded };

/// Radial mesh on (0, r_max]. `n` counts intervals inside the core region
/// [0, min(core_radius, r_max)]; with graded spacing the exterior gets a
/// geometric mesh of n/4 intervals, otherwise the whole range is uniform.
/// Breakpoints become mesh nodes.
struct RadialGrid {
  double r_max = 1.0;
  int n = 2048;
  GridSpacing spacing = GridSpacing::graded;
  double core_radius = 0.0;  // <= 0 means r_max
  std::vector<double> breakpoints;

  /// Nodes r_1 < ... < r_m = r_max (the origin is implicit).
  std::vector<double> nodes() const;
  RadialGrid refined() const;

  static RadialGrid for_potential(const RadialPotential& v, double R, int n = 2048,
                                  GridSpacing spacing = GridSpacing::graded);
};

/// Minimizer of int_{|x|<=R} (2|grad f|^2 + v f^2) dx over radial f with
/// f(R) = 1, stored as the piecewise-linear u = r f on the mesh.
struct ScatteringSolution {
  double R = 0.0;
  double a_R = 0.0;
  double functional_value = 0.0;  // = 8 pi a_R
  double functional_flux = 0.0;   // same value from the boundary flux
  double refinement_change = 0.0; // |a_R(2n) - a_R(n)|
  double tail = 0.0;              // tail_integral(v, R)
  double b = 0.0;                 // functional_value + tail
  double c = 0.0;                 // max(0, sup phi^2 - 1)
  std::vector<double> r;          // mesh including 0 and R
  std::vector<double> u;

  double f(double t) const;
  /// phi(t) = f(t) for t < R and 1 beyond.
  double phi(double t) const;
  /// phi'(t) almost everywhere; 0 beyond R.
  double phi_prime(double t) const;
  std::vector<double> f_samples() const;
};

struct SolveOptions {
  double refine_tol = 1e-6;  // relative to max(1, |a_R|)
  bool check_refinement = true;
};

/// Throws Error(NoMinimizer) when the form is not positive on the ball, i.e.
/// the zero-energy solution has a node inside (0, R).
ScatteringSolution solve_a_R(const RadialPotential& v, double R, const RadialGrid& grid,
                             const SolveOptions& options = {});
ScatteringSolution solve_a_R(const RadialPotential& v, double R);

struct ShootingResult {
  double a = 0.0;
  bool node = false;  // u vanishes somewhere on (0, inf): two-body bound state
  int node_count = 0;
  double u_match = 0.0;
  double du_match = 0.0;
  int steps = 0;
};

/// Zero-energy outward integration of -2u'' + v u = 0 with an embedded
/// Runge-Kutta-Fehlberg 7(8) pair; a = r_match - u/u'.
ShootingResult shoot_scattering_length(const RadialPotential& v, double r_start, double r_match);
ShootingResult shoot_scattering_length(const RadialPotential& v);

/// Smallest radius beyond which the exterior equation is free.
double default_match_radius(const RadialPotential& v);
double default_length_scale(const RadialPotential& v);
std::vector<double> default_R_schedule(const RadialPotential& v);
std::vector<double> default_b_schedule(const RadialPotential& v);

struct ScatteringLength {
  double a = 0.0;  // reported value (shooting)
  std::optional<double> method_variational;  // empty when a_R -> -infinity
  double method_shooting = 0.0;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool consistent = true;
  bool minus_infinity = false;
  bool node = false;
  std::string extrapolation;  // "exterior_matching" or "richardson_1/R"
  int richardson_order = 0;
  std::vector<std::pair<double, double>> a_R_curve;
};

struct LimitOptions {
  double tol = 1e-6;  // tol_a = tol * max(1, |a|)
  int grid_n = 2048;
};

ScatteringLength limit_a(const RadialPotential& v, const std::vector<double>& R_schedule,
                         const LimitOptions& options = {});
ScatteringLength limit_a(const RadialPotential& v);

using SolutionFactory = std::function<ScatteringSolution(double R)>;

/// First R on the schedule with 8 pi a_R + tail_integral(v, R) <= -margin_frac 8 pi |a|.
std::pair<double, ScatteringSolution> find_negative_b_radius(
    const RadialPotential& v, const ScatteringLength& length, const std::vector<double>& schedule,
    const SolutionFactory& factory, double margin_frac = 0.5);
std::pair<double, ScatteringSolution> find_negative_b_radius(const RadialPotential& v,
                                                             const ScatteringLength& length,
                                                             double margin_frac = 0.5);

}  // namespace scatcert
