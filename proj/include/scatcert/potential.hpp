#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scatcert/quadrature.hpp"

namespace scatcert {

// Units: hbar = 1 and the one-particle kinetic operator is -Laplacian, so
// energies are 1/length^2 and the relative two-body operator is -2 Laplacian + v.

enum class PotentialKind { zero, square_well, barrier, gaussian, sum_of_gaussians, tabulated, sum };

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view name);

/// One attractive Gaussian term: -depth * exp(-r^2 / (2 sigma^2)).
/// A negative depth gives a repulsive term.
struct GaussianTerm {
  double depth = 0.0;
  double sigma = 1.0;
};

inline constexpr double kTailTolerance = 1e-12;

/// Radial pair potential v(|x|). Immutable once constructed.
class RadialPotential {
 public:
  static RadialPotential zero();
  /// -depth on inner_radius <= r < radius.
  static RadialPotential square_well(double depth, double radius, double inner_radius = 0.0);
  /// +height on inner_radius <= r < radius.
  static RadialPotential barrier(double height, double radius, double inner_radius = 0.0);
  static RadialPotential gaussian(double depth, double sigma);
  static RadialPotential sum_of_gaussians(std::vector<GaussianTerm> terms);
  /// Monotone piecewise-cubic through (r_i, v_i); v = v_0 below the first
  /// sample and 0 beyond the last one.
  static RadialPotential tabulated(std::vector<double> r, std::vector<double> v);
  static RadialPotential sum(std::vector<RadialPotential> parts);

  PotentialKind kind() const { return kind_; }
  double operator()(double r) const;

  /// Radius beyond which v vanishes identically; +infinity for Gaussian kinds.
  double support_radius() const;
  /// Radius beyond which |v| <= kTailTolerance.
  double cut_radius() const;
  /// Characteristic range of the interaction (R0, sigma, or last sample).
  double length_scale() const;
  /// Radii where v or its derivative jumps, sorted, inside (0, cut_radius].
  std::vector<double> breakpoints() const;
  bool compact() const;

  // Parameter access for serialization.
  double depth() const { return depth_; }
  double radius() const { return radius_; }
  double inner_radius() const { return inner_; }
  double sigma() const { return sigma_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }
  const std::vector<double>& samples_r() const { return r_; }
  const std::vector<double>& samples_v() const { return v_; }
  const std::vector<RadialPotential>& parts() const { return parts_; }

 private:
  struct Interpolant;

  PotentialKind kind_ = PotentialKind::zero;
  double depth_ = 0.0;  // signed: square_well/gaussian store -v at the core, barrier stores +v
  double radius_ = 0.0;
  double inner_ = 0.0;
  double sigma_ = 1.0;
  std::vector<GaussianTerm> terms_;
  std::vector<double> r_;
  std::vector<double> v_;
  std::shared_ptr<const Interpolant> interp_;
  std::vector<RadialPotential> parts_;
};

double eval_v(const RadialPotential& p, double r);

/// ||v||_1 = 4 pi int_0^inf |v(r)| r^2 dr. Closed form where one exists.
double l1_norm(const RadialPotential& p);
/// 4 pi int_0^inf v(r) r^2 dr.
double integral_v(const RadialPotential& p);
/// 4 pi int_R^inf v(r) r^2 dr.
double tail_integral(const RadialPotential& p, double R);

// Quadrature-only routes, independent of the closed forms above.
QuadResult quadrature_l1_norm(const RadialPotential& p);
QuadResult quadrature_integral_v(const RadialPotential& p);
QuadResult quadrature_tail_integral(const RadialPotential& p, double R);

struct AssumptionReport {
  bool pass = false;
  bool l1_finite = false;
  bool negative_part_l32_finite = false;
  double l1 = 0.0;
  double negative_part_l32 = 0.0;  // int v_-^{3/2} dx; +inf when divergent
  /// Power-law exponent p of |v| ~ r^p fitted to the first samples of a
  /// tabulated potential when the data grows toward the origin.
  std::optional<double> origin_exponent;
  std::string message;
};

AssumptionReport check_assumptions(const RadialPotential& p);

}  // namespace scatcert
