#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace scatcert {

enum class ProfileKind { cos2_bump, quartic_bump };

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

/// Radial one-body orbital g0 supported in |x| <= 1 with int g0^2 = 1, plus
/// the norms the N-body bound consumes. At scale L the orbital is
/// g(x) = L^{-3/2} g0(x / L).
class TrialProfile {
 public:
  static TrialProfile build(ProfileKind kind);

  ProfileKind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }

  double g0(double r) const;
  double g0_prime(double r) const;
  double g0_second(double r) const;
  /// Delta g0 = g0'' + 2 g0' / r.
  double laplacian(double r) const;

  double norm2_sq = 0.0;        // int g0^2 (check value)
  double norm4_4 = 0.0;         // ||g0||_4^4
  double norm_inf_sq = 0.0;     // ||g0||_inf^2
  double lap_neg_l1 = 0.0;      // ||[g0 Delta g0]_-||_1
  double kinetic = 0.0;         // int |grad g0|^2
  double norm4_4_error = 0.0;
  double lap_neg_l1_error = 0.0;

  // Scaled quantities.
  double norm4_4_at(double L) const { return norm4_4 / (L * L * L); }
  double norm_inf_sq_at(double L) const { return norm_inf_sq / (L * L * L); }
  double lap_neg_l1_at(double L) const { return lap_neg_l1 / (L * L); }

  /// Inverse of the radial distribution 4 pi r^2 g0(r)^2 on [0, 1].
  double sample_unit_radius(double u) const;

 private:
  ProfileKind kind_ = ProfileKind::cos2_bump;
  double amplitude_ = 0.0;
  double cdf_step_ = 0.0;
  std::shared_ptr<const std::vector<double>> cdf_;
};

TrialProfile build_trial_profile(ProfileKind kind);

}  // namespace scatcert
