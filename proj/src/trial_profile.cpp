#include "scatcert/trial_profile.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "scatcert/error.hpp"
#include "scatcert/quadrature.hpp"

namespace scatcert {

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::cos2_bump: return "cos2_bump";
    case ProfileKind::quartic_bump: return "quartic_bump";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(std::string_view name) {
  if (name == "cos2_bump") return ProfileKind::cos2_bump;
  if (name == "quartic_bump") return ProfileKind::quartic_bump;
  throw Error(ErrorCode::Config, "unknown trial profile '" + std::string(name) + "'");
}

// Shapes before normalization:
//   cos2_bump:    cos^2(pi r / 2) = (1 + cos(pi r)) / 2
//   quartic_bump: (1 - r^2)^2

double TrialProfile::g0(double r) const {
  if (r >= 1.0) return 0.0;
  if (kind_ == ProfileKind::cos2_bump) return amplitude_ * 0.5 * (1.0 + std::cos(kPi * r));
  const double s = 1.0 - r * r;
  return amplitude_ * s * s;
}

double TrialProfile::g0_prime(double r) const {
  if (r >= 1.0) return 0.0;
  if (kind_ == ProfileKind::cos2_bump) return -amplitude_ * 0.5 * kPi * std::sin(kPi * r);
  return -4.0 * amplitude_ * r * (1.0 - r * r);
}

double TrialProfile::g0_second(double r) const {
  if (r >= 1.0) return 0.0;
  if (kind_ == ProfileKind::cos2_bump) return -amplitude_ * 0.5 * kPi * kPi * std::cos(kPi * r);
  return amplitude_ * (12.0 * r * r - 4.0);
}

double TrialProfile::laplacian(double r) const {
  if (r >= 1.0) return 0.0;
  if (kind_ == ProfileKind::cos2_bump) {
    // g0'/r is smooth at the origin: sin(pi r)/r -> pi.
    const double sinc = r < 1e-8 ? kPi : std::sin(kPi * r) / r;
    return g0_second(r) - amplitude_ * kPi * sinc;
  }
  return amplitude_ * (20.0 * r * r - 12.0);
}

double TrialProfile::sample_unit_radius(double u) const {
  const auto& cdf = *cdf_;
  const double target = std::clamp(u, 0.0, 1.0);
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cdf.begin() - 1, 0));
  k = std::min(k, cdf.size() - 2);
  const double lo = k * cdf_step_;
  const double hi = (k + 1) * cdf_step_;
  const double c0 = cdf[k];
  // CDF inside the cell from a 10-point rule on [lo, x].
  const auto density = [&](double r) { return kFourPi * r * r * g0(r) * g0(r); };
  const auto cell_cdf = [&](double x) {
    const auto& rule = gauss_rule(10);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double t = lo + 0.5 * (x - lo) * (rule.x[q] + 1.0);
      s += rule.w[q] * density(t);
    }
    return c0 + 0.5 * (x - lo) * s;
  };
  boost::uintmax_t iterations = 80;
  const auto bracket = boost::math::tools::toms748_solve(
      [&](double x) { return cell_cdf(x) - target; }, lo, hi, cell_cdf(lo) - target,
      cell_cdf(hi) - target, boost::math::tools::eps_tolerance<double>(50), iterations);
  return 0.5 * (bracket.first + bracket.second);
}

TrialProfile TrialProfile::build(ProfileKind kind) {
  TrialProfile p;
  p.kind_ = kind;
  p.amplitude_ = 1.0;
  const auto shape_sq = [&p](double r) { return p.g0(r) * p.g0(r); };
  const double raw = integrate([&](double r) { return kFourPi * shape_sq(r) * r * r; }, 0.0, 1.0)
                         .value;
  p.amplitude_ = 1.0 / std::sqrt(raw);

  const auto norm2 = integrate([&](double r) { return kFourPi * shape_sq(r) * r * r; }, 0.0, 1.0);
  p.norm2_sq = norm2.value;
  const auto n4 = integrate(
      [&](double r) { return kFourPi * shape_sq(r) * shape_sq(r) * r * r; }, 0.0, 1.0);
  p.norm4_4 = n4.value;
  p.norm4_4_error = n4.error;
  // Both profiles decrease monotonically from the origin.
  p.norm_inf_sq = p.g0(0.0) * p.g0(0.0);
  const auto kin = integrate(
      [&](double r) { return kFourPi * p.g0_prime(r) * p.g0_prime(r) * r * r; }, 0.0, 1.0);
  p.kinetic = kin.value;

  // g0 >= 0, so the sign of g0 Delta g0 follows Delta g0; split at its roots.
  std::vector<double> roots;
  constexpr int kScan = 512;
  for (int i = 0; i < kScan; ++i) {
    const double a = static_cast<double>(i) / kScan;
    const double b = static_cast<double>(i + 1) / kScan;
    const double fa = p.laplacian(a), fb = p.laplacian(b);
    if ((fa < 0.0) != (fb < 0.0) && b < 1.0) {
      boost::uintmax_t iterations = 100;
      const auto root = boost::math::tools::toms748_solve(
          [&](double x) { return p.laplacian(x); }, a, b, fa, fb,
          boost::math::tools::eps_tolerance<double>(52), iterations);
      roots.push_back(0.5 * (root.first + root.second));
    }
  }
  const auto lap = integrate(
      [&](double r) {
        const double s = p.g0(r) * p.laplacian(r);
        return s < 0.0 ? -kFourPi * s * r * r : 0.0;
      },
      0.0, 1.0, roots);
  p.lap_neg_l1 = lap.value;
  p.lap_neg_l1_error = lap.error;

  // Radial CDF table for sampling.
  constexpr int kCells = 4096;
  auto cdf = std::make_shared<std::vector<double>>(kCells + 1, 0.0);
  p.cdf_step_ = 1.0 / kCells;
  const auto& rule = gauss_rule(10);
  for (int k = 0; k < kCells; ++k) {
    const double lo = k * p.cdf_step_;
    double s = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double t = lo + 0.5 * p.cdf_step_ * (rule.x[q] + 1.0);
      s += rule.w[q] * kFourPi * t * t * shape_sq(t);
    }
    (*cdf)[k + 1] = (*cdf)[k] + 0.5 * p.cdf_step_ * s;
  }
  p.cdf_ = std::move(cdf);
  return p;
}

TrialProfile build_trial_profile(ProfileKind kind) { return TrialProfile::build(kind); }

}  // namespace scatcert
