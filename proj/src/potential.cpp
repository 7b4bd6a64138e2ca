#include "scatcert/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

// Boost 1.74's pchip calls unqualified isnan.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "scatcert/error.hpp"

namespace scatcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ball_volume_shell(double outer, double inner) {
  return kFourPi / 3.0 * (outer * outer * outer - inner * inner * inner);
}

double gaussian_cut(double depth, double sigma, double count) {
  const double amplitude = std::abs(depth) * count;
  if (amplitude <= kTailTolerance) return 0.0;
  return sigma * std::sqrt(2.0 * std::log(amplitude / kTailTolerance));
}

// 4 pi int_0^inf exp(-r^2/(2 s^2)) r^2 dr
double gaussian_volume(double sigma) { return std::pow(2.0 * kPi * sigma * sigma, 1.5); }

// 4 pi int_R^inf exp(-r^2/(2 s^2)) r^2 dr
double gaussian_tail_volume(double sigma, double R) {
  const double x = R / sigma;
  return kFourPi * sigma * sigma * sigma *
         (x * std::exp(-0.5 * x * x) + std::sqrt(kPi / 2.0) * std::erfc(x / std::sqrt(2.0)));
}

}  // namespace

struct RadialPotential::Interpolant {
  std::optional<boost::math::interpolators::pchip<std::vector<double>>> cubic;
  std::vector<double> r;
  std::vector<double> v;

  double operator()(double x) const {
    if (x <= r.front()) return v.front();
    if (x > r.back()) return 0.0;
    if (cubic) return (*cubic)(x);
    const auto it = std::upper_bound(r.begin(), r.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
    if (i + 1 >= r.size()) return v.back();
    const double w = (x - r[i]) / (r[i + 1] - r[i]);
    return (1.0 - w) * v[i] + w * v[i + 1];
  }
};

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::zero: return "zero";
    case PotentialKind::square_well: return "square_well";
    case PotentialKind::barrier: return "barrier";
    case PotentialKind::gaussian: return "gaussian";
    case PotentialKind::sum_of_gaussians: return "sum_of_gaussians";
    case PotentialKind::tabulated: return "tabulated";
    case PotentialKind::sum: return "sum";
  }
  return "unknown";
}

PotentialKind potential_kind_from_string(std::string_view name) {
  for (auto k : {PotentialKind::zero, PotentialKind::square_well, PotentialKind::barrier,
                 PotentialKind::gaussian, PotentialKind::sum_of_gaussians,
                 PotentialKind::tabulated, PotentialKind::sum}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::Config, "unknown potential kind '" + std::string(name) + "'");
}

RadialPotential RadialPotential::zero() { return RadialPotential{}; }

RadialPotential RadialPotential::square_well(double depth, double radius, double inner_radius) {
  if (!(radius > inner_radius) || inner_radius < 0.0 || !std::isfinite(depth) ||
      !std::isfinite(radius))
    throw Error(ErrorCode::Config, "square well needs 0 <= R_inner < R0 and finite V0");
  RadialPotential p;
  p.kind_ = PotentialKind::square_well;
  p.depth_ = depth;
  p.radius_ = radius;
  p.inner_ = inner_radius;
  return p;
}

RadialPotential RadialPotential::barrier(double height, double radius, double inner_radius) {
  RadialPotential p = square_well(height, radius, inner_radius);
  p.kind_ = PotentialKind::barrier;
  return p;
}

RadialPotential RadialPotential::gaussian(double depth, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(depth))
    throw Error(ErrorCode::Config, "gaussian needs sigma > 0 and finite V0");
  RadialPotential p;
  p.kind_ = PotentialKind::gaussian;
  p.depth_ = depth;
  p.sigma_ = sigma;
  return p;
}

RadialPotential RadialPotential::sum_of_gaussians(std::vector<GaussianTerm> terms) {
  if (terms.empty()) throw Error(ErrorCode::Config, "sum_of_gaussians needs at least one term");
  for (const auto& t : terms) {
    if (!(t.sigma > 0.0) || !std::isfinite(t.depth))
      throw Error(ErrorCode::Config, "gaussian term needs sigma > 0 and finite V0");
  }
  RadialPotential p;
  p.kind_ = PotentialKind::sum_of_gaussians;
  p.terms_ = std::move(terms);
  return p;
}

RadialPotential RadialPotential::tabulated(std::vector<double> r, std::vector<double> v) {
  if (r.size() != v.size() || r.size() < 2)
    throw Error(ErrorCode::Config, "tabulated potential needs matching r and v with >= 2 samples");
  if (r.front() < 0.0) throw Error(ErrorCode::Config, "tabulated r must be nonnegative");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(v[i]))
      throw Error(ErrorCode::Config, "tabulated samples must be finite");
    if (i > 0 && !(r[i] > r[i - 1]))
      throw Error(ErrorCode::Config, "tabulated r grid must be strictly increasing");
  }
  auto interp = std::make_shared<Interpolant>();
  interp->r = r;
  interp->v = v;
  if (r.size() >= 4) {
    interp->cubic.emplace(std::vector<double>(r), std::vector<double>(v));
  }
  RadialPotential p;
  p.kind_ = PotentialKind::tabulated;
  p.r_ = std::move(r);
  p.v_ = std::move(v);
  p.interp_ = std::move(interp);
  return p;
}

RadialPotential RadialPotential::sum(std::vector<RadialPotential> parts) {
  if (parts.empty()) throw Error(ErrorCode::Config, "sum potential needs at least one part");
  RadialPotential p;
  p.kind_ = PotentialKind::sum;
  p.parts_ = std::move(parts);
  return p;
}

double RadialPotential::operator()(double r) const {
  switch (kind_) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::square_well: return (r >= inner_ && r < radius_) ? -depth_ : 0.0;
    case PotentialKind::barrier: return (r >= inner_ && r < radius_) ? depth_ : 0.0;
    case PotentialKind::gaussian: return -depth_ * std::exp(-0.5 * r * r / (sigma_ * sigma_));
    case PotentialKind::sum_of_gaussians: {
      double s = 0.0;
      for (const auto& t : terms_) s -= t.depth * std::exp(-0.5 * r * r / (t.sigma * t.sigma));
      return s;
    }
    case PotentialKind::tabulated: return (*interp_)(r);
    case PotentialKind::sum: {
      double s = 0.0;
      for (const auto& part : parts_) s += part(r);
      return s;
    }
  }
  return 0.0;
}

double RadialPotential::support_radius() const {
  switch (kind_) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::square_well:
    case PotentialKind::barrier: return radius_;
    case PotentialKind::gaussian:
    case PotentialKind::sum_of_gaussians: return kInf;
    case PotentialKind::tabulated: return r_.back();
    case PotentialKind::sum: {
      double s = 0.0;
      for (const auto& part : parts_) s = std::max(s, part.support_radius());
      return s;
    }
  }
  return 0.0;
}

double RadialPotential::cut_radius() const {
  switch (kind_) {
    case PotentialKind::gaussian: return gaussian_cut(depth_, sigma_, 1.0);
    case PotentialKind::sum_of_gaussians: {
      double s = 0.0;
      for (const auto& t : terms_)
        s = std::max(s, gaussian_cut(t.depth, t.sigma, static_cast<double>(terms_.size())));
      return s;
    }
    case PotentialKind::sum: {
      double s = 0.0;
      for (const auto& part : parts_) s = std::max(s, part.cut_radius());
      return s;
    }
    default: return support_radius();
  }
}

double RadialPotential::length_scale() const {
  switch (kind_) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::square_well:
    case PotentialKind::barrier: return radius_;
    case PotentialKind::gaussian: return sigma_;
    case PotentialKind::sum_of_gaussians: {
      double s = 0.0;
      for (const auto& t : terms_) s = std::max(s, t.sigma);
      return s;
    }
    case PotentialKind::tabulated: return r_.back();
    case PotentialKind::sum: {
      double s = 0.0;
      for (const auto& part : parts_) s = std::max(s, part.length_scale());
      return s;
    }
  }
  return 0.0;
}

std::vector<double> RadialPotential::breakpoints() const {
  std::vector<double> out;
  switch (kind_) {
    case PotentialKind::square_well:
    case PotentialKind::barrier:
      if (inner_ > 0.0) out.push_back(inner_);
      out.push_back(radius_);
      break;
    case PotentialKind::tabulated:
      if (r_.front() > 0.0) out.push_back(r_.front());
      out.push_back(r_.back());
      break;
    case PotentialKind::sum:
      for (const auto& part : parts_) {
        const auto b = part.breakpoints();
        out.insert(out.end(), b.begin(), b.end());
      }
      break;
    default: break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool RadialPotential::compact() const { return std::isfinite(support_radius()); }

double eval_v(const RadialPotential& p, double r) { return p(r); }

namespace {

// Splits for quadrature: discontinuities plus every tabulated node.
std::vector<double> quadrature_splits(const RadialPotential& p) {
  std::vector<double> splits = p.breakpoints();
  if (p.kind() == PotentialKind::tabulated) {
    splits.insert(splits.end(), p.samples_r().begin(), p.samples_r().end());
  } else if (p.kind() == PotentialKind::sum) {
    for (const auto& part : p.parts()) {
      const auto s = quadrature_splits(part);
      splits.insert(splits.end(), s.begin(), s.end());
    }
  }
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  return splits;
}

// 4 pi int_from^inf F(v(r)) r^2 dr by adaptive quadrature.
template <class Transform>
QuadResult radial_quadrature(const RadialPotential& p, double from, Transform transform) {
  const auto splits = quadrature_splits(p);
  const auto integrand = [&](double r) { return kFourPi * transform(p(r)) * r * r; };
  const double cut = p.cut_radius();
  QuadResult total;
  if (cut > from) {
    total = integrate(integrand, from, cut, splits, 1e-12);
  }
  if (!p.compact()) {
    const auto tail = integrate(integrand, std::max(from, cut), kInf, {}, 1e-12);
    total.value += tail.value;
    total.error += tail.error;
  }
  return total;
}

}  // namespace

QuadResult quadrature_l1_norm(const RadialPotential& p) {
  return radial_quadrature(p, 0.0, [](double v) { return std::abs(v); });
}

QuadResult quadrature_integral_v(const RadialPotential& p) {
  return radial_quadrature(p, 0.0, [](double v) { return v; });
}

QuadResult quadrature_tail_integral(const RadialPotential& p, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("tail_integral requires R > 0");
  return radial_quadrature(p, R, [](double v) { return v; });
}

double l1_norm(const RadialPotential& p) {
  switch (p.kind()) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::square_well:
    case PotentialKind::barrier:
      return std::abs(p.depth()) * ball_volume_shell(p.radius(), p.inner_radius());
    case PotentialKind::gaussian: return std::abs(p.depth()) * gaussian_volume(p.sigma());
    case PotentialKind::sum_of_gaussians: {
      const auto& t = p.terms();
      const bool same_sign = std::all_of(t.begin(), t.end(), [&](const GaussianTerm& g) {
        return (g.depth >= 0.0) == (t.front().depth >= 0.0);
      });
      if (!same_sign) break;
      double s = 0.0;
      for (const auto& g : t) s += std::abs(g.depth) * gaussian_volume(g.sigma);
      return s;
    }
    default: break;
  }
  return quadrature_l1_norm(p).value;
}

double integral_v(const RadialPotential& p) {
  switch (p.kind()) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::square_well:
      return -p.depth() * ball_volume_shell(p.radius(), p.inner_radius());
    case PotentialKind::barrier:
      return p.depth() * ball_volume_shell(p.radius(), p.inner_radius());
    case PotentialKind::gaussian: return -p.depth() * gaussian_volume(p.sigma());
    case PotentialKind::sum_of_gaussians: {
      double s = 0.0;
      for (const auto& g : p.terms()) s -= g.depth * gaussian_volume(g.sigma);
      return s;
    }
    case PotentialKind::sum: {
      double s = 0.0;
      for (const auto& part : p.parts()) s += integral_v(part);
      return s;
    }
    case PotentialKind::tabulated: break;
  }
  return quadrature_integral_v(p).value;
}

double tail_integral(const RadialPotential& p, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("tail_integral requires R > 0");
  switch (p.kind()) {
    case PotentialKind::zero: return 0.0;
    case PotentialKind::square_well:
    case PotentialKind::barrier: {
      const double lo = std::max(R, p.inner_radius());
      if (lo >= p.radius()) return 0.0;
      const double sign = p.kind() == PotentialKind::barrier ? 1.0 : -1.0;
      return sign * p.depth() * ball_volume_shell(p.radius(), lo);
    }
    case PotentialKind::gaussian: return -p.depth() * gaussian_tail_volume(p.sigma(), R);
    case PotentialKind::sum_of_gaussians: {
      double s = 0.0;
      for (const auto& g : p.terms()) s -= g.depth * gaussian_tail_volume(g.sigma, R);
      return s;
    }
    case PotentialKind::sum: {
      double s = 0.0;
      for (const auto& part : p.parts()) s += tail_integral(part, R);
      return s;
    }
    case PotentialKind::tabulated: break;
  }
  if (R >= p.support_radius()) return 0.0;
  return quadrature_tail_integral(p, R).value;
}

AssumptionReport check_assumptions(const RadialPotential& p) {
  AssumptionReport report;
  const auto neg_three_halves = [](double v) { return v < 0.0 ? std::pow(-v, 1.5) : 0.0; };
  try {
    report.l1 = l1_norm(p);
    report.l1_finite = std::isfinite(report.l1);
  } catch (const Error&) {
    report.l1 = kInf;
  }
  try {
    report.negative_part_l32 = radial_quadrature(p, 0.0, neg_three_halves).value;
    report.negative_part_l32_finite = std::isfinite(report.negative_part_l32);
  } catch (const Error&) {
    report.negative_part_l32 = kInf;
  }

  // Tabulated data carries no information below its first sample. When the
  // first samples grow toward the origin, extend them as |v| ~ r^p and decide
  // integrability of that extension.
  if (p.kind() == PotentialKind::tabulated && p.samples_r().front() > 0.0) {
    const auto& r = p.samples_r();
    const auto& v = p.samples_v();
    const bool same_sign = (v[0] < 0.0 && v[1] < 0.0) || (v[0] > 0.0 && v[1] > 0.0);
    if (same_sign && std::abs(v[0]) > std::abs(v[1])) {
      const double exponent = std::log(std::abs(v[0] / v[1])) / std::log(r[0] / r[1]);
      report.origin_exponent = exponent;
      const double r0 = r[0];
      // 4 pi int_0^{r0} (|v0| (r/r0)^p)^q r^2 dr = 4 pi |v0|^q r0^3 / (p q + 3)
      const auto extension = [&](double q) {
        const double power = exponent * q + 3.0;
        if (power <= 0.0) return kInf;
        return kFourPi * std::pow(std::abs(v[0]), q) * r0 * r0 * r0 / power -
               kFourPi * std::pow(std::abs(v[0]), q) * r0 * r0 * r0 / 3.0;
      };
      // The bounded model already holds v = v0 on [0, r0]; replace it.
      const double l1_ext = extension(1.0);
      report.l1 += l1_ext;
      report.l1_finite = std::isfinite(report.l1);
      if (v[0] < 0.0) {
        report.negative_part_l32 += extension(1.5);
        report.negative_part_l32_finite = std::isfinite(report.negative_part_l32);
      }
    }
  }

  report.pass = report.l1_finite && report.negative_part_l32_finite;
  std::ostringstream msg;
  if (report.pass) {
    msg << "v in L^1 and v_- in L^{3/2}";
  } else {
    if (!report.l1_finite) msg << "||v||_1 diverges; ";
    if (!report.negative_part_l32_finite) msg << "int v_-^{3/2} diverges; ";
    if (report.origin_exponent) msg << "origin exponent " << *report.origin_exponent;
  }
  report.message = msg.str();
  return report;
}

}  // namespace scatcert
