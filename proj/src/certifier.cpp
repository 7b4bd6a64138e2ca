#include "scatcert/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scatcert/error.hpp"

namespace scatcert {

// ---------------------------------------------------------------------------
// h

HProfile::HProfile(RadialPotential v, std::shared_ptr<const ScatteringSolution> sol)
    : v_(std::move(v)), sol_(std::move(sol)) {
  edges_ = sol_->r;
  const double R = sol_->R;
  const double range = std::max(R, v_.cut_radius());
  if (range > R) {
    std::vector<double> cuts;
    for (double b : v_.breakpoints()) {
      if (b > R && b < range) cuts.push_back(b);
    }
    cuts.push_back(range);
    const double width = (range - R) / 256.0;
    double from = R;
    for (double to : cuts) {
      const int m = std::max(1, static_cast<int>(std::ceil((to - from) / width)));
      for (int k = 1; k <= m; ++k) edges_.push_back(k == m ? to : from + (to - from) * k / m);
      from = to;
    }
  }
  if (!v_.compact()) neglected_tail = std::abs(tail_integral(v_, range));
}

double HProfile::operator()(double r) const {
  const double phi = sol_->phi(r);
  const double dphi = sol_->phi_prime(r);
  return 2.0 * dphi * dphi + v_(r) * phi * phi;
}

std::vector<std::pair<double, double>> HProfile::samples(int count) const {
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < count; ++i) {
    const double r = range() * (i + 0.5) / count;
    out.emplace_back(r, (*this)(r));
  }
  return out;
}

namespace {

// Gauss-5 on each panel and on its two halves; returns {fine, |fine - coarse|}.
template <class F>
std::pair<double, double> panel_quadrature(const std::vector<double>& edges, double limit, F f) {
  const auto& rule = gauss_rule(5);
  double coarse = 0.0, fine = 0.0;
  const auto apply = [&](double a, double b) {
    double s = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      s += rule.w[q] * f(a + 0.5 * (b - a) * (rule.x[q] + 1.0));
    }
    return 0.5 * (b - a) * s;
  };
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e];
    const double b = std::min(edges[e + 1], limit);
    if (!(b > a)) break;
    coarse += apply(a, b);
    const double mid = 0.5 * (a + b);
    fine += apply(a, mid) + apply(mid, b);
  }
  return {fine, std::abs(fine - coarse)};
}

}  // namespace

HProfile build_h(std::shared_ptr<const ScatteringSolution> sol, const RadialPotential& v) {
  HProfile h(v, sol);
  const auto [value, error] =
      panel_quadrature(h.panels(), h.range(), [&](double r) { return kFourPi * h(r) * r * r; });
  h.b_check = value;
  h.b_check_error = error;
  h.abs_integral = panel_quadrature(h.panels(), h.range(), [&](double r) {
                     return kFourPi * std::abs(h(r)) * r * r;
                   }).first;
  // b includes the whole tail of v while the panels stop at the cut radius.
  const double expected = sol->b;
  if (std::abs(h.b_check - expected) > 1e-8 * std::abs(expected) + h.neglected_tail) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "integral of h = " << h.b_check << " but b = " << expected;
    throw Error(ErrorCode::InconsistentB, msg.str());
  }
  return h;
}

// ---------------------------------------------------------------------------
// Autocorrelation of g^2

namespace {
constexpr int kPrimitiveCells = 2048;
}

AutoCorrelation::AutoCorrelation(const TrialProfile& profile, double L)
    : profile_(profile), L_(L) {
  if (!(L > 0.0)) throw std::invalid_argument("autocorrelation requires L > 0");
  step_ = L / kPrimitiveCells;
  table_.assign(kPrimitiveCells + 1, 0.0);
  const auto& rule = gauss_rule(10);
  for (int k = 0; k < kPrimitiveCells; ++k) {
    const double lo = k * step_;
    double s = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double t = lo + 0.5 * step_ * (rule.x[q] + 1.0);
      s += rule.w[q] * t * density(t);
    }
    table_[k + 1] = table_[k] + 0.5 * step_ * s;
  }
  double z = 0.0;
  for (int k = 0; k < kPrimitiveCells; ++k) {
    const double lo = k * step_;
    double s = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double t = lo + 0.5 * step_ * (rule.x[q] + 1.0);
      const double d = density(t);
      s += rule.w[q] * t * t * d * d;
    }
    z += 0.5 * step_ * s;
  }
  at_zero_ = kFourPi * z;
}

double AutoCorrelation::density(double t) const {
  const double g = profile_.g0(t / L_);
  return g * g / (L_ * L_ * L_);
}

double AutoCorrelation::primitive(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= L_) return table_.back();
  const int k = std::min(static_cast<int>(x / step_), kPrimitiveCells - 1);
  const double x0 = k * step_;
  const double x1 = x0 + step_;
  const double s = (x - x0) / step_;
  // Cubic Hermite with exact end slopes t g(t)^2.
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * table_[k] + h10 * step_ * x0 * density(x0) + h01 * table_[k + 1] +
         h11 * step_ * x1 * density(x1);
}

double AutoCorrelation::inner(double lo, double hi) const {
  hi = std::min(hi, L_);
  if (!(hi > lo)) return 0.0;
  if (hi - lo < 8.0 * step_) {
    const auto& rule = gauss_rule(10);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double t = lo + 0.5 * (hi - lo) * (rule.x[q] + 1.0);
      s += rule.w[q] * t * density(t);
    }
    return 0.5 * (hi - lo) * s;
  }
  return primitive(hi) - primitive(lo);
}

double AutoCorrelation::operator()(double r) const {
  if (r <= 0.0) return at_zero_;
  if (r >= 2.0 * L_) return 0.0;
  std::vector<double> cuts{std::max(0.0, r - L_)};
  if (r < L_) {
    cuts.push_back(r);
    cuts.push_back(L_ - r);
  }
  cuts.push_back(L_);
  std::sort(cuts.begin(), cuts.end());
  const auto& rule = gauss_rule(20);
  constexpr int kPanels = 4;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    const double w = (b - a) / kPanels;
    for (int p = 0; p < kPanels; ++p) {
      const double pa = a + p * w;
      double s = 0.0;
      for (std::size_t q = 0; q < rule.x.size(); ++q) {
        const double t = pa + 0.5 * w * (rule.x[q] + 1.0);
        s += rule.w[q] * t * density(t) * inner(std::abs(t - r), t + r);
      }
      total += 0.5 * w * s;
    }
  }
  return 2.0 * kPi / r * total;
}

AutoCorrelation autocorrelation_g2(const TrialProfile& profile, double L) {
  return AutoCorrelation(profile, L);
}

// ---------------------------------------------------------------------------
// First term

namespace {

// Barycentric interpolation at Chebyshev points of the second kind on [0, D].
class ChebyshevInterpolant {
 public:
  ChebyshevInterpolant(const AutoCorrelation& f, double D, int degree) : D_(D) {
    for (int j = 0; j <= degree; ++j) {
      const double x = 0.5 * D * (1.0 - std::cos(kPi * j / degree));
      nodes_.push_back(x);
      values_.push_back(f(x));
      double w = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j == degree) w *= 0.5;
      weights_.push_back(w);
    }
  }

  double operator()(double x) const {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      const double d = x - nodes_[j];
      if (d == 0.0) return values_[j];
      const double t = weights_[j] / d;
      num += t * values_[j];
      den += t;
    }
    return num / den;
  }

 private:
  double D_;
  std::vector<double> nodes_, values_, weights_;
};

}  // namespace

FirstTerm first_term(const HProfile& h, const AutoCorrelation& correlation) {
  const double D = std::min(h.range(), 2.0 * correlation.L());
  const ChebyshevInterpolant fine(correlation, D, 64);
  const ChebyshevInterpolant coarse(correlation, D, 32);

  const auto [value, panel_error] = panel_quadrature(
      h.panels(), D, [&](double r) { return kFourPi * h(r) * fine(r) * r * r; });

  double interp_error = 0.0;
  constexpr int kProbe = 257;
  for (int i = 0; i < kProbe; ++i) {
    const double r = D * (i + 0.5) / kProbe;
    interp_error = std::max(interp_error, std::abs(fine(r) - coarse(r)));
  }

  FirstTerm out;
  out.I_L = value;
  out.error = panel_error + interp_error * h.abs_integral +
              correlation.at_zero() * h.neglected_tail;
  if (out.error > 1e-3 * std::abs(out.I_L) && out.error > 0.0) {
    throw Error(ErrorCode::NotConverged, "first-term error estimate " + std::to_string(out.error) +
                                             " exceeds 1e-3 |I_L| at L = " +
                                             std::to_string(correlation.L()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bound

BoundEvaluation bound_B(std::int64_t N, double L, const TrialProfile& profile,
                        const FirstTerm& first, const ScatteringSolution& sol, double v_l1) {
  if (N < 2 || !(L > 0.0)) throw std::invalid_argument("bound_B requires N >= 2 and L > 0");
  const double n = static_cast<double>(N);
  const double R3 = sol.R * sol.R * sol.R;
  const double g4 = profile.norm4_4_at(L);
  const double ginf = profile.norm_inf_sq_at(L);

  BoundEvaluation e;
  e.N = N;
  e.L = L;
  e.I_L = first.I_L;
  e.term_main = 0.5 * n * (n - 1.0) * first.I_L;
  e.term_kinetic = (1.0 + sol.c) * n * profile.lap_neg_l1_at(L);
  e.term_threebody =
      (1.0 + sol.c) * n * (kPi / 3.0) * n * n * R3 * v_l1 * g4 * (n * g4 + 4.0 * ginf);
  e.B = e.term_main + e.term_kinetic + e.term_threebody;
  e.quadrature_error = 0.5 * n * (n - 1.0) * first.error +
                       e.term_kinetic * profile.lap_neg_l1_error / profile.lap_neg_l1 +
                       e.term_threebody * 2.0 * profile.norm4_4_error / profile.norm4_4;
  return e;
}

BoundEvaluation bound_B(std::int64_t N, double L, const TrialProfile& profile, const HProfile& h,
                        const ScatteringSolution& sol, const RadialPotential& v) {
  return bound_B(N, L, profile, first_term(h, autocorrelation_g2(profile, L)), sol, l1_norm(v));
}

// ---------------------------------------------------------------------------
// Search

CertifierContext prepare_certifier(const RadialPotential& v, const ScatteringLength& length,
                                   const CertifyConfig& config) {
  CertifierContext ctx{v, length, nullptr, build_trial_profile(config.profile), nullptr, 0.0};
  auto [R, sol] = find_negative_b_radius(
      v, length, default_b_schedule(v),
      [&](double r) {
        return solve_a_R(v, r, RadialGrid::for_potential(v, r, config.grid_n));
      },
      config.b_margin_frac);
  (void)R;
  ctx.sol = std::make_shared<const ScatteringSolution>(std::move(sol));
  ctx.h = std::make_shared<const HProfile>(build_h(ctx.sol, v));
  ctx.v_l1 = l1_norm(v);
  return ctx;
}

CertifierContext prepare_certifier(const RadialPotential& v, const CertifyConfig& config) {
  LimitOptions options;
  options.tol = config.tol;
  options.grid_n = config.grid_n;
  return prepare_certifier(v, limit_a(v, default_R_schedule(v), options), config);
}

std::vector<std::int64_t> candidate_N(double L, int samples) {
  const auto lo = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(L)));
  const auto hi = static_cast<std::int64_t>(std::floor(std::pow(L, 1.5)));
  std::vector<std::int64_t> out;
  if (hi < lo) return out;
  out.push_back(lo);
  out.push_back(hi);
  out.push_back(std::clamp(static_cast<std::int64_t>(std::llround(std::pow(L, 1.25))), lo, hi));
  const double ratio = static_cast<double>(hi) / static_cast<double>(lo);
  for (int k = 1; k + 1 < samples; ++k) {
    const double n = static_cast<double>(lo) * std::pow(ratio, static_cast<double>(k) / (samples - 1));
    out.push_back(std::clamp(static_cast<std::int64_t>(std::llround(n)), lo, hi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SweepResult sweep_bounds(const CertifierContext& ctx, const CertifyConfig& config,
                         bool stop_at_first) {
  SweepResult result;
  const double R = ctx.sol->R;
  for (int k = config.L_min_exponent; k <= config.L_max_exponent; ++k) {
    const double L = R * std::ldexp(1.0, k);
    if (config.L_max && L > *config.L_max * (1.0 + 1e-12)) break;
    result.largest_L = L;
    const auto first = first_term(*ctx.h, autocorrelation_g2(ctx.profile, L));
    for (std::int64_t N : candidate_N(L, config.N_samples)) {
      SweepPoint point;
      point.eval = bound_B(N, L, ctx.profile, first, *ctx.sol, ctx.v_l1);
      point.certified = point.eval.B + point.eval.quadrature_error < -config.margin;
      result.points.push_back(point);
      if (point.certified && !result.first_certified) {
        result.first_certified = result.points.size() - 1;
        if (stop_at_first) return result;
      }
    }
  }
  return result;
}

Certificate search_certificate(const CertifierContext& ctx, const CertifyConfig& config) {
  auto sweep = sweep_bounds(ctx, config, true);
  if (!sweep.first_certified) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "no certified (N, L) up to L = " << sweep.largest_L;
    const auto best = std::min_element(
        sweep.points.begin(), sweep.points.end(),
        [](const SweepPoint& x, const SweepPoint& y) { return x.eval.B < y.eval.B; });
    if (best != sweep.points.end()) {
      msg << "; minimal B = " << best->eval.B << " at N = " << best->eval.N
          << ", L = " << best->eval.L;
    }
    throw Error(ErrorCode::SearchExhausted, msg.str());
  }
  const auto& hit = sweep.points[*sweep.first_certified];
  Certificate cert;
  cert.potential = ctx.potential;
  cert.a = ctx.length.a;
  cert.R = ctx.sol->R;
  cert.b = ctx.sol->b;
  cert.c = ctx.sol->c;
  cert.profile = ctx.profile.kind();
  cert.bound = hit.eval;
  cert.error_budget = hit.eval.quadrature_error;
  cert.verified = hit.eval.B + cert.error_budget < 0.0;
  cert.node = ctx.length.node;
  cert.length = ctx.length;
  cert.sweep = std::move(sweep.points);
  return cert;
}

Certificate search_certificate(const RadialPotential& v, const CertifyConfig& config) {
  return search_certificate(prepare_certifier(v, config), config);
}

}  // namespace scatcert
