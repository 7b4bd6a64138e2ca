#include "scatcert/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "scatcert/error.hpp"

namespace scatcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void append_uniform(std::vector<double>& nodes, double from, double to, double h) {
  const int m = std::max(1, static_cast<int>(std::ceil((to - from) / h - 1e-9)));
  for (int k = 1; k <= m; ++k) {
    nodes.push_back(k == m ? to : from + (to - from) * k / m);
  }
}

}  // namespace

std::vector<double> RadialGrid::nodes() const {
  if (n < 64) throw Error(ErrorCode::Config, "radial grid needs n >= 64");
  if (!(r_max > 0.0)) throw Error(ErrorCode::Config, "radial grid needs r_max > 0");
  const bool graded = spacing == GridSpacing::graded && core_radius > 0.0 && core_radius < r_max;
  const double core = graded ? core_radius : r_max;

  std::vector<double> cuts;
  for (double b : breakpoints) {
    if (b > 0.0 && b < core) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(core);

  const double h = core / n;
  std::vector<double> out;
  double from = 0.0;
  for (double to : cuts) {
    if (to > from) append_uniform(out, from, to, h);
    from = to;
  }
  if (graded) {
    const int n_ext = std::max(16, n / 4);
    const double ratio = r_max / core;
    for (int k = 1; k <= n_ext; ++k) {
      out.push_back(k == n_ext ? r_max : core * std::pow(ratio, static_cast<double>(k) / n_ext));
    }
    for (double b : breakpoints) {
      if (b > core && b < r_max) out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-12 * y; }),
              out.end());
  }
  return out;
}

RadialGrid RadialGrid::refined() const {
  RadialGrid g = *this;
  g.n *= 2;
  return g;
}

RadialGrid RadialGrid::for_potential(const RadialPotential& v, double R, int n,
                                     GridSpacing spacing) {
  RadialGrid g;
  g.r_max = R;
  g.n = n;
  g.spacing = spacing;
  const double cut = v.cut_radius();
  g.core_radius = cut > 0.0 ? std::min(R, cut) : R;
  for (double b : v.breakpoints()) {
    if (b < R) g.breakpoints.push_back(b);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Piecewise-linear profile

namespace {

std::size_t element_of(const std::vector<double>& r, double t) {
  const auto it = std::upper_bound(r.begin(), r.end(), t);
  std::size_t i = static_cast<std::size_t>(it - r.begin());
  if (i == 0) return 0;
  return std::min(i - 1, r.size() - 2);
}

}  // namespace

double ScatteringSolution::f(double t) const {
  if (t >= R) return 1.0;
  const std::size_t e = element_of(r, t);
  const double h = r[e + 1] - r[e];
  const double slope = (u[e + 1] - u[e]) / h;
  if (e == 0 || t <= 0.0) return slope;  // u linear through the origin
  return (u[e] + slope * (t - r[e])) / t;
}

double ScatteringSolution::phi(double t) const { return t >= R ? 1.0 : f(t); }

double ScatteringSolution::phi_prime(double t) const {
  if (t >= R || t <= 0.0) return 0.0;
  const std::size_t e = element_of(r, t);
  const double slope = (u[e + 1] - u[e]) / (r[e + 1] - r[e]);
  const double alpha = u[e] - slope * r[e];
  return -alpha / (t * t);
}

std::vector<double> ScatteringSolution::f_samples() const {
  std::vector<double> out(r.size());
  out[0] = u[1] / r[1];
  for (std::size_t i = 1; i < r.size(); ++i) out[i] = u[i] / r[i];
  return out;
}

// ---------------------------------------------------------------------------
// Finite-element solve of the Euler-Lagrange problem -2u'' + v u = 0,
// u(0) = 0, u(R) = R.

namespace {

struct Level {
  std::vector<double> r;
  std::vector<double> u;
  double functional_value = 0.0;
  double functional_flux = 0.0;
};

Level solve_level(const RadialPotential& v, double R, const std::vector<double>& mesh) {
  Level level;
  level.r.reserve(mesh.size() + 1);
  level.r.push_back(0.0);
  level.r.insert(level.r.end(), mesh.begin(), mesh.end());
  const auto& r = level.r;
  const std::size_t m = r.size() - 1;  // boundary node index

  const auto& rule = gauss_rule(5);
  std::vector<double> diag(m + 1, 0.0), off(m, 0.0);
  for (std::size_t e = 0; e < m; ++e) {
    const double ra = r[e], rb = r[e + 1], h = rb - ra;
    double maa = 0.0, mab = 0.0, mbb = 0.0;
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double s = 0.5 * (rule.x[q] + 1.0);
      const double w = 0.5 * h * rule.w[q];
      const double vq = v(ra + s * h);
      maa += w * vq * (1.0 - s) * (1.0 - s);
      mab += w * vq * (1.0 - s) * s;
      mbb += w * vq * s * s;
    }
    diag[e] += 2.0 / h + maa;
    diag[e + 1] += 2.0 / h + mbb;
    off[e] = -2.0 / h + mab;
  }

  // Interior unknowns 1..m-1; LDL^T elimination doubles as the positivity test.
  std::vector<double> d(m + 1, 0.0), rhs(m + 1, 0.0);
  rhs[m - 1] = -off[m - 1] * R;
  d[1] = diag[1];
  for (std::size_t i = 1; i < m; ++i) {
    if (i > 1) {
      const double l = off[i - 1] / d[i - 1];
      d[i] = diag[i] - l * off[i - 1];
      rhs[i] -= l * rhs[i - 1];
    }
    if (!(d[i] > 1e-14 * std::abs(diag[i]))) {
      throw Error(ErrorCode::NoMinimizer,
                  "quadratic form is not positive on the ball of radius " + std::to_string(R) +
                      " (zero-energy node near r = " + std::to_string(r[i]) + ")");
    }
  }
  level.u.assign(m + 1, 0.0);
  level.u[m] = R;
  level.u[m - 1] = rhs[m - 1] / d[m - 1];
  for (std::size_t i = m - 1; i-- > 1;) {
    level.u[i] = (rhs[i] - off[i] * level.u[i + 1]) / d[i];
  }
  const auto& u = level.u;

  // Volume form 4 pi int (2 f'^2 + v f^2) r^2 dr with f = u / r.
  double volume = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    const double ra = r[e], rb = r[e + 1], h = rb - ra;
    const double slope = (u[e + 1] - u[e]) / h;
    const double alpha = u[e] - slope * ra;
    if (e > 0) volume += 2.0 * alpha * alpha * (1.0 / ra - 1.0 / rb);
    for (std::size_t q = 0; q < rule.x.size(); ++q) {
      const double s = 0.5 * (rule.x[q] + 1.0);
      const double uq = u[e] + s * (u[e + 1] - u[e]);
      volume += 0.5 * h * rule.w[q] * v(ra + s * h) * uq * uq;
    }
  }
  level.functional_value = kFourPi * volume;

  // Boundary flux: int (2u'^2 + v u^2) = u(R) (K u)_R, minus the 2 u(R)^2 / R shift.
  const double flux = off[m - 1] * u[m - 1] + diag[m] * u[m];
  level.functional_flux = kFourPi * (R * flux - 2.0 * R);

  // The flux form assumes the interior equations hold exactly; solve residuals
  // of order eps |K| |u| per row bound how far the two forms can drift apart.
  double roundoff = 0.0;
  for (std::size_t i = 1; i < m; ++i) {
    roundoff += std::abs(u[i]) * (std::abs(diag[i] * u[i]) + std::abs(off[i - 1] * u[i - 1]) +
                                  std::abs(off[i] * u[i + 1]));
  }
  roundoff *= 4.0 * kFourPi * std::numeric_limits<double>::epsilon();
  if (std::abs(level.functional_value - level.functional_flux) >
      1e-8 * std::abs(level.functional_value) + roundoff) {
    throw Error(ErrorCode::Inconsistent,
                "volume and flux forms of the functional disagree at R = " + std::to_string(R));
  }
  return level;
}

}  // namespace

ScatteringSolution solve_a_R(const RadialPotential& v, double R, const RadialGrid& grid,
                             const SolveOptions& options) {
  if (!(R > 0.0)) throw std::invalid_argument("solve_a_R requires R > 0");
  if (std::abs(grid.r_max - R) > 1e-12 * R)
    throw std::invalid_argument("solve_a_R requires grid.r_max == R");

  std::optional<Level> coarse;
  if (options.check_refinement) coarse = solve_level(v, R, grid.nodes());
  Level fine = solve_level(v, R, grid.refined().nodes());

  ScatteringSolution sol;
  sol.R = R;
  sol.functional_value = fine.functional_value;
  sol.functional_flux = fine.functional_flux;
  sol.a_R = fine.functional_value / kEightPi;
  if (coarse) {
    sol.refinement_change = std::abs(sol.a_R - coarse->functional_value / kEightPi);
    if (sol.refinement_change > options.refine_tol * std::max(1.0, std::abs(sol.a_R))) {
      throw Error(ErrorCode::IllConditioned,
                  "a_R changed by " + std::to_string(sol.refinement_change) +
                      " under 2x refinement at R = " + std::to_string(R));
    }
  }
  sol.r = std::move(fine.r);
  sol.u = std::move(fine.u);

  double sup_phi_sq = 0.0;
  for (double fi : sol.f_samples()) sup_phi_sq = std::max(sup_phi_sq, fi * fi);
  sol.c = std::max(0.0, sup_phi_sq - 1.0);
  sol.tail = tail_integral(v, R);
  sol.b = sol.functional_value + sol.tail;
  return sol;
}

ScatteringSolution solve_a_R(const RadialPotential& v, double R) {
  return solve_a_R(v, R, RadialGrid::for_potential(v, R));
}

// ---------------------------------------------------------------------------
// Shooting

ShootingResult shoot_scattering_length(const RadialPotential& v, double r_start, double r_match) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  if (!(r_start > 0.0) || !(r_match > r_start))
    throw std::invalid_argument("shooting requires 0 < r_start < r_match");
  if (v.compact() && r_match < v.support_radius())
    throw std::invalid_argument("shooting requires r_match >= support radius");

  // v is sampled strictly inside the current segment so that stages landing on
  // a breakpoint see the one-sided value.
  double seg_lo = 0.0, seg_hi = r_match;
  const auto rhs = [&](const State& x, State& dxdr, double r) {
    const double inside = std::clamp(r, std::nextafter(seg_lo, seg_hi), std::nextafter(seg_hi, seg_lo));
    dxdr[0] = x[1];
    dxdr[1] = 0.5 * v(inside) * x[0];
  };

  auto stepper = odeint::make_controlled(1e-14, 1e-13, odeint::runge_kutta_fehlberg78<State>());

  // Regular series u = r (1 + v(0) r^2 / 12 + ...).
  const double v0 = v(0.0);
  State x{r_start * (1.0 + v0 * r_start * r_start / 12.0), 1.0 + v0 * r_start * r_start / 4.0};

  std::vector<double> stops;
  for (double b : v.breakpoints()) {
    if (b > r_start && b < r_match) stops.push_back(b);
  }
  stops.push_back(r_match);

  ShootingResult result;
  double r = r_start;
  double dr = std::min(1e-3 * (r_match - r_start), r_start * 10.0);
  const double scale = r_match;
  for (double stop : stops) {
    seg_lo = r;
    seg_hi = stop;
    while (r < stop) {
      if (r + dr > stop) dr = stop - r;
      const double u_prev = x[0];
      const auto outcome = stepper.try_step(rhs, x, r, dr);
      if (outcome == odeint::fail) {
        if (dr < 1e-15 * scale) {
          throw Error(ErrorCode::StepperFailure,
                      "step size underflow at r = " + std::to_string(r));
        }
        continue;
      }
      if (++result.steps > 10'000'000)
        throw Error(ErrorCode::StepperFailure, "step budget exhausted");
      if ((u_prev > 0.0 && x[0] <= 0.0) || (u_prev < 0.0 && x[0] >= 0.0)) ++result.node_count;
      if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
        throw Error(ErrorCode::StepperFailure, "non-finite state at r = " + std::to_string(r));
    }
    r = stop;
  }
  // Beyond the interaction u is linear; it still crosses zero if u u' < 0.
  if ((x[0] > 0.0 && x[1] < 0.0) || (x[0] < 0.0 && x[1] > 0.0)) ++result.node_count;
  result.node = result.node_count > 0;
  result.u_match = x[0];
  result.du_match = x[1];
  result.a = x[1] == 0.0 ? (x[0] > 0 ? -kInf : kInf) : r_match - x[0] / x[1];
  return result;
}

double default_length_scale(const RadialPotential& v) {
  const double s = v.length_scale();
  return s > 0.0 ? s : 1.0;
}

double default_match_radius(const RadialPotential& v) {
  if (v.kind() == PotentialKind::zero) return 1.0;
  if (v.compact()) return v.support_radius();
  return std::max(v.cut_radius(), 8.0 * v.length_scale());
}

ShootingResult shoot_scattering_length(const RadialPotential& v) {
  return shoot_scattering_length(v, 1e-6 * default_length_scale(v), default_match_radius(v));
}

std::vector<double> default_R_schedule(const RadialPotential& v) {
  const double base = default_match_radius(v);
  std::vector<double> out;
  for (int k = 0; k <= 10; ++k) out.push_back(base * std::ldexp(1.0, k));
  return out;
}

std::vector<double> default_b_schedule(const RadialPotential& v) {
  const double base = default_length_scale(v);
  std::vector<double> out;
  for (int k = 0; k <= 24; ++k) out.push_back(base * std::pow(2.0, 0.5 * k));
  return out;
}

// ---------------------------------------------------------------------------
// Limit R -> infinity

ScatteringLength limit_a(const RadialPotential& v, const std::vector<double>& R_schedule,
                         const LimitOptions& options) {
  if (R_schedule.size() < 3) throw Error(ErrorCode::Config, "R schedule needs >= 3 entries");
  for (std::size_t i = 1; i < R_schedule.size(); ++i) {
    if (!(R_schedule[i] > R_schedule[i - 1]))
      throw Error(ErrorCode::Config, "R schedule must be increasing");
  }

  ScatteringLength out;
  const auto shot = shoot_scattering_length(v);
  out.method_shooting = shot.a;
  out.node = shot.node;
  out.a = shot.a;

  // Exterior matching: for R beyond the interaction, u is linear and
  // a_R = a / (1 - a/R), i.e. a = a_R / (1 + a_R/R).
  std::vector<std::pair<double, double>> estimates;
  for (double R : R_schedule) {
    try {
      const auto sol = solve_a_R(v, R, RadialGrid::for_potential(v, R, options.grid_n));
      out.a_R_curve.emplace_back(R, sol.a_R);
      if (R >= default_match_radius(v) * (1.0 - 1e-12)) {
        estimates.emplace_back(R, sol.a_R / (1.0 + sol.a_R / R));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoMinimizer) throw;
      out.minus_infinity = true;
      break;
    }
  }

  if (out.minus_infinity) {
    out.extrapolation = "none";
    out.discrepancy = kInf;
    out.consistent = false;
    out.tolerance = options.tol * std::max(1.0, std::abs(out.a));
    return out;
  }
  if (estimates.empty())
    throw Error(ErrorCode::Config, "R schedule never reaches the match radius");

  double a_var = estimates.back().second;
  if (v.compact() || estimates.size() < 2) {
    out.extrapolation = "exterior_matching";
  } else {
    const auto [R1, e1] = estimates[estimates.size() - 2];
    const auto [R2, e2] = estimates.back();
    a_var = (R2 * e2 - R1 * e1) / (R2 - R1);
    out.extrapolation = "richardson_1/R";
    out.richardson_order = 1;
  }
  out.method_variational = a_var;
  out.discrepancy = std::abs(a_var - shot.a);
  out.tolerance = options.tol * std::max(1.0, std::abs(out.a));
  out.consistent = out.discrepancy <= out.tolerance;
  if (!shot.node && out.discrepancy > 10.0 * out.tolerance) {
    throw Error(ErrorCode::Inconsistent,
                "variational a = " + std::to_string(a_var) + " vs shooting a = " +
                    std::to_string(shot.a));
  }
  return out;
}

ScatteringLength limit_a(const RadialPotential& v) { return limit_a(v, default_R_schedule(v)); }

std::pair<double, ScatteringSolution> find_negative_b_radius(
    const RadialPotential& v, const ScatteringLength& length, const std::vector<double>& schedule,
    const SolutionFactory& factory, double margin_frac) {
  if (length.minus_infinity || length.node || !std::isfinite(length.a) || length.a >= 0.0) {
    throw Error(ErrorCode::NotCertifiable,
                "scattering length is not finite and negative (a = " + std::to_string(length.a) +
                    ")");
  }
  const double target = -margin_frac * kEightPi * std::abs(length.a);
  for (double R : schedule) {
    try {
      auto sol = factory(R);
      if (sol.b < 0.0 && sol.b <= target) return {R, std::move(sol)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoMinimizer) throw;
    }
  }
  throw Error(ErrorCode::SearchExhausted, "no radius on the schedule gives b below the margin");
}

std::pair<double, ScatteringSolution> find_negative_b_radius(const RadialPotential& v,
                                                             const ScatteringLength& length,
                                                             double margin_frac) {
  return find_negative_b_radius(
      v, length, default_b_schedule(v), [&v](double R) { return solve_a_R(v, R); }, margin_frac);
}

}  // namespace scatcert
