#include "scatcert/two_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scatcert/error.hpp"
#include "scatcert/scattering.hpp"

namespace scatcert {

int sturm_count(const std::vector<double>& diag, const std::vector<double>& off, double lambda) {
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const double coupling = i == 0 ? 0.0 : off[i - 1] * off[i - 1] / d;
    d = diag[i] - lambda - coupling;
    if (d == 0.0) d = -std::numeric_limits<double>::epsilon() * (std::abs(diag[i]) + 1.0);
    if (d < 0.0) ++count;
  }
  return count;
}

namespace {

struct Operator {
  std::vector<double> r;     // interior nodes
  std::vector<double> diag;  // symmetrized M^{-1/2} (K + V) M^{-1/2}
  std::vector<double> off;
  std::vector<double> mass;
};

Operator discretize(const RadialPotential& v, double r_max, int n) {
  RadialGrid grid;
  grid.r_max = r_max;
  grid.n = n;
  grid.spacing = GridSpacing::uniform;
  grid.breakpoints = v.breakpoints();
  std::vector<double> nodes{0.0};
  const auto mesh = grid.nodes();
  nodes.insert(nodes.end(), mesh.begin(), mesh.end());

  Operator op;
  const std::size_t m = nodes.size() - 2;
  op.r.assign(nodes.begin() + 1, nodes.end() - 1);
  op.diag.resize(m);
  op.off.resize(m > 0 ? m - 1 : 0);
  op.mass.resize(m);
  std::vector<double> stiff_off(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double ri = nodes[i + 1];
    const double hl = ri - nodes[i];
    const double hr = nodes[i + 2] - ri;
    // One-sided samples so that a jump located on a node is averaged with
    // the adjacent cell widths.
    const double v_left = v(std::nextafter(ri, 0.0));
    const double v_right = v(std::nextafter(ri, r_max + 1.0));
    op.mass[i] = 0.5 * (hl + hr);
    op.diag[i] = 2.0 / hl + 2.0 / hr + 0.5 * (hl * v_left + hr * v_right);
    stiff_off[i] = -2.0 / hr;
  }
  for (std::size_t i = 0; i < m; ++i) {
    op.diag[i] /= op.mass[i];
    if (i + 1 < m) op.off[i] = stiff_off[i] / std::sqrt(op.mass[i] * op.mass[i + 1]);
  }
  return op;
}

double lowest_eigenvalue(const Operator& op) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < op.diag.size(); ++i) {
    const double radius = (i > 0 ? std::abs(op.off[i - 1]) : 0.0) +
                          (i < op.off.size() ? std::abs(op.off[i]) : 0.0);
    lo = std::min(lo, op.diag[i] - radius);
    hi = std::max(hi, op.diag[i] + radius);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid)))
      break;
    if (sturm_count(op.diag, op.off, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// A few inverse-iteration sweeps at the converged eigenvalue.
std::vector<double> eigenvector(const Operator& op, double lambda) {
  const std::size_t m = op.diag.size();
  std::vector<double> y(m, 1.0), d(m), rhs(m);
  const double shift = lambda - 1e-10 * std::max(1.0, std::abs(lambda));
  for (int sweep = 0; sweep < 3; ++sweep) {
    rhs = y;
    d[0] = op.diag[0] - shift;
    for (std::size_t i = 1; i < m; ++i) {
      const double l = op.off[i - 1] / d[i - 1];
      d[i] = op.diag[i] - shift - l * op.off[i - 1];
      rhs[i] -= l * rhs[i - 1];
    }
    y[m - 1] = rhs[m - 1] / d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) y[i] = (rhs[i] - op.off[i] * y[i + 1]) / d[i];
    double norm = 0.0;
    for (double yi : y) norm += yi * yi;
    norm = std::sqrt(norm);
    for (double& yi : y) yi /= norm;
  }
  // Back to u = M^{-1/2} y with int u^2 dr = sum m_i u_i^2 = 1; fix the sign.
  std::vector<double> u(m);
  for (std::size_t i = 0; i < m; ++i) u[i] = y[i] / std::sqrt(op.mass[i]);
  const auto peak = std::max_element(u.begin(), u.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*peak < 0.0) {
    for (double& ui : u) ui = -ui;
  }
  return u;
}

}  // namespace

TwoBodyResult ground_state_energy(const RadialPotential& v, double r_max, int n) {
  const double reach = v.compact() ? v.support_radius() : v.cut_radius();
  if (r_max < 10.0 * reach * (1.0 - 1e-12))
    throw Error(ErrorCode::Config, "two-body box must extend to 10x the interaction range");
  if (n < 64) throw Error(ErrorCode::Config, "two-body grid needs n >= 64");

  TwoBodyResult result;
  result.grid_report.r_max = r_max;
  result.grid_report.n = n;
  Operator finest;
  for (int level = 0; level < 3; ++level) {
    auto op = discretize(v, r_max, n << level);
    result.grid_report.raw[level] = lowest_eigenvalue(op);
    if (level == 2) finest = std::move(op);
  }
  const auto& raw = result.grid_report.raw;
  const double coarse = (4.0 * raw[1] - raw[0]) / 3.0;
  const double fine = (4.0 * raw[2] - raw[1]) / 3.0;
  result.grid_report.extrapolated_coarse = coarse;
  result.grid_report.extrapolated_fine = fine;
  if (std::abs(fine - coarse) > 1e-8 * std::max(1.0, std::abs(fine))) {
    throw Error(ErrorCode::NotConverged, "two-body eigenvalue extrapolants disagree: " +
                                             std::to_string(coarse) + " vs " +
                                             std::to_string(fine));
  }
  result.lowest_dirichlet = fine;
  result.E2 = std::min(fine, 0.0);
  result.bound_state_exists = result.E2 < -kBoundStateTolerance;
  if (result.bound_state_exists) {
    result.r = finest.r;
    result.eigenprofile = eigenvector(finest, raw[2]);
  }
  return result;
}

TwoBodyResult ground_state_energy(const RadialPotential& v) {
  const double reach = v.compact() ? v.support_radius() : v.cut_radius();
  const double r_max = std::max(20.0 * default_length_scale(v), 10.0 * reach);
  auto result = ground_state_energy(v, r_max, 4000);
  // A weakly bound state decays like exp(-sqrt(-E/2) r); the Dirichlet wall
  // must sit many decay lengths out or it lifts the level.
  if (result.bound_state_exists) {
    const double decay = 1.0 / std::sqrt(-0.5 * result.E2);
    const double wanted = std::min(16.0 * decay, 1e4 * r_max);
    if (wanted > r_max) {
      const int n = static_cast<int>(std::min(4000.0 * wanted / r_max, 64000.0));
      result = ground_state_energy(v, wanted, n);
    }
  }
  return result;
}

}  // namespace scatcert
