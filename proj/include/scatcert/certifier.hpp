#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scatcert/potential.hpp"
#include "scatcert/scattering.hpp"
#include "scatcert/trial_profile.hpp"

namespace scatcert {

/// Effective pair kernel h(r) = 2 phi'(r)^2 + v(r) phi(r)^2 with quadrature
/// panels covering [0, R_h]; panel edges sit on mesh nodes and breakpoints.
class HProfile {
 public:
  HProfile(RadialPotential v, std::shared_ptr<const ScatteringSolution> sol);

  double operator()(double r) const;
  const std::vector<double>& panels() const { return edges_; }
  double range() const { return edges_.back(); }

  double b_check = 0.0;        // 4 pi int h r^2 dr
  double b_check_error = 0.0;
  double abs_integral = 0.0;   // 4 pi int |h| r^2 dr
  double neglected_tail = 0.0; // |4 pi int_{R_h}^inf v r^2 dr|

  std::vector<std::pair<double, double>> samples(int count) const;

 private:
  RadialPotential v_;
  std::shared_ptr<const ScatteringSolution> sol_;
  std::vector<double> edges_;
};

/// Throws Error(InconsistentB) if the integral of h misses sol.b by more than
/// 1e-8 |b|.
HProfile build_h(std::shared_ptr<const ScatteringSolution> sol, const RadialPotential& v);

/// C_L(r) = int g(y)^2 g(y + z)^2 dy for |z| = r and the orbital at scale L,
/// via the bipolar reduction (2 pi / r) int int g^2(s) g^2(t) s t ds dt over
/// |r - s| <= t <= r + s.
class AutoCorrelation {
 public:
  AutoCorrelation(const TrialProfile& profile, double L);

  double operator()(double r) const;
  double at_zero() const { return at_zero_; }
  double L() const { return L_; }

 private:
  double density(double t) const;        // g(t)^2
  double inner(double lo, double hi) const;  // int_lo^hi t g(t)^2 dt
  double primitive(double x) const;      // int_0^x t g(t)^2 dt

  TrialProfile profile_;
  double L_;
  double at_zero_ = 0.0;
  double step_ = 0.0;
  std::vector<double> table_;
};

AutoCorrelation autocorrelation_g2(const TrialProfile& profile, double L);

struct FirstTerm {
  double I_L = 0.0;
  double error = 0.0;
};

/// I_L = 4 pi int h(r) C_L(r) r^2 dr. C_L is interpolated at Chebyshev
/// points over the range of h; the error combines panel doubling, the
/// interpolation degree change and the neglected potential tail. Throws
/// Error(NotConverged) if the error exceeds 1e-3 |I_L|.
FirstTerm first_term(const HProfile& h, const AutoCorrelation& correlation);

struct BoundEvaluation {
  std::int64_t N = 0;
  double L = 0.0;
  double I_L = 0.0;
  double term_main = 0.0;
  double term_kinetic = 0.0;
  double term_threebody = 0.0;
  double B = 0.0;
  double quadrature_error = 0.0;
};

/// Combined upper bound on <Psi|H_N Psi> for Psi = phi(t) prod g(x_k):
///   N(N-1)/2 I_L + (1+c) N ( ||[g Delta g]_-||_1
///     + (pi/3) N^2 R^3 ||v||_1 ||g||_4^4 (N ||g||_4^4 + 4 ||g||_inf^2) ).
BoundEvaluation bound_B(std::int64_t N, double L, const TrialProfile& profile,
                        const FirstTerm& first, const ScatteringSolution& sol, double v_l1);
BoundEvaluation bound_B(std::int64_t N, double L, const TrialProfile& profile, const HProfile& h,
                        const ScatteringSolution& sol, const RadialPotential& v);

struct CertifyConfig {
  ProfileKind profile = ProfileKind::cos2_bump;
  int L_min_exponent = 2;   // L = R * 2^k
  int L_max_exponent = 16;
  std::optional<double> L_max;  // absolute cap on L
  int N_samples = 48;       // geometric sub-sampling of [ceil(L), floor(L^{3/2})]
  double margin = 0.0;      // require B + error < -margin
  double b_margin_frac = 0.5;
  double tol = 1e-6;        // scattering-length consistency
  int grid_n = 2048;
};

struct SweepPoint {
  BoundEvaluation eval;
  bool certified = false;
};

struct Certificate {
  RadialPotential potential;
  double a = 0.0;
  double R = 0.0;
  double b = 0.0;
  double c = 0.0;
  ProfileKind profile = ProfileKind::cos2_bump;
  BoundEvaluation bound;
  double error_budget = 0.0;
  bool verified = false;
  bool node = false;
  ScatteringLength length;
  std::vector<SweepPoint> sweep;  // every (N, L) evaluated, in search order
};

/// Shared state for the bound: a, R, the minimizer, h and the trial profile.
struct CertifierContext {
  RadialPotential potential;
  ScatteringLength length;
  std::shared_ptr<const ScatteringSolution> sol;
  TrialProfile profile;
  std::shared_ptr<const HProfile> h;
  double v_l1 = 0.0;
};

/// Throws Error(NotCertifiable) unless a is finite and negative.
CertifierContext prepare_certifier(const RadialPotential& v, const ScatteringLength& length,
                                   const CertifyConfig& config);
CertifierContext prepare_certifier(const RadialPotential& v, const CertifyConfig& config);

/// Candidate particle numbers for one L, increasing.
std::vector<std::int64_t> candidate_N(double L, int samples);

struct SweepResult {
  std::vector<SweepPoint> points;
  std::optional<std::size_t> first_certified;
  double largest_L = 0.0;
};

/// Evaluates B over the (L, N) schedule in lexicographic order.
SweepResult sweep_bounds(const CertifierContext& context, const CertifyConfig& config,
                         bool stop_at_first);

/// Scans L = R 2^k and N in the window for the first (L, N), lexicographic,
/// with B + error < -margin. Throws Error(SearchExhausted) with diagnostics.
Certificate search_certificate(const CertifierContext& context, const CertifyConfig& config);
Certificate search_certificate(const RadialPotential& v, const CertifyConfig& config = {});

}  // namespace scatcert
