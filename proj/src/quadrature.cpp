#include "scatcert/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "scatcert/error.hpp"

namespace scatcert {
namespace {

template <unsigned N>
GaussRule expand_rule() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  GaussRule rule;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (abscissa[i] == 0.0) {
      rule.x.push_back(0.0);
      rule.w.push_back(weights[i]);
    } else {
      rule.x.push_back(-abscissa[i]);
      rule.w.push_back(weights[i]);
      rule.x.push_back(abscissa[i]);
      rule.w.push_back(weights[i]);
    }
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  static const GaussRule r4 = expand_rule<4>();
  static const GaussRule r5 = expand_rule<5>();
  static const GaussRule r8 = expand_rule<8>();
  static const GaussRule r10 = expand_rule<10>();
  static const GaussRule r16 = expand_rule<16>();
  static const GaussRule r20 = expand_rule<20>();
  static const GaussRule r30 = expand_rule<30>();
  switch (n) {
    case 4: return r4;
    case 5: return r5;
    case 8: return r8;
    case 10: return r10;
    case 16: return r16;
    case 20: return r20;
    case 30: return r30;
    default: throw std::invalid_argument("unsupported Gauss-Legendre order");
  }
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     std::span<const double> breakpoints, double rel_tol, double abs_tol) {
  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);

  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  QuadResult total;
  double l1_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    double err = 0.0;
    double l1 = 0.0;
    const double value = GK::integrate(f, cuts[i], cuts[i + 1], 20, rel_tol, &err, &l1);
    total.value += value;
    total.error += err;
    l1_total += l1;
  }
  if (!std::isfinite(total.value) || !std::isfinite(total.error) ||
      total.error > std::max(abs_tol, 1e-6 * l1_total)) {
    throw Error(ErrorCode::DivergentNorm,
                "quadrature did not converge (estimate " + std::to_string(total.value) +
                    ", error " + std::to_string(total.error) + ")");
  }
  return total;
}

}  // namespace scatcert
