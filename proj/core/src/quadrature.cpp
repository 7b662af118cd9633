#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>

#include "fhartree/diagnostics.hpp"
#include "fhartree/errors.hpp"

namespace fhartree {

double resolvent_normalization(double s) { return std::sqrt(std::sin(std::numbers::pi * s) / std::numbers::pi); }

QuadratureRule QuadratureRule::make(double s, int node_count, double m_min, double m_max) {
  if (!(s > 0.0 && s < 1.0)) throw ValidationError("quadrature: s must lie in (0,1)");
  if (node_count < 10) throw ValidationError("quadrature: need at least 10 nodes");
  if (!(m_min > 0.0 && m_max > m_min)) throw ValidationError("quadrature: need 0 < m_min < m_max");

  using gl = boost::math::quadrature::gauss<double, 10>;
  const auto& abscissa = gl::abscissa();
  const auto& gl_weights = gl::weights();
  // Boost stores the non-negative half of the symmetric rule.
  std::vector<double> x;
  std::vector<double> w;
  for (std::size_t i = abscissa.size(); i-- > 0;) {
    if (abscissa[i] == 0.0) continue;
    x.push_back(-abscissa[i]);
    w.push_back(gl_weights[i]);
  }
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    x.push_back(abscissa[i]);
    w.push_back(gl_weights[i]);
  }

  QuadratureRule q;
  q.s = s;
  q.m_min = m_min;
  q.m_max = m_max;
  const int panels = (node_count + 9) / 10;
  const double y0 = std::log(m_min);
  const double width = (std::log(m_max) - y0) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = y0 + (p + 0.5) * width;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double y = mid + 0.5 * width * x[i];
      q.nodes.push_back(std::exp(y));
      q.weights.push_back(0.5 * width * w[i] * std::exp((s + 1.0) * y));
    }
  }
  q.upper_tail_weight = std::pow(m_max, s - 1.0) / (1.0 - s);
  return q;
}

}  // namespace fhartree
