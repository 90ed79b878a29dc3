#include "oudesign/fisher.hpp"

#include <cmath>
#include <string>

#include "oudesign/design_opt.hpp"

namespace oudesign {

namespace {

void require_above_floor(const std::vector<double>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < kSkewedIncrementFloor)
      throw DegenerateDesign("skewed increment " + std::to_string(i) +
                             " below floor (" + std::to_string(x[i]) + ")");
}

std::vector<double> weights_of(const std::vector<double>& x) {
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) w[i] = increment_weight(x[i]);
  return w;
}

// Nonnegative double-sum form of the determinant.
double phi_from(const std::vector<double>& d, const std::vector<double>& delta,
                const std::vector<double>& w) {
  double total = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const double cross = d[i] * delta[j] - d[j] * delta[i];
      total += cross * cross * w[i] * w[j];
    }
  return total;
}

}  // namespace

double increment_weight(double x) {
  const double q2 = std::exp(-2.0 * x);
  const double one_minus_q2 = -std::expm1(-2.0 * x);
  return q2 * (1.0 + q2) / (one_minus_q2 * one_minus_q2);
}

double increment_weight_slope(double x) {
  const double q2 = std::exp(-2.0 * x);
  const double one_minus_q2 = -std::expm1(-2.0 * x);
  return q2 * (1.0 + 3.0 * q2) / (one_minus_q2 * one_minus_q2 * one_minus_q2);
}

double trend_information(const MonotoneDesign& design,
                         const CovarianceParams& params) {
  double total = 1.0;
  for (double x : skewed_increments(design, params))
    total += std::tanh(0.5 * x);
  return total;
}

double trend_information_equidistant(std::size_t n, double lambda) {
  if (n < 2) throw DomainError("equidistant trend information needs n >= 2");
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  const double m = static_cast<double>(n - 1);
  return 1.0 + m * std::tanh(lambda / (2.0 * m));
}

TrendInformationBounds trend_information_bounds(std::size_t n, double lambda) {
  if (n < 2) throw DomainError("trend information bounds need n >= 2");
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  return {lambda / 2.0 + 1.0, static_cast<double>(n)};
}

FisherMatrix covariance_information(const MonotoneDesign& design,
                                    const CovarianceParams& params) {
  const auto x = skewed_increments(design, params);
  require_above_floor(x);
  const auto w = weights_of(x);
  const auto& d = design.d();
  const auto& delta = design.delta();
  FisherMatrix m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m.m_alpha += d[i] * d[i] * w[i];
    m.m_beta += delta[i] * delta[i] * w[i];
    m.m_alpha_beta += d[i] * delta[i] * w[i];
  }
  m.phi = phi_from(d, delta, w);
  return m;
}

double phi(const MonotoneDesign& design, const CovarianceParams& params) {
  const auto x = skewed_increments(design, params);
  require_above_floor(x);
  return phi_from(design.d(), design.delta(), weights_of(x));
}

double psi(const MonotoneDesign& design, const CovarianceParams& params) {
  if (design.size() < 3) return 0.0;
  const auto x = skewed_increments(design, params);
  require_above_floor(x);
  const double phi_value = phi_from(design.d(), design.delta(), weights_of(x));
  double m_theta = 2.0 / (1.0 + std::exp(-x[0]));
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double q = std::exp(-x[i]);
    m_theta += (1.0 - q) / (1.0 + q);
  }
  return m_theta * phi_value;
}

IncrementGradient phi_gradient(const MonotoneDesign& design,
                               const CovarianceParams& params) {
  const std::size_t m = design.size() == 0 ? 0 : design.size() - 1;
  IncrementGradient grad{std::vector<double>(m, 0.0),
                         std::vector<double>(m, 0.0)};
  if (m < 2) return grad;  // Phi vanishes identically

  const auto x = skewed_increments(design, params);
  require_above_floor(x);
  const auto& d = design.d();
  const auto& delta = design.delta();
  const auto w = weights_of(x);

  // a = d^2 w, b = delta^2 w, c = d delta w; S*(i) accumulates all j != i
  // as head(i) + tail(i) from two prefix passes.
  std::vector<double> a(m), b(m), c(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = d[i] * d[i] * w[i];
    b[i] = delta[i] * delta[i] * w[i];
    c[i] = d[i] * delta[i] * w[i];
  }
  std::vector<double> head_a(m, 0.0), head_b(m, 0.0), head_c(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    head_a[i] = head_a[i - 1] + a[i - 1];
    head_b[i] = head_b[i - 1] + b[i - 1];
    head_c[i] = head_c[i - 1] + c[i - 1];
  }
  double tail_a = 0.0, tail_b = 0.0, tail_c = 0.0;
  std::vector<double> sum_a(m), sum_b(m), sum_c(m);
  for (std::size_t i = m; i-- > 0;) {
    sum_a[i] = head_a[i] + tail_a;
    sum_b[i] = head_b[i] + tail_b;
    sum_c[i] = head_c[i] + tail_c;
    tail_a += a[i];
    tail_b += b[i];
    tail_c += c[i];
  }

  for (std::size_t i = 0; i < m; ++i) {
    const double slope = increment_weight_slope(x[i]);
    const double quad = d[i] * d[i] * sum_b[i] + delta[i] * delta[i] * sum_a[i] -
                        2.0 * d[i] * delta[i] * sum_c[i];
    grad.d[i] = 2.0 * w[i] * (d[i] * sum_b[i] - delta[i] * sum_c[i]) -
                2.0 * params.alpha * slope * quad;
    grad.delta[i] = 2.0 * w[i] * (delta[i] * sum_a[i] - d[i] * sum_c[i]) -
                    2.0 * params.beta * slope * quad;
  }
  return grad;
}

IncrementGradient psi_gradient(const MonotoneDesign& design,
                               const CovarianceParams& params) {
  IncrementGradient grad = phi_gradient(design, params);
  if (design.size() < 3) return grad;

  const double m_theta = trend_information(design, params);
  const double phi_value = phi(design, params);
  const auto x = skewed_increments(design, params);
  for (std::size_t i = 0; i < grad.d.size(); ++i) {
    const double q = std::exp(-x[i]);
    const double one_plus_q = 1.0 + q;
    const double trend_slope = 2.0 * q / (one_plus_q * one_plus_q);
    grad.d[i] = m_theta * grad.d[i] + params.alpha * trend_slope * phi_value;
    grad.delta[i] =
        m_theta * grad.delta[i] + params.beta * trend_slope * phi_value;
  }
  return grad;
}

double f_term(double d, double delta, const CovarianceParams& params) {
  if (d < 0.0 || delta < 0.0)
    throw DomainError("f_term lags must be nonnegative");
  if (d == 0.0) return 0.0;
  return d * d * increment_weight(params.alpha * d + params.beta * delta);
}

double trend_information_geometric(std::size_t n, double r1, double r2,
                                   const CovarianceParams& params,
                                   std::pair<double, double> spans) {
  const GeometricDesignSpec spec{n, r1, r2, spans};
  return trend_information(geometric_progression_design(spec), params);
}

double phi_geometric(std::size_t n, double r1, double r2,
                     const CovarianceParams& params,
                     std::pair<double, double> spans) {
  const GeometricDesignSpec spec{n, r1, r2, spans};
  return phi(geometric_progression_design(spec), params);
}

DesignReport evaluate_design(const MonotoneDesign& design,
                             const CovarianceParams& params) {
  DesignReport report;
  report.n = design.size();
  report.lambda = skewed_length(design, params);
  report.m_theta = trend_information(design, params);
  report.fisher = covariance_information(design, params);
  report.psi = psi(design, params);
  return report;
}

}  // namespace oudesign
