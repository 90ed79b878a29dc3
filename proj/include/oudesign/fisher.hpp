#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "oudesign/model.hpp"

namespace oudesign {

// Information matrix on the covariance rates (alpha, beta), on the
// correlation scale (sigma factored out).  phi is its determinant,
// evaluated through the explicitly nonnegative double sum
//   sum_{i>j} (d_i delta_j - d_j delta_i)^2 w_i w_j
// rather than m_alpha*m_beta - m_alpha_beta^2, which cancels badly when
// the matrix is near rank one.
struct FisherMatrix {
  double m_alpha = 0.0;
  double m_beta = 0.0;
  double m_alpha_beta = 0.0;
  double phi = 0.0;

  double det() const { return m_alpha * m_beta - m_alpha_beta * m_alpha_beta; }
};

// Evaluation bundle for one design / parameter pair.
struct DesignReport {
  std::size_t n = 0;
  double lambda = 0.0;
  double m_theta = 0.0;
  FisherMatrix fisher;
  double psi = 0.0;
  std::optional<double> efficiency;
};

// Per-increment weight w(x) = q^2 (1+q^2) / (1-q^2)^2 with q = e^{-x},
// computed cancellation-free for all x > 0 via expm1.
double increment_weight(double skewed_increment);

// dw/dq factor: q^2 (1+3q^2) / (1-q^2)^3, same stabilization.
double increment_weight_slope(double skewed_increment);

// Trend information M_theta = 1'C^{-1}1 = 1 + sum_i tanh(x_i/2).
double trend_information(const MonotoneDesign& design,
                         const CovarianceParams& params);

// Equidistant-in-skewed-metric optimum: 1 + (n-1) tanh(lambda/(2(n-1))).
double trend_information_equidistant(std::size_t n, double lambda);

// Limits of the equidistant value: lambda/2 + 1 as n grows, n as lambda
// grows.  The finite value stays strictly below both.
struct TrendInformationBounds {
  double large_n;       // lambda/2 + 1
  double large_lambda;  // n
};
TrendInformationBounds trend_information_bounds(std::size_t n, double lambda);

// Information matrix entries on (alpha, beta):
//   m_alpha = sum d_i^2 w_i,  m_beta = sum delta_i^2 w_i,
//   m_alpha_beta = sum d_i delta_i w_i.
// Throws DegenerateDesign if any skewed increment is below the floor.
FisherMatrix covariance_information(const MonotoneDesign& design,
                                    const CovarianceParams& params);

// det of covariance_information via the nonnegative double sum.
double phi(const MonotoneDesign& design, const CovarianceParams& params);

// Total-information determinant Psi = M_theta * Phi, with M_theta in the
// rewritten form 2/(1+q_1) + sum_{i>=2} (1-q_i)/(1+q_i).
double psi(const MonotoneDesign& design, const CovarianceParams& params);

// Gradient with respect to the increments, in design order.
struct IncrementGradient {
  std::vector<double> d;      // d/d d_i
  std::vector<double> delta;  // d/d delta_i
};

// Analytic gradient of Phi.  The weight sums at coordinate i run over all
// other indices j != i (accumulated by one forward and one reverse pass).
// Zero vector for n <= 2 where Phi vanishes identically.
IncrementGradient phi_gradient(const MonotoneDesign& design,
                               const CovarianceParams& params);

// Product rule: dPsi/dd_i = M_theta dPhi/dd_i + (2 alpha q_i/(1+q_i)^2) Phi.
IncrementGradient psi_gradient(const MonotoneDesign& design,
                               const CovarianceParams& params);

// Single-increment information term F(d, delta) = d^2 w(alpha d + beta
// delta); zero when d = 0, supremum 1/(2 alpha^2) approached as both lags
// shrink with delta << d, never attained.
double f_term(double d, double delta, const CovarianceParams& params);

// Closed forms on the geometric-progression design with ratios r1 (t axis)
// and r2 (s axis) over given spans; r = 1 is the equidistant case.
double trend_information_geometric(std::size_t n, double r1, double r2,
                                   const CovarianceParams& params,
                                   std::pair<double, double> spans = {1.0,
                                                                      1.0});
double phi_geometric(std::size_t n, double r1, double r2,
                     const CovarianceParams& params,
                     std::pair<double, double> spans = {1.0, 1.0});

// Full evaluation bundle (no efficiency reference).
DesignReport evaluate_design(const MonotoneDesign& design,
                             const CovarianceParams& params);

}  // namespace oudesign
