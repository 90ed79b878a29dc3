#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "oudesign/fisher.hpp"
#include "oudesign/model.hpp"
#include "oudesign/rng.hpp"

namespace oudesign {

struct SimulationConfig {
  std::uint64_t seed;
  std::size_t replications;
  double theta_true;
  CovarianceParams params_true;

  SimulationConfig(std::uint64_t seed_, std::size_t replications_,
                   double theta_true_, CovarianceParams params_true_);
};

// Draws y = theta 1 + sigma L z with L the Cholesky factor of the
// correlation matrix; the factor is computed once and reused.
class FieldSampler {
 public:
  FieldSampler(std::span<const Point> points, const CovarianceParams& params,
               double theta);

  std::size_t size() const { return n_; }
  std::vector<double> draw(std::mt19937_64& engine) const;

 private:
  std::size_t n_;
  double theta_;
  double sigma_;
  std::vector<double> lower_;  // row-major lower factor
};

// One-shot convenience draw.
std::vector<double> sample_field(std::span<const Point> points,
                                 const CovarianceParams& params, double theta,
                                 std::mt19937_64& engine);

// Generalized least squares for the constant trend: theta_hat =
// (1'C^{-1}y) / (1'C^{-1}1), Var(theta_hat) = sigma^2 / M_theta.  The
// weight vector C^{-1}1 is precomputed so repeated estimates are O(n).
class GlsSolver {
 public:
  GlsSolver(std::span<const Point> points, const CovarianceParams& params);

  double estimate(std::span<const double> y) const;
  double variance() const { return variance_; }
  double m_theta() const { return m_theta_; }

 private:
  std::vector<double> weights_;  // C^{-1} 1
  double m_theta_;
  double variance_;
};

struct GlsEstimate {
  double theta_hat;
  double variance;
};
GlsEstimate gls_trend_estimate(std::span<const double> y,
                               std::span<const Point> points,
                               const CovarianceParams& params);

// Gaussian log density of y under mean theta and covariance sigma^2 C,
// using the O(n) tridiagonal inverse and log det = sum log(1 - q_i^2).
double log_likelihood(std::span<const double> y, const MonotoneDesign& design,
                      double theta, const CovarianceParams& params);

struct MlFit {
  double theta_hat = 0.0;
  double alpha_hat = 0.0;
  double beta_hat = 0.0;
  bool converged = false;
  double log_likelihood = 0.0;
};

// Profile maximum likelihood: theta is profiled out by GLS at each
// (alpha, beta); the rates are maximized by Nelder-Mead in log space with
// bounds [1e-6, 1e6].  sigma is treated as known and not estimated.
// Non-convergence (including divergence to a bound) is flagged, with the
// best iterate returned.
MlFit ml_fit(std::span<const double> y, const MonotoneDesign& design,
             const CovarianceParams& init);

// Simulate-and-estimate study.  The theta comparison is an algebraic
// identity (Var = sigma^2 / M_theta); the (alpha, beta) comparison against
// M_r^{-1} is asymptotic and reported as a diagnostic only.
struct FisherCheckReport {
  std::size_t replications = 0;
  std::size_t fit_replications = 0;
  std::size_t failed_fits = 0;
  double theta_mean = 0.0;
  double var_theta_empirical = 0.0;
  double var_theta_predicted = 0.0;
  double var_theta_mc_stderr = 0.0;
  // Order: var(alpha), var(beta), cov(alpha, beta).
  std::array<double, 3> cov_r_empirical{0.0, 0.0, 0.0};
  std::array<double, 3> m_r_inverse{0.0, 0.0, 0.0};
  double alpha_mean = 0.0;
  double beta_mean = 0.0;
};

FisherCheckReport empirical_fisher_check(const MonotoneDesign& design,
                                         const SimulationConfig& config,
                                         std::size_t fit_replications = 0);

// Replicated sample-and-estimate study for the trend alone; works for any
// point set since both the sampler and GLS are point-based.
struct GlsSimulationSummary {
  std::size_t n = 0;
  std::size_t replications = 0;
  double theta_true = 0.0;
  double theta_mean = 0.0;
  double var_theta_empirical = 0.0;
  double var_theta_predicted = 0.0;
  double var_theta_mc_stderr = 0.0;
  double m_theta = 0.0;
};

GlsSimulationSummary simulate_gls_study(std::span<const Point> points,
                                        const SimulationConfig& config);

}  // namespace oudesign
