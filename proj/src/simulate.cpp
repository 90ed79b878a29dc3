#include "oudesign/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oudesign/oracle.hpp"
#include "oudesign/simplex.hpp"

namespace oudesign {

namespace {

constexpr double kLogRateBound = 13.815510557964274;  // log(1e6)

// Quadratic form r' T r for symmetric tridiagonal T.
double tridiagonal_quadratic(const TridiagonalCoefficients& t,
                             std::span<const double> r) {
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += t.diag[i] * r[i] * r[i];
  for (std::size_t i = 0; i + 1 < r.size(); ++i)
    acc += 2.0 * t.off[i] * r[i] * r[i + 1];
  return acc;
}

// 1' T y for symmetric tridiagonal T.
double tridiagonal_ones_dot(const TridiagonalCoefficients& t,
                            std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += t.diag[i] * y[i];
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    acc += t.off[i] * (y[i] + y[i + 1]);
  return acc;
}

double correlation_log_determinant(std::span<const double> skewed) {
  double acc = 0.0;
  for (double x : skewed) acc += std::log(-std::expm1(-2.0 * x));
  return acc;
}

struct ProfileEvaluation {
  double theta_hat;
  double log_likelihood;
};

ProfileEvaluation profile_log_likelihood(std::span<const double> y,
                                         const MonotoneDesign& design,
                                         const CovarianceParams& params) {
  const std::size_t n = design.size();
  const auto skewed = skewed_increments(design, params);
  const TridiagonalCoefficients t =
      inverse_correlation_tridiagonal(std::span<const double>(skewed));
  const std::vector<double> ones(n, 1.0);
  const double m_theta = tridiagonal_ones_dot(t, ones);
  const double theta_hat = tridiagonal_ones_dot(t, y) / m_theta;

  std::vector<double> residual(y.begin(), y.end());
  for (double& v : residual) v -= theta_hat;
  const double quad = tridiagonal_quadratic(t, residual);
  const double sigma2 = params.sigma * params.sigma;
  const double ll =
      -0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) +
              static_cast<double>(n) * std::log(sigma2) +
              correlation_log_determinant(skewed) + quad / sigma2);
  return {theta_hat, ll};
}

}  // namespace

SimulationConfig::SimulationConfig(std::uint64_t seed_,
                                   std::size_t replications_,
                                   double theta_true_,
                                   CovarianceParams params_true_)
    : seed(seed_),
      replications(replications_),
      theta_true(theta_true_),
      params_true(params_true_) {
  if (replications == 0)
    throw DomainError("simulation needs at least one replication");
}

FieldSampler::FieldSampler(std::span<const Point> points,
                           const CovarianceParams& params, double theta)
    : n_(points.size()), theta_(theta), sigma_(params.sigma) {
  const DenseSymMatrix c = build_covariance_points(points, params);
  const SpdFactor factor(c);
  lower_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      lower_[i * n_ + j] = factor.lower(i, j);
}

std::vector<double> FieldSampler::draw(std::mt19937_64& engine) const {
  std::vector<double> z(n_);
  for (double& v : z) v = standard_normal(engine);
  std::vector<double> y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += lower_[i * n_ + j] * z[j];
    y[i] = theta_ + sigma_ * acc;
  }
  return y;
}

std::vector<double> sample_field(std::span<const Point> points,
                                 const CovarianceParams& params, double theta,
                                 std::mt19937_64& engine) {
  return FieldSampler(points, params, theta).draw(engine);
}

GlsSolver::GlsSolver(std::span<const Point> points,
                     const CovarianceParams& params) {
  const DenseSymMatrix c = build_covariance_points(points, params);
  const std::vector<double> ones(points.size(), 1.0);
  weights_ = spd_solve(c, ones);
  m_theta_ = 0.0;
  for (double w : weights_) m_theta_ += w;
  variance_ = params.sigma * params.sigma / m_theta_;
}

double GlsSolver::estimate(std::span<const double> y) const {
  if (y.size() != weights_.size())
    throw DomainError("observation vector size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += weights_[i] * y[i];
  return acc / m_theta_;
}

GlsEstimate gls_trend_estimate(std::span<const double> y,
                               std::span<const Point> points,
                               const CovarianceParams& params) {
  if (y.size() != points.size())
    throw DomainError("observation vector size mismatch");
  const GlsSolver solver(points, params);
  return {solver.estimate(y), solver.variance()};
}

double log_likelihood(std::span<const double> y, const MonotoneDesign& design,
                      double theta, const CovarianceParams& params) {
  const std::size_t n = design.size();
  if (y.size() != n) throw DomainError("observation vector size mismatch");
  const auto skewed = skewed_increments(design, params);
  const TridiagonalCoefficients t =
      inverse_correlation_tridiagonal(std::span<const double>(skewed));
  std::vector<double> residual(y.begin(), y.end());
  for (double& v : residual) v -= theta;
  const double sigma2 = params.sigma * params.sigma;
  return -0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) +
                 static_cast<double>(n) * std::log(sigma2) +
                 correlation_log_determinant(skewed) +
                 tridiagonal_quadratic(t, residual) / sigma2);
}

MlFit ml_fit(std::span<const double> y, const MonotoneDesign& design,
             const CovarianceParams& init) {
  if (design.size() < 3)
    throw DomainError("ml_fit needs at least three observations");
  if (y.size() != design.size())
    throw DomainError("observation vector size mismatch");

  const Projector clamp_logs = [](std::vector<double>& z) {
    for (double& v : z) v = std::clamp(v, -kLogRateBound, kLogRateBound);
  };
  const Objective negative_profile = [&](std::span<const double> z) {
    const CovarianceParams trial(std::exp(z[0]), std::exp(z[1]), init.sigma);
    return -profile_log_likelihood(y, design, trial).log_likelihood;
  };

  NelderMeadOptions options;
  options.max_iterations = 600;
  options.f_tolerance = 1e-11;
  options.x_tolerance = 1e-8;
  options.initial_step = 0.25;

  std::vector<double> z0 = {std::log(init.alpha), std::log(init.beta)};
  clamp_logs(z0);
  const NelderMeadResult nm =
      nelder_mead_minimize(negative_profile, std::move(z0), options, clamp_logs);

  MlFit fit;
  fit.alpha_hat = std::exp(nm.x[0]);
  fit.beta_hat = std::exp(nm.x[1]);
  const CovarianceParams fitted(fit.alpha_hat, fit.beta_hat, init.sigma);
  const ProfileEvaluation profile = profile_log_likelihood(y, design, fitted);
  fit.theta_hat = profile.theta_hat;
  fit.log_likelihood = profile.log_likelihood;
  const bool at_bound =
      std::abs(nm.x[0]) > kLogRateBound - 1e-6 ||
      std::abs(nm.x[1]) > kLogRateBound - 1e-6;
  fit.converged = nm.converged && !at_bound;
  return fit;
}

FisherCheckReport empirical_fisher_check(const MonotoneDesign& design,
                                         const SimulationConfig& config,
                                         std::size_t fit_replications) {
  FisherCheckReport report;
  report.replications = config.replications;
  report.fit_replications =
      fit_replications == 0
          ? std::min<std::size_t>(config.replications, 1000)
          : fit_replications;

  const std::vector<Point> points = design.points();
  const FieldSampler sampler(points, config.params_true, config.theta_true);
  const GlsSolver gls(points, config.params_true);

  // Exact identity: Var(theta_hat) = sigma^2 / M_theta.
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t rep = 0; rep < config.replications; ++rep) {
    std::mt19937_64 engine = substream(config.seed, rep);
    const std::vector<double> y = sampler.draw(engine);
    const double theta_hat = gls.estimate(y);
    sum += theta_hat;
    sum_sq += theta_hat * theta_hat;
  }
  const double n_reps = static_cast<double>(config.replications);
  report.theta_mean = sum / n_reps;
  report.var_theta_empirical =
      (sum_sq - sum * sum / n_reps) / (n_reps - 1.0);
  report.var_theta_predicted = gls.variance();
  report.var_theta_mc_stderr =
      report.var_theta_empirical * std::sqrt(2.0 / (n_reps - 1.0));

  // Asymptotic diagnostic: covariance of the ML rate estimates vs M_r^{-1}.
  const FisherMatrix m_r = covariance_information(design, config.params_true);
  if (m_r.phi > 0.0) {
    report.m_r_inverse = {m_r.m_beta / m_r.phi, m_r.m_alpha / m_r.phi,
                          -m_r.m_alpha_beta / m_r.phi};
  }
  std::vector<double> alphas, betas;
  alphas.reserve(report.fit_replications);
  betas.reserve(report.fit_replications);
  for (std::size_t rep = 0; rep < report.fit_replications; ++rep) {
    std::mt19937_64 engine = substream(config.seed, rep);
    const std::vector<double> y = sampler.draw(engine);
    const MlFit fit = ml_fit(y, design, config.params_true);
    if (!fit.converged) {
      ++report.failed_fits;
      continue;
    }
    alphas.push_back(fit.alpha_hat);
    betas.push_back(fit.beta_hat);
  }
  const std::size_t k = alphas.size();
  if (k >= 2) {
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      mean_a += alphas[i];
      mean_b += betas[i];
    }
    mean_a /= static_cast<double>(k);
    mean_b /= static_cast<double>(k);
    double var_a = 0.0, var_b = 0.0, cov_ab = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      var_a += (alphas[i] - mean_a) * (alphas[i] - mean_a);
      var_b += (betas[i] - mean_b) * (betas[i] - mean_b);
      cov_ab += (alphas[i] - mean_a) * (betas[i] - mean_b);
    }
    const double denom = static_cast<double>(k - 1);
    report.cov_r_empirical = {var_a / denom, var_b / denom, cov_ab / denom};
    report.alpha_mean = mean_a;
    report.beta_mean = mean_b;
  }
  return report;
}

GlsSimulationSummary simulate_gls_study(std::span<const Point> points,
                                        const SimulationConfig& config) {
  GlsSimulationSummary summary;
  summary.n = points.size();
  summary.replications = config.replications;
  summary.theta_true = config.theta_true;

  const FieldSampler sampler(points, config.params_true, config.theta_true);
  const GlsSolver gls(points, config.params_true);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t rep = 0; rep < config.replications; ++rep) {
    std::mt19937_64 engine = substream(config.seed, rep);
    const std::vector<double> y = sampler.draw(engine);
    const double theta_hat = gls.estimate(y);
    sum += theta_hat;
    sum_sq += theta_hat * theta_hat;
  }
  const double n_reps = static_cast<double>(config.replications);
  summary.theta_mean = sum / n_reps;
  summary.var_theta_empirical =
      n_reps > 1.0 ? (sum_sq - sum * sum / n_reps) / (n_reps - 1.0) : 0.0;
  summary.var_theta_predicted = gls.variance();
  summary.var_theta_mc_stderr =
      n_reps > 1.0
          ? summary.var_theta_empirical * std::sqrt(2.0 / (n_reps - 1.0))
          : 0.0;
  summary.m_theta = gls.m_theta();
  return summary;
}

}  // namespace oudesign
