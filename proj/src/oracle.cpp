#include "oudesign/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace oudesign {

namespace {

using MatrixMap = Eigen::Map<const Eigen::MatrixXd>;

void check_size_cap(std::size_t n) {
  if (n > kDenseSizeCap)
    throw DomainError("dense path capped at order " +
                      std::to_string(kDenseSizeCap) + ", got " +
                      std::to_string(n));
}

Eigen::MatrixXd to_eigen(const DenseSymMatrix& a) {
  // Row-major storage mapped as column-major is a transpose; fine for a
  // symmetric matrix.
  return MatrixMap(a.data().data(), static_cast<Eigen::Index>(a.order()),
                   static_cast<Eigen::Index>(a.order()));
}

// 1D OU trend information 1'C^{-1}1 for sorted coordinates, dense solve.
double one_dimensional_trend_information(const std::vector<double>& coords,
                                         double rate) {
  const std::size_t n = coords.size();
  check_size_cap(n);
  DenseSymMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < n; ++j)
      c.set(i, j, std::exp(-rate * (coords[j] - coords[i])));
  }
  const std::vector<double> ones(n, 1.0);
  const std::vector<double> solved = spd_solve(c, ones);
  double total = 0.0;
  for (double v : solved) total += v;
  return total;
}

}  // namespace

DenseSymMatrix::DenseSymMatrix(std::size_t order)
    : n_(order), a_(order * order, 0.0) {
  if (order == 0) throw DomainError("matrix order must be positive");
}

SpdFactor::SpdFactor(const DenseSymMatrix& a) : n_(a.order()), log_det_(0.0) {
  check_size_cap(n_);
  Eigen::LLT<Eigen::MatrixXd> llt(to_eigen(a));
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite(
        "Cholesky factorization failed (duplicate points or invalid "
        "covariance)");
  const Eigen::MatrixXd lower = llt.matrixL();
  lower_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      lower_[i * n_ + j] = j <= i ? lower(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j))
                                  : 0.0;
  for (std::size_t i = 0; i < n_; ++i)
    log_det_ += 2.0 * std::log(lower_[i * n_ + i]);
}

std::vector<double> SpdFactor::solve(std::span<const double> rhs) const {
  if (rhs.size() != n_) throw DomainError("right-hand side size mismatch");
  std::vector<double> x(rhs.begin(), rhs.end());
  // Forward substitution L y = b.
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= lower_[i * n_ + j] * x[j];
    x[i] = acc / lower_[i * n_ + i];
  }
  // Back substitution L' x = y.
  for (std::size_t i = n_; i-- > 0;) {
    double acc = x[i];
    for (std::size_t j = i + 1; j < n_; ++j) acc -= lower_[j * n_ + i] * x[j];
    x[i] = acc / lower_[i * n_ + i];
  }
  return x;
}

SpdFactor spd_factor(const DenseSymMatrix& a) { return SpdFactor(a); }

std::vector<double> spd_solve(const DenseSymMatrix& a,
                              std::span<const double> rhs) {
  return SpdFactor(a).solve(rhs);
}

DenseSymMatrix build_covariance_monotone(const MonotoneDesign& design,
                                         const CovarianceParams& params) {
  const std::size_t n = design.size();
  check_size_cap(n);
  const std::vector<double> q = q_values(design, params);
  DenseSymMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.set(i, i, 1.0);
    double product = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      product *= q[j - 1];
      c.set(i, j, product);
    }
  }
  return c;
}

DenseSymMatrix build_covariance_points(std::span<const Point> points,
                                       const CovarianceParams& params) {
  const std::size_t n = points.size();
  check_size_cap(n);
  DenseSymMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < n; ++j)
      c.set(i, j,
            std::exp(-params.alpha * std::abs(points[i].t - points[j].t) -
                     params.beta * std::abs(points[i].s - points[j].s)));
  }
  return c;
}

TridiagonalCoefficients inverse_correlation_tridiagonal(
    std::span<const double> skewed_increments) {
  const std::size_t m = skewed_increments.size();
  TridiagonalCoefficients coeff;
  coeff.diag.assign(m + 1, 1.0);
  coeff.off.assign(m, 0.0);
  if (m == 0) return coeff;  // single observation: C = [1]

  // r_k = 1/(1-q_k^2), kept accurate via expm1; off-diagonal -q_k r_k.
  std::vector<double> r(m), q2(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double x = skewed_increments[k];
    if (x < kSkewedIncrementFloor)
      throw DegenerateDesign("skewed increment " + std::to_string(k) +
                             " below floor");
    r[k] = 1.0 / (-std::expm1(-2.0 * x));
    q2[k] = std::exp(-2.0 * x);
    coeff.off[k] = -std::exp(-x) * r[k];
  }
  coeff.diag[0] = r[0];
  coeff.diag[m] = r[m - 1];
  for (std::size_t k = 1; k < m; ++k) coeff.diag[k] = r[k] + q2[k - 1] * r[k - 1];
  return coeff;
}

DenseSymMatrix closed_form_inverse(const MonotoneDesign& design,
                                   const CovarianceParams& params) {
  if (design.size() < 2)
    throw DomainError("closed-form inverse needs at least two points");
  const auto x = skewed_increments(design, params);
  const TridiagonalCoefficients coeff =
      inverse_correlation_tridiagonal(std::span<const double>(x));
  DenseSymMatrix inv(design.size());
  for (std::size_t i = 0; i < coeff.diag.size(); ++i)
    inv.set(i, i, coeff.diag[i]);
  for (std::size_t i = 0; i < coeff.off.size(); ++i)
    inv.set(i, i + 1, coeff.off[i]);
  return inv;
}

double trend_information_oracle(std::span<const Point> points,
                                const CovarianceParams& params) {
  check_size_cap(points.size());
  const DenseSymMatrix c = build_covariance_points(points, params);
  const std::vector<double> ones(points.size(), 1.0);
  const std::vector<double> solved = spd_solve(c, ones);
  double total = 0.0;
  for (double v : solved) total += v;
  return total;
}

FisherMatrix covariance_information_oracle(std::span<const Point> points,
                                           const CovarianceParams& params) {
  const std::size_t n = points.size();
  check_size_cap(n);
  if (n < 2)
    throw DomainError("covariance information oracle needs n >= 2");
  const DenseSymMatrix c = build_covariance_points(points, params);

  Eigen::MatrixXd cov = to_eigen(c);
  Eigen::MatrixXd dc_alpha(n, n), dc_beta(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double cij = cov(static_cast<Eigen::Index>(i),
                             static_cast<Eigen::Index>(j));
      dc_alpha(i, j) = -std::abs(points[i].t - points[j].t) * cij;
      dc_beta(i, j) = -std::abs(points[i].s - points[j].s) * cij;
    }

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite("covariance matrix is not positive definite");
  const Eigen::MatrixXd a = llt.solve(dc_alpha);
  const Eigen::MatrixXd b = llt.solve(dc_beta);

  FisherMatrix m;
  m.m_alpha = 0.5 * (a * a).trace();
  m.m_beta = 0.5 * (b * b).trace();
  m.m_alpha_beta = 0.5 * (a * b).trace();
  m.phi = m.det();
  return m;
}

double grid_trend_information(const GridDesign& grid,
                              const CovarianceParams& params) {
  return one_dimensional_trend_information(grid.t_coords(), params.alpha) *
         one_dimensional_trend_information(grid.s_coords(), params.beta);
}

}  // namespace oudesign
