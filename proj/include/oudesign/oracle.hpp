#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oudesign/fisher.hpp"
#include "oudesign/model.hpp"

namespace oudesign {

// Dense symmetric matrix, row-major, symmetric by construction: set()
// writes both (i,j) and (j,i).
class DenseSymMatrix {
 public:
  explicit DenseSymMatrix(std::size_t order);

  std::size_t order() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, double value) {
    a_[i * n_ + j] = value;
    a_[j * n_ + i] = value;
  }
  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

// Lower-triangular Cholesky factor with log-determinant; throws
// NotPositiveDefinite when the matrix is not (duplicate points, bad
// parameters).  No pivoting, no regularization.
class SpdFactor {
 public:
  explicit SpdFactor(const DenseSymMatrix& a);

  std::size_t order() const { return lower_.size() ? n_ : 0; }
  double log_determinant() const { return log_det_; }
  std::vector<double> solve(std::span<const double> rhs) const;
  // L(i,j) for j <= i.
  double lower(std::size_t i, std::size_t j) const {
    return lower_[i * n_ + j];
  }

 private:
  std::size_t n_;
  std::vector<double> lower_;
  double log_det_;
};

SpdFactor spd_factor(const DenseSymMatrix& a);
std::vector<double> spd_solve(const DenseSymMatrix& a,
                              std::span<const double> rhs);

// Correlation matrix of a monotone design: entry (i,j) = prod of q_k for
// k in [min(i,j), max(i,j)).
DenseSymMatrix build_covariance_monotone(const MonotoneDesign& design,
                                         const CovarianceParams& params);

// Correlation matrix of arbitrary points (kernel / sigma^2).
DenseSymMatrix build_covariance_points(std::span<const Point> points,
                                       const CovarianceParams& params);

// Symmetric tridiagonal coefficients of the inverse correlation matrix of
// a monotone design: diag[0] = 1/(1-q_1^2), interior diag[k] =
// 1/(1-q_{k+1}^2) + q_k^2/(1-q_k^2), off[k] = -q_k/(1-q_k^2).
struct TridiagonalCoefficients {
  std::vector<double> diag;  // length n
  std::vector<double> off;   // length n-1
};
TridiagonalCoefficients inverse_correlation_tridiagonal(
    std::span<const double> skewed_increments);

// Dense materialization of the tridiagonal inverse.
DenseSymMatrix closed_form_inverse(const MonotoneDesign& design,
                                   const CovarianceParams& params);

// 1'C^{-1}1 on the correlation scale, by factorization.
double trend_information_oracle(std::span<const Point> points,
                                const CovarianceParams& params);

// Trace formulas 1/2 tr(C^{-1} dC/da C^{-1} dC/db) with the derivative
// matrices assembled entrywise: dC/dalpha = -|t_i - t_j| C_ij and
// dC/dbeta = -|s_i - s_j| C_ij.  phi is the 2x2 determinant.
FisherMatrix covariance_information_oracle(std::span<const Point> points,
                                           const CovarianceParams& params);

// Trend information of a full grid.  The separable kernel factors the grid
// covariance into a Kronecker product, so 1'C^{-1}1 is the product of the
// two one-dimensional quantities, each obtained by a small dense solve.
double grid_trend_information(const GridDesign& grid,
                              const CovarianceParams& params);

}  // namespace oudesign
