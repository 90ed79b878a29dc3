#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "oudesign/errors.hpp"

namespace oudesign {

// A design point; s is the spatial coordinate, t the temporal one.
struct Point {
  double s = 0.0;
  double t = 0.0;

  friend bool operator==(const Point& a, const Point& b) {
    return a.s == b.s && a.t == b.t;
  }
};

// Parameters of the separable exponential covariance
//   cov{(s1,t1),(s2,t2)} = sigma^2 exp(-alpha|t1-t2| - beta|s1-s2|),
// alpha acting on the t axis and beta on the s axis.  sigma_tilde is the
// alternative scale with sigma = sigma_tilde / (2 sqrt(alpha beta)).
struct CovarianceParams {
  double alpha;
  double beta;
  double sigma;

  explicit CovarianceParams(double alpha_, double beta_, double sigma_ = 1.0);

  double sigma_tilde() const;
  static CovarianceParams from_sigma_tilde(double alpha, double beta,
                                           double sigma_tilde);
};

// Rectangular design space [s_min, s_max] x [t_min, t_max].
struct Region {
  double s_min;
  double s_max;
  double t_min;
  double t_max;

  Region(double s_min_, double s_max_, double t_min_, double t_max_);

  double s_span() const { return s_max - s_min; }
  double t_span() const { return t_max - t_min; }
};

// Skewed increments alpha*d_i + beta*delta_i below this floor are rejected
// by the Fisher-information and inverse routines (1-q^2 underflows).
inline constexpr double kSkewedIncrementFloor = 1e-12;

// Largest matrix order the dense verification path will factorize.
inline constexpr std::size_t kDenseSizeCap = 4096;

// A point set whose s- and t-coordinates are both strictly increasing.
// Stores the points and the increment representation side by side:
// d_i = t_{i+1} - t_i (paired with alpha), delta_i = s_{i+1} - s_i (with
// beta).  When built from points, the points are kept verbatim so the
// point <-> increment round trip is exact.
class MonotoneDesign {
 public:
  static MonotoneDesign from_points(std::span<const Point> points,
                                    bool allow_nonpositive_origin = false);
  static MonotoneDesign from_increments(Point origin, std::vector<double> d,
                                        std::vector<double> delta,
                                        bool allow_nonpositive_origin = false);

  std::size_t size() const { return t_.size(); }
  Point origin() const { return {s_.front(), t_.front()}; }
  const std::vector<double>& d() const { return d_; }
  const std::vector<double>& delta() const { return delta_; }
  const std::vector<double>& s() const { return s_; }
  const std::vector<double>& t() const { return t_; }
  std::vector<Point> points() const;

 private:
  MonotoneDesign() = default;

  std::vector<double> s_, t_;       // coordinates, length n
  std::vector<double> d_, delta_;   // increments, length n-1
};

// Full grid {t_coords} x {s_coords}; both coordinate lists strictly
// increasing.  Points materialize t-major.
class GridDesign {
 public:
  GridDesign(std::vector<double> t_coords, std::vector<double> s_coords);

  const std::vector<double>& t_coords() const { return t_; }
  const std::vector<double>& s_coords() const { return s_; }
  std::size_t size() const { return t_.size() * s_.size(); }
  std::vector<Point> points() const;

 private:
  std::vector<double> t_, s_;
};

// Arbitrary distinct points; evaluated only through the dense oracle.
class ScatteredDesign {
 public:
  explicit ScatteredDesign(std::vector<Point> points);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Point> points_;
};

// Checks Condition D (0 < s_1 < ... < s_n, 0 < t_1 < ... < t_n) and returns
// the increment representation.  Order of the points is preserved.
MonotoneDesign validate_condition_d(std::span<const Point> points,
                                    bool allow_nonpositive_origin = false);

// x_i = alpha*d_i + beta*delta_i for each increment pair.
std::vector<double> skewed_increments(const MonotoneDesign& design,
                                      const CovarianceParams& params);

// q_i = exp(-alpha*d_i - beta*delta_i), each in (0,1).
std::vector<double> q_values(const MonotoneDesign& design,
                             const CovarianceParams& params);

// lambda = alpha * sum(d_i) + beta * sum(delta_i); 0 for a single point.
double skewed_length(const MonotoneDesign& design,
                     const CovarianceParams& params);

// sigma^2 exp(-alpha|t1-t2| - beta|s1-s2|).
double covariance_kernel(const Point& p1, const Point& p2,
                         const CovarianceParams& params);

// Variogram 2*gamma(d, delta) = 2 sigma^2 (1 - exp(-alpha*d - beta*delta))
// for nonnegative lags; the sill 2 sigma^2 is approached monotonically.
double semivariogram(double d, double delta, const CovarianceParams& params);

}  // namespace oudesign
