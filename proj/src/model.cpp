#include "oudesign/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oudesign {

CovarianceParams::CovarianceParams(double alpha_, double beta_, double sigma_)
    : alpha(alpha_), beta(beta_), sigma(sigma_) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("alpha must be positive, got " + std::to_string(alpha));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("beta must be positive, got " + std::to_string(beta));
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DomainError("sigma must be positive, got " + std::to_string(sigma));
}

double CovarianceParams::sigma_tilde() const {
  return 2.0 * sigma * std::sqrt(alpha * beta);
}

CovarianceParams CovarianceParams::from_sigma_tilde(double alpha, double beta,
                                                    double sigma_tilde) {
  if (!(sigma_tilde > 0.0))
    throw DomainError("sigma_tilde must be positive");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw DomainError("rates must be positive");
  return CovarianceParams(alpha, beta,
                          sigma_tilde / (2.0 * std::sqrt(alpha * beta)));
}

Region::Region(double s_min_, double s_max_, double t_min_, double t_max_)
    : s_min(s_min_), s_max(s_max_), t_min(t_min_), t_max(t_max_) {
  if (!(s_max > s_min))
    throw DomainError("region needs s_max > s_min");
  if (!(t_max > t_min))
    throw DomainError("region needs t_max > t_min");
}

MonotoneDesign MonotoneDesign::from_points(std::span<const Point> points,
                                           bool allow_nonpositive_origin) {
  if (points.empty())
    throw DomainError("monotone design needs at least one point");
  if (!allow_nonpositive_origin &&
      (!(points[0].s > 0.0) || !(points[0].t > 0.0)))
    throw NonpositiveCoordinate("first point must have positive coordinates",
                                0);
  MonotoneDesign design;
  const std::size_t n = points.size();
  design.s_.reserve(n);
  design.t_.reserve(n);
  design.d_.reserve(n - 1);
  design.delta_.reserve(n - 1);
  design.s_.push_back(points[0].s);
  design.t_.push_back(points[0].t);
  for (std::size_t i = 1; i < n; ++i) {
    if (!(points[i].s > points[i - 1].s))
      throw ConditionDViolation(
          "s coordinate not strictly increasing at index " + std::to_string(i),
          i);
    if (!(points[i].t > points[i - 1].t))
      throw ConditionDViolation(
          "t coordinate not strictly increasing at index " + std::to_string(i),
          i);
    design.s_.push_back(points[i].s);
    design.t_.push_back(points[i].t);
    design.d_.push_back(points[i].t - points[i - 1].t);
    design.delta_.push_back(points[i].s - points[i - 1].s);
  }
  return design;
}

MonotoneDesign MonotoneDesign::from_increments(Point origin,
                                               std::vector<double> d,
                                               std::vector<double> delta,
                                               bool allow_nonpositive_origin) {
  if (d.size() != delta.size())
    throw DomainError("increment sequences must have equal length");
  if (!allow_nonpositive_origin && (!(origin.s > 0.0) || !(origin.t > 0.0)))
    throw NonpositiveCoordinate("origin must have positive coordinates", 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw ConditionDViolation(
          "t increment not positive at index " + std::to_string(i), i);
    if (!(delta[i] > 0.0))
      throw ConditionDViolation(
          "s increment not positive at index " + std::to_string(i), i);
  }
  MonotoneDesign design;
  design.d_ = std::move(d);
  design.delta_ = std::move(delta);
  const std::size_t n = design.d_.size() + 1;
  design.s_.reserve(n);
  design.t_.reserve(n);
  design.s_.push_back(origin.s);
  design.t_.push_back(origin.t);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    design.s_.push_back(design.s_.back() + design.delta_[i]);
    design.t_.push_back(design.t_.back() + design.d_[i]);
  }
  return design;
}

std::vector<Point> MonotoneDesign::points() const {
  std::vector<Point> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = {s_[i], t_[i]};
  return out;
}

GridDesign::GridDesign(std::vector<double> t_coords,
                       std::vector<double> s_coords)
    : t_(std::move(t_coords)), s_(std::move(s_coords)) {
  if (t_.empty() || s_.empty())
    throw DomainError("grid needs at least one coordinate per axis");
  for (std::size_t i = 1; i < t_.size(); ++i)
    if (!(t_[i] > t_[i - 1]))
      throw ConditionDViolation(
          "t coordinates not strictly increasing at index " +
              std::to_string(i),
          i);
  for (std::size_t i = 1; i < s_.size(); ++i)
    if (!(s_[i] > s_[i - 1]))
      throw ConditionDViolation(
          "s coordinates not strictly increasing at index " +
              std::to_string(i),
          i);
}

std::vector<Point> GridDesign::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (double tv : t_)
    for (double sv : s_) out.push_back({sv, tv});
  return out;
}

ScatteredDesign::ScatteredDesign(std::vector<Point> points)
    : points_(std::move(points)) {
  if (points_.empty())
    throw DomainError("scattered design needs at least one point");
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
    return a.s < b.s || (a.s == b.s && a.t < b.t);
  });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw DomainError("duplicate point (s=" + std::to_string(sorted[i].s) +
                        ", t=" + std::to_string(sorted[i].t) +
                        ") makes the covariance singular");
}

MonotoneDesign validate_condition_d(std::span<const Point> points,
                                    bool allow_nonpositive_origin) {
  return MonotoneDesign::from_points(points, allow_nonpositive_origin);
}

std::vector<double> skewed_increments(const MonotoneDesign& design,
                                      const CovarianceParams& params) {
  const auto& d = design.d();
  const auto& delta = design.delta();
  std::vector<double> x(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    x[i] = params.alpha * d[i] + params.beta * delta[i];
  return x;
}

std::vector<double> q_values(const MonotoneDesign& design,
                             const CovarianceParams& params) {
  std::vector<double> q = skewed_increments(design, params);
  for (double& v : q) v = std::exp(-v);
  return q;
}

double skewed_length(const MonotoneDesign& design,
                     const CovarianceParams& params) {
  double sum_d = 0.0, sum_delta = 0.0;
  for (double v : design.d()) sum_d += v;
  for (double v : design.delta()) sum_delta += v;
  return params.alpha * sum_d + params.beta * sum_delta;
}

double covariance_kernel(const Point& p1, const Point& p2,
                         const CovarianceParams& params) {
  return params.sigma * params.sigma *
         std::exp(-params.alpha * std::abs(p1.t - p2.t) -
                  params.beta * std::abs(p1.s - p2.s));
}

double semivariogram(double d, double delta, const CovarianceParams& params) {
  if (d < 0.0 || delta < 0.0)
    throw DomainError("variogram lags must be nonnegative");
  // 2 sigma^2 (1 - e^{-x}); expm1 keeps small lags accurate.
  return 2.0 * params.sigma * params.sigma *
         (-std::expm1(-params.alpha * d - params.beta * delta));
}

}  // namespace oudesign
