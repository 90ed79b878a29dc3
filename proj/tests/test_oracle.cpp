#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "oudesign/fisher.hpp"
#include "oudesign/model.hpp"
#include "oudesign/oracle.hpp"
#include "oudesign/rng.hpp"

using namespace oudesign;

namespace {

MonotoneDesign random_design(std::mt19937_64& engine, std::size_t n,
                             double low = 0.05, double high = 2.0) {
  std::vector<double> d(n - 1), delta(n - 1);
  for (double& v : d) v = low + (high - low) * uniform01(engine);
  for (double& v : delta) v = low + (high - low) * uniform01(engine);
  return MonotoneDesign::from_increments(
      {0.1 + uniform01(engine), 0.1 + uniform01(engine)}, d, delta);
}

double max_abs_residual(const DenseSymMatrix& c, const DenseSymMatrix& inv) {
  const std::size_t n = c.order();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += c(i, k) * inv(k, j);
      worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

// Increments chosen so a single q equals the requested value.
MonotoneDesign design_for_q(std::initializer_list<double> qs) {
  std::vector<double> d, delta;
  for (double q : qs) {
    const double x = -std::log(q);
    d.push_back(0.5 * x);
    delta.push_back(0.5 * x);
  }
  return MonotoneDesign::from_increments({1, 1}, d, delta);
}

}  // namespace

TEST_CASE("monotone covariance matrix") {
  const CovarianceParams unit(1, 1);
  SUBCASE("2x2 with q = 1/2") {
    const DenseSymMatrix c =
        build_covariance_monotone(design_for_q({0.5}), unit);
    CHECK(c(0, 0) == 1.0);
    CHECK(c(1, 1) == 1.0);
    CHECK(c(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c(1, 0) == c(0, 1));
  }
  SUBCASE("corner entry is the full q product") {
    const DenseSymMatrix c =
        build_covariance_monotone(design_for_q({0.3, 0.6}), unit);
    CHECK(c(0, 2) == doctest::Approx(0.18).epsilon(1e-14));
  }
  SUBCASE("matches the kernel entrywise") {
    std::mt19937_64 engine = substream(41, 0);
    const MonotoneDesign design = random_design(engine, 6);
    const CovarianceParams params(1.3, 0.8, 2.0);
    const DenseSymMatrix c = build_covariance_monotone(design, params);
    const std::vector<Point> pts = design.points();
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        CHECK(c(i, j) ==
              doctest::Approx(covariance_kernel(pts[i], pts[j], params) /
                              (params.sigma * params.sigma))
                  .epsilon(1e-12));
  }
}

TEST_CASE("closed-form tridiagonal inverse") {
  const CovarianceParams unit(1, 1);
  SUBCASE("2x2 form") {
    const double q = 0.37;
    const DenseSymMatrix inv =
        closed_form_inverse(design_for_q({q}), unit);
    const double denom = 1.0 - q * q;
    CHECK(inv(0, 0) == doctest::Approx(1.0 / denom).epsilon(1e-14));
    CHECK(inv(1, 1) == doctest::Approx(1.0 / denom).epsilon(1e-14));
    CHECK(inv(0, 1) == doctest::Approx(-q / denom).epsilon(1e-14));
  }
  SUBCASE("diagonal identity for the interior entries") {
    // V_k = (1 - q_k^2 q_{k-1}^2) / ((q_k^2 - 1)(q_{k-1}^2 - 1))
    //     = 1/(1 - q_k^2) + q_{k-1}^2/(1 - q_{k-1}^2).
    const std::vector<double> qs = {0.2, 0.55, 0.81, 0.4};
    for (std::size_t k = 1; k < qs.size(); ++k) {
      const double qk = qs[k], qp = qs[k - 1];
      const double direct = (1.0 - qk * qk * qp * qp) /
                            ((qk * qk - 1.0) * (qp * qp - 1.0));
      const double split =
          1.0 / (1.0 - qk * qk) + qp * qp / (1.0 - qp * qp);
      CHECK(direct == doctest::Approx(split).epsilon(1e-14));
    }
  }
  SUBCASE("product with the covariance is the identity") {
    std::mt19937_64 engine = substream(42, 0);
    const MonotoneDesign design = random_design(engine, 8);
    const CovarianceParams params(1.1, 0.9);
    CHECK(max_abs_residual(build_covariance_monotone(design, params),
                           closed_form_inverse(design, params)) < 1e-10);
  }
  SUBCASE("500 random designs up to n = 50") {
    std::mt19937_64 engine = substream(43, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n =
          2 + static_cast<std::size_t>(uniform01(engine) * 48.999);
      const MonotoneDesign design = random_design(engine, n);
      const CovarianceParams params(0.2 + 4.8 * uniform01(engine),
                                    0.2 + 4.8 * uniform01(engine));
      worst = std::max(
          worst, max_abs_residual(build_covariance_monotone(design, params),
                                  closed_form_inverse(design, params)));
    }
    CHECK(worst < 1e-10);
  }
  SUBCASE("large design with near-floor skewed increments") {
    // n = 200, skewed increments down to 1e-4.
    std::mt19937_64 engine = substream(51, 0);
    std::vector<double> d(199), delta(199);
    for (std::size_t i = 0; i < 199; ++i) {
      const double x = 1e-4 + (i % 7 == 0 ? 0.0 : uniform01(engine));
      d[i] = 0.5 * x;
      delta[i] = 0.5 * x;
    }
    const MonotoneDesign design =
        MonotoneDesign::from_increments({1, 1}, d, delta);
    const CovarianceParams params(1.0, 1.0);
    CHECK(max_abs_residual(build_covariance_monotone(design, params),
                           closed_form_inverse(design, params)) < 1e-10);
  }
  SUBCASE("floor violations are rejected") {
    const MonotoneDesign design = MonotoneDesign::from_increments(
        {1, 1}, {1e-14, 0.4}, {1e-14, 0.4});
    CHECK_THROWS_AS(closed_form_inverse(design, unit), DegenerateDesign);
  }
  SUBCASE("single point has no inverse representation") {
    const std::vector<Point> pts = {{1, 1}};
    CHECK_THROWS_AS(closed_form_inverse(validate_condition_d(pts), unit),
                    DomainError);
  }
}

TEST_CASE("factorization and solve") {
  SUBCASE("identity solve returns the right-hand side") {
    DenseSymMatrix eye(4);
    for (std::size_t i = 0; i < 4; ++i) eye.set(i, i, 1.0);
    const std::vector<double> b = {1.0, -2.0, 3.5, 0.25};
    const std::vector<double> x = spd_solve(eye, b);
    for (std::size_t i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(b[i]));
  }
  SUBCASE("solve residual is small") {
    std::mt19937_64 engine = substream(44, 0);
    const MonotoneDesign design = random_design(engine, 12);
    const CovarianceParams params(1.0, 1.0);
    const DenseSymMatrix c = build_covariance_monotone(design, params);
    std::vector<double> b(12);
    for (double& v : b) v = 2.0 * uniform01(engine) - 1.0;
    const std::vector<double> x = spd_solve(c, b);
    double norm_b = 0.0, worst = 0.0;
    for (double v : b) norm_b = std::max(norm_b, std::abs(v));
    for (std::size_t i = 0; i < 12; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 12; ++k) acc += c(i, k) * x[k];
      worst = std::max(worst, std::abs(acc - b[i]));
    }
    CHECK(worst < 1e-9 * norm_b);
  }
  SUBCASE("log determinant matches sum log(1 - q_i^2)") {
    std::mt19937_64 engine = substream(45, 0);
    const MonotoneDesign design = random_design(engine, 5);
    const CovarianceParams params(0.9, 1.7);
    const SpdFactor factor(build_covariance_monotone(design, params));
    double expected = 0.0;
    for (double q : q_values(design, params))
      expected += std::log(1.0 - q * q);
    CHECK(std::abs(factor.log_determinant() - expected) < 1e-10);
  }
  SUBCASE("duplicate points are flagged") {
    const std::vector<Point> pts = {{1, 1}, {2, 2}, {1, 1}};
    const CovarianceParams unit(1, 1);
    const DenseSymMatrix c =
        build_covariance_points(std::span<const Point>(pts), unit);
    CHECK_THROWS_AS(spd_factor(c), NotPositiveDefinite);
  }
  SUBCASE("size cap is enforced before allocation") {
    const std::vector<Point> too_many(kDenseSizeCap + 1);
    CHECK_THROWS_AS(trend_information_oracle(
                        std::span<const Point>(too_many), CovarianceParams(1, 1)),
                    DomainError);
  }
}

TEST_CASE("trend information oracle") {
  const CovarianceParams unit(1, 1);
  SUBCASE("four vertices of the unit square") {
    const std::vector<Point> vertices = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const double value =
        trend_information_oracle(std::span<const Point>(vertices), unit);
    // Product identity: (2/(1+e^{-1}))^2.
    const double expected = std::pow(2.0 / (1.0 + std::exp(-1.0)), 2);
    CHECK(value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(value - 2.1378) < 5e-4);  // printed (rounded) as 2.13
  }
  SUBCASE("matches the closed form on monotone designs") {
    std::mt19937_64 engine = substream(46, 0);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(uniform01(engine) * 9);
      const MonotoneDesign design = random_design(engine, n);
      const CovarianceParams params(0.2 + 4.8 * uniform01(engine),
                                    0.2 + 4.8 * uniform01(engine));
      const std::vector<Point> pts = design.points();
      const double closed = trend_information(design, params);
      const double oracle =
          trend_information_oracle(std::span<const Point>(pts), params);
      CHECK(std::abs(closed - oracle) <= 1e-10 * closed);
    }
  }
}

TEST_CASE("covariance information oracle") {
  SUBCASE("derivative entries vanish on the diagonal") {
    // dC/dalpha entry (i,i) = -|t_i - t_i| C_ii = 0; verified through the
    // quadratic identity M_alpha(single increment design) = d^2 w.
    const MonotoneDesign design =
        MonotoneDesign::from_increments({1, 1}, {0.7}, {0.4});
    const CovarianceParams params(1.1, 0.6);
    const std::vector<Point> pts = design.points();
    const FisherMatrix oracle =
        covariance_information_oracle(std::span<const Point>(pts), params);
    const double x = 1.1 * 0.7 + 0.6 * 0.4;
    CHECK(oracle.m_alpha ==
          doctest::Approx(0.7 * 0.7 * increment_weight(x)).epsilon(1e-12));
    CHECK(oracle.m_beta ==
          doctest::Approx(0.4 * 0.4 * increment_weight(x)).epsilon(1e-12));
  }
  SUBCASE("axis swap exchanges the rate entries") {
    std::mt19937_64 engine = substream(47, 0);
    const MonotoneDesign design = random_design(engine, 5);
    std::vector<Point> pts = design.points();
    std::vector<Point> swapped;
    for (const Point& p : pts) swapped.push_back({p.t, p.s});
    const FisherMatrix m = covariance_information_oracle(
        std::span<const Point>(pts), CovarianceParams(1.4, 0.5));
    const FisherMatrix ms = covariance_information_oracle(
        std::span<const Point>(swapped), CovarianceParams(0.5, 1.4));
    CHECK(m.m_alpha == doctest::Approx(ms.m_beta).epsilon(1e-12));
    CHECK(m.m_beta == doctest::Approx(ms.m_alpha).epsilon(1e-12));
    CHECK(m.m_alpha_beta == doctest::Approx(ms.m_alpha_beta).epsilon(1e-12));
  }
  SUBCASE("analytic derivative matrices agree with finite differences") {
    std::mt19937_64 engine = substream(48, 0);
    const MonotoneDesign design = random_design(engine, 5);
    const CovarianceParams params(1.2, 0.7);
    const std::vector<Point> pts = design.points();
    const FisherMatrix analytic =
        covariance_information_oracle(std::span<const Point>(pts), params);

    // Rebuild the three traces from centrally differenced covariances.
    constexpr double h = 1e-6;
    const std::size_t n = pts.size();
    auto dense = [&](const CovarianceParams& p) {
      return build_covariance_points(std::span<const Point>(pts), p);
    };
    const DenseSymMatrix c = dense(params);
    const DenseSymMatrix c_a_plus = dense(CovarianceParams(
        params.alpha + h, params.beta));
    const DenseSymMatrix c_a_minus = dense(CovarianceParams(
        params.alpha - h, params.beta));
    const DenseSymMatrix c_b_plus = dense(CovarianceParams(
        params.alpha, params.beta + h));
    const DenseSymMatrix c_b_minus = dense(CovarianceParams(
        params.alpha, params.beta - h));
    const SpdFactor factor(c);

    auto half_trace = [&](const DenseSymMatrix& da, const DenseSymMatrix& db) {
      // 1/2 tr(C^{-1} dA C^{-1} dB) via column solves.
      std::vector<std::vector<double>> inv_da(n), inv_db(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> col_a(n), col_b(n);
        for (std::size_t i = 0; i < n; ++i) {
          col_a[i] = da(i, j);
          col_b[i] = db(i, j);
        }
        inv_da[j] = factor.solve(col_a);
        inv_db[j] = factor.solve(col_b);
      }
      double trace = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          trace += inv_da[j][i] * inv_db[i][j];
      return 0.5 * trace;
    };
    auto fd_matrix = [&](const DenseSymMatrix& plus,
                         const DenseSymMatrix& minus) {
      DenseSymMatrix out(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
          out.set(i, j, (plus(i, j) - minus(i, j)) / (2.0 * h));
      return out;
    };
    const DenseSymMatrix da = fd_matrix(c_a_plus, c_a_minus);
    const DenseSymMatrix db = fd_matrix(c_b_plus, c_b_minus);
    CHECK(half_trace(da, da) ==
          doctest::Approx(analytic.m_alpha).epsilon(1e-5));
    CHECK(half_trace(db, db) == doctest::Approx(analytic.m_beta).epsilon(1e-5));
    CHECK(half_trace(da, db) ==
          doctest::Approx(analytic.m_alpha_beta).epsilon(1e-5));
  }
}

TEST_CASE("grid trend information") {
  const CovarianceParams unit(1, 1);
  SUBCASE("2x2 vertex grid of the unit square") {
    const GridDesign grid({0.0, 1.0}, {0.0, 1.0});
    const double expected = std::pow(2.0 / (1.0 + std::exp(-1.0)), 2);
    CHECK(grid_trend_information(grid, unit) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("agrees with the dense oracle on random grids") {
    std::mt19937_64 engine = substream(49, 0);
    for (int trial = 0; trial < 20; ++trial) {
      auto coords = [&](std::size_t count) {
        std::vector<double> out(count);
        double acc = uniform01(engine);
        for (double& v : out) {
          v = acc;
          acc += 0.05 + uniform01(engine);
        }
        return out;
      };
      const std::size_t nt = 2 + static_cast<std::size_t>(uniform01(engine) * 10.99);
      const std::size_t ns = 2 + static_cast<std::size_t>(uniform01(engine) * 10.99);
      const GridDesign grid(coords(nt), coords(ns));
      const CovarianceParams params(0.2 + 4.8 * uniform01(engine),
                                    0.2 + 4.8 * uniform01(engine));
      const std::vector<Point> pts = grid.points();
      const double dense =
          trend_information_oracle(std::span<const Point>(pts), params);
      const double product = grid_trend_information(grid, params);
      CHECK(std::abs(product - dense) <= 1e-9 * dense);
    }
  }
  SUBCASE("degenerate 1 x k grid reduces to the one-dimensional formula") {
    const GridDesign grid({2.0}, {0.0, 0.4, 1.1, 1.5});
    const CovarianceParams params(1.7, 0.9);
    double expected = 1.0;
    for (double step : {0.4, 0.7, 0.4}) expected += std::tanh(0.5 * 0.9 * step);
    CHECK(grid_trend_information(grid, params) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("16x16 highway grid, both routes") {
    std::vector<double> t(16), s(16);
    for (std::size_t i = 0; i < 16; ++i) {
      t[i] = 0.25 * static_cast<double>(i);
      s[i] = 0.2 * static_cast<double>(i);
    }
    const GridDesign grid(t, s);
    const double product = grid_trend_information(grid, unit);
    const std::vector<Point> pts = grid.points();
    const double dense =
        trend_information_oracle(std::span<const Point>(pts), unit);
    CHECK(std::abs(product - dense) <= 1e-9 * dense);
    // Product of the two 1D closed forms.
    const double expected = (1.0 + 15.0 * std::tanh(0.125)) *
                            (1.0 + 15.0 * std::tanh(0.1));
    CHECK(product == doctest::Approx(expected).epsilon(1e-12));
    // Larger than the monotone ceiling lambda/2 + 1 = 4.375: grids are not
    // subject to the monotone bound.
    CHECK(product > 4.375);
  }
}

TEST_CASE("oracle equivalence sweep") {
  std::mt19937_64 engine = substream(50, 0);
  double worst_trend = 0.0, worst_fisher = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(uniform01(engine) * 8.99);
    const MonotoneDesign design = random_design(engine, n);
    const CovarianceParams params(0.2 + 4.8 * uniform01(engine),
                                  0.2 + 4.8 * uniform01(engine));
    const std::vector<Point> pts = design.points();
    const double closed = trend_information(design, params);
    const double oracle =
        trend_information_oracle(std::span<const Point>(pts), params);
    worst_trend = std::max(worst_trend, std::abs(closed - oracle) / closed);

    const FisherMatrix cm = covariance_information(design, params);
    const FisherMatrix om =
        covariance_information_oracle(std::span<const Point>(pts), params);
    auto rel = [](double a, double b) {
      return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    };
    worst_fisher = std::max({worst_fisher, rel(cm.m_alpha, om.m_alpha),
                             rel(cm.m_beta, om.m_beta),
                             rel(cm.m_alpha_beta, om.m_alpha_beta)});
  }
  CHECK(worst_trend < 1e-10);
  CHECK(worst_fisher < 1e-9);
}
