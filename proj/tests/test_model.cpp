#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "oudesign/model.hpp"
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

}  // namespace

TEST_CASE("covariance params validate and convert scales") {
  CHECK_THROWS_AS(CovarianceParams(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(CovarianceParams(1.0, -2.0), DomainError);
  CHECK_THROWS_AS(CovarianceParams(1.0, 1.0, 0.0), DomainError);

  std::mt19937_64 engine = substream(11, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = 0.1 + 5.0 * uniform01(engine);
    const double beta = 0.1 + 5.0 * uniform01(engine);
    const double sigma = 0.2 + 3.0 * uniform01(engine);
    const CovarianceParams params(alpha, beta, sigma);
    const CovarianceParams back =
        CovarianceParams::from_sigma_tilde(alpha, beta, params.sigma_tilde());
    CHECK(std::abs(back.sigma - sigma) / sigma < 1e-14);
  }
  // sigma = sigma_tilde / (2 sqrt(alpha beta))
  const CovarianceParams p = CovarianceParams::from_sigma_tilde(1.0, 1.0, 2.0);
  CHECK(p.sigma == doctest::Approx(1.0));
}

TEST_CASE("region validates bounds") {
  CHECK_THROWS_AS(Region(1.0, 1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Region(0.0, 1.0, 2.0, 1.0), DomainError);
  const Region region(0.0, 3.2, 0.0, 4.0);
  CHECK(region.s_span() == doctest::Approx(3.2));
  CHECK(region.t_span() == doctest::Approx(4.0));
}

TEST_CASE("condition D validation") {
  SUBCASE("identity diagonal") {
    const std::vector<Point> pts = {{1, 1}, {2, 2}, {3, 3}};
    const MonotoneDesign design = validate_condition_d(pts);
    CHECK(design.origin().s == 1.0);
    CHECK(design.origin().t == 1.0);
    CHECK(design.d() == std::vector<double>{1.0, 1.0});
    CHECK(design.delta() == std::vector<double>{1.0, 1.0});
  }
  SUBCASE("stalled s coordinate reports the offending index") {
    const std::vector<Point> pts = {{1, 1}, {2, 2}, {2, 3}};
    try {
      validate_condition_d(pts);
      FAIL("expected ConditionDViolation");
    } catch (const ConditionDViolation& e) {
      CHECK(e.index == 2);
    }
  }
  SUBCASE("single point has empty increments") {
    const std::vector<Point> pts = {{0.5, 0.5}};
    const MonotoneDesign design = validate_condition_d(pts);
    CHECK(design.size() == 1);
    CHECK(design.d().empty());
    CHECK(design.delta().empty());
  }
  SUBCASE("nonpositive origin rejected unless relaxed") {
    const std::vector<Point> pts = {{0.0, 1.0}, {1.0, 2.0}};
    CHECK_THROWS_AS(validate_condition_d(pts), NonpositiveCoordinate);
    CHECK_NOTHROW(validate_condition_d(pts, true));
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(validate_condition_d(std::vector<Point>{}), DomainError);
  }
  SUBCASE("nonpositive increments rejected") {
    CHECK_THROWS_AS(
        MonotoneDesign::from_increments({1, 1}, {1.0, 0.0}, {1.0, 1.0}),
        ConditionDViolation);
  }
}

TEST_CASE("point/increment round trip is exact") {
  std::mt19937_64 engine = substream(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n =
        1 + static_cast<std::size_t>(uniform01(engine) * 12.0);
    std::vector<Point> pts;
    Point current{0.01 + uniform01(engine), 0.01 + uniform01(engine)};
    pts.push_back(current);
    for (std::size_t i = 1; i < n; ++i) {
      current.s += 0.05 + 2.0 * uniform01(engine);
      current.t += 0.05 + 2.0 * uniform01(engine);
      pts.push_back(current);
    }
    const MonotoneDesign design = validate_condition_d(pts);
    const std::vector<Point> back = design.points();
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(back[i] == pts[i]);
  }
}

TEST_CASE("q values") {
  SUBCASE("single increment") {
    const MonotoneDesign design =
        MonotoneDesign::from_increments({1, 1}, {0.25}, {0.2});
    const std::vector<double> q = q_values(design, CovarianceParams(1, 1));
    REQUIRE(q.size() == 1);
    CHECK(q[0] == doctest::Approx(std::exp(-0.45)).epsilon(1e-14));
    CHECK(q[0] == doctest::Approx(0.63763).epsilon(1e-4));
  }
  SUBCASE("two increments, asymmetric rates") {
    const MonotoneDesign design =
        MonotoneDesign::from_increments({1, 1}, {0.5, 0.3}, {0.2, 0.7});
    const std::vector<double> q =
        q_values(design, CovarianceParams(1.2, 0.8));
    REQUIRE(q.size() == 2);
    CHECK(q[0] == doctest::Approx(std::exp(-0.76)).epsilon(1e-14));
    CHECK(q[1] == doctest::Approx(std::exp(-0.92)).epsilon(1e-14));
  }
  SUBCASE("swap invariance when alpha == beta") {
    std::mt19937_64 engine = substream(13, 0);
    const MonotoneDesign design = random_design(engine, 6);
    const MonotoneDesign swapped = MonotoneDesign::from_increments(
        {design.origin().t, design.origin().s}, design.delta(), design.d());
    const CovarianceParams params(1.7, 1.7);
    CHECK(q_values(design, params) == q_values(swapped, params));
  }
  SUBCASE("q strictly inside (0,1)") {
    std::mt19937_64 engine = substream(14, 0);
    for (int trial = 0; trial < 100; ++trial) {
      const MonotoneDesign design = random_design(engine, 8);
      const CovarianceParams params(0.2 + 4.8 * uniform01(engine),
                                    0.2 + 4.8 * uniform01(engine));
      for (double q : q_values(design, params)) {
        CHECK(q > 0.0);
        CHECK(q < 1.0);
      }
    }
  }
}

TEST_CASE("skewed length") {
  SUBCASE("full highway spans") {
    // 64 points spanning 4 in t and 3.2 in s.
    std::vector<double> d(63, 4.0 / 63.0), delta(63, 3.2 / 63.0);
    const MonotoneDesign design =
        MonotoneDesign::from_increments({0.01, 0.01}, d, delta);
    CHECK(skewed_length(design, CovarianceParams(1, 1)) ==
          doctest::Approx(7.2).epsilon(1e-12));
  }
  SUBCASE("single point") {
    const std::vector<Point> pts = {{1, 1}};
    CHECK(skewed_length(validate_condition_d(pts), CovarianceParams(1, 1)) ==
          0.0);
  }
  SUBCASE("weighted spans") {
    std::vector<double> d(15, 0.25), delta(15, 0.2);
    const MonotoneDesign design =
        MonotoneDesign::from_increments({1, 1}, d, delta);
    CHECK(skewed_length(design, CovarianceParams(10, 1)) ==
          doctest::Approx(40.5).epsilon(1e-12));
  }
  SUBCASE("additive under concatenation") {
    std::mt19937_64 engine = substream(15, 0);
    const CovarianceParams params(1.3, 0.6);
    const MonotoneDesign head = random_design(engine, 5);
    const MonotoneDesign tail = random_design(engine, 4);
    std::vector<double> d = head.d(), delta = head.delta();
    d.insert(d.end(), tail.d().begin(), tail.d().end());
    delta.insert(delta.end(), tail.delta().begin(), tail.delta().end());
    const MonotoneDesign joined =
        MonotoneDesign::from_increments(head.origin(), d, delta);
    const double combined = skewed_length(head, params) +
                            skewed_length(tail, params);
    CHECK(skewed_length(joined, params) ==
          doctest::Approx(combined).epsilon(1e-12));
  }
}

TEST_CASE("covariance kernel") {
  const CovarianceParams unit(1, 1);
  SUBCASE("zero distance gives sigma^2") {
    const CovarianceParams params(2.0, 3.0, 1.7);
    CHECK(covariance_kernel({2, 5}, {2, 5}, params) ==
          doctest::Approx(1.7 * 1.7).epsilon(1e-15));
  }
  SUBCASE("unit diagonal step") {
    CHECK(covariance_kernel({0, 0}, {1, 1}, unit) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  }
  SUBCASE("symmetry in arguments") {
    std::mt19937_64 engine = substream(16, 0);
    for (int trial = 0; trial < 50; ++trial) {
      const Point a{4.0 * uniform01(engine), 4.0 * uniform01(engine)};
      const Point b{4.0 * uniform01(engine), 4.0 * uniform01(engine)};
      const CovarianceParams params(0.2 + uniform01(engine),
                                    0.2 + uniform01(engine));
      CHECK(covariance_kernel(a, b, params) ==
            covariance_kernel(b, a, params));
    }
  }
  SUBCASE("restricted to a monotone design equals the q product") {
    std::mt19937_64 engine = substream(17, 0);
    const MonotoneDesign design = random_design(engine, 8);
    const CovarianceParams params(1.1, 0.7, 1.5);
    const std::vector<double> q = q_values(design, params);
    const std::vector<Point> pts = design.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        double product = 1.0;
        for (std::size_t k = i; k < j; ++k) product *= q[k];
        const double kernel = covariance_kernel(pts[i], pts[j], params) /
                              (params.sigma * params.sigma);
        CHECK(kernel == doctest::Approx(product).epsilon(1e-12));
      }
  }
}

TEST_CASE("semivariogram") {
  const CovarianceParams unit(1, 1);
  CHECK(semivariogram(0, 0, unit) == 0.0);
  CHECK(semivariogram(1, 1, unit) ==
        doctest::Approx(2.0 * (1.0 - std::exp(-2.0))).epsilon(1e-14));
  CHECK_THROWS_AS(semivariogram(-1, 0, unit), DomainError);

  // Monotone approach to the sill 2 sigma^2 = sigma_tilde^2 / (2 alpha beta).
  const CovarianceParams params(0.8, 1.4, 1.3);
  const double sill = params.sigma_tilde() * params.sigma_tilde() /
                      (2.0 * params.alpha * params.beta);
  CHECK(sill == doctest::Approx(2.0 * 1.3 * 1.3).epsilon(1e-14));
  double previous = -1.0;
  for (double lag = 0.0; lag < 20.0; lag += 0.5) {
    const double value = semivariogram(lag, lag * 0.5, params);
    CHECK(value >= previous);
    CHECK(value < sill);
    previous = value;
  }
  CHECK(semivariogram(40.0, 40.0, params) == doctest::Approx(sill).epsilon(1e-12));
}

TEST_CASE("grid and scattered designs validate") {
  CHECK_THROWS_AS(GridDesign({1.0, 1.0}, {0.0}), ConditionDViolation);
  CHECK_THROWS_AS(GridDesign({}, {0.0}), DomainError);
  const GridDesign grid({0.0, 1.0}, {0.0, 0.5, 1.0});
  CHECK(grid.size() == 6);
  CHECK(grid.points().size() == 6);

  CHECK_THROWS_AS(ScatteredDesign({{1, 1}, {1, 1}}), DomainError);
  const ScatteredDesign scattered({{1, 1}, {0.5, 2}, {2, 0.5}});
  CHECK(scattered.size() == 3);
}
