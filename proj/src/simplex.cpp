#include "oudesign/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oudesign/errors.hpp"

namespace oudesign {

namespace {

// Standard coefficients: reflection 1, expansion 2, contraction 1/2,
// shrink 1/2.
constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f,
                                      std::vector<double> x0,
                                      const NelderMeadOptions& options,
                                      const Projector& project) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw DomainError("nelder-mead needs at least one variable");

  NelderMeadResult result;
  auto eval = [&](std::vector<double>& x) {
    if (project) project(x);
    ++result.evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> simplex;
  std::vector<double> values;
  simplex.reserve(dim + 1);
  values.reserve(dim + 1);

  if (project) project(x0);
  simplex.push_back(x0);
  values.push_back(eval(simplex.back()));
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> vertex = x0;
    const double scale = std::abs(vertex[j]) > 1e-8 ? std::abs(vertex[j]) : 1.0;
    vertex[j] += options.initial_step * scale;
    simplex.push_back(vertex);
    values.push_back(eval(simplex.back()));
  }

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim);

  for (result.iterations = 0; result.iterations < options.max_iterations;
       ++result.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    // Convergence: value spread and simplex diameter both small.
    const double f_spread = std::abs(values[worst] - values[best]);
    double diameter = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t v = 1; v <= dim; ++v)
        diameter = std::max(
            diameter, std::abs(simplex[order[v]][j] - simplex[best][j]));
    double x_scale = 0.0;
    for (std::size_t j = 0; j < dim; ++j)
      x_scale = std::max(x_scale, std::abs(simplex[best][j]));
    if (f_spread <= options.f_tolerance * (1.0 + std::abs(values[best])) &&
        diameter <= options.x_tolerance * (1.0 + x_scale)) {
      result.converged = true;
      break;
    }

    for (std::size_t j = 0; j < dim; ++j) {
      double acc = 0.0;
      for (std::size_t v = 0; v <= dim; ++v)
        if (v != worst) acc += simplex[v][j];
      centroid[j] = acc / static_cast<double>(dim);
    }

    auto blend = [&](double coef) {
      for (std::size_t j = 0; j < dim; ++j)
        trial[j] = centroid[j] + coef * (centroid[j] - simplex[worst][j]);
    };

    blend(kReflect);
    std::vector<double> reflected = trial;
    const double f_reflected = eval(reflected);

    if (f_reflected < values[best]) {
      blend(kExpand);
      std::vector<double> expanded = trial;
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = std::move(expanded);
        values[worst] = f_expanded;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = std::move(reflected);
      values[worst] = f_reflected;
      continue;
    }

    if (f_reflected < values[worst]) {
      blend(kContract);  // outside contraction
      std::vector<double> contracted = trial;
      const double f_contracted = eval(contracted);
      if (f_contracted <= f_reflected) {
        simplex[worst] = std::move(contracted);
        values[worst] = f_contracted;
        continue;
      }
    } else {
      blend(-kContract);  // inside contraction
      std::vector<double> contracted = trial;
      const double f_contracted = eval(contracted);
      if (f_contracted < values[worst]) {
        simplex[worst] = std::move(contracted);
        values[worst] = f_contracted;
        continue;
      }
    }

    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == best) continue;
      for (std::size_t j = 0; j < dim; ++j)
        simplex[v][j] =
            simplex[best][j] + kShrink * (simplex[v][j] - simplex[best][j]);
      values[v] = eval(simplex[v]);
    }
  }

  std::size_t best = 0;
  for (std::size_t v = 1; v <= dim; ++v)
    if (values[v] < values[best]) best = v;
  result.x = simplex[best];
  result.f = values[best];
  return result;
}

}  // namespace oudesign
