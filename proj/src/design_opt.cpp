#include "oudesign/design_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oudesign/rng.hpp"
#include "oudesign/simplex.hpp"

namespace oudesign {

std::vector<double> geometric_increments(std::size_t n, double ratio,
                                         double span) {
  if (n < 2) throw DomainError("geometric increments need n >= 2");
  if (!(ratio > 0.0) || ratio > 1.0)
    throw DomainError("ratio must lie in (0, 1], got " +
                      std::to_string(ratio));
  if (!(span > 0.0)) throw DomainError("span must be positive");

  const std::size_t m = n - 1;
  std::vector<double> powers(m);
  double power = 1.0;
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    powers[i] = power;
    total += power;
    power *= ratio;
  }
  const double first = span / total;  // = span (1-r)/(1-r^{n-1}), stable at r=1
  for (double& v : powers) v *= first;
  return powers;
}

MonotoneDesign geometric_progression_design(const GeometricDesignSpec& spec) {
  std::vector<double> d = geometric_increments(spec.n, spec.r1, spec.spans.first);
  std::vector<double> delta =
      geometric_increments(spec.n, spec.r2, spec.spans.second);
  return MonotoneDesign::from_increments({0.0, 0.0}, std::move(d),
                                         std::move(delta),
                                         /*allow_nonpositive_origin=*/true);
}

MonotoneDesign optimal_trend_design(std::size_t n, const Region& region,
                                    const CovarianceParams& params) {
  (void)params;  // the optimum is equidistant for every parameter value
  if (n < 2) throw DomainError("optimal trend design needs n >= 2");
  const double m = static_cast<double>(n - 1);
  std::vector<double> d(n - 1, region.t_span() / m);
  std::vector<double> delta(n - 1, region.s_span() / m);
  return MonotoneDesign::from_increments({region.s_min, region.t_min},
                                         std::move(d), std::move(delta),
                                         /*allow_nonpositive_origin=*/true);
}

std::vector<SurfaceRow> geometric_surface(std::size_t n,
                                          const CovarianceParams& params,
                                          std::size_t resolution) {
  if (resolution < 2) throw DomainError("surface resolution must be >= 2");
  std::vector<SurfaceRow> rows;
  rows.reserve(resolution * resolution);
  for (std::size_t i = 1; i <= resolution; ++i) {
    const double r1 = static_cast<double>(i) / static_cast<double>(resolution);
    for (std::size_t j = 1; j <= resolution; ++j) {
      const double r2 =
          static_cast<double>(j) / static_cast<double>(resolution);
      const MonotoneDesign design =
          geometric_progression_design({n, r1, r2, {1.0, 1.0}});
      SurfaceRow row;
      row.r1 = r1;
      row.r2 = r2;
      row.m_theta = trend_information(design, params);
      row.phi = phi(design, params);
      row.psi = psi(design, params);
      rows.push_back(row);
    }
  }
  return rows;
}

double efficiency(double value, double reference) {
  if (!(reference > 0.0))
    throw DomainError("efficiency reference must be positive");
  return value / reference;
}

const char* to_string(SearchObjective objective) {
  switch (objective) {
    case SearchObjective::trend: return "trend";
    case SearchObjective::phi: return "phi";
    case SearchObjective::psi: return "psi";
  }
  return "?";
}

SearchObjective search_objective_from_string(const std::string& name) {
  if (name == "trend") return SearchObjective::trend;
  if (name == "phi") return SearchObjective::phi;
  if (name == "psi") return SearchObjective::psi;
  throw DomainError("unknown objective '" + name + "'");
}

namespace {

struct SearchSpace {
  std::size_t m;  // increments per axis
  double floor;
  double t_span;
  double s_span;
};

// Feasibility map: clamp each increment to the floor, then if an axis sum
// exceeds its span, shrink the excess above the floor proportionally.
void project_increments(std::vector<double>& x, const SearchSpace& space) {
  const std::size_t m = space.m;
  auto project_axis = [&](std::size_t offset, double span) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double& v = x[offset + i];
      if (v < space.floor) v = space.floor;
      sum += v;
    }
    if (sum > span) {
      const double base = static_cast<double>(m) * space.floor;
      const double scale = (span - base) / (sum - base);
      for (std::size_t i = 0; i < m; ++i)
        x[offset + i] = space.floor + (x[offset + i] - space.floor) * scale;
    }
  };
  project_axis(0, space.t_span);
  project_axis(m, space.s_span);
}

MonotoneDesign design_from_vector(std::span<const double> x,
                                  const SearchSpace& space,
                                  const Region& region) {
  std::vector<double> d(x.begin(), x.begin() + space.m);
  std::vector<double> delta(x.begin() + space.m, x.end());
  return MonotoneDesign::from_increments({region.s_min, region.t_min},
                                         std::move(d), std::move(delta),
                                         /*allow_nonpositive_origin=*/true);
}

double objective_value(SearchObjective objective, const MonotoneDesign& design,
                       const CovarianceParams& params) {
  switch (objective) {
    case SearchObjective::trend: return trend_information(design, params);
    case SearchObjective::phi: return phi(design, params);
    case SearchObjective::psi: return psi(design, params);
  }
  return 0.0;
}

// Largest relative mismatch between the two ratio vectors d_i/d_1 and
// delta_i/delta_1; zero on the proportional family.
double proportional_residual(const MonotoneDesign& design) {
  const auto& d = design.d();
  const auto& delta = design.delta();
  if (d.size() < 2) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double rd = d[i] / d[0];
    const double rdelta = delta[i] / delta[0];
    const double scale = std::max({std::abs(rd), std::abs(rdelta), 1e-300});
    worst = std::max(worst, std::abs(rd - rdelta) / scale);
  }
  return worst;
}

RunDiagnostics diagnose(const std::vector<double>& x, double value,
                        bool converged, std::size_t start_index,
                        bool is_initial, const SearchSpace& space,
                        const Region& region, const SearchConfig& config,
                        const CovarianceParams& params) {
  constexpr double kBoundTolerance = 1e-6;  // in skewed units
  RunDiagnostics diag;
  diag.start_index = start_index;
  diag.is_initial = is_initial;
  diag.converged = converged;
  diag.value = value;
  diag.d_at_floor.resize(space.m);
  diag.delta_at_floor.resize(space.m);

  double sum_d = 0.0, sum_delta = 0.0;
  for (std::size_t i = 0; i < space.m; ++i) {
    diag.d_at_floor[i] =
        params.alpha * (x[i] - space.floor) <= kBoundTolerance;
    diag.delta_at_floor[i] =
        params.beta * (x[space.m + i] - space.floor) <= kBoundTolerance;
    sum_d += x[i];
    sum_delta += x[space.m + i];
  }
  diag.sum_d_active = params.alpha * (space.t_span - sum_d) <= kBoundTolerance;
  diag.sum_delta_active =
      params.beta * (space.s_span - sum_delta) <= kBoundTolerance;
  diag.at_boundary = diag.sum_d_active || diag.sum_delta_active;
  for (std::size_t i = 0; i < space.m; ++i)
    diag.at_boundary =
        diag.at_boundary || diag.d_at_floor[i] || diag.delta_at_floor[i];

  const MonotoneDesign design = design_from_vector(x, space, region);
  diag.proportional_residual = proportional_residual(design);

  IncrementGradient gradient;
  switch (config.objective) {
    case SearchObjective::trend: {
      // dM/dd_i = 2 alpha q/(1+q)^2 > 0 everywhere: never stationary.
      gradient.d.assign(space.m, 0.0);
      gradient.delta.assign(space.m, 0.0);
      const auto skewed = skewed_increments(design, params);
      for (std::size_t i = 0; i < space.m; ++i) {
        const double q = std::exp(-skewed[i]);
        const double slope = 2.0 * q / ((1.0 + q) * (1.0 + q));
        gradient.d[i] = params.alpha * slope;
        gradient.delta[i] = params.beta * slope;
      }
      break;
    }
    case SearchObjective::phi:
      gradient = phi_gradient(design, params);
      break;
    case SearchObjective::psi:
      gradient = psi_gradient(design, params);
      break;
  }
  double norm = 0.0;
  for (double g : gradient.d) norm = std::max(norm, std::abs(g));
  for (double g : gradient.delta) norm = std::max(norm, std::abs(g));
  diag.gradient_norm = norm;
  diag.interior_stationary =
      !diag.at_boundary && norm < 1e-6 * (1.0 + std::abs(value));
  return diag;
}

}  // namespace

SearchResult search(const SearchConfig& config, const CovarianceParams& params,
                    const std::optional<MonotoneDesign>& initial) {
  if (config.n < 2) throw DomainError("search needs n >= 2");
  if (config.multistarts == 0) throw DomainError("search needs at least one start");
  if (!(config.tolerance > 0.0)) throw DomainError("tolerance must be positive");

  SearchSpace space;
  space.m = config.n - 1;
  space.floor = std::max(config.increment_floor,
                         2.0 * kSkewedIncrementFloor /
                             (params.alpha + params.beta));
  const double shrink = 1.0 - config.strict_interior_margin;
  space.t_span = config.region.t_span() * shrink;
  space.s_span = config.region.s_span() * shrink;
  if (space.t_span <= static_cast<double>(space.m) * space.floor ||
      space.s_span <= static_cast<double>(space.m) * space.floor)
    throw DomainError("increment floor leaves no feasible design");

  const Projector project = [&space](std::vector<double>& x) {
    project_increments(x, space);
  };
  const Objective negated = [&](std::span<const double> x) {
    return -objective_value(config.objective,
                            design_from_vector(x, space, config.region),
                            params);
  };

  NelderMeadOptions nm;
  nm.max_iterations = config.max_iterations;
  nm.f_tolerance = config.tolerance;
  nm.x_tolerance = std::sqrt(config.tolerance);

  // Baseline: the supplied initial design, if any.
  double baseline = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  double best_value = -std::numeric_limits<double>::infinity();

  MonotoneDesign placeholder = optimal_trend_design(
      config.n, config.region, params);  // replaced before returning
  SearchResult result(placeholder);

  const double improve_margin = 1e-12;
  auto record_run = [&](std::vector<double> x, double value, bool converged,
                        std::size_t index, bool is_initial) {
    RunDiagnostics diag = diagnose(x, value, converged, index, is_initial,
                                   space, config.region, config, params);
    const bool beats_baseline =
        !std::isfinite(baseline)
            ? std::isfinite(value)
            : value > baseline + improve_margin * (1.0 + std::abs(baseline));
    diag.improved = !is_initial && beats_baseline;
    if (diag.improved) ++result.improving_runs;
    if (diag.interior_stationary)
      result.critical_family_hits.push_back({index, value, diag.gradient_norm,
                                             diag.proportional_residual});
    result.runs.push_back(std::move(diag));
    if (value > best_value) {
      best_value = value;
      best_x = std::move(x);
    }
  };

  if (initial) {
    if (initial->size() != config.n)
      throw DomainError("initial design size does not match config.n");
    std::vector<double> x0(2 * space.m);
    std::copy(initial->d().begin(), initial->d().end(), x0.begin());
    std::copy(initial->delta().begin(), initial->delta().end(),
              x0.begin() + static_cast<std::ptrdiff_t>(space.m));
    project_increments(x0, space);
    const double value = objective_value(
        config.objective, design_from_vector(x0, space, config.region), params);
    baseline = value;
    record_run(std::move(x0), value, true, 0, /*is_initial=*/true);
  }

  for (std::size_t start = 0; start < config.multistarts; ++start) {
    std::mt19937_64 engine = substream(config.seed, start);
    std::vector<double> x0(2 * space.m);
    // Random fractions of the spans, biased away from the floor.
    auto fill_axis = [&](std::size_t offset, double span) {
      double total = 0.0;
      for (std::size_t i = 0; i < space.m; ++i) {
        x0[offset + i] = 0.05 + 0.95 * uniform01(engine);
        total += x0[offset + i];
      }
      const double occupancy = 0.4 + 0.6 * uniform01(engine);
      const double usable = span - static_cast<double>(space.m) * space.floor;
      for (std::size_t i = 0; i < space.m; ++i)
        x0[offset + i] =
            space.floor + x0[offset + i] / total * occupancy * usable;
    };
    fill_axis(0, space.t_span);
    fill_axis(space.m, space.s_span);

    NelderMeadResult nm_result =
        nelder_mead_minimize(negated, std::move(x0), nm, project);
    record_run(std::move(nm_result.x), -nm_result.f, nm_result.converged,
               start + (initial ? 1 : 0), /*is_initial=*/false);
  }

  result.no_improvement = initial.has_value() && result.improving_runs == 0;
  result.best = design_from_vector(best_x, space, config.region);
  result.best_value = best_value;
  return result;
}

}  // namespace oudesign
