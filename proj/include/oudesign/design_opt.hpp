#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oudesign/fisher.hpp"
#include "oudesign/model.hpp"

namespace oudesign {

// Geometric-progression design: increments decay by ratio r per step,
// d_i = k r1^{i-1} * t_span with k = (1-r1)/(1-r1^{n-1}) (k = 1/(n-1) at
// r1 = 1), and likewise for the s axis with r2.  Increments always sum to
// the spans.
struct GeometricDesignSpec {
  std::size_t n;
  double r1;
  double r2;
  std::pair<double, double> spans = {1.0, 1.0};  // (t-span, s-span)
};

// Normalized increments k, k*r, ..., k*r^{n-2} scaled to the span; k is
// computed as 1/sum(r^i) which is stable through r -> 1.
std::vector<double> geometric_increments(std::size_t n, double ratio,
                                         double span);

MonotoneDesign geometric_progression_design(const GeometricDesignSpec& spec);

// Constant skewed increment lambda/(n-1) over the full spans; optimal for
// the trend parameter.  The origin sits at the region's lower corner.
MonotoneDesign optimal_trend_design(std::size_t n, const Region& region,
                                    const CovarianceParams& params);

// One cell of the (r1, r2) sweep.
struct SurfaceRow {
  double r1;
  double r2;
  double m_theta;
  double phi;
  double psi;
};

// Evaluates the geometric family on a resolution x resolution grid over
// (0,1]^2 (unit spans); r1-major order.
std::vector<SurfaceRow> geometric_surface(std::size_t n,
                                          const CovarianceParams& params,
                                          std::size_t resolution);

// value / reference; reference must be positive.
double efficiency(double value, double reference);

enum class SearchObjective { trend, phi, psi };

const char* to_string(SearchObjective objective);
SearchObjective search_objective_from_string(const std::string& name);

struct SearchConfig {
  SearchObjective objective = SearchObjective::trend;
  std::size_t n = 4;
  Region region{0.0, 1.0, 0.0, 1.0};
  std::size_t multistarts = 20;
  std::size_t max_iterations = 4000;
  double tolerance = 1e-10;
  std::uint64_t seed = 0;
  double increment_floor = 1e-4;        // per raw increment, both axes
  double strict_interior_margin = 0.0;  // relative span shrink

  SearchConfig() = default;
};

// Per-start outcome.  Bound proximity is measured in skewed units with
// tolerance 1e-6; interior stationary points are checked against the
// analytic gradient and against the proportional family d_i = c_i d_1,
// delta_i = c_i delta_1 (where the objective is identically zero).
struct RunDiagnostics {
  std::size_t start_index = 0;
  bool is_initial = false;
  bool improved = false;
  bool converged = false;
  double value = 0.0;
  std::vector<bool> d_at_floor;
  std::vector<bool> delta_at_floor;
  bool sum_d_active = false;
  bool sum_delta_active = false;
  bool at_boundary = false;
  bool interior_stationary = false;
  double gradient_norm = 0.0;
  double proportional_residual = 0.0;
};

struct CriticalFamilyHit {
  std::size_t start_index = 0;
  double value = 0.0;
  double gradient_norm = 0.0;
  double proportional_residual = 0.0;
};

struct SearchResult {
  MonotoneDesign best;
  double best_value = 0.0;
  std::vector<RunDiagnostics> runs;
  std::vector<CriticalFamilyHit> critical_family_hits;
  std::size_t improving_runs = 0;
  bool no_improvement = false;

  explicit SearchResult(MonotoneDesign initial) : best(std::move(initial)) {}
};

// Multistart Nelder-Mead over the 2(n-1) increments, projected onto
// {x >= floor, sum d <= t-span, sum delta <= s-span}.  Deterministic given
// the seed; each start owns a substream derived from (seed, index).
SearchResult search(const SearchConfig& config, const CovarianceParams& params,
                    const std::optional<MonotoneDesign>& initial = {});

}  // namespace oudesign
