#include "oudesign/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "oudesign/oracle.hpp"
#include "oudesign/rng.hpp"

namespace oudesign {

namespace {

std::string fmt(double value, const char* spec = "%.10g") {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, spec, value);
  return buffer;
}

std::string csv_full(double value) { return fmt(value, "%.17g"); }

// ---------------------------------------------------------------------
// Reported-value reproduction
// ---------------------------------------------------------------------

// Highway survey sample: 16 time coordinates paired in listed order with
// 16 length coordinates (t, s); used for the scattered-design evaluation.
constexpr double kHighwayTimes[16] = {1.35, 3.66, 1.86, 0.996, 0.89, 1.56,
                                      3.37, 2.189, 0.5157, 2.58, 0.058, 0.32,
                                      0.58, 1.4, 0.36, 1.82};
constexpr double kHighwayLengths[16] = {0.64, 0.37, 1.2, 0.91, 1.34, 2.82,
                                        2.56, 2.44, 0.257, 2.568, 2.223, 0.66,
                                        2.298, 2.814, 2.75, 1.61};

std::vector<Point> highway_scattered_points() {
  std::vector<Point> points(16);
  for (std::size_t i = 0; i < 16; ++i)
    points[i] = {kHighwayLengths[i], kHighwayTimes[i]};
  return points;
}

// The 16-point monotone design behind the efficiency table: increments
// dt = 0.25, ds = 0.2.
MonotoneDesign efficiency_table_design() {
  return MonotoneDesign::from_increments({0.2, 0.25},
                                         std::vector<double>(15, 0.25),
                                         std::vector<double>(15, 0.2));
}

TableLine value_line(std::string label, std::string reported, double computed,
                     double tolerance, std::string annotation = {}) {
  TableLine line;
  line.label = std::move(label);
  line.reported = std::move(reported);
  line.computed = computed;
  line.abs_difference = std::abs(computed - std::stod(line.reported));
  line.tolerance = tolerance;
  line.pass = line.abs_difference < tolerance;
  line.annotation = std::move(annotation);
  return line;
}

TableLine note_line(std::string label, std::string annotation,
                    double computed = std::numeric_limits<double>::quiet_NaN(),
                    std::string reported = {}) {
  TableLine line;
  line.label = std::move(label);
  line.reported = std::move(reported);
  line.computed = computed;
  line.annotation_only = true;
  line.annotation = std::move(annotation);
  return line;
}

// ---------------------------------------------------------------------
// Verification suites
// ---------------------------------------------------------------------

MonotoneDesign random_monotone_design(std::mt19937_64& engine,
                                      std::size_t n_min, std::size_t n_max,
                                      double increment_low,
                                      double increment_high) {
  const std::size_t n =
      n_min + static_cast<std::size_t>(uniform01(engine) *
                                       static_cast<double>(n_max - n_min + 1));
  const std::size_t count = std::min(std::max(n, n_min), n_max);
  std::vector<double> d(count - 1), delta(count - 1);
  for (double& v : d)
    v = increment_low + (increment_high - increment_low) * uniform01(engine);
  for (double& v : delta)
    v = increment_low + (increment_high - increment_low) * uniform01(engine);
  const Point origin{0.1 + uniform01(engine), 0.1 + uniform01(engine)};
  return MonotoneDesign::from_increments(origin, std::move(d),
                                         std::move(delta));
}

CovarianceParams random_params(std::mt19937_64& engine) {
  return CovarianceParams(0.2 + 4.8 * uniform01(engine),
                          0.2 + 4.8 * uniform01(engine));
}

double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

SuiteResult oracle_equivalence_suite(const VerifyOptions& options) {
  SuiteResult suite{"oracle-equivalence", options.trials, 0.0, 1e-9, true};
  const double inject = options.self_test ? 1.0 + 1e-7 : 1.0;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    std::mt19937_64 engine = substream(options.seed, trial);
    const MonotoneDesign design =
        random_monotone_design(engine, 2, options.n_max, 0.05, 2.0);
    const CovarianceParams params = random_params(engine);
    const std::vector<Point> points = design.points();

    const double m_closed = trend_information(design, params) * inject;
    const double m_oracle = trend_information_oracle(points, params);
    suite.max_error = std::max(suite.max_error, relative_gap(m_closed, m_oracle));

    if (design.size() >= 2) {
      const FisherMatrix closed = covariance_information(design, params);
      const FisherMatrix oracle = covariance_information_oracle(points, params);
      suite.max_error = std::max(
          {suite.max_error, relative_gap(closed.m_alpha * inject, oracle.m_alpha),
           relative_gap(closed.m_beta * inject, oracle.m_beta),
           relative_gap(closed.m_alpha_beta * inject, oracle.m_alpha_beta)});
    }
  }
  suite.pass = suite.max_error < suite.tolerance;
  return suite;
}

SuiteResult inverse_formula_suite(const VerifyOptions& options) {
  SuiteResult suite{"inverse-formula", options.trials, 0.0, 1e-10, true};
  const double inject = options.self_test ? 1.0 + 1e-8 : 1.0;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    std::mt19937_64 engine = substream(options.seed ^ 0x1111, trial);
    std::size_t n_max = std::max<std::size_t>(options.n_max, 2);
    const MonotoneDesign design =
        random_monotone_design(engine, 2, n_max, 0.05, 2.0);
    const CovarianceParams params = random_params(engine);
    const DenseSymMatrix c = build_covariance_monotone(design, params);
    const DenseSymMatrix inv = closed_form_inverse(design, params);
    const std::size_t n = design.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += c(i, k) * inv(k, j) * inject;
        suite.max_error = std::max(
            suite.max_error, std::abs(acc - (i == j ? 1.0 : 0.0)));
      }
  }
  suite.pass = suite.max_error < suite.tolerance;
  return suite;
}

SuiteResult gradient_suite(const VerifyOptions& options) {
  SuiteResult suite{"gradient", options.trials, 0.0, 1e-5, true};
  // Additive bias in mixed-tolerance units so the negative control trips
  // the check regardless of gradient magnitude.
  const double inject = options.self_test ? 1e-3 : 0.0;
  constexpr double h = 1e-6;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    std::mt19937_64 engine = substream(options.seed ^ 0x2222, trial);
    const std::size_t n_max = std::min<std::size_t>(options.n_max, 8);
    const MonotoneDesign design =
        random_monotone_design(engine, 3, std::max<std::size_t>(n_max, 3),
                               0.05, 2.0);
    const CovarianceParams params = random_params(engine);

    for (const bool use_psi : {false, true}) {
      const IncrementGradient grad = use_psi ? psi_gradient(design, params)
                                             : phi_gradient(design, params);
      auto value_at = [&](const std::vector<double>& d,
                          const std::vector<double>& delta) {
        const MonotoneDesign perturbed = MonotoneDesign::from_increments(
            design.origin(), d, delta);
        return use_psi ? psi(perturbed, params) : phi(perturbed, params);
      };
      for (std::size_t i = 0; i < design.d().size(); ++i) {
        std::vector<double> d_plus = design.d(), d_minus = design.d();
        d_plus[i] += h;
        d_minus[i] -= h;
        const double fd_d =
            (value_at(d_plus, design.delta()) - value_at(d_minus, design.delta())) /
            (2.0 * h);
        const double biased_d =
            grad.d[i] + inject * (1.0 + std::abs(grad.d[i]));
        suite.max_error =
            std::max(suite.max_error,
                     std::abs(biased_d - fd_d) / (1.0 + std::abs(grad.d[i])));
        std::vector<double> delta_plus = design.delta(),
                            delta_minus = design.delta();
        delta_plus[i] += h;
        delta_minus[i] -= h;
        const double fd_delta =
            (value_at(design.d(), delta_plus) - value_at(design.d(), delta_minus)) /
            (2.0 * h);
        const double biased_delta =
            grad.delta[i] + inject * (1.0 + std::abs(grad.delta[i]));
        suite.max_error =
            std::max(suite.max_error, std::abs(biased_delta - fd_delta) /
                                          (1.0 + std::abs(grad.delta[i])));
      }
    }
  }
  suite.pass = suite.max_error < suite.tolerance;
  return suite;
}

SuiteResult kronecker_suite(const VerifyOptions& options) {
  SuiteResult suite{"kronecker", options.trials, 0.0, 1e-9, true};
  const double inject = options.self_test ? 1.0 + 1e-7 : 1.0;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    std::mt19937_64 engine = substream(options.seed ^ 0x3333, trial);
    auto random_coords = [&](std::size_t count) {
      std::vector<double> coords(count);
      double acc = uniform01(engine);
      for (double& v : coords) {
        v = acc;
        acc += 0.05 + uniform01(engine);
      }
      return coords;
    };
    const std::size_t nt = 2 + static_cast<std::size_t>(uniform01(engine) * 11);
    const std::size_t ns = 2 + static_cast<std::size_t>(uniform01(engine) * 11);
    const GridDesign grid(random_coords(std::min<std::size_t>(nt, 12)),
                          random_coords(std::min<std::size_t>(ns, 12)));
    const CovarianceParams params = random_params(engine);
    const double product = grid_trend_information(grid, params) * inject;
    const std::vector<Point> points = grid.points();
    const double dense = trend_information_oracle(points, params);
    suite.max_error = std::max(suite.max_error, relative_gap(product, dense));
  }
  suite.pass = suite.max_error < suite.tolerance;
  return suite;
}

}  // namespace

InfoResult evaluate_any(const AnyDesign& design,
                        const CovarianceParams& params) {
  InfoResult info;
  info.kind = design_kind(design);
  if (const auto* monotone = std::get_if<MonotoneDesign>(&design)) {
    info.report = evaluate_design(*monotone, params);
    return info;
  }
  info.oracle_only = true;
  info.report.n = design_size(design);
  if (const auto* grid = std::get_if<GridDesign>(&design)) {
    info.report.m_theta = grid_trend_information(*grid, params);
  } else {
    const std::vector<Point> points = design_points(design);
    info.report.m_theta = trend_information_oracle(points, params);
  }
  return info;
}

void print_info(std::ostream& out, const InfoResult& info, OutputFormat format,
                const RunManifest* manifest) {
  if (format == OutputFormat::csv) {
    if (manifest) write_manifest_header(out, *manifest);
    out << "kind,n,lambda,m_theta,m_alpha,m_beta,m_alpha_beta,phi,psi\n";
    out << info.kind << ',' << info.report.n << ',';
    if (info.oracle_only) {
      out << ",," << csv_full(info.report.m_theta) << ",,,,,\n";
      out << "# notice: non-monotone design; only the trend information "
             "(dense-oracle value) is reported\n";
    } else {
      out << csv_full(info.report.lambda) << ','
          << csv_full(info.report.m_theta) << ','
          << csv_full(info.report.fisher.m_alpha) << ','
          << csv_full(info.report.fisher.m_beta) << ','
          << csv_full(info.report.fisher.m_alpha_beta) << ','
          << csv_full(info.report.fisher.phi) << ','
          << csv_full(info.report.psi) << "\n";
    }
    return;
  }
  out << "design kind : " << info.kind << "\n";
  out << "n           : " << info.report.n << "\n";
  if (info.oracle_only) {
    out << "M_theta     : " << fmt(info.report.m_theta)
        << "   (dense-oracle value)\n";
    out << "notice      : non-monotone design; covariance-parameter "
           "information is not reported\n";
    return;
  }
  out << "lambda      : " << fmt(info.report.lambda) << "\n";
  out << "M_theta     : " << fmt(info.report.m_theta) << "\n";
  out << "M_alpha     : " << fmt(info.report.fisher.m_alpha) << "\n";
  out << "M_beta      : " << fmt(info.report.fisher.m_beta) << "\n";
  out << "M_alphabeta : " << fmt(info.report.fisher.m_alpha_beta) << "\n";
  out << "Phi         : " << fmt(info.report.fisher.phi) << "\n";
  out << "Psi         : " << fmt(info.report.psi) << "\n";
  if (info.report.efficiency)
    out << "efficiency  : " << fmt(*info.report.efficiency) << "\n";
}

std::vector<TableLine> reported_value_checks() {
  std::vector<TableLine> lines;
  const CovarianceParams unit(1.0, 1.0);

  // Four-point example on the unit square.
  lines.push_back(value_line("four_point.optimal_m_theta", "1.965",
                             trend_information_equidistant(4, 2.0), 5e-4));
  std::vector<Point> vertices = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const double vertex_grid =
      trend_information_oracle(std::span<const Point>(vertices), unit);
  lines.push_back(value_line(
      "four_point.vertex_grid_m_theta", "2.13", vertex_grid, 5e-2,
      "2x2 grid on the unit square; product identity 4/(1+e^{-1})^2"));
  lines.push_back(value_line(
      "four_point.efficiency", "0.919",
      efficiency(trend_information_equidistant(4, 2.0), vertex_grid), 5e-4));
  lines.push_back(note_line(
      "four_point.grid_formula_note",
      "the printed grid formula 4/(1+exp(-2x)+exp(-x)) gives " +
          fmt(4.0 / (1.0 + std::exp(-2.0) + std::exp(-1.0)), "%.4f") +
          " at x=1; the product identity 4/(1+exp(-x))^2 gives " +
          fmt(vertex_grid, "%.4f") +
          ", matching the printed value 2.13; this implementation follows "
          "the product identity"));

  // Highway example.
  lines.push_back(value_line("highway.monotone_64_m_theta", "4.596",
                             trend_information_equidistant(64, 7.2), 5e-4));
  lines.push_back(value_line("highway.max_m_theta_n64_lambda5.12", "3.558592",
                             trend_information_equidistant(64, 5.12), 5e-7));
  const std::vector<Point> scattered = highway_scattered_points();
  const double scattered_m =
      trend_information_oracle(std::span<const Point>(scattered), unit);
  lines.push_back(value_line(
      "highway.scattered_m_theta", "5.2", scattered_m, 5e-2,
      "16 listed time coordinates paired in listed order with the 16 "
      "listed lengths"));
  lines.push_back(value_line(
      "highway.efficiency", "0.6843446",
      efficiency(trend_information_equidistant(64, 5.12), 5.2), 5e-7,
      "ratio against the rounded reported reference 5.2, as in the source; "
      "against the full-precision oracle value " +
          fmt(scattered_m) + " the ratio is " +
          fmt(efficiency(trend_information_equidistant(64, 5.12), scattered_m),
              "%.7f")));
  lines.push_back(note_line(
      "highway.text_efficiency_note",
      "the reported efficiency 0.8275795 for the value 4.319177 implies a "
      "reference of " +
          fmt(4.319177 / 0.8275795, "%.5f") +
          ", which matches neither the listed scattered sample (oracle " +
          fmt(scattered_m, "%.7f") + ", ratio " +
          fmt(4.319177 / scattered_m, "%.7f") +
          ") nor the printed 5.2; shown for reference, not asserted",
      4.319177 / scattered_m, "0.8275795"));
  lines.push_back(note_line(
      "highway.lambda_provenance_note",
      "lambda = 5.12 for the n = 64 comparison is not derivable from the "
      "listed coordinates (sorted spans give 6.165); reproduced from "
      "(n, lambda) as given"));

  // Efficiency table: three parameter pairs.
  const MonotoneDesign table_design = efficiency_table_design();
  struct RowSpec {
    const char* tag;
    double alpha, beta;
    const char* m_theta;
    double m_tol;
    const char* max_m_theta;
    double max_tol;
    const char* eff;
    double eff_tol;
  };
  const RowSpec rows[] = {
      {"a1_b1", 1.0, 1.0, "4.319177", 5e-6, "4.374803", 5e-6, "0.987285", 1e-6},
      {"a1_b10", 1.0, 10.0, "13.13952", 5e-5, "17.85041", 5e-5, "0.7360907",
       5e-7},
      {"a10_b1", 10.0, 1.0, "14.1108", 5e-4, "21.20754", 5e-5, "0.6653671",
       5e-7},
  };
  for (const RowSpec& row : rows) {
    const CovarianceParams params(row.alpha, row.beta);
    const double m_theta = trend_information(table_design, params);
    const double lambda = 3.75 * row.alpha + 3.0 * row.beta;
    const double max_m = trend_information_equidistant(256, lambda);
    const std::string tag = std::string("efficiency_table.") + row.tag;
    lines.push_back(value_line(tag + ".m_theta", row.m_theta, m_theta, row.m_tol));
    lines.push_back(
        value_line(tag + ".max_m_theta", row.max_m_theta, max_m, row.max_tol));
    lines.push_back(value_line(tag + ".efficiency", row.eff,
                               efficiency(m_theta, max_m), row.eff_tol));
  }
  lines.push_back(note_line(
      "efficiency_table.interpretation_note",
      "the caption describes a regular 256-point grid, but the printed "
      "M_theta cells match the 16-point monotone design with increments "
      "(dt, ds) = (0.25, 0.2), and the max cells match the 256-point "
      "equidistant optimum with lambda = 3.75 alpha + 3 beta; cells are "
      "reproduced under that reading"));
  const GridDesign highway_grid(
      [] {
        std::vector<double> t(16);
        for (std::size_t i = 0; i < 16; ++i) t[i] = 0.25 * static_cast<double>(i);
        return t;
      }(),
      [] {
        std::vector<double> s(16);
        for (std::size_t i = 0; i < 16; ++i) s[i] = 0.2 * static_cast<double>(i);
        return s;
      }());
  for (const RowSpec& row : rows) {
    const CovarianceParams params(row.alpha, row.beta);
    const double grid_value = grid_trend_information(highway_grid, params);
    const double bound = (3.75 * row.alpha + 3.0 * row.beta) / 2.0 + 1.0;
    lines.push_back(note_line(
        std::string("efficiency_table.grid256_") + row.tag,
        "true trend information of the 16x16 grid (product form, equals the "
        "dense oracle); exceeds the monotone ceiling lambda/2+1 = " +
            fmt(bound, "%.4g") +
            " for these rates, so the caption's efficiency-loss claim does "
            "not apply to the trend parameter",
        grid_value));
  }

  // Motivating thermal example: observation coordinates only published as a
  // figure, so the values cannot be recomputed.
  for (const char* row : {"thermal_example.a1_b1 (reported 1.481565/1.481695)",
                          "thermal_example.a1_b10 (reported 4.97261/5.081253)",
                          "thermal_example.a10_b1 (reported 2.212449/2.212854)"})
    lines.push_back(note_line(row, "inputs unavailable: observation "
                                   "coordinates are only published "
                                   "graphically; not recomputed"));
  return lines;
}

bool all_table_checks_pass(const std::vector<TableLine>& lines) {
  return std::all_of(lines.begin(), lines.end(), [](const TableLine& line) {
    return line.annotation_only || line.pass;
  });
}

void print_tables(std::ostream& out, const std::vector<TableLine>& lines,
                  OutputFormat format, const RunManifest* manifest) {
  if (format == OutputFormat::csv) {
    if (manifest) write_manifest_header(out, *manifest);
    out << "label,reported,computed,abs_difference,tolerance,status,annotation\n";
    for (const TableLine& line : lines) {
      out << line.label << ',' << line.reported << ',';
      if (std::isnan(line.computed))
        out << ',';
      else
        out << csv_full(line.computed) << ',';
      if (line.annotation_only)
        out << ",,note,";
      else
        out << csv_full(line.abs_difference) << ',' << csv_full(line.tolerance)
            << ',' << (line.pass ? "ok" : "FAIL") << ',';
      // commas inside annotations would break the row; keep them quoted
      out << '"' << line.annotation << '"' << "\n";
    }
    return;
  }
  for (const TableLine& line : lines) {
    if (line.annotation_only) {
      out << "[note] " << line.label;
      if (!std::isnan(line.computed)) out << " computed=" << fmt(line.computed);
      out << "\n       " << line.annotation << "\n";
      continue;
    }
    out << (line.pass ? "[ ok ] " : "[FAIL] ") << line.label << " reported="
        << line.reported << " computed=" << fmt(line.computed)
        << " |diff|=" << fmt(line.abs_difference, "%.3g")
        << " tol=" << fmt(line.tolerance, "%.1g") << "\n";
    if (!line.annotation.empty()) out << "       " << line.annotation << "\n";
  }
}

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  std::vector<SuiteResult> suites;
  if (options.trials == 0) return suites;
  suites.push_back(oracle_equivalence_suite(options));
  suites.push_back(inverse_formula_suite(options));
  VerifyOptions gradient_options = options;
  gradient_options.trials = std::min<std::size_t>(options.trials, 50);
  suites.push_back(gradient_suite(gradient_options));
  VerifyOptions kronecker_options = options;
  kronecker_options.trials = std::min<std::size_t>(options.trials, 20);
  suites.push_back(kronecker_suite(kronecker_options));
  return suites;
}

void print_verification(std::ostream& out,
                        const std::vector<SuiteResult>& suites,
                        OutputFormat format) {
  if (format == OutputFormat::csv) {
    out << "suite,trials,max_error,tolerance,status\n";
    for (const SuiteResult& suite : suites)
      out << suite.name << ',' << suite.trials << ',' << csv_full(suite.max_error)
          << ',' << csv_full(suite.tolerance) << ','
          << (suite.pass ? "ok" : "FAIL") << "\n";
    return;
  }
  for (const SuiteResult& suite : suites)
    out << (suite.pass ? "[ ok ] " : "[FAIL] ") << suite.name << ": "
        << suite.trials << " trials, max error " << fmt(suite.max_error, "%.3g")
        << " (tolerance " << fmt(suite.tolerance, "%.1g") << ")\n";
}

void write_surface_csv(std::ostream& out, const std::vector<SurfaceRow>& rows,
                       const RunManifest& manifest) {
  write_manifest_header(out, manifest);
  out << "r1,r2,m_theta,phi,psi\n";
  for (const SurfaceRow& row : rows)
    out << csv_full(row.r1) << ',' << csv_full(row.r2) << ','
        << csv_full(row.m_theta) << ',' << csv_full(row.phi) << ','
        << csv_full(row.psi) << "\n";
}

void write_search_csv(std::ostream& out, const SearchResult& result,
                      const RunManifest& manifest) {
  write_manifest_header(out, manifest);
  out << "# best_value: " << csv_full(result.best_value) << "\n";
  out << "# improving_runs: " << result.improving_runs << "\n";
  out << "# no_improvement: " << (result.no_improvement ? "true" : "false")
      << "\n";
  out << "run,is_initial,improved,converged,value,at_boundary,"
         "coords_at_floor,sum_d_active,sum_delta_active,interior_stationary,"
         "gradient_norm,proportional_residual\n";
  for (const RunDiagnostics& run : result.runs) {
    std::size_t floored = 0;
    for (bool b : run.d_at_floor) floored += b ? 1 : 0;
    for (bool b : run.delta_at_floor) floored += b ? 1 : 0;
    out << run.start_index << ',' << (run.is_initial ? 1 : 0) << ','
        << (run.improved ? 1 : 0) << ',' << (run.converged ? 1 : 0) << ','
        << csv_full(run.value) << ',' << (run.at_boundary ? 1 : 0) << ','
        << floored << ',' << (run.sum_d_active ? 1 : 0) << ','
        << (run.sum_delta_active ? 1 : 0) << ','
        << (run.interior_stationary ? 1 : 0) << ','
        << csv_full(run.gradient_norm) << ','
        << csv_full(run.proportional_residual) << "\n";
  }
}

void write_simulation_csv(std::ostream& out, const GlsSimulationSummary& s,
                          const RunManifest& manifest) {
  write_manifest_header(out, manifest);
  out << "quantity,value\n";
  out << "n," << s.n << "\n";
  out << "replications," << s.replications << "\n";
  out << "theta_true," << csv_full(s.theta_true) << "\n";
  out << "theta_mean," << csv_full(s.theta_mean) << "\n";
  out << "var_theta_empirical," << csv_full(s.var_theta_empirical) << "\n";
  out << "var_theta_predicted," << csv_full(s.var_theta_predicted) << "\n";
  out << "var_theta_mc_stderr," << csv_full(s.var_theta_mc_stderr) << "\n";
  out << "m_theta," << csv_full(s.m_theta) << "\n";
}

void write_fisher_check_csv(std::ostream& out, const FisherCheckReport& r,
                            const RunManifest& manifest) {
  write_manifest_header(out, manifest);
  out << "quantity,value,note\n";
  out << "replications," << r.replications << ",\n";
  out << "fit_replications," << r.fit_replications << ",\n";
  out << "failed_fits," << r.failed_fits << ",excluded from the covariance\n";
  out << "theta_mean," << csv_full(r.theta_mean) << ",\n";
  out << "var_theta_empirical," << csv_full(r.var_theta_empirical)
      << ",hard check\n";
  out << "var_theta_predicted," << csv_full(r.var_theta_predicted)
      << ",sigma^2/M_theta\n";
  out << "var_theta_mc_stderr," << csv_full(r.var_theta_mc_stderr) << ",\n";
  out << "var_alpha_empirical," << csv_full(r.cov_r_empirical[0])
      << ",diagnostic (asymptotic)\n";
  out << "var_beta_empirical," << csv_full(r.cov_r_empirical[1])
      << ",diagnostic (asymptotic)\n";
  out << "cov_alpha_beta_empirical," << csv_full(r.cov_r_empirical[2])
      << ",diagnostic (asymptotic)\n";
  out << "var_alpha_predicted," << csv_full(r.m_r_inverse[0]) << ",M_r^{-1}\n";
  out << "var_beta_predicted," << csv_full(r.m_r_inverse[1]) << ",M_r^{-1}\n";
  out << "cov_alpha_beta_predicted," << csv_full(r.m_r_inverse[2])
      << ",M_r^{-1}\n";
  out << "alpha_mean," << csv_full(r.alpha_mean) << ",\n";
  out << "beta_mean," << csv_full(r.beta_mean) << ",\n";
}

}  // namespace oudesign
