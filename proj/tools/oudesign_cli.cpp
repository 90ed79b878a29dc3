// Command-line front end: evaluate designs, construct optimal ones, sweep
// the geometric family, run searches / simulations, self-verify, and
// reproduce the reported values.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "oudesign/design_io.hpp"
#include "oudesign/design_opt.hpp"
#include "oudesign/oracle.hpp"
#include "oudesign/report.hpp"
#include "oudesign/simulate.hpp"
#include "oudesign/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInputError = 2;
constexpr int kExitVerificationFailure = 3;

constexpr std::uint64_t kDefaultSeed = 20240601;

using namespace oudesign;

std::uint64_t seed_fallback() {
  if (const char* env = std::getenv("OU_DESIGN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw DomainError("OU_DESIGN_SEED must be an unsigned integer");
    }
  }
  return kDefaultSeed;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "pretty") return OutputFormat::pretty;
  throw DomainError("format must be 'csv' or 'pretty'");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write output file '" + path + "'");
  return out;
}

struct CommonOptions {
  double alpha = 1.0;
  double beta = 1.0;
  double sigma = 1.0;
  std::string format = "pretty";
  std::optional<std::uint64_t> seed;

  CovarianceParams params() const { return CovarianceParams(alpha, beta, sigma); }
  std::uint64_t seed_value() const { return seed ? *seed : seed_fallback(); }
};

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("--alpha", common.alpha, "rate per unit t-distance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--beta", common.beta, "rate per unit s-distance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--sigma", common.sigma, "scale parameter")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", common.format, "output format: csv|pretty");
  cmd->add_option("--seed", common.seed,
                  "RNG seed (falls back to OU_DESIGN_SEED, then a fixed "
                  "default)");
}

RunManifest manifest_for(const std::string& command,
                         const CommonOptions& common) {
  RunManifest manifest = make_manifest(command);
  manifest.parameters.emplace_back("alpha", std::to_string(common.alpha));
  manifest.parameters.emplace_back("beta", std::to_string(common.beta));
  manifest.parameters.emplace_back("sigma", std::to_string(common.sigma));
  return manifest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-design toolkit for the shifted "
               "Ornstein-Uhlenbeck sheet on monotone point sets"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // info
  auto* info_cmd = app.add_subcommand(
      "info", "evaluate a design file (monotone: full closed-form bundle; "
              "grid/scattered: oracle trend information)");
  CommonOptions info_common;
  std::string info_design_path;
  bool info_allow_origin = false;
  add_common(info_cmd, info_common);
  info_cmd->add_option("--design", info_design_path, "design JSON file")
      ->required();
  info_cmd->add_flag("--allow-nonpositive-origin", info_allow_origin,
                     "accept designs whose first point is at or below zero");

  // optimal-trend
  auto* optimal_cmd = app.add_subcommand(
      "optimal-trend", "construct the equidistant trend-optimal design");
  CommonOptions optimal_common;
  std::size_t optimal_n = 4;
  std::vector<double> optimal_region{0.0, 1.0, 0.0, 1.0};
  std::string optimal_out;
  add_common(optimal_cmd, optimal_common);
  optimal_cmd->add_option("--n", optimal_n, "number of points")->required();
  optimal_cmd
      ->add_option("--region", optimal_region,
                   "design region: s_min s_max t_min t_max")
      ->expected(4);
  optimal_cmd->add_option("--out", optimal_out, "design JSON output path");

  // surface
  auto* surface_cmd = app.add_subcommand(
      "surface", "sweep the geometric-progression family over (0,1]^2");
  CommonOptions surface_common;
  std::size_t surface_n = 5;
  std::size_t surface_resolution = 50;
  std::string surface_out;
  add_common(surface_cmd, surface_common);
  surface_cmd->add_option("--n", surface_n, "number of points");
  surface_cmd->add_option("--resolution", surface_resolution,
                          "cells per axis (>= 2)");
  surface_cmd->add_option("--out", surface_out, "CSV output path");

  // search
  auto* search_cmd = app.add_subcommand(
      "search", "multistart simplex search over the design increments");
  CommonOptions search_common;
  SearchConfig search_config;
  std::string search_objective = "trend";
  std::vector<double> search_region{0.0, 1.0, 0.0, 1.0};
  std::string search_out;
  std::string search_initial;
  double strict_interior = 0.0;
  add_common(search_cmd, search_common);
  search_cmd->add_option("--objective", search_objective,
                         "objective: trend|phi|psi");
  search_cmd->add_option("--n", search_config.n, "number of points")
      ->required();
  search_cmd
      ->add_option("--region", search_region,
                   "design region: s_min s_max t_min t_max")
      ->expected(4);
  search_cmd->add_option("--multistarts", search_config.multistarts,
                         "number of random starts");
  search_cmd->add_option("--max-iterations", search_config.max_iterations,
                         "simplex iteration cap per start");
  search_cmd->add_option("--tolerance", search_config.tolerance,
                         "convergence tolerance");
  search_cmd->add_option("--floor", search_config.increment_floor,
                         "lower bound for every increment");
  search_cmd->add_option("--strict-interior", strict_interior,
                         "relative span margin kept away from the boundary");
  search_cmd->add_option("--initial", search_initial,
                         "optional initial design JSON file");
  search_cmd->add_option("--out", search_out, "diagnostics CSV output path");

  // simulate
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "replicated sampling and GLS trend estimation");
  CommonOptions simulate_common;
  std::string simulate_design_path;
  std::size_t simulate_reps = 10000;
  double simulate_theta = 0.0;
  std::string simulate_out;
  bool simulate_allow_origin = false;
  add_common(simulate_cmd, simulate_common);
  simulate_cmd->add_option("--design", simulate_design_path, "design JSON file")
      ->required();
  simulate_cmd->add_option("--reps", simulate_reps, "replication count");
  simulate_cmd->add_option("--theta", simulate_theta, "true trend value");
  simulate_cmd->add_option("--out", simulate_out, "CSV output path");
  simulate_cmd->add_flag("--allow-nonpositive-origin", simulate_allow_origin,
                         "accept designs whose first point is at or below zero");

  // fisher-check
  auto* check_cmd = app.add_subcommand(
      "fisher-check",
      "simulate-and-fit study comparing empirical estimator spread with the "
      "information predictions");
  CommonOptions check_common;
  std::string check_design_path;
  std::size_t check_reps = 10000;
  std::size_t check_fit_reps = 0;
  double check_theta = 0.0;
  std::string check_out;
  bool check_allow_origin = false;
  add_common(check_cmd, check_common);
  check_cmd->add_option("--design", check_design_path, "design JSON file")
      ->required();
  check_cmd->add_option("--reps", check_reps, "replication count (GLS part)");
  check_cmd->add_option("--fit-reps", check_fit_reps,
                        "ML fit count (default min(reps, 1000))");
  check_cmd->add_option("--theta", check_theta, "true trend value");
  check_cmd->add_option("--out", check_out, "CSV output path");
  check_cmd->add_flag("--allow-nonpositive-origin", check_allow_origin,
                      "accept designs whose first point is at or below zero");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the self-verification suites (closed forms vs dense "
                "oracle, inverse identity, gradients, grid product rule)");
  CommonOptions verify_common;
  VerifyOptions verify_options;
  add_common(verify_cmd, verify_common);
  verify_cmd->add_option("--n-max", verify_options.n_max,
                         "largest design size in random trials");
  verify_cmd->add_option("--trials", verify_options.trials,
                         "number of random trials per suite");
  verify_cmd->add_flag("--self-test", verify_options.self_test,
                       "inject a perturbation; every suite must then fail");

  // tables
  auto* tables_cmd = app.add_subcommand(
      "tables", "recompute the reported example values next to their "
                "published counterparts");
  CommonOptions tables_common;
  std::string tables_out;
  add_common(tables_cmd, tables_common);
  tables_cmd->add_option("--out", tables_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*info_cmd) {
      const AnyDesign design =
          read_design_file(info_design_path, info_allow_origin);
      const InfoResult info = evaluate_any(design, info_common.params());
      RunManifest manifest = manifest_for("info", info_common);
      manifest_add_input_file(manifest, info_design_path);
      print_info(std::cout, info, parse_format(info_common.format), &manifest);
      return kExitOk;
    }

    if (*optimal_cmd) {
      const Region region(optimal_region[0], optimal_region[1],
                          optimal_region[2], optimal_region[3]);
      const CovarianceParams params = optimal_common.params();
      const MonotoneDesign design =
          optimal_trend_design(optimal_n, region, params);
      const InfoResult info = evaluate_any(design, params);
      RunManifest manifest = manifest_for("optimal-trend", optimal_common);
      if (!optimal_out.empty()) {
        write_design_file(optimal_out, design);
        write_manifest_sidecar(optimal_out, manifest);
      }
      print_info(std::cout, info, parse_format(optimal_common.format),
                 &manifest);
      return kExitOk;
    }

    if (*surface_cmd) {
      const std::vector<SurfaceRow> rows = geometric_surface(
          surface_n, surface_common.params(), surface_resolution);
      RunManifest manifest = manifest_for("surface", surface_common);
      manifest.parameters.emplace_back("n", std::to_string(surface_n));
      manifest.parameters.emplace_back("resolution",
                                       std::to_string(surface_resolution));
      if (!surface_out.empty()) {
        auto out = open_output(surface_out);
        write_surface_csv(out, rows, manifest);
      } else {
        write_surface_csv(std::cout, rows, manifest);
      }
      return kExitOk;
    }

    if (*search_cmd) {
      search_config.objective = search_objective_from_string(search_objective);
      search_config.region = Region(search_region[0], search_region[1],
                                    search_region[2], search_region[3]);
      search_config.seed = search_common.seed_value();
      search_config.strict_interior_margin = strict_interior;
      std::optional<MonotoneDesign> initial;
      if (!search_initial.empty()) {
        AnyDesign parsed = read_design_file(search_initial, true);
        if (auto* monotone = std::get_if<MonotoneDesign>(&parsed))
          initial = std::move(*monotone);
        else
          throw DomainError("initial design must be monotone");
      }
      const SearchResult result =
          search(search_config, search_common.params(), initial);
      RunManifest manifest = manifest_for("search", search_common);
      manifest.seeds.push_back(search_config.seed);
      manifest.parameters.emplace_back("objective", search_objective);
      manifest.parameters.emplace_back("n", std::to_string(search_config.n));
      if (!search_out.empty()) {
        auto out = open_output(search_out);
        write_search_csv(out, result, manifest);
      } else {
        write_search_csv(std::cout, result, manifest);
      }
      std::cerr << "best " << search_objective << " = " << result.best_value
                << " over " << result.runs.size() << " runs\n";
      return kExitOk;
    }

    if (*simulate_cmd) {
      const AnyDesign design =
          read_design_file(simulate_design_path, simulate_allow_origin);
      const SimulationConfig config(simulate_common.seed_value(), simulate_reps,
                                    simulate_theta, simulate_common.params());
      const std::vector<Point> points = design_points(design);
      const GlsSimulationSummary summary =
          simulate_gls_study(std::span<const Point>(points), config);
      RunManifest manifest = manifest_for("simulate", simulate_common);
      manifest.seeds.push_back(config.seed);
      manifest_add_input_file(manifest, simulate_design_path);
      if (!simulate_out.empty()) {
        auto out = open_output(simulate_out);
        write_simulation_csv(out, summary, manifest);
      } else {
        write_simulation_csv(std::cout, summary, manifest);
      }
      return kExitOk;
    }

    if (*check_cmd) {
      const AnyDesign design =
          read_design_file(check_design_path, check_allow_origin);
      const auto* monotone = std::get_if<MonotoneDesign>(&design);
      if (!monotone)
        throw DomainError(
            "fisher-check needs a monotone design (ML fitting is only "
            "defined there)");
      const SimulationConfig config(check_common.seed_value(), check_reps,
                                    check_theta, check_common.params());
      const FisherCheckReport report =
          empirical_fisher_check(*monotone, config, check_fit_reps);
      RunManifest manifest = manifest_for("fisher-check", check_common);
      manifest.seeds.push_back(config.seed);
      manifest_add_input_file(manifest, check_design_path);
      if (!check_out.empty()) {
        auto out = open_output(check_out);
        write_fisher_check_csv(out, report, manifest);
      } else {
        write_fisher_check_csv(std::cout, report, manifest);
      }
      return kExitOk;
    }

    if (*verify_cmd) {
      verify_options.seed = verify_common.seed_value();
      const std::vector<SuiteResult> suites = run_verification(verify_options);
      print_verification(std::cout, suites,
                         parse_format(verify_common.format));
      for (const SuiteResult& suite : suites)
        if (!suite.pass) return kExitVerificationFailure;
      return kExitOk;
    }

    if (*tables_cmd) {
      const std::vector<TableLine> lines = reported_value_checks();
      RunManifest manifest = manifest_for("tables", tables_common);
      if (!tables_out.empty()) {
        auto out = open_output(tables_out);
        print_tables(out, lines, OutputFormat::csv, &manifest);
      } else {
        print_tables(std::cout, lines, parse_format(tables_common.format),
                     &manifest);
      }
      return all_table_checks_pass(lines) ? kExitOk
                                          : kExitVerificationFailure;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ConditionDViolation& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NonpositiveCoordinate& e) {
    std::cerr << "input error: " << e.what()
              << " (use --allow-nonpositive-origin to relax)\n";
    return kExitInputError;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
