#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oudesign/design_io.hpp"
#include "oudesign/design_opt.hpp"
#include "oudesign/fisher.hpp"
#include "oudesign/simulate.hpp"

namespace oudesign {

enum class OutputFormat { csv, pretty };

// Evaluation of any design kind.  Monotone designs get the full closed-form
// bundle; grid and scattered designs only the trend information from the
// dense path, flagged oracle_only.
struct InfoResult {
  std::string kind;
  bool oracle_only = false;
  DesignReport report;
};

InfoResult evaluate_any(const AnyDesign& design, const CovarianceParams& params);
void print_info(std::ostream& out, const InfoResult& info, OutputFormat format,
                const RunManifest* manifest = nullptr);

// One reproduced reported value, or an annotation row (tolerance == 0).
struct TableLine {
  std::string label;
  std::string reported;  // value as printed in the source study
  double computed = 0.0;
  double abs_difference = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  bool annotation_only = false;
  std::string annotation;
};

std::vector<TableLine> reported_value_checks();
void print_tables(std::ostream& out, const std::vector<TableLine>& lines,
                  OutputFormat format, const RunManifest* manifest = nullptr);
bool all_table_checks_pass(const std::vector<TableLine>& lines);

// Self-verification suites: closed forms against the dense oracle, the
// tridiagonal inverse identity, analytic gradients against finite
// differences, and the grid product rule against the dense oracle.
struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct VerifyOptions {
  std::size_t n_max = 10;
  std::size_t trials = 200;
  std::uint64_t seed = 20240601;
  bool self_test = false;  // inject a perturbation; every suite must fail
};

std::vector<SuiteResult> run_verification(const VerifyOptions& options);
void print_verification(std::ostream& out,
                        const std::vector<SuiteResult>& suites,
                        OutputFormat format);

void write_surface_csv(std::ostream& out, const std::vector<SurfaceRow>& rows,
                       const RunManifest& manifest);
void write_search_csv(std::ostream& out, const SearchResult& result,
                      const RunManifest& manifest);
void write_simulation_csv(std::ostream& out, const GlsSimulationSummary& s,
                          const RunManifest& manifest);
void write_fisher_check_csv(std::ostream& out, const FisherCheckReport& r,
                            const RunManifest& manifest);

}  // namespace oudesign
