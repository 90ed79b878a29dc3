#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oudesign {

// Derivative-free Nelder-Mead minimizer.  An optional projector maps every
// trial point back into the feasible set before evaluation, which is how
// box and sum constraints are enforced.
struct NelderMeadOptions {
  std::size_t max_iterations = 4000;
  double f_tolerance = 1e-12;   // relative spread of simplex values
  double x_tolerance = 1e-10;   // relative simplex diameter
  double initial_step = 0.10;   // relative size of the starting simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;
using Projector = std::function<void(std::vector<double>&)>;

NelderMeadResult nelder_mead_minimize(const Objective& f,
                                      std::vector<double> x0,
                                      const NelderMeadOptions& options = {},
                                      const Projector& project = {});

}  // namespace oudesign
