#pragma once

#include <functional>
#include <span>
#include <vector>

namespace varspec {

struct NelderMeadOptions {
  double param_tol = 1e-6;       ///< simplex diameter (max-norm) to stop at
  double objective_tol = 1e-10;  ///< relative spread of vertex values to stop at
  int max_evaluations = 2000;
  double initial_step = 0.25;
  int restarts = 1;  ///< fresh simplices built around the optimum after convergence
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int evaluations;
  bool converged;
};

/// Derivative-free downhill simplex. Non-finite objective values are treated as +inf.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace varspec
