#include "varspec/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace varspec {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double finite_or_inf(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> start,
                             const NelderMeadOptions& opt) {
  const std::size_t n = start.size();
  int evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return finite_or_inf(f(x));
  };

  Vertex best{start, eval(start)};
  bool converged = false;

  for (int round = 0; round <= opt.restarts; ++round) {
    std::vector<Vertex> simplex;
    simplex.push_back(best);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = best.x;
      x[i] += opt.initial_step;
      simplex.push_back(Vertex{x, eval(x)});
    }
    auto order = [&] {
      std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    converged = false;
    while (evaluations < opt.max_evaluations) {
      order();
      const double flo = simplex.front().f;
      const double fhi = simplex.back().f;
      double diameter = 0.0;
      for (std::size_t v = 1; v <= n; ++v) {
        for (std::size_t i = 0; i < n; ++i) {
          diameter = std::max(diameter, std::abs(simplex[v].x[i] - simplex[0].x[i]));
        }
      }
      const bool flat = std::isfinite(fhi) && (fhi - flo) <= opt.objective_tol * std::abs(flo) + 1e-300;
      if (diameter <= opt.param_tol && (flat || !std::isfinite(flo))) {
        converged = true;
        break;
      }
      if (diameter <= 1e-3 * opt.param_tol) {  // cannot resolve further
        converged = true;
        break;
      }

      std::vector<double> centroid(n, 0.0);
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(n);
      }
      auto along = [&](double t) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (simplex[n].x[i] - centroid[i]);
        return x;
      };

      Vertex reflected{along(-1.0), 0.0};
      reflected.f = eval(reflected.x);
      if (reflected.f < simplex[0].f) {
        Vertex expanded{along(-2.0), 0.0};
        expanded.f = eval(expanded.x);
        simplex[n] = expanded.f < reflected.f ? expanded : reflected;
        continue;
      }
      if (reflected.f < simplex[n - 1].f) {
        simplex[n] = reflected;
        continue;
      }
      const bool outside = reflected.f < simplex[n].f;
      Vertex contracted{along(outside ? -0.5 : 0.5), 0.0};
      contracted.f = eval(contracted.x);
      if (contracted.f < (outside ? reflected.f : simplex[n].f)) {
        simplex[n] = contracted;
        continue;
      }
      for (std::size_t v = 1; v <= n; ++v) {
        for (std::size_t i = 0; i < n; ++i) simplex[v].x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
        simplex[v].f = eval(simplex[v].x);
      }
    }
    order();
    const bool improved = simplex.front().f < best.f;
    if (simplex.front().f <= best.f) best = simplex.front();
    if (!improved && round > 0) break;
    if (evaluations >= opt.max_evaluations) break;
  }
  return NelderMeadResult{best.x, best.f, evaluations, converged};
}

}  // namespace varspec
