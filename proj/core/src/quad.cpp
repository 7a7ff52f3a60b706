#include "varspec/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "varspec/error.hpp"

namespace varspec::quad {

QuadRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: need n >= 1, got " + std::to_string(n));
  QuadRule rule{RuleKind::Legendre, std::vector<double>(n), std::vector<double>(n)};
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, refined by Newton on the three-term recurrence.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    if (n % 2 == 1 && i == half - 1) z = 0.0;
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

QuadRule gauss_laguerre(int n) {
  if (n < 1) throw DomainError("gauss_laguerre: need n >= 1, got " + std::to_string(n));
  QuadRule rule{RuleKind::Laguerre, std::vector<double>(n), std::vector<double>(n)};
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - rule.nodes[i - 2]);
    }
    double p1 = 0.0, p2 = 0.0, pp = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (p1 - p2) / z;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, z)) break;
    }
    p1 = 1.0;
    p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
    }
    pp = n * (p1 - p2) / z;
    rule.nodes[i] = z;
    rule.weights[i] = -1.0 / (pp * n * p2);
  }
  return rule;
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the 7-point rule living on the odd Kronrod nodes.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kInitialPieces = 16;

struct Segment {
  double lo, hi;
  std::vector<double> value;
  std::vector<double> error;
  double score = 0.0;
};

// One G7K15 panel of the vector integrand mapped from t in [lo, hi) to x = t / (1 - t).
template <class Integrand>
void kronrod_panel(const Integrand& f, std::size_t m, Segment& seg, std::vector<double>& buf) {
  const double center = 0.5 * (seg.lo + seg.hi);
  const double half = 0.5 * (seg.hi - seg.lo);
  seg.value.assign(m, 0.0);
  std::vector<double> gauss(m, 0.0);
  auto eval = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = t / one_minus;
    const double jac = 1.0 / (one_minus * one_minus);
    f(x, std::span<double>(buf));
    for (auto& v : buf) v *= jac;
  };
  for (int k = 0; k < 8; ++k) {
    const double dx = half * kKronrodNodes[k];
    const int reps = (k == 7) ? 1 : 2;
    for (int s = 0; s < reps; ++s) {
      eval(s == 0 ? center + dx : center - dx);
      for (std::size_t c = 0; c < m; ++c) {
        seg.value[c] += kKronrodWeights[k] * buf[c];
        if (k % 2 == 1) gauss[c] += kGaussWeights[k / 2] * buf[c];
      }
    }
  }
  seg.error.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    seg.value[c] *= half;
    seg.error[c] = std::abs(seg.value[c] - half * gauss[c]);
  }
}

struct ByScore {
  bool operator()(const Segment& a, const Segment& b) const {
    if (a.score != b.score) return a.score < b.score;
    return a.lo > b.lo;  // deterministic tie-break
  }
};

// Shared adaptive driver. `relative` selects the per-component acceptance rule:
// err_c <= tol * |value_c| (vector moments) or err <= tol * (1 + |value|) (scalar).
template <class Integrand>
std::vector<double> adaptive_half_line(const Integrand& f, std::size_t m,
                                       const AdaptiveOptions& opt, bool relative,
                                       IntegrationResult* stats) {
  std::vector<double> buf(m);
  std::priority_queue<Segment, std::vector<Segment>, ByScore> heap;
  std::vector<double> total(m, 0.0), total_err(m, 0.0);
  std::size_t evaluations = 0;

  auto scale_of = [&](std::size_t c) {
    const double mag = std::abs(total[c]);
    return relative ? std::max(mag, 1e-300) : 1.0 + mag;
  };
  auto score_of = [&](const Segment& s) {
    double worst = 0.0;
    for (std::size_t c = 0; c < m; ++c) worst = std::max(worst, s.error[c] / scale_of(c));
    return worst;
  };
  auto converged = [&]() {
    for (std::size_t c = 0; c < m; ++c) {
      if (!(total_err[c] <= opt.tol * scale_of(c))) return false;
    }
    return true;
  };

  std::vector<Segment> initial;
  for (int i = 0; i < kInitialPieces; ++i) {
    Segment s{static_cast<double>(i) / kInitialPieces, static_cast<double>(i + 1) / kInitialPieces,
              {}, {}};
    kronrod_panel(f, m, s, buf);
    evaluations += 15;
    for (std::size_t c = 0; c < m; ++c) {
      total[c] += s.value[c];
      total_err[c] += s.error[c];
    }
    initial.push_back(std::move(s));
  }
  for (auto& s : initial) {
    s.score = score_of(s);
    heap.push(std::move(s));
  }

  while (!converged()) {
    if (heap.size() >= opt.max_intervals) {
      double worst_rel = 0.0;
      for (std::size_t c = 0; c < m; ++c) worst_rel = std::max(worst_rel, total_err[c] / scale_of(c));
      throw IntegrationError("adaptive quadrature: subdivision budget of " +
                                 std::to_string(opt.max_intervals) +
                                 " intervals exhausted (achieved scaled error " +
                                 std::to_string(worst_rel) + ")",
                             m > 0 ? total[0] : 0.0, worst_rel);
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Segment left{worst.lo, mid, {}, {}};
    Segment right{mid, worst.hi, {}, {}};
    kronrod_panel(f, m, left, buf);
    kronrod_panel(f, m, right, buf);
    evaluations += 30;
    for (std::size_t c = 0; c < m; ++c) {
      total[c] += left.value[c] + right.value[c] - worst.value[c];
      total_err[c] += left.error[c] + right.error[c] - worst.error[c];
      if (total_err[c] < 0.0) total_err[c] = 0.0;
    }
    left.score = score_of(left);
    right.score = score_of(right);
    heap.push(std::move(left));
    heap.push(std::move(right));
  }

  // Re-sum from the final segments so the result does not carry the running-update
  // rounding of the loop above.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<double> result(m, 0.0), err(m, 0.0);
  for (const auto& s : segments) {
    for (std::size_t c = 0; c < m; ++c) {
      result[c] += s.value[c];
      err[c] += s.error[c];
    }
  }
  if (stats != nullptr) {
    stats->value = m > 0 ? result[0] : 0.0;
    stats->error = m > 0 ? err[0] : 0.0;
    stats->evaluations = evaluations;
    stats->intervals = segments.size();
  }
  return result;
}

}  // namespace

IntegrationResult integrate_1d(const std::function<double(double)>& f, Domain domain,
                               double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate_1d: tolerance must be positive");
  auto folded = [&](double x, std::span<double> out) {
    out[0] = (domain == Domain::RealLine) ? f(x) + f(-x) : f(x);
  };
  IntegrationResult res;
  AdaptiveOptions opt;
  opt.tol = tol;
  adaptive_half_line(folded, 1, opt, /*relative=*/false, &res);
  return res;
}

std::vector<double> integrate_half_line_vector(
    const std::function<void(double x, std::span<double> out)>& f, std::size_t components,
    const AdaptiveOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("integrate_half_line_vector: tolerance must be positive");
  return adaptive_half_line(f, components, options, /*relative=*/true, nullptr);
}

}  // namespace varspec::quad
