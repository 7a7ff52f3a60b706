#include "varspec/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "varspec/error.hpp"

namespace varspec {

double gaussian_moment(int n, double omega) {
  if (!(omega > 0.0)) throw DomainError("gaussian_moment: omega must be positive");
  if (n < 0) throw DomainError("gaussian_moment: negative power");
  if (n % 2 == 1) return 0.0;
  double m = std::sqrt(std::numbers::pi / omega);
  for (int k = 0; k < n; k += 2) m *= (k + 1) / (2.0 * omega);
  return m;
}

WaveFunction apply_hamiltonian(const HamiltonianSpec& h, const PolyExp& f) {
  if (h.dim != f.dim() || h.potential.dim() != f.dim()) {
    throw DomainError("apply_hamiltonian: Hamiltonian acts on " + std::to_string(h.dim) +
                      " coordinates, function has " + std::to_string(f.dim()));
  }
  const Polynomial q = kernel_exponent(f.kernel);
  const Polynomial& p = f.poly;
  // d_i^2 (P e^{-Q}) = (P'' - 2 P' Q' - P Q'' + P Q'^2) e^{-Q}
  Polynomial laplacian(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const Polynomial dq = q.partial(i);
    const Polynomial dp = p.partial(i);
    laplacian += dp.partial(i);
    laplacian -= 2.0 * (dp * dq);
    laplacian -= p * dq.partial(i);
    laplacian += p * (dq * dq);
  }
  Polynomial out = h.potential * p - laplacian;
  out *= h.scale;
  return WaveFunction(PolyExp(std::move(out), f.kernel));
}

WaveFunction apply_hamiltonian(const HamiltonianSpec& h, const WaveFunction& f) {
  WaveFunction out;
  for (const auto& t : f.terms()) out += apply_hamiltonian(h, t);
  return out;
}

namespace {

enum class WeightKind { Gaussian = 0, Quartic = 1, Coupled = 2 };

struct Weight {
  WeightKind kind;
  std::vector<double> key;  // kind tag followed by canonical parameters
  bool swap_xy = false;
};

Weight classify(const ExpKernel& k1, const ExpKernel& k2) {
  if (kernel_dim(k1) != kernel_dim(k2)) {
    throw DomainError("inner_product: kernels act on different coordinate counts (" + describe(k1) +
                      ", " + describe(k2) + ")");
  }
  const Polynomial q = kernel_exponent(k1) + kernel_exponent(k2);
  const std::size_t dim = q.dim();

  // Product of one-dimensional Gaussians: only pure squares.
  bool gaussian = true;
  std::vector<double> alpha(dim, 0.0);
  for (const auto& [e, c] : q.terms()) {
    int nonzero = 0;
    std::size_t coord = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      if (e[k] != 0) {
        ++nonzero;
        coord = k;
      }
    }
    if (nonzero != 1 || e[coord] != 2) {
      gaussian = false;
      break;
    }
    alpha[coord] = c;
  }
  if (gaussian) {
    for (double a : alpha) {
      if (!(a > 0.0)) throw DomainError("inner_product: product kernel is not normalizable");
    }
    Weight w{WeightKind::Gaussian, {0.0}};
    w.key.insert(w.key.end(), alpha.begin(), alpha.end());
    return w;
  }
  if (dim == 1) {
    const double a = q.coefficient({2});
    const double b = q.coefficient({4});
    if (q.size() <= 2 && b > 0.0) return Weight{WeightKind::Quartic, {1.0, a, b}};
  }
  if (dim == 2) {
    const double bx = q.coefficient({2, 0});
    const double ay = q.coefficient({0, 2});
    const double c = q.coefficient({2, 2});
    const std::size_t expected = (bx != 0.0) + (ay != 0.0) + (c != 0.0);
    if (q.size() == expected && c > 0.0) {
      if (!(ay > 0.0 && bx > 0.0)) throw DomainError("inner_product: coupled product kernel is not normalizable");
      // The coordinate with the larger quadratic coefficient is integrated in closed form.
      const bool swap = ay < bx;
      return Weight{WeightKind::Coupled, {2.0, std::max(ay, bx), std::min(ay, bx), c}, swap};
    }
  }
  throw DomainError("inner_product: unsupported kernel pair " + describe(k1) + " x " + describe(k2));
}

class GaussianTable final : public MomentTable {
 public:
  GaussianTable(std::vector<double> alpha, const MultiIndex& max_exp) : alpha_(std::move(alpha)) {
    per_coord_.resize(alpha_.size());
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
      auto& v = per_coord_[k];
      v.assign(max_exp[k] + 1, 0.0);
      double m = std::sqrt(std::numbers::pi / alpha_[k]);
      for (int n = 0; n <= max_exp[k]; n += 2) {
        v[n] = m;
        m *= (n + 1) / (2.0 * alpha_[k]);
      }
    }
  }
  bool covers(const MultiIndex& e) const override {
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] >= static_cast<int>(per_coord_[k].size())) return false;
    }
    return true;
  }
  double moment(const MultiIndex& e) const override {
    double m = 1.0;
    for (std::size_t k = 0; k < e.size(); ++k) m *= per_coord_[k][e[k]];
    return m;
  }
  MultiIndex degrees() const {
    MultiIndex d(per_coord_.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = static_cast<int>(per_coord_[k].size()) - 1;
    return d;
  }

 private:
  std::vector<double> alpha_;
  std::vector<std::vector<double>> per_coord_;
};

// Integral of x^n e^{-a x^2 - b x^4}, n even, by adaptive quadrature.
class QuarticTable final : public MomentTable {
 public:
  QuarticTable(double a, double b, int max_degree, double tol) : max_degree_(max_degree) {
    const std::size_t m = static_cast<std::size_t>(max_degree / 2 + 1);
    auto integrand = [a, b, m](double x, std::span<double> out) {
      const double lx = std::log(x);
      const double base = -a * x * x - b * x * x * x * x;
      for (std::size_t k = 0; k < m; ++k) out[k] = std::exp(2.0 * k * lx + base);
    };
    quad::AdaptiveOptions opt;
    opt.tol = tol;
    values_ = quad::integrate_half_line_vector(integrand, m, opt);
    for (auto& v : values_) v *= 2.0;
  }
  bool covers(const MultiIndex& e) const override { return e[0] <= max_degree_; }
  double moment(const MultiIndex& e) const override {
    return (e[0] % 2 == 1) ? 0.0 : values_[e[0] / 2];
  }
  int max_degree() const { return max_degree_; }

 private:
  int max_degree_;
  std::vector<double> values_;
};

// Integral over R^2 of u^i v^j e^{-big v^2 - small u^2 - c u^2 v^2}. The v integral is
// Gamma((j+1)/2) (big + c u^2)^{-(j+1)/2}; the u integral is done by adaptive quadrature.
class CoupledTable final : public MomentTable {
 public:
  CoupledTable(double big, double small, double c, int max_u, int max_v, double tol)
      : max_u_(max_u), max_v_(max_v), nu_(max_u / 2 + 1), nv_(max_v / 2 + 1) {
    std::vector<double> lgam(nv_);
    for (std::size_t j = 0; j < nv_; ++j) lgam[j] = std::lgamma((2.0 * j + 1.0) / 2.0);
    const std::size_t nu = nu_, nv = nv_;
    auto integrand = [=](double u, std::span<double> out) {
      const double lu = std::log(u);
      const double llam = std::log(big + c * u * u);
      const double base = -small * u * u;
      for (std::size_t i = 0; i < nu; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
          out[i * nv + j] = std::exp(2.0 * i * lu + lgam[j] - (2.0 * j + 1.0) / 2.0 * llam + base);
        }
      }
    };
    quad::AdaptiveOptions opt;
    opt.tol = tol;
    values_ = quad::integrate_half_line_vector(integrand, nu_ * nv_, opt);
    for (auto& v : values_) v *= 2.0;
  }
  bool covers(const MultiIndex& e) const override { return e[0] <= max_u_ && e[1] <= max_v_; }
  double moment(const MultiIndex& e) const override {
    if (e[0] % 2 == 1 || e[1] % 2 == 1) return 0.0;
    return values_[static_cast<std::size_t>(e[0] / 2) * nv_ + static_cast<std::size_t>(e[1] / 2)];
  }
  int max_u() const { return max_u_; }
  int max_v() const { return max_v_; }

 private:
  int max_u_, max_v_;
  std::size_t nu_, nv_;
  std::vector<double> values_;
};

MultiIndex canonical(const MultiIndex& e, bool swap) {
  if (!swap) return e;
  return MultiIndex{e[1], e[0]};
}

}  // namespace

double MomentView::moment(const MultiIndex& exponents) const {
  if (!swap_xy) return table->moment(exponents);
  return table->moment(MultiIndex{exponents[1], exponents[0]});
}

const MomentTable* MomentCache::find(const std::vector<double>& key, const MultiIndex& max_exponents) const {
  if (parent_ != nullptr) {
    if (const auto* t = parent_->find(key, max_exponents)) return t;
  }
  auto it = tables_.find(key);
  if (it != tables_.end() && it->second->covers(max_exponents)) return it->second.get();
  return nullptr;
}

MomentView MomentCache::table(const ExpKernel& k1, const ExpKernel& k2, const MultiIndex& max_exponents) {
  const Weight w = classify(k1, k2);
  const MultiIndex need = w.kind == WeightKind::Coupled ? canonical(max_exponents, w.swap_xy) : max_exponents;
  if (const auto* t = find(w.key, need)) return MomentView{t, w.swap_xy};

  // Grow to cover both the request and whatever the stale table already held.
  MultiIndex degrees = need;
  if (auto it = tables_.find(w.key); it != tables_.end()) {
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      MultiIndex probe(degrees.size(), 0);
      for (int d = degrees[k] + 1;; ++d) {
        probe[k] = d;
        if (!it->second->covers(probe)) break;
        degrees[k] = d;
      }
    }
  }
  std::unique_ptr<MomentTable> table;
  switch (w.kind) {
    case WeightKind::Gaussian:
      table = std::make_unique<GaussianTable>(std::vector<double>(w.key.begin() + 1, w.key.end()), degrees);
      break;
    case WeightKind::Quartic:
      table = std::make_unique<QuarticTable>(w.key[1], w.key[2], degrees[0], tol_);
      break;
    case WeightKind::Coupled:
      table = std::make_unique<CoupledTable>(w.key[1], w.key[2], w.key[3], degrees[0], degrees[1], tol_);
      break;
  }
  auto& slot = tables_[w.key];
  slot = std::move(table);
  return MomentView{slot.get(), w.swap_xy};
}

namespace {

// Strict weak order on terms used to fix the orientation of every pairwise sum so that
// <f, g> and <g, f> perform identical floating-point operations.
std::vector<double> fingerprint(const PolyExp& f) {
  std::vector<double> fp;
  const Polynomial q = kernel_exponent(f.kernel);
  fp.push_back(static_cast<double>(f.kernel.index()));
  for (const auto& [e, c] : q.terms()) {
    for (int x : e) fp.push_back(x);
    fp.push_back(c);
  }
  fp.push_back(static_cast<double>(f.poly.size()));
  for (const auto& [e, c] : f.poly.terms()) {
    for (int x : e) fp.push_back(x);
    fp.push_back(c);
  }
  return fp;
}

std::vector<double> fingerprint(const WaveFunction& f) {
  std::vector<double> fp;
  for (const auto& t : f.terms()) {
    auto part = fingerprint(t);
    fp.insert(fp.end(), part.begin(), part.end());
  }
  return fp;
}

double pair_sum(const PolyExp& f, const PolyExp& g, MomentCache& cache) {
  if (f.poly.is_zero() || g.poly.is_zero()) return 0.0;
  MultiIndex need = f.poly.max_exponents();
  const MultiIndex mg = g.poly.max_exponents();
  for (std::size_t k = 0; k < need.size(); ++k) need[k] += mg[k];
  const MomentView view = cache.table(f.kernel, g.kernel, need);
  const std::size_t dim = need.size();
  MultiIndex e(dim);
  double sum = 0.0;
  for (const auto& [ef, cf] : f.poly.terms()) {
    for (const auto& [eg, cg] : g.poly.terms()) {
      bool odd = false;
      for (std::size_t k = 0; k < dim; ++k) {
        e[k] = ef[k] + eg[k];
        odd = odd || (e[k] % 2 == 1);
      }
      if (odd) continue;  // every supported weight is even in each coordinate
      sum += cf * cg * view.moment(e);
    }
  }
  return sum;
}

}  // namespace

double inner_product(const PolyExp& f, const PolyExp& g, MomentCache* cache) {
  if (f.dim() != g.dim()) throw DomainError("inner_product: coordinate counts differ");
  MomentCache local;
  MomentCache& c = cache != nullptr ? *cache : local;
  if (fingerprint(g) < fingerprint(f)) return pair_sum(g, f, c);
  return pair_sum(f, g, c);
}

double inner_product(const WaveFunction& f, const WaveFunction& g, MomentCache* cache) {
  if (f.empty() || g.empty()) return 0.0;
  if (f.dim() != g.dim()) throw DomainError("inner_product: coordinate counts differ");
  MomentCache local;
  MomentCache& c = cache != nullptr ? *cache : local;
  const bool flip = fingerprint(g) < fingerprint(f);
  const WaveFunction& a = flip ? g : f;
  const WaveFunction& b = flip ? f : g;
  std::vector<std::vector<double>> fa, fb;
  for (const auto& t : a.terms()) fa.push_back(fingerprint(t));
  for (const auto& t : b.terms()) fb.push_back(fingerprint(t));
  double sum = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    for (std::size_t j = 0; j < fb.size(); ++j) {
      const auto& ta = a.terms()[i];
      const auto& tb = b.terms()[j];
      sum += (fb[j] < fa[i]) ? pair_sum(tb, ta, c) : pair_sum(ta, tb, c);
    }
  }
  return sum;
}

namespace {
double checked_norm(const WaveFunction& psi, MomentCache& cache) {
  const double n = inner_product(psi, psi, &cache);
  if (!(n > 0.0)) throw DomainError("zero-norm wave function");
  return n;
}
}  // namespace

double rayleigh(const WaveFunction& psi, const HamiltonianSpec& h, MomentCache* cache) {
  MomentCache local;
  MomentCache& c = cache != nullptr ? *cache : local;
  const double n = checked_norm(psi, c);
  const WaveFunction hpsi = apply_hamiltonian(h, psi);
  return inner_product(psi, hpsi, &c) / n;
}

double residual_sq(const WaveFunction& psi, const HamiltonianSpec& h, double energy, MomentCache* cache) {
  MomentCache local;
  MomentCache& c = cache != nullptr ? *cache : local;
  const double n = checked_norm(psi, c);
  const WaveFunction hpsi = apply_hamiltonian(h, psi);
  const double hh = inner_product(hpsi, hpsi, &c);
  const double ph = inner_product(psi, hpsi, &c);
  const double r = (hh - 2.0 * energy * ph + energy * energy * n) / n;
  return std::max(r, 0.0);
}

VarianceResult variance_objective(const WaveFunction& psi, const WaveFunction& h_psi, MomentCache* cache) {
  MomentCache local;
  MomentCache& c = cache != nullptr ? *cache : local;
  // Largest degrees first so the moment tables are sized once.
  const double hh = inner_product(h_psi, h_psi, &c);
  const double ph = inner_product(psi, h_psi, &c);
  const double n = checked_norm(psi, c);
  const double e = ph / n;
  const double h2 = hh / n;
  return VarianceResult{e, std::max(h2 - e * e, 0.0), n, e, h2};
}

VarianceResult variance_objective(const WaveFunction& psi, const HamiltonianSpec& h, MomentCache* cache) {
  return variance_objective(psi, apply_hamiltonian(h, psi), cache);
}

}  // namespace varspec
