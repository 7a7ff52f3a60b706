#include "varspec/models.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "varspec/error.hpp"

namespace varspec::models {

namespace {

Polynomial power_of(std::size_t dim, std::size_t coord, int power, double coeff = 1.0) {
  MultiIndex e(dim, 0);
  e[coord] = power;
  return Polynomial::monomial(std::move(e), coeff);
}

void check_omega(std::span<const double> omega, std::size_t expected, const char* who) {
  if (omega.size() != expected) {
    throw DomainError(std::string(who) + ": expected " + std::to_string(expected) + " parameters, got " +
                      std::to_string(omega.size()));
  }
}

}  // namespace

HamiltonianSpec anharmonic_hamiltonian() {
  HamiltonianSpec h;
  h.dim = 1;
  h.potential = power_of(1, 0, 4);
  h.label = ModelLabel::Anharmonic1D;
  return h;
}

engine::AnsatzFamily anharmonic_family(Parity sector, AnharmonicBasis basis) {
  engine::AnsatzFamily fam;
  const int offset = sector == Parity::Even ? 0 : 1;
  fam.dim = 1;
  if (basis == AnharmonicBasis::Gn) {
    fam.name = sector == Parity::Even ? "anharmonic-gn-even" : "anharmonic-gn-odd";
    fam.param_count = 1;
    fam.box = {{0.01, 10.0}};
    fam.basis = [offset](std::size_t n, std::span<const double> w) {
      check_omega(w, 1, "anharmonic gn");
      return WaveFunction(PolyExp(power_of(1, 0, static_cast<int>(2 * n) + offset), IsoGaussian{w[0], 1}));
    };
  } else {
    fam.name = sector == Parity::Even ? "anharmonic-gn2-even" : "anharmonic-gn2-odd";
    fam.param_count = 2;
    fam.box = {{0.01, 10.0}, {0.01, 10.0}};
    fam.basis = [offset](std::size_t n, std::span<const double> w) {
      check_omega(w, 2, "anharmonic gn2");
      return WaveFunction(PolyExp(power_of(1, 0, static_cast<int>(2 * n) + offset), Quartic1D{w[0], w[1]}));
    };
  }
  return fam;
}

HamiltonianSpec x2y2_hamiltonian() {
  HamiltonianSpec h;
  h.dim = 2;
  h.potential = Polynomial::monomial({2, 2});
  h.label = ModelLabel::X2Y2;
  return h;
}

WaveFunction x2y2_density(std::span<const double> omega) {
  check_omega(omega, 3, "x2y2_density");
  const double w1 = omega[0], w2 = omega[1], w3 = omega[2];
  const ExpKernel k1 = CoupledXY{w1, w2, w3};
  const ExpKernel k2 = CoupledXY{w2, w1, w3};
  validate_kernel(k1);
  WaveFunction rho(PolyExp(Polynomial::constant(2, 1.0), k1));
  rho.add(PolyExp(Polynomial::constant(2, 1.0), k2));
  return rho;
}

Polynomial x2y2_prefactor(X2Y2Sector sector, std::size_t level) {
  const int p = static_cast<int>(2 * level);
  switch (sector) {
    case X2Y2Sector::EEE:
      if (level == 0) return Polynomial::constant(2, 1.0);
      return power_of(2, 0, p) + power_of(2, 1, p);
    case X2Y2Sector::EEO:
      return power_of(2, 0, p + 2) - power_of(2, 1, p + 2);
    default:
      throw DomainError("x2y2: sector " + to_string(sector) + " has no ansatz");
  }
}

engine::AnsatzFamily x2y2_family(X2Y2Sector sector, engine::Method method) {
  x2y2_prefactor(sector, 0);
  engine::AnsatzFamily fam;
  fam.name = "x2y2-" + to_string(sector) + (method == engine::Method::Method1 ? "-m1" : "-m2");
  fam.dim = 2;
  fam.param_count = 3;
  fam.box = {{1e-9, 10.0}, {1e-9, 10.0}, {1e-9, 10.0}};
  fam.basis = [sector](std::size_t n, std::span<const double> w) {
    const Polynomial pre = x2y2_prefactor(sector, n);
    const WaveFunction rho = x2y2_density(w);
    WaveFunction out;
    for (const auto& t : rho.terms()) out.add(PolyExp(pre * t.poly, t.kernel));
    return out;
  };
  if (sector == X2Y2Sector::EEE && method == engine::Method::Method1) {
    fam.seeds = {{0.264, 1e-8, 0.142}, {0.943, 0.161, 0.080}, {0.157, 0.736, 0.073}};
  }
  return fam;
}

std::string to_string(X2Y2Sector sector) {
  switch (sector) {
    case X2Y2Sector::EEE: return "EEE";
    case X2Y2Sector::EEO: return "EEO";
    case X2Y2Sector::OOE: return "OOE";
    case X2Y2Sector::OOO: return "OOO";
    case X2Y2Sector::EOminusOE: return "EO-OE";
  }
  return "?";
}

X2Y2Sector parse_x2y2_sector(const std::string& name) {
  for (auto s : {X2Y2Sector::EEE, X2Y2Sector::EEO, X2Y2Sector::OOE, X2Y2Sector::OOO, X2Y2Sector::EOminusOE}) {
    if (to_string(s) == name) return s;
  }
  throw DomainError("unknown x2y2 sector '" + name + "'");
}

Polynomial su2_potential(int d) {
  if (d < 1) throw DomainError("su2_potential: d must be at least 1");
  const std::size_t dim = 3 * static_cast<std::size_t>(d);
  auto q = [dim](int i, int a) { return Polynomial::variable(dim, 3 * static_cast<std::size_t>(i) + a); };
  Polynomial v(dim);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      // Components of q_i x q_j.
      for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3, c = (a + 2) % 3;
        const Polynomial comp = q(i, b) * q(j, c) - q(i, c) * q(j, b);
        v += comp * comp;
      }
    }
  }
  return v;
}

double su2_rescale(double d) { return std::pow(d, -4.0 / 3.0); }

HamiltonianSpec su2_hamiltonian(int d, bool rescaled) {
  HamiltonianSpec h;
  h.dim = 3 * static_cast<std::size_t>(d);
  h.potential = su2_potential(d);
  h.vectors = d;
  h.label = rescaled ? ModelLabel::RescaledSU2 : ModelLabel::SU2MatrixModel;
  h.scale = rescaled ? su2_rescale(d) : 1.0;
  return h;
}

engine::AnsatzFamily su2_family(int d) {
  if (d < 2) throw DomainError("su2_family: d must be at least 2, got " + std::to_string(d));
  const std::size_t dim = 3 * static_cast<std::size_t>(d);
  engine::AnsatzFamily fam;
  fam.name = "su2-d" + std::to_string(d);
  fam.dim = dim;
  fam.param_count = 1;
  fam.box = {{0.01, 10.0}};
  fam.basis = [dim](std::size_t n, std::span<const double> w) {
    check_omega(w, 1, "su2");
    if (n > 1) throw DomainError("su2 family has levels 0 and 1 only");
    Polynomial pre = Polynomial::constant(dim, 1.0);
    if (n == 1) {
      pre = Polynomial(dim);
      for (std::size_t k = 0; k < dim; ++k) pre += power_of(dim, k, 2);
    }
    return WaveFunction(PolyExp(std::move(pre), IsoGaussian{w[0], dim}));
  };
  return fam;
}

SU2Moments su2_analytic(int d, double w) {
  if (d < 1) throw DomainError("su2_analytic: d must be at least 1");
  if (!(w > 0.0)) throw DomainError("su2_analytic: omega0 must be positive");
  const double dd = d;
  SU2Moments m;
  m.h_mean = 1.5 * dd * w + 0.75 * dd * (dd - 1) / (w * w);
  m.h2_mean = 0.75 * dd * (2 + 3 * dd) * w * w + 0.75 * dd * (dd - 1) * (3 * dd - 4) / w +
              3.0 / 16.0 * dd * (dd - 1) * (dd + 2) * (3 * dd - 1) / std::pow(w, 4);
  m.r_sq = 1.5 * dd * w * w - 3 * dd * (dd - 1) / w + 3.0 / 8.0 * dd * (dd - 1) * (4 * dd - 1) / std::pow(w, 4);
  return m;
}

SU2Ground su2_ground_closed_form(int d) {
  if (d < 2) throw DomainError("su2_ground_closed_form: d must be at least 2");
  const double dd = d;
  const double s = std::sqrt(3 * (dd - 1) * (3 * dd - 1));
  const double base = 4 * (1 - dd + s);
  SU2Ground g;
  g.omega_min = std::cbrt(0.5 * (1 - dd + s));
  g.e0 = 3 * dd * s / std::pow(base, 2.0 / 3.0);
  g.r0_sq = 18 * dd * (dd - 1) * (6 * dd - 3 - 2 * s) / std::pow(base, 4.0 / 3.0);
  const double w3 = std::pow(g.omega_min, 3);
  g.characteristic_residual = 2 * w3 * w3 + 2 * (dd - 1) * w3 - 4 * dd * dd + 5 * dd - 1;
  return g;
}

SU2Asymptotics su2_large_d_asymptotics(double d) {
  if (!(d >= 2)) throw DomainError("su2_large_d_asymptotics: d must be at least 2");
  return {std::cbrt(d), 2.25 * std::pow(d, 4.0 / 3.0), 2.25 * std::pow(d, 2.0 / 3.0)};
}

double su2_excited_rayleigh(int d, double w1) {
  if (d < 2) throw DomainError("su2_excited_rayleigh: d must be at least 2");
  if (!(w1 > 0.0)) throw DomainError("su2_excited_rayleigh: omega1 must be positive");
  const double dd = d;
  const double w0 = su2_ground_closed_form(d).omega_min;
  const double s = w1 + w0;
  // Both closed forms divided by (pi/w1)^{3d/2}; the overlap factor then becomes
  // (4 w0 w1 / s^2)^{3d/2} <= 1.
  const double rho = std::exp(1.5 * dd * std::log(4 * w0 * w1 / (s * s)));
  const double num = 3.0 / 8.0 * dd * (9 * dd * dd - 6 * dd + 8) / w1 +
                     9.0 / 16.0 * dd * (dd - 1) * (dd + 2) * (3 * dd + 4) / std::pow(w1, 4) +
                     rho * ((-40.5 * dd * dd * dd * w0 + 6.75 * dd * dd * dd * (dd - 1) / (w0 * w0)) / (s * s) +
                            18 * dd * dd * (3 * dd + 2) * w0 * w0 / std::pow(s, 3) -
                            18 * dd * dd * (dd - 1) * (3 * dd + 4) / std::pow(s, 4));
  const double norm = 0.75 * dd * (3 * dd + 2) / (w1 * w1) - 9 * dd * dd / (s * s) * rho;
  if (!(norm > 0.0)) {
    throw DomainError("su2_excited_rayleigh: norm expression not positive at omega1 = " + std::to_string(w1));
  }
  return su2_rescale(dd) * num / norm;
}

SU2Excited su2_excited_closed_form(int d) {
  auto f = [d](double w) {
    try {
      return su2_excited_rayleigh(d, w);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  // Bracket on a log grid, then golden-section in log omega.
  const int steps = 400;
  const double lo = std::log(1e-2), hi = std::log(1e3);
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double v = f(std::exp(lo + (hi - lo) * i / steps));
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  if (!std::isfinite(best_v)) throw SolverError("su2_excited_closed_form: no admissible omega1");
  double a = lo + (hi - lo) * std::max(best - 1, 0) / steps;
  double b = lo + (hi - lo) * std::min(best + 1, steps) / steps;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), e = a + g * (b - a);
  double fc = f(std::exp(c)), fe = f(std::exp(e));
  while (b - a > 1e-12) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - g * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + g * (b - a);
      fe = f(std::exp(e));
    }
  }
  const double w = std::exp(0.5 * (a + b));
  return {w, f(w)};
}

}  // namespace varspec::models
