#include "varspec/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "varspec/error.hpp"

namespace varspec {

Polynomial Polynomial::constant(std::size_t dim, double value) {
  Polynomial p(dim);
  p.add_term(MultiIndex(dim, 0), value);
  return p;
}

Polynomial Polynomial::monomial(MultiIndex exponents, double coeff) {
  Polynomial p(exponents.size());
  for (int e : exponents) {
    if (e < 0) throw DomainError("Polynomial::monomial: negative exponent");
  }
  p.add_term(exponents, coeff);
  return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t coord) {
  if (coord >= dim) throw DomainError("Polynomial::variable: coordinate out of range");
  MultiIndex e(dim, 0);
  e[coord] = 1;
  return monomial(std::move(e));
}

double Polynomial::coefficient(const MultiIndex& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& exponents, double coeff) {
  if (exponents.size() != dim_) throw DomainError("Polynomial: exponent length does not match dimension");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int total = 0;
    for (int k : e) total += k;
    best = std::max(best, total);
  }
  return best;
}

int Polynomial::degree_in(std::size_t coord) const {
  if (coord >= dim_) throw DomainError("Polynomial::degree_in: coordinate out of range");
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, e[coord]);
  return best;
}

MultiIndex Polynomial::max_exponents() const {
  MultiIndex m(dim_, 0);
  for (const auto& [e, c] : terms_) {
    for (std::size_t k = 0; k < dim_; ++k) m[k] = std::max(m[k], e[k]);
  }
  return m;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (x.size() != dim_) throw DomainError("Polynomial::evaluate: point has wrong dimension");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (std::size_t k = 0; k < dim_; ++k) {
      for (int p = 0; p < e[k]; ++p) term *= x[k];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::partial(std::size_t coord) const {
  if (coord >= dim_) throw DomainError("Polynomial::partial: coordinate out of range");
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_) {
    if (e[coord] == 0) continue;
    MultiIndex d = e;
    d[coord] -= 1;
    out.add_term(d, c * e[coord]);
  }
  return out;
}

void Polynomial::check_compatible(const Polynomial& other, const char* op) const {
  if (other.dim_ != dim_) {
    throw DomainError(std::string("Polynomial ") + op + ": coordinate counts differ (" +
                      std::to_string(dim_) + " vs " + std::to_string(other.dim_) + ")");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other, "addition");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other, "subtraction");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= s;
    if (it->second == 0.0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b, "multiplication");
  Polynomial out(a.dim_);
  MultiIndex e(a.dim_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < a.dim_; ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (e[k] > 0) os << "*x" << k << "^" << e[k];
    }
  }
  return os.str();
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }
Polynomial poly_partial(const Polynomial& p, std::size_t coord) { return p.partial(coord); }

}  // namespace varspec
