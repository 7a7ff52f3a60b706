#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace varspec {

/// Exponents of a monomial, one per coordinate.
using MultiIndex = std::vector<int>;

/// Sparse real polynomial in a fixed number of coordinates. Zero coefficients are never
/// stored; a coefficient is dropped only when it becomes exactly 0.0.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, double>;

  explicit Polynomial(std::size_t dim = 1) : dim_(dim) {}

  static Polynomial constant(std::size_t dim, double value);
  static Polynomial monomial(MultiIndex exponents, double coeff = 1.0);
  /// The coordinate function x_coord.
  static Polynomial variable(std::size_t dim, std::size_t coord);

  std::size_t dim() const noexcept { return dim_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  double coefficient(const MultiIndex& exponents) const;
  /// Adds `coeff` to the monomial `exponents`, pruning an exact zero.
  void add_term(const MultiIndex& exponents, double coeff);

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Highest exponent of one coordinate; -1 for the zero polynomial.
  int degree_in(std::size_t coord) const;
  /// Per-coordinate maximum exponents.
  MultiIndex max_exponents() const;

  double evaluate(std::span<const double> x) const;

  /// Formal derivative with respect to x_coord.
  Polynomial partial(std::size_t coord) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }

  bool operator==(const Polynomial& other) const = default;

  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& other, const char* op) const;

  std::size_t dim_;
  TermMap terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_partial(const Polynomial& p, std::size_t coord);

}  // namespace varspec
