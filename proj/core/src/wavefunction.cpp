#include "varspec/wavefunction.hpp"

#include <cmath>

#include "varspec/error.hpp"

namespace varspec {

PolyExp::PolyExp(Polynomial p, ExpKernel k) : poly(std::move(p)), kernel(k) {
  if (poly.dim() != kernel_dim(kernel)) {
    throw DomainError("PolyExp: polynomial has " + std::to_string(poly.dim()) +
                      " coordinates but kernel has " + std::to_string(kernel_dim(kernel)));
  }
}

double PolyExp::evaluate(std::span<const double> x) const {
  return poly.evaluate(x) * kernel_value(kernel, x);
}

WaveFunction::WaveFunction(PolyExp term) { add(term); }

WaveFunction::WaveFunction(std::vector<PolyExp> terms) {
  for (const auto& t : terms) add(t);
}

std::size_t WaveFunction::dim() const {
  if (terms_.empty()) throw DomainError("WaveFunction: empty wave function has no dimension");
  return terms_.front().dim();
}

void WaveFunction::add(const PolyExp& term) {
  if (!terms_.empty() && term.dim() != dim()) {
    throw DomainError("WaveFunction: term dimension does not match");
  }
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->kernel == term.kernel) {
      it->poly += term.poly;
      if (it->poly.is_zero()) terms_.erase(it);
      return;
    }
  }
  if (!term.poly.is_zero()) terms_.push_back(term);
}

WaveFunction& WaveFunction::operator+=(const WaveFunction& other) {
  for (const auto& t : other.terms_) add(t);
  return *this;
}

WaveFunction& WaveFunction::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.poly *= s;
  return *this;
}

double WaveFunction::evaluate(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.evaluate(x);
  return sum;
}

}  // namespace varspec
