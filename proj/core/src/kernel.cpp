#include "varspec/kernel.hpp"

#include <cmath>
#include <sstream>

#include "varspec/error.hpp"

namespace varspec {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

std::size_t kernel_dim(const ExpKernel& k) {
  return std::visit(Overloaded{[](const IsoGaussian& g) { return g.dim; },
                               [](const Quartic1D&) { return std::size_t{1}; },
                               [](const CoupledXY&) { return std::size_t{2}; }},
                    k);
}

Polynomial kernel_exponent(const ExpKernel& k) {
  return std::visit(
      Overloaded{[](const IsoGaussian& g) {
                   Polynomial q(g.dim);
                   for (std::size_t i = 0; i < g.dim; ++i) {
                     MultiIndex e(g.dim, 0);
                     e[i] = 2;
                     q.add_term(e, 0.5 * g.omega);
                   }
                   return q;
                 },
                 [](const Quartic1D& g) {
                   Polynomial q(1);
                   q.add_term({2}, 0.5 * g.omega1);
                   q.add_term({4}, 0.25 * g.omega2);
                   return q;
                 },
                 [](const CoupledXY& g) {
                   Polynomial q(2);
                   q.add_term({0, 2}, g.a);
                   q.add_term({2, 0}, g.b);
                   q.add_term({2, 2}, g.c);
                   return q;
                 }},
      k);
}

double kernel_value(const ExpKernel& k, std::span<const double> x) {
  return std::exp(-kernel_exponent(k).evaluate(x));
}

void validate_kernel(const ExpKernel& k) {
  std::visit(Overloaded{[](const IsoGaussian& g) {
                          if (!(g.omega > 0.0) || g.dim == 0) {
                            throw DomainError("IsoGaussian: need omega > 0 and dim >= 1");
                          }
                        },
                        [](const Quartic1D& g) {
                          if (!(g.omega2 >= 0.0) || !(g.omega2 > 0.0 || g.omega1 > 0.0)) {
                            throw DomainError("Quartic1D: need omega2 >= 0 and omega2 > 0 or omega1 > 0");
                          }
                        },
                        [](const CoupledXY& g) {
                          if (!(g.a >= 0.0 && g.b >= 0.0 && g.c >= 0.0) ||
                              (g.a == 0.0 && g.b == 0.0 && g.c == 0.0)) {
                            throw DomainError("CoupledXY: need a, b, c >= 0, not all zero");
                          }
                        }},
             k);
}

std::string describe(const ExpKernel& k) {
  std::ostringstream os;
  os.precision(10);
  std::visit(Overloaded{[&](const IsoGaussian& g) { os << "IsoGaussian(omega=" << g.omega << ", dim=" << g.dim << ")"; },
                        [&](const Quartic1D& g) { os << "Quartic1D(" << g.omega1 << ", " << g.omega2 << ")"; },
                        [&](const CoupledXY& g) { os << "CoupledXY(" << g.a << ", " << g.b << ", " << g.c << ")"; }},
             k);
  return os.str();
}

}  // namespace varspec
