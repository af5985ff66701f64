#include "ervl/gamma_products.hpp"

#include <stdexcept>

namespace ervl {

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

Rational omega_coeff(unsigned n, const Rational& a) {
  if (n == 0) throw std::invalid_argument("omega_coeff: n must be >= 1");
  Rational num(1);
  for (unsigned j = 1; j <= n; ++j) num *= (Rational(long(j)) + a);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  return num / Rational(fact);
}

Rational gamma_ratio_entry(unsigned m, const Rational& z) {
  Rational num(1), den(1);
  for (unsigned j = 1; j <= m; ++j) num *= (z - Rational(long(j)));
  for (unsigned j = 0; j < m; ++j) den *= (z + Rational(long(j)));
  if (den.is_zero()) throw pole_error("gamma_ratio_entry: pole at z = " + z.str());
  return num / den;
}

Rational gamma_fraction(unsigned k, unsigned n, const Rational& a) {
  if (n == 0 || k > n - 1)
    throw std::invalid_argument("gamma_fraction: requires 0 <= k <= n-1");
  Rational num(1), den(1);
  for (unsigned j = 0; j <= k; ++j) num *= (a + Rational(long(j)));
  for (unsigned j = n - k; j <= n; ++j) den *= (a + Rational(long(j)));
  if (den.is_zero()) throw pole_error("gamma_fraction: pole at a = " + a.str());
  return num / den;
}

Rational finite_difference(const std::function<Rational(unsigned)>& f, unsigned n) {
  Rational sum(0);
  for (unsigned k = 0; k <= n; ++k) {
    Rational term = binomial(n, k) * f(k);
    if (k % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

PolySample make_poly_sample(unsigned degree, std::function<Rational(unsigned)> eval) {
  PolySample p{degree, std::move(eval)};
  if (!finite_difference(p.eval, degree + 1).is_zero())
    throw std::invalid_argument(
        "make_poly_sample: evaluator is not a polynomial of the declared degree");
  return p;
}

Rational finite_difference(const PolySample& f, unsigned n) {
  return finite_difference(f.eval, n);
}

}  // namespace ervl
