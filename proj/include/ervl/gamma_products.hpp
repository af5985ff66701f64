#pragma once

#include <functional>

#include "ervl/rational.hpp"

namespace ervl {

/*
 * Finite gamma-function ratios, expanded as exact rational products.
 *
 * Everything here is a quotient of shifted factorials; no transcendental
 * gamma evaluation is involved. The recurring objects are
 *
 *   omega_coeff(n, a)        = (n+a)(n-1+a)...(1+a) / n!
 *   gamma_ratio_entry(m, z)  = (z-1)(z-2)...(z-m) / [z(z+1)...(z+m-1)]
 *   gamma_fraction(k, n, a)  = (k+a)(k-1+a)...(a) / [(n+a)(n-1+a)...(n-k+a)]
 *
 * Pole inputs (a vanishing denominator factor) throw pole_error.
 */

Rational binomial(unsigned n, unsigned k);

// (n+a)...(1+a)/n!, n >= 1. Total on all rational a.
Rational omega_coeff(unsigned n, const Rational& a);

// Toeplitz entry at offset m; m = 0 yields 1.
Rational gamma_ratio_entry(unsigned m, const Rational& z);

// Column-vector entry Gamma_k^n(a); requires 0 <= k <= n-1.
Rational gamma_fraction(unsigned k, unsigned n, const Rational& a);

// Forward difference  sum_{k=0}^{n} (-1)^k C(n,k) f(k).
Rational finite_difference(const std::function<Rational(unsigned)>& f, unsigned n);

// A function of an integer argument that agrees with a polynomial of the
// declared degree. Construction validates the claim with one extra
// difference: the (degree+1)-st forward difference over 0..degree+1 must
// vanish.
struct PolySample {
  unsigned degree;
  std::function<Rational(unsigned)> eval;
};

PolySample make_poly_sample(unsigned degree, std::function<Rational(unsigned)> eval);

Rational finite_difference(const PolySample& f, unsigned n);

}  // namespace ervl
