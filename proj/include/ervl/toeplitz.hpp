#pragma once

#include <span>
#include <vector>

#include "ervl/certificate.hpp"
#include "ervl/gamma_products.hpp"
#include "ervl/rational.hpp"

namespace ervl::toeplitz {

/*
 * The symmetric Toeplitz Gram matrix of a signed product sequence.
 *
 * The entry at offset m is the m-fold product
 *
 *   entry(m, x) = prod_{j=1}^{m} -(2j-1-x)/(2j-1+x)
 *               = (z-1)(z-2)...(z-m) / [z(z+1)...(z+m-1)],   z = (x+1)/2,
 *
 * so B(i,j) = entry(|i-j|, x) with unit diagonal. The closed-form
 * determinant ratio, the border solution and the partial-fraction identity
 * below are all certified exactly over the rationals.
 */

struct ToeplitzGram {
  unsigned order = 0;
  Rational x;
  std::vector<Rational> data;  // row-major order*order

  const Rational& at(unsigned i, unsigned j) const { return data[i * order + j]; }
};

// Entry at offset m via the signed product form.
Rational entry_signed_product(unsigned m, const Rational& x);

ToeplitzGram build_gram(unsigned n, const Rational& x);

// Exact determinant of a row-major rational matrix by fraction-free
// (integer-preserving) elimination.
Rational det_exact(std::vector<Rational> m, unsigned n);
Rational det_exact(const ToeplitzGram& g);

// Bottom-row / right-column border entries of the (n+1)-st Gram matrix:
// r = (b_n, b_{n-1}, ..., b_1) and c its transpose.
struct BorderVectors {
  std::vector<Rational> r;
  std::vector<Rational> c;
};
BorderVectors border_vectors(unsigned n, const Rational& x);

// Closed-form solution v of  B_n(x) v = c^n(x):
//   v_k = (-1)^{n-1} (-1)^k C(n,k) gamma_fraction(k, n, (x-1)/2),  k = 0..n-1.
std::vector<Rational> border_solution(unsigned n, const Rational& x);

// Closed form of det B_{n+1}/det B_n, product version:
//   2^{2n} n! (n-1+x)...(x) / [(2n-1+x)(2n-3+x)...(1+x)]^2.
Rational recursion_rhs(unsigned n, const Rational& x);

// Same ratio written with combinatorial coefficients:
//   omega_coeff(n, x-1) / omega_coeff(n, (x-1)/2)^2.
Rational recursion_rhs_omega(unsigned n, const Rational& x);

// Pieces of the partial-fraction identity. Both sides are rational
// functions of z with denominator (z+n-1)...(z)(z-1):
//   lhs(z) = sum_{k=0}^{n} (-1)^k C(n,k) (z+n-k-1)...(z-k) / (z+k-1)
//   rhs(z) = n! (2z+n-2)...(2z)(2z-1) / [(z+n-1)...(z)(z-1)]
//   A_k    = (-1)^{k+n} C(n,k) (2k-n)...(2k-2)(2k-1)
// and rhs(z) = sum_k A_k/(z+k-1).
Rational residue_lhs(unsigned n, const Rational& z);
Rational residue_rhs(unsigned n, const Rational& z);
Rational residue_coefficient(unsigned n, unsigned k);
Rational partial_fraction_sum(unsigned n, const Rational& z);

// Certificates. Each check is an exact identity; a failure names the first
// offending index or sample in the witness.
Certificate verify_recursion(unsigned n_max, const Rational& x);
Certificate verify_inverse_identity(unsigned n, const Rational& x);
Certificate verify_complement_identity(unsigned n, const Rational& x);
Certificate verify_residue_identity(unsigned n, std::span<const Rational> z_samples);
Certificate leading_minors_positive(unsigned n_max, const Rational& x);

}  // namespace ervl::toeplitz
