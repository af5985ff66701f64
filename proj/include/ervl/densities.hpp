#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "ervl/certificate.hpp"
#include "ervl/rational.hpp"

namespace ervl::densities {

/*
 * Coefficient sequences and circle densities.
 *
 * For alpha in [0,2) and x = 2 - alpha, the building block is the ratio
 *
 *   a_n = -(2n-1-x)/(2n-1+x),
 *
 * and b_n = a_n a_{n-1} ... a_1 (signed variant) or the product of the
 * |a_n| (absolute variant). The density carried by a FourierDensity is the
 * even cosine series
 *
 *   Psi(theta) = 1 + 2 sum_{n>=1} b_n cos(2 n theta),
 *
 * so its Fourier coefficient at frequency 2n is b_n and every odd
 * coefficient vanishes.
 */

enum class Variant { signed_products, absolute_products };

struct CoefficientSequence {
  Rational alpha;
  Rational x;  // 2 - alpha
  Variant variant = Variant::signed_products;
  std::vector<Rational> terms;  // b_1 .. b_N
};

// Signed ratio a_n at parameter x.
Rational coeff_ratio(unsigned n, const Rational& x);

CoefficientSequence coeff_sequence(const Rational& alpha, Variant variant, unsigned N);

// alpha = 0: the absolute coefficients telescope,
//   sum_{n=1}^{N} |b_n| = (1/2)(1 - 1/(2N+1)).
struct Telescoping {
  Rational partial_sum;
  Rational closed_form;
};
Telescoping telescoping_alpha0(unsigned N);

// Exact convexity certificate for the absolute sequence {1, b_1, b_2, ...}:
// the second difference factors as [a_{n+1} a_n + 1 - 2 a_n] * b_{n-1}, and
// the bracket is strictly positive for 0 < x <= 2. Degenerate equalities of
// the sequence itself (only at x = 1, where every b_n = 0) are flagged in
// the witness rather than failed.
Certificate check_convexity(const CoefficientSequence& seq, unsigned N);

// Even cosine series with unit mean; measure normalization is
// Psi(theta) dtheta / (2 pi), so the total mass of the density equals its
// scale factor.
struct FourierDensity {
  Rational mean{1};
  CoefficientSequence coeffs;

  Rational coefficient(long k) const;  // exact; 0 at odd or out-of-range k
  double evaluate(double theta) const;
  // Cesaro-weighted evaluation with weights (1 - n/N); nonnegative whenever
  // the coefficient sequence is convex and decreasing to zero.
  double evaluate_fejer(double theta, unsigned N) const;
};

FourierDensity uniform_density(const Rational& alpha);

// Finite positive measure on the circle: point masses plus an optional
// scaled density part.
struct CircleMeasure {
  struct Atom {
    double angle;
    Rational mass;
  };
  std::vector<Atom> atoms;
  std::optional<FourierDensity> smooth;
  Rational smooth_scale{0};

  Rational total_exact() const;
  double total() const { return total_exact().to_double(); }

  // hat(Psi)(k) = integral of e^{-i k theta} dPsi.
  std::complex<double> fourier_coefficient(long k) const;

  // Exact coefficients exist when every atom sits at angle 0.
  bool exact_coefficients() const;
  Rational fourier_coefficient_exact(long k) const;

  // Density value of the smooth part (scale * Psi(theta)); atoms excluded.
  double density_value(double theta) const;

  // Measure with every atom angle shifted by phi. Only a rotation-invariant
  // smooth part (no cosine terms) can be rotated exactly.
  CircleMeasure rotated(double phi) const;
};

CircleMeasure measure_from_density(const FourierDensity& d, const Rational& scale);

// Convex combination of a unit point mass at angle 0 and the uniform
// density: atom mass |alpha-1|/|alpha-3|, uniform mass the complement.
CircleMeasure riesz_measure(const Rational& alpha);

// Positivity certificate for the truncated density.
//  - absolute route (1 <= alpha < 2): exact convexity certificate plus a
//    Cesaro-mean grid evaluation, asserting min >= -1e-12;
//  - signed route (0 <= alpha < 2): exact leading-minor positivity of the
//    coefficient Gram matrices, plus a raw partial-sum grid minimum that is
//    reported but not asserted.
Certificate positivity_certificate(const Rational& alpha, Variant variant, unsigned N,
                                   unsigned grid_size);

}  // namespace ervl::densities
