#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ervl/densities.hpp"

using namespace ervl;
using namespace ervl::densities;

namespace {

// Independent product oracle for |b_n| = prod_{m<=n} |(2m-1-x)/(2m-1+x)|.
Rational abs_term_oracle(unsigned n, const Rational& x) {
  Rational prod(1);
  for (unsigned m = 1; m <= n; ++m) {
    const Rational odd(long(2 * m - 1));
    prod *= ((odd - x) / (odd + x)).abs();
  }
  return prod;
}

}  // namespace

TEST_CASE("signed coefficients at alpha = 0") {
  const auto seq = coeff_sequence(Rational(0), Variant::signed_products, 3);
  REQUIRE(seq.terms.size() == 3);
  CHECK(seq.terms[0] == Rational(1, 3));
  CHECK(seq.terms[1] == Rational(-1, 15));
  CHECK(seq.terms[2] == Rational(1, 35));
  CHECK(seq.x == Rational(2));
}

TEST_CASE("signed coefficients vanish at alpha = 1") {
  const auto seq = coeff_sequence(Rational(1), Variant::signed_products, 3);
  for (const auto& t : seq.terms) CHECK(t.is_zero());
}

TEST_CASE("absolute coefficients at alpha = 3/2 match the product oracle") {
  const Rational alpha(3, 2);
  const Rational x = Rational(2) - alpha;  // 1/2
  const auto seq = coeff_sequence(alpha, Variant::absolute_products, 2);
  CHECK(seq.terms[0] == abs_term_oracle(1, x));
  CHECK(seq.terms[1] == abs_term_oracle(2, x));
  // Frozen values from the oracle: |a_1| = 1/3, |a_1 a_2| = (1/3)(5/7).
  CHECK(seq.terms[0] == Rational(1, 3));
  CHECK(seq.terms[1] == Rational(5, 21));
}

TEST_CASE("absolute terms equal |signed| termwise and ratios telescope") {
  for (const Rational& alpha : {Rational(0), Rational(1, 2), Rational(7, 4)}) {
    const auto s = coeff_sequence(alpha, Variant::signed_products, 12);
    const auto a = coeff_sequence(alpha, Variant::absolute_products, 12);
    for (unsigned n = 0; n < 12; ++n) CHECK(a.terms[n] == s.terms[n].abs());
    for (unsigned n = 2; n <= 12; ++n)
      CHECK(s.terms[n - 1] == s.terms[n - 2] * coeff_ratio(n, s.x));
  }
}

TEST_CASE("alpha range is enforced") {
  CHECK_THROWS_AS(coeff_sequence(Rational(2), Variant::signed_products, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(coeff_sequence(Rational(-1, 2), Variant::signed_products, 3),
                  std::invalid_argument);
}

TEST_CASE("telescoping partial sums at alpha = 0") {
  const auto t1 = telescoping_alpha0(1);
  CHECK(t1.partial_sum == Rational(1, 3));
  CHECK(t1.closed_form == Rational(1, 3));
  const auto t2 = telescoping_alpha0(2);
  CHECK(t2.partial_sum == Rational(2, 5));
  const auto big = telescoping_alpha0(1000);
  CHECK(big.partial_sum == big.closed_form);
  CHECK(big.partial_sum < Rational(1, 2));
}

TEST_CASE("convexity certificate across the parameter range") {
  for (const Rational& x :
       {Rational(1, 10), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
    const Rational alpha = Rational(2) - x;
    const auto seq = coeff_sequence(alpha, Variant::absolute_products, 50);
    const Certificate c = check_convexity(seq, 50);
    CHECK(c.passed);
    if (x == Rational(1)) {
      CHECK(c.witness.find("non-strict") != std::string::npos);
    } else {
      CHECK(c.witness == "strictly convex and decreasing");
    }
  }
}

TEST_CASE("convexity bracket at x = 2 uses the modified first step") {
  // |a_1| = (x-1)/(1+x) = 1/3, |a_2| = 1/5; bracket = 2/5.
  const Rational x(2);
  const Rational a1 = coeff_ratio(1, x).abs();
  const Rational a2 = coeff_ratio(2, x).abs();
  CHECK(a1 == Rational(1, 3));
  CHECK(a2 * a1 + Rational(1) - Rational(2) * a1 == Rational(2, 5));
}

TEST_CASE("positivity certificates") {
  CHECK(positivity_certificate(Rational(3, 2), Variant::absolute_products, 64, 512).passed);
  CHECK(positivity_certificate(Rational(0), Variant::signed_products, 12, 512).passed);
  CHECK(positivity_certificate(Rational(1), Variant::signed_products, 8, 64).passed);
  CHECK_THROWS_AS(positivity_certificate(Rational(1, 2), Variant::absolute_products, 8, 64),
                  std::invalid_argument);
}

TEST_CASE("density evaluation and coefficients") {
  FourierDensity d;
  d.coeffs = coeff_sequence(Rational(1), Variant::signed_products, 8);
  CHECK(d.evaluate(0.37) == 1.0);  // all terms vanish at alpha = 1
  CHECK(d.coefficient(0) == Rational(1));
  CHECK(d.coefficient(3) == Rational(0));

  FourierDensity s;
  s.coeffs = coeff_sequence(Rational(0), Variant::signed_products, 4);
  CHECK(s.coefficient(2) == Rational(1, 3));
  CHECK(s.coefficient(-2) == Rational(1, 3));
  CHECK(s.coefficient(4) == Rational(-1, 15));
  CHECK(s.coefficient(1) == Rational(0));
  CHECK(s.coefficient(100) == Rational(0));
  // Pointwise: 1 + 2 sum b_n cos(2 n theta) at theta = 0.
  double at0 = 1.0;
  for (const auto& b : s.coeffs.terms) at0 += 2.0 * b.to_double();
  CHECK(s.evaluate(0.0) == doctest::Approx(at0).epsilon(1e-14));
}

TEST_CASE("riesz measure masses and moments") {
  const auto m0 = riesz_measure(Rational(0));
  REQUIRE(m0.atoms.size() == 1);
  CHECK(m0.atoms[0].mass == Rational(1, 3));
  CHECK(m0.smooth_scale == Rational(2, 3));
  CHECK(m0.total_exact() == Rational(1));

  const auto m1 = riesz_measure(Rational(1));
  CHECK(m1.atoms.empty());
  CHECK(m1.smooth_scale == Rational(1));

  const auto m32 = riesz_measure(Rational(3, 2));
  CHECK(m32.atoms[0].mass == Rational(1, 3));

  // The atom at angle 0 feeds every nonzero coefficient; the uniform part
  // only the zeroth.
  for (long k : {1L, 2L, 3L, 7L, -2L})
    CHECK(m0.fourier_coefficient_exact(k) == Rational(1, 3));
  CHECK(m0.fourier_coefficient_exact(0) == Rational(1));
}

TEST_CASE("measure rotation") {
  auto m = riesz_measure(Rational(1, 2));
  const auto r = m.rotated(0.7);
  CHECK(r.atoms[0].angle == doctest::Approx(0.7));
  CHECK_FALSE(r.exact_coefficients());

  FourierDensity d;
  d.coeffs = coeff_sequence(Rational(0), Variant::signed_products, 4);
  const auto dm = measure_from_density(d, Rational(1));
  CHECK_THROWS_AS(dm.rotated(0.3), std::invalid_argument);
}

TEST_CASE("complex fourier coefficients of an off-axis atom") {
  CircleMeasure m;
  m.atoms.push_back({1.0, Rational(2)});
  const auto c = m.fourier_coefficient(3);
  CHECK(c.real() == doctest::Approx(2.0 * std::cos(3.0)).epsilon(1e-15));
  CHECK(c.imag() == doctest::Approx(-2.0 * std::sin(3.0)).epsilon(1e-15));
}
