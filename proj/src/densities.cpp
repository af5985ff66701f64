#include "ervl/densities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ervl/toeplitz.hpp"

namespace ervl::densities {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_alpha_range(const Rational& alpha) {
  if (alpha.sign() < 0 || alpha >= Rational(2))
    throw std::invalid_argument("alpha must lie in [0, 2)");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

Rational coeff_ratio(unsigned n, const Rational& x) {
  const Rational odd(long(2 * n - 1));
  const Rational den = odd + x;
  if (den.is_zero()) throw pole_error("coeff_ratio: pole at x = " + x.str());
  return -(odd - x) / den;
}

CoefficientSequence coeff_sequence(const Rational& alpha, Variant variant, unsigned N) {
  require_alpha_range(alpha);
  if (N == 0) throw std::invalid_argument("coeff_sequence: N must be >= 1");
  CoefficientSequence seq;
  seq.alpha = alpha;
  seq.x = Rational(2) - alpha;
  seq.variant = variant;
  seq.terms.resize(N);
  Rational prod(1);
  for (unsigned n = 1; n <= N; ++n) {
    Rational a = coeff_ratio(n, seq.x);
    if (variant == Variant::absolute_products) a = a.abs();
    prod *= a;
    seq.terms[n - 1] = prod;
  }
  // Decay evidence: |b_N| < |b_1| once N >= 2, unless the sequence is
  // identically zero (x = 1).
  if (N >= 2 && !seq.terms[0].is_zero() && !(seq.terms[N - 1].abs() < seq.terms[0].abs()))
    throw std::logic_error("coeff_sequence: coefficient decay violated");
  return seq;
}

Telescoping telescoping_alpha0(unsigned N) {
  if (N == 0) throw std::invalid_argument("telescoping_alpha0: N must be >= 1");
  // |b_n| = 1/((2n-1)(2n+1)) at x = 2.
  Rational sum(0);
  Rational prod(1);
  const Rational x(2);
  for (unsigned n = 1; n <= N; ++n) {
    prod *= coeff_ratio(n, x).abs();
    sum += prod;
  }
  const Rational closed =
      Rational(1, 2) * (Rational(1) - Rational(1) / Rational(long(2 * N + 1)));
  if (sum != closed) throw std::logic_error("telescoping_alpha0: identity violated");
  return Telescoping{sum, closed};
}

Certificate check_convexity(const CoefficientSequence& seq, unsigned N) {
  if (seq.variant != Variant::absolute_products)
    throw std::invalid_argument("check_convexity: absolute variant required");
  if (N < 2 || seq.terms.size() < N)
    throw std::invalid_argument("check_convexity: need at least N >= 2 terms");
  const Rational& x = seq.x;
  if (x.sign() <= 0 || x > Rational(2))
    throw std::invalid_argument("check_convexity: requires 0 < x <= 2");

  Certificate cert{"convexity", int(N), x.str(), true, ""};

  auto abs_ratio = [&x](unsigned n) { return coeff_ratio(n, x).abs(); };
  auto term = [&seq](unsigned n) {  // b_n with b_0 = 1
    return n == 0 ? Rational(1) : seq.terms[n - 1];
  };

  std::string flags;
  for (unsigned n = 1; n < N; ++n) {
    const Rational an = abs_ratio(n);
    const Rational an1 = abs_ratio(n + 1);
    const Rational bracket = an1 * an + Rational(1) - Rational(2) * an;

    // Closed form of the bracket: (4x^2+4x)/((2n+1+x)(2n-1+x)) except at
    // n = 1 with x > 1, where |a_1| = (x-1)/(1+x) gives (6-2x)/(3+x).
    Rational closed;
    if (n == 1 && x > Rational(1)) {
      closed = (Rational(6) - Rational(2) * x) / (Rational(3) + x);
    } else {
      closed = (Rational(4) * x * x + Rational(4) * x) /
               ((Rational(long(2 * n + 1)) + x) * (Rational(long(2 * n - 1)) + x));
    }
    if (bracket != closed) {
      cert.passed = false;
      cert.witness = "bracket mismatch at n = " + std::to_string(n);
      return cert;
    }
    if (bracket.sign() <= 0) {
      cert.passed = false;
      cert.witness = "nonpositive bracket at n = " + std::to_string(n);
      return cert;
    }
    const Rational second = term(n + 1) + term(n - 1) - Rational(2) * term(n);
    if (second != bracket * term(n - 1)) {
      cert.passed = false;
      cert.witness = "second difference does not factor at n = " + std::to_string(n);
      return cert;
    }
    if (second.sign() < 0) {
      cert.passed = false;
      cert.witness = "negative second difference at n = " + std::to_string(n);
      return cert;
    }
    if (second.sign() == 0 && flags.empty())
      flags = "non-strict from n = " + std::to_string(n);
  }
  for (unsigned n = 1; n <= N; ++n) {
    const Rational drop = term(n - 1) - term(n);
    if (drop.sign() < 0) {
      cert.passed = false;
      cert.witness = "sequence increases at n = " + std::to_string(n);
      return cert;
    }
    if (drop.sign() == 0 && flags.empty())
      flags = "non-strict decrease from n = " + std::to_string(n);
  }
  cert.witness = flags.empty() ? "strictly convex and decreasing" : flags;
  return cert;
}

Rational FourierDensity::coefficient(long k) const {
  if (k == 0) return mean;
  const long m = k < 0 ? -k : k;
  if (m % 2 != 0) return Rational(0);
  const std::size_t idx = std::size_t(m / 2);
  if (idx == 0 || idx > coeffs.terms.size()) return Rational(0);
  return coeffs.terms[idx - 1];
}

double FourierDensity::evaluate(double theta) const {
  double v = mean.to_double();
  for (std::size_t n = 1; n <= coeffs.terms.size(); ++n)
    v += 2.0 * coeffs.terms[n - 1].to_double() * std::cos(2.0 * double(n) * theta);
  return v;
}

double FourierDensity::evaluate_fejer(double theta, unsigned N) const {
  double v = mean.to_double();
  const std::size_t top = std::min<std::size_t>(coeffs.terms.size(), N);
  for (std::size_t n = 1; n <= top; ++n) {
    const double w = 1.0 - double(n) / double(N);
    if (w <= 0) break;
    v += 2.0 * w * coeffs.terms[n - 1].to_double() * std::cos(2.0 * double(n) * theta);
  }
  return v;
}

FourierDensity uniform_density(const Rational& alpha) {
  FourierDensity d;
  d.mean = Rational(1);
  d.coeffs.alpha = alpha;
  d.coeffs.x = Rational(2) - alpha;
  d.coeffs.variant = Variant::signed_products;
  return d;
}

Rational CircleMeasure::total_exact() const {
  Rational t(0);
  for (const auto& a : atoms) t += a.mass;
  if (smooth) t += smooth_scale * smooth->mean;
  return t;
}

std::complex<double> CircleMeasure::fourier_coefficient(long k) const {
  std::complex<double> c{0.0, 0.0};
  for (const auto& a : atoms) {
    const double m = a.mass.to_double();
    c += std::complex<double>(m * std::cos(double(k) * a.angle),
                              -m * std::sin(double(k) * a.angle));
  }
  if (smooth) c += smooth_scale.to_double() * smooth->coefficient(k).to_double();
  return c;
}

bool CircleMeasure::exact_coefficients() const {
  for (const auto& a : atoms)
    if (a.angle != 0.0) return false;
  return true;
}

Rational CircleMeasure::fourier_coefficient_exact(long k) const {
  if (!exact_coefficients())
    throw std::logic_error("fourier_coefficient_exact: atoms off angle 0");
  Rational c(0);
  for (const auto& a : atoms) c += a.mass;
  if (smooth) c += smooth_scale * smooth->coefficient(k);
  return c;
}

double CircleMeasure::density_value(double theta) const {
  if (!smooth) return 0.0;
  return smooth_scale.to_double() * smooth->evaluate(theta);
}

CircleMeasure CircleMeasure::rotated(double phi) const {
  if (smooth && !smooth->coeffs.terms.empty())
    throw std::invalid_argument("rotated: smooth part is not rotation invariant");
  CircleMeasure out = *this;
  for (auto& a : out.atoms) a.angle += phi;
  return out;
}

CircleMeasure measure_from_density(const FourierDensity& d, const Rational& scale) {
  if (scale.sign() < 0)
    throw std::invalid_argument("measure_from_density: negative scale");
  CircleMeasure m;
  m.smooth = d;
  m.smooth_scale = scale;
  return m;
}

CircleMeasure riesz_measure(const Rational& alpha) {
  require_alpha_range(alpha);
  const Rational gap_one = (alpha - Rational(1)).abs();
  const Rational gap_three = (alpha - Rational(3)).abs();
  const Rational atom_mass = gap_one / gap_three;

  CircleMeasure m;
  if (!atom_mass.is_zero()) m.atoms.push_back({0.0, atom_mass});
  m.smooth = uniform_density(alpha);
  m.smooth_scale = (gap_three - gap_one) / gap_three;
  return m;
}

Certificate positivity_certificate(const Rational& alpha, Variant variant, unsigned N,
                                   unsigned grid_size) {
  require_alpha_range(alpha);
  if (grid_size == 0) throw std::invalid_argument("positivity_certificate: empty grid");
  const Rational x = Rational(2) - alpha;

  if (variant == Variant::absolute_products) {
    if (alpha < Rational(1))
      throw std::invalid_argument(
          "positivity_certificate: absolute route requires 1 <= alpha < 2");
    const CoefficientSequence seq = coeff_sequence(alpha, variant, N);
    Certificate conv = check_convexity(seq, N);
    if (!conv.passed) return conv;

    FourierDensity d;
    d.coeffs = seq;
    double min_v = std::numeric_limits<double>::infinity();
    for (unsigned i = 0; i < grid_size; ++i)
      min_v = std::min(min_v, d.evaluate_fejer(kTwoPi * double(i) / grid_size, N));

    Certificate cert{"positivity_absolute", int(N), x.str(), min_v >= -1e-12, ""};
    cert.witness = "cesaro grid min = " + format_double(min_v) + "; " + conv.witness;
    return cert;
  }

  // Signed route: the exact certificate is positivity of the leading minors
  // of the coefficient Gram matrix; the raw truncated series may dip
  // negative and its grid minimum is only reported.
  Certificate minors = toeplitz::leading_minors_positive(N, x);
  const CoefficientSequence seq = coeff_sequence(alpha, variant, N);
  FourierDensity d;
  d.coeffs = seq;
  double min_v = std::numeric_limits<double>::infinity();
  for (unsigned i = 0; i < grid_size; ++i)
    min_v = std::min(min_v, d.evaluate(kTwoPi * double(i) / grid_size));

  Certificate cert{"positivity_signed", int(N), x.str(), minors.passed, ""};
  cert.witness = (minors.passed ? "minors positive to order " + std::to_string(N)
                                : minors.witness) +
                 "; raw partial-sum grid min = " + format_double(min_v);
  return cert;
}

}  // namespace ervl::densities
