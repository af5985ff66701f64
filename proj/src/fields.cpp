#include "ervl/fields.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "ervl/quadrature.hpp"

namespace ervl::fields {

namespace {

Rational half_plus(const Rational& alpha, int k) {
  return (alpha + Rational(long(k)) - Rational(2)) / Rational(2);
}

Rational half_minus(const Rational& alpha, int k) {
  return (alpha - Rational(long(k)) - Rational(2)) / Rational(2);
}

}  // namespace

KernelSymbol KernelSymbol::cosine(int k) {
  if (k < 1) throw std::invalid_argument("KernelSymbol: harmonic must be >= 1");
  KernelSymbol s;
  s.kind = Kind::cosine;
  s.harmonic = k;
  return s;
}

KernelSymbol KernelSymbol::sine(int k) {
  if (k < 1) throw std::invalid_argument("KernelSymbol: harmonic must be >= 1");
  KernelSymbol s;
  s.kind = Kind::sine;
  s.harmonic = k;
  return s;
}

KernelSymbol KernelSymbol::sampled(std::function<double(double)> omega,
                                   std::function<double(double)> omega_prime,
                                   unsigned check_nodes) {
  KernelSymbol s;
  s.kind = Kind::sampled;
  s.harmonic = 0;
  s.omega_fn = std::move(omega);
  s.omega_prime_fn = std::move(omega_prime);

  const double h = 1e-5;
  for (unsigned i = 0; i < check_nodes; ++i) {
    const double theta = two_pi * double(i) / double(check_nodes);
    const double fd = (s.omega_fn(theta + h) - s.omega_fn(theta - h)) / (2.0 * h);
    const double given = s.omega_prime_fn(theta);
    if (std::abs(fd - given) > 1e-6 * std::max(1.0, std::abs(given)))
      throw std::invalid_argument("KernelSymbol: derivative inconsistent with samples");
  }
  const double mean = integrate_circle(s.omega_fn, check_nodes) / two_pi;
  if (std::abs(mean) > 1e-8)
    throw std::invalid_argument("KernelSymbol: mean does not vanish on the circle");
  return s;
}

double KernelSymbol::omega(double theta) const {
  switch (kind) {
    case Kind::cosine: return std::cos(double(harmonic) * theta);
    case Kind::sine: return std::sin(double(harmonic) * theta);
    case Kind::sampled: return omega_fn(theta);
  }
  return 0.0;
}

double KernelSymbol::omega_prime(double theta) const {
  switch (kind) {
    case Kind::cosine: return -double(harmonic) * std::sin(double(harmonic) * theta);
    case Kind::sine: return double(harmonic) * std::cos(double(harmonic) * theta);
    case Kind::sampled: return omega_prime_fn(theta);
  }
  return 0.0;
}

std::string KernelSymbol::label() const {
  switch (kind) {
    case Kind::cosine: return "cos" + std::to_string(harmonic);
    case Kind::sine: return "sin" + std::to_string(harmonic);
    case Kind::sampled: return "sampled";
  }
  return "";
}

double FieldVector::norm() const { return std::hypot(e1, e2); }

std::array<double, 2> ab_coefficients(const KernelSymbol& kernel, double alpha,
                                      double theta) {
  const double w = kernel.omega(theta);
  const double wp = kernel.omega_prime(theta);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {(alpha - 2.0) * w * c - wp * s, (alpha - 2.0) * w * s + wp * c};
}

FieldVector z_field_fourier(const KernelSymbol& kernel, const Rational& alpha,
                            const densities::CircleMeasure& measure) {
  if (!kernel.trigonometric())
    throw std::invalid_argument("z_field_fourier: trigonometric kernels only");
  const int k = kernel.harmonic;
  const Rational hp = half_plus(alpha, k);
  const Rational hm = half_minus(alpha, k);

  FieldVector out;
  if (measure.exact_coefficients()) {
    const Rational cm = measure.fourier_coefficient_exact(k - 1);
    const Rational cp = measure.fourier_coefficient_exact(k + 1);
    if (kernel.kind == KernelSymbol::Kind::cosine) {
      out.exact_e1 = hp * cm + hm * cp;
      out.exact_e2 = Rational(0);
    } else {
      out.exact_e1 = Rational(0);
      out.exact_e2 = hp * cm - hm * cp;
    }
    out.e1 = out.exact_e1->to_double();
    out.e2 = out.exact_e2->to_double();
    return out;
  }

  const std::complex<double> cm = measure.fourier_coefficient(k - 1);
  const std::complex<double> cp = measure.fourier_coefficient(k + 1);
  std::complex<double> z;
  if (kernel.kind == KernelSymbol::Kind::cosine) {
    z = hp.to_double() * cm + hm.to_double() * std::conj(cp);
  } else {
    z = std::complex<double>(0.0, 1.0) *
        (hp.to_double() * cm - hm.to_double() * std::conj(cp));
  }
  out.e1 = z.real();
  out.e2 = z.imag();
  return out;
}

FieldVector z_field_quadrature(const KernelSymbol& kernel, double alpha,
                               const densities::CircleMeasure& measure, unsigned nodes) {
  if (nodes < 64) throw std::invalid_argument("z_field_quadrature: nodes < 64");
  std::vector<double> v1(nodes, 0.0), v2(nodes, 0.0);
  if (measure.smooth) {
    for (unsigned i = 0; i < nodes; ++i) {
      const double theta = two_pi * double(i) / double(nodes);
      const auto ab = ab_coefficients(kernel, alpha, theta);
      const double w = measure.density_value(theta) / double(nodes);
      v1[i] = ab[0] * w;
      v2[i] = ab[1] * w;
    }
  }
  FieldVector out;
  out.e1 = pairwise_sum(v1);
  out.e2 = pairwise_sum(v2);
  for (const auto& atom : measure.atoms) {
    const auto ab = ab_coefficients(kernel, alpha, atom.angle);
    const double m = atom.mass.to_double();
    out.e1 += m * ab[0];
    out.e2 += m * ab[1];
  }
  return out;
}

QuadField z_field_quadrature_with_error(const KernelSymbol& kernel, double alpha,
                                        const densities::CircleMeasure& measure,
                                        unsigned nodes) {
  const FieldVector coarse = z_field_quadrature(kernel, alpha, measure, nodes);
  const FieldVector fine = z_field_quadrature(kernel, alpha, measure, 2 * nodes);
  QuadField out;
  out.field = fine;
  out.error = std::hypot(fine.e1 - coarse.e1, fine.e2 - coarse.e2);
  return out;
}

ParallelismResult parallelism_det(int k, const Rational& alpha,
                                  const densities::CircleMeasure& measure) {
  if (k < 1) throw std::invalid_argument("parallelism_det: k must be >= 1");
  const Rational hp = half_plus(alpha, k);
  const Rational hm = half_minus(alpha, k);

  ParallelismResult res;
  if (measure.exact_coefficients()) {
    const Rational cm = measure.fourier_coefficient_exact(k - 1);
    const Rational cp = measure.fourier_coefficient_exact(k + 1);
    const Rational det = hp * hp * cm * cm - hm * hm * cp * cp;
    res.det = det.to_double();
    res.residual = (cp.abs() - (hp / hm).abs() * cm.abs()).to_double();
    res.exact = true;
    return res;
  }
  const double am = std::abs(measure.fourier_coefficient(k - 1));
  const double ap = std::abs(measure.fourier_coefficient(k + 1));
  const double dp = hp.to_double();
  const double dm = hm.to_double();
  res.det = dp * dp * am * am - dm * dm * ap * ap;
  res.residual = ap - std::abs(dp / dm) * am;
  return res;
}

double riesz_condition_residual(const Rational& alpha,
                                const densities::CircleMeasure& measure) {
  const Rational threshold =
      (alpha - Rational(1)).abs() / (alpha - Rational(3)).abs() * measure.total_exact();
  if (measure.exact_coefficients()) {
    // Both harmonic-2 moments are real here; the length is |hat(Psi)(2)|.
    const Rational len = measure.fourier_coefficient_exact(2).abs();
    return (len - threshold).to_double();
  }
  return std::abs(measure.fourier_coefficient(2)) - threshold.to_double();
}

FieldVector riesz_measure_gradient(const Rational& alpha, double t, GradientRoute route,
                                   unsigned nodes) {
  if (alpha.sign() < 0 || alpha >= Rational(2))
    throw std::invalid_argument("riesz_measure_gradient: alpha must lie in [0, 2)");
  FieldVector out;
  if (route == GradientRoute::closed) {
    const double factor = (alpha - Rational(1)).to_double();
    if (alpha < Rational(1)) {
      out.e1 = factor * std::cos(t);
      out.e2 = 0.0;
    } else if (alpha > Rational(1)) {
      out.e1 = 0.0;
      out.e2 = factor * std::sin(t);
    }
    return out;
  }

  // grad of the shifted kernel at the origin, integrated against the
  // aligned measure: [cos t, sin t]
  //   - (3-alpha)(cos th cos t + sin th sin t)[cos th, sin th].
  const double a = alpha.to_double();
  const densities::CircleMeasure mu = densities::riesz_measure(alpha);
  auto grad1 = [&](double th) {
    return std::cos(t) -
           (3.0 - a) * (std::cos(th) * std::cos(t) + std::sin(th) * std::sin(t)) *
               std::cos(th);
  };
  auto grad2 = [&](double th) {
    return std::sin(t) -
           (3.0 - a) * (std::cos(th) * std::cos(t) + std::sin(th) * std::sin(t)) *
               std::sin(th);
  };
  const double scale = mu.smooth_scale.to_double();
  out.e1 = scale * integrate_circle(grad1, nodes) / two_pi;
  out.e2 = scale * integrate_circle(grad2, nodes) / two_pi;
  for (const auto& atom : mu.atoms) {
    const double m = atom.mass.to_double();
    out.e1 += m * grad1(atom.angle);
    out.e2 += m * grad2(atom.angle);
  }
  return out;
}

int span_rank(std::span<const FieldVector> vectors, double tol) {
  if (vectors.empty()) throw std::invalid_argument("span_rank: empty list");
  // Eigenvalues of the 2x2 Gram matrix give the squared singular values.
  double g11 = 0, g12 = 0, g22 = 0;
  for (const auto& v : vectors) {
    g11 += v.e1 * v.e1;
    g12 += v.e1 * v.e2;
    g22 += v.e2 * v.e2;
  }
  const double tr = g11 + g22;
  const double disc = std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4 * g12 * g12));
  const double l1 = 0.5 * (tr + disc);
  const double l2 = std::max(0.0, 0.5 * (tr - disc));
  const double s1 = std::sqrt(l1);
  const double s2 = std::sqrt(l2);
  if (s1 <= tol) return 0;
  return s2 > tol * s1 ? 2 : 1;
}

SphereKernel SphereKernel::coordinate(unsigned axis, unsigned dim) {
  if (dim < 3 || axis >= dim)
    throw std::invalid_argument("SphereKernel::coordinate: bad axis/dimension");
  SphereKernel k;
  k.dim = dim;
  k.omega = [axis](std::span<const double> u) { return u[axis]; };
  k.tangent_grad = [axis, dim](std::span<const double> u) {
    std::vector<double> g(dim, 0.0);
    for (unsigned i = 0; i < dim; ++i) g[i] = -u[axis] * u[i];
    g[axis] += 1.0;
    return g;
  };
  return k;
}

EmbedResult embed_and_project(const Rational& alpha, const SphereKernel& kernel,
                              const densities::CircleMeasure& planar_profile,
                              unsigned nodes, unsigned circle_checks, double tol) {
  const unsigned n = kernel.dim;
  if (n < 3) throw std::invalid_argument("embed_and_project: dimension must be >= 3");
  const Rational x = Rational(long(n)) - alpha;
  if (x.sign() <= 0 || x > Rational(long(n)))
    throw std::invalid_argument("embed_and_project: requires x = n - alpha in (0, n]");

  // Great-circle vanishing check: the e1-e2 circle plus random ones.
  std::mt19937_64 rng(0x5eed5u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (unsigned c = 0; c <= circle_checks; ++c) {
    std::vector<double> p(n, 0.0), q(n, 0.0);
    if (c == 0) {
      p[0] = 1.0;
      q[1] = 1.0;
    } else {
      double np = 0;
      for (unsigned i = 0; i < n; ++i) np += (p[i] = gauss(rng)) * p[i];
      for (unsigned i = 0; i < n; ++i) p[i] /= std::sqrt(np);
      double dot = 0;
      for (unsigned i = 0; i < n; ++i) dot += (q[i] = gauss(rng)) * p[i];
      double nq = 0;
      for (unsigned i = 0; i < n; ++i) nq += (q[i] -= dot * p[i]) * q[i];
      for (unsigned i = 0; i < n; ++i) q[i] /= std::sqrt(nq);
    }
    const double mean = integrate_circle(
                            [&](double phi) {
                              std::vector<double> u(n);
                              for (unsigned i = 0; i < n; ++i)
                                u[i] = p[i] * std::cos(phi) + q[i] * std::sin(phi);
                              return kernel.omega(u);
                            },
                            512) /
                        two_pi;
    worst = std::max(worst, std::abs(mean));
  }
  if (worst > tol)
    throw std::invalid_argument("embed_and_project: kernel mean on a great circle = " +
                                std::to_string(worst));

  // Field at the cube center; the profile angle parametrizes the direction
  // of (center - y), so the integrand is evaluated at u(theta) directly.
  const double an = (alpha - Rational(long(n))).to_double();
  auto integrand = [&](double theta, std::vector<double>& out) {
    std::vector<double> u(n, 0.0);
    u[0] = std::cos(theta);
    u[1] = std::sin(theta);
    const double w = kernel.omega(u);
    std::vector<double> g = kernel.tangent_grad(u);
    for (unsigned i = 0; i < n; ++i) out[i] = an * w * u[i] + g[i];
  };

  EmbedResult res;
  res.great_circle_max = worst;
  res.field.assign(n, 0.0);
  std::vector<std::vector<double>> comp(n, std::vector<double>(nodes, 0.0));
  std::vector<double> tmp(n);
  for (unsigned i = 0; i < nodes; ++i) {
    const double theta = two_pi * double(i) / double(nodes);
    const double w = planar_profile.density_value(theta) / double(nodes);
    if (w != 0.0) {
      integrand(theta, tmp);
      for (unsigned d = 0; d < n; ++d) comp[d][i] = tmp[d] * w;
    }
  }
  for (unsigned d = 0; d < n; ++d) res.field[d] = pairwise_sum(comp[d]);
  for (const auto& atom : planar_profile.atoms) {
    integrand(atom.angle, tmp);
    const double m = atom.mass.to_double();
    for (unsigned d = 0; d < n; ++d) res.field[d] += m * tmp[d];
  }

  double norm = 0.0;
  for (double v : res.field) norm += v * v;
  norm = std::sqrt(norm);
  res.e2_ratio = norm > 1e-12 ? std::abs(res.field[1]) / norm : std::abs(res.field[1]);
  return res;
}

}  // namespace ervl::fields
