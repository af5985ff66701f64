#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ervl/densities.hpp"
#include "ervl/rational.hpp"

namespace ervl::fields {

/*
 * Gradient fields of fractional convolution kernels.
 *
 * For a kernel Omega(theta)/|w|^{2-alpha} in the plane, the gradient field
 * at the origin against an angular measure Psi is
 *
 *   Z = integral of (A(theta), B(theta)) dPsi(theta),
 *   A = (alpha-2) Omega cos(theta) - Omega' sin(theta),
 *   B = (alpha-2) Omega sin(theta) + Omega' cos(theta),
 *
 * equivalently Z = integral of [(alpha-2)Omega + i Omega'] e^{i theta} dPsi
 * in complex notation. For the trigonometric kernels cos(k theta) and
 * sin(k theta) this collapses to two Fourier coefficients of Psi; with the
 * convention hat(Psi)(k) = integral e^{-ik theta} dPsi,
 *
 *   Z_cos = h+ hat(Psi)(k-1) + h- conj(hat(Psi)(k+1)),
 *   Z_sin = i [ h+ hat(Psi)(k-1) - h- conj(hat(Psi)(k+1)) ],
 *
 * where h+ = (alpha+k-2)/2 and h- = (alpha-k-2)/2. Both routes are
 * implemented and must agree; the quadrature route serves as the
 * independent oracle for the closed formula.
 */

struct KernelSymbol {
  enum class Kind { cosine, sine, sampled };

  Kind kind = Kind::cosine;
  int harmonic = 1;  // k >= 1 for the trigonometric kinds
  std::function<double(double)> omega_fn;
  std::function<double(double)> omega_prime_fn;

  static KernelSymbol cosine(int k);
  static KernelSymbol sine(int k);
  // Validates the supplied derivative against a centred finite difference
  // (relative tolerance 1e-6) and the vanishing mean by quadrature.
  static KernelSymbol sampled(std::function<double(double)> omega,
                              std::function<double(double)> omega_prime,
                              unsigned check_nodes = 1024);

  double omega(double theta) const;
  double omega_prime(double theta) const;
  bool trigonometric() const { return kind != Kind::sampled; }
  std::string label() const;
};

struct FieldVector {
  double e1 = 0.0;
  double e2 = 0.0;
  std::optional<Rational> exact_e1;
  std::optional<Rational> exact_e2;

  bool has_exact() const { return exact_e1 && exact_e2; }
  double norm() const;
};

// The two gradient coefficients (A, B) at one angle.
std::array<double, 2> ab_coefficients(const KernelSymbol& kernel, double alpha,
                                      double theta);

// Closed Fourier-coefficient formula; trigonometric kernels only. Carries
// exact components whenever the measure has exact coefficients.
FieldVector z_field_fourier(const KernelSymbol& kernel, const Rational& alpha,
                            const densities::CircleMeasure& measure);

// Trapezoid quadrature of (A, B) dPsi with atoms added exactly.
FieldVector z_field_quadrature(const KernelSymbol& kernel, double alpha,
                               const densities::CircleMeasure& measure, unsigned nodes);

// Same value at the doubled node count, with the node-doubling difference
// as the accuracy report.
struct QuadField {
  FieldVector field;
  double error = 0.0;
};
QuadField z_field_quadrature_with_error(const KernelSymbol& kernel, double alpha,
                                        const densities::CircleMeasure& measure,
                                        unsigned nodes);

// det[Z_cos; Z_sin] for harmonic k, together with the modulus residual
// |hat(Psi)(k+1)| - |(alpha+k-2)/(alpha-k-2)| |hat(Psi)(k-1)|; the
// determinant vanishes iff the residual does. `exact` marks an exact-route
// evaluation.
struct ParallelismResult {
  double det = 0.0;
  double residual = 0.0;
  bool exact = false;
};
ParallelismResult parallelism_det(int k, const Rational& alpha,
                                  const densities::CircleMeasure& measure);

// || (int cos 2t dPsi, int sin 2t dPsi) || - (|alpha-1|/|alpha-3|) ||Psi||;
// zero iff the two first-harmonic gradient fields are parallel.
double riesz_condition_residual(const Rational& alpha,
                                const densities::CircleMeasure& measure);

enum class GradientRoute { closed, quadrature };

// Gradient at the origin of the direction-t kernel convolved with
// riesz_measure(alpha): (alpha-1)[cos t, 0] for alpha < 1,
// (alpha-1)[0, sin t] for alpha > 1, zero at alpha = 1.
FieldVector riesz_measure_gradient(const Rational& alpha, double t, GradientRoute route,
                                   unsigned nodes = 4096);

// Numerical rank (0, 1 or 2) of the 2 x N matrix of field vectors.
int span_rank(std::span<const FieldVector> vectors, double tol);

/*
 * Higher-dimensional embedding. A kernel Omega(u)/|w|^{n-alpha} on R^n with
 * Omega vanishing on every great circle of the sphere, integrated against
 * the planar circle measure embedded in R^2 x {0}, yields a gradient field
 * perpendicular to e2. Gradient of the kernel at |w| = 1:
 *
 *   grad K(u) = (alpha - n) Omega(u) u + grad_S Omega(u).
 */
struct SphereKernel {
  unsigned dim = 3;  // ambient dimension n >= 3
  std::function<double(std::span<const double>)> omega;
  // Tangential gradient of the degree-0 homogeneous extension on |u| = 1.
  std::function<std::vector<double>(std::span<const double>)> tangent_grad;

  static SphereKernel coordinate(unsigned axis, unsigned dim);
};

struct EmbedResult {
  std::vector<double> field;
  double e2_ratio = 0.0;          // |field . e2| / ||field||
  double great_circle_max = 0.0;  // largest observed great-circle mean
};

// Throws std::invalid_argument when Omega fails the great-circle vanishing
// check at the given tolerance. The radial normalization of the lifted
// measure is fixed to 1; only the field direction is meaningful.
EmbedResult embed_and_project(const Rational& alpha, const SphereKernel& kernel,
                              const densities::CircleMeasure& planar_profile,
                              unsigned nodes = 4096, unsigned circle_checks = 16,
                              double tol = 1e-8);

}  // namespace ervl::fields
