#pragma once

#include <array>
#include <string>
#include <vector>

#include "ervl/densities.hpp"
#include "ervl/energy.hpp"
#include "ervl/fields.hpp"
#include "ervl/rational.hpp"

namespace ervl::reversal {

/*
 * Quadrature evaluation of the fractional transforms
 *
 *   T mu(x) = integral of Omega(theta(x-y)) / |x-y|^{2-alpha} dmu(y)
 *
 * for measures mu carried by a single circle around the cube center, the
 * tail integral P(J, mu), the Taylor linearization residual, and the ratio
 * that exhibits the failure of the strong energy reversal inequality.
 */

struct PlanarMeasure {
  std::array<double, 2> center{0.0, 0.0};  // the cube center
  double radius = 1.0;
  densities::CircleMeasure profile;

  // The profile angle parametrizes the direction of (center - y), so the
  // angular measure seen from the center is exactly the profile.
  std::array<double, 2> point_at(double theta) const;
  double total_mass() const;
};

PlanarMeasure lift_profile(const densities::CircleMeasure& profile, double radius,
                           std::array<double, 2> center = {0.0, 0.0});

struct QuadValue {
  double value = 0.0;
  double error = 0.0;  // node-doubling estimate
};

// P(J, mu) = integral of side / (side + |y - c_J|)^{3-alpha} dmu(y).
QuadValue poisson_integral(double alpha, const energy::Cube& J, const PlanarMeasure& mu,
                           unsigned nodes);

// T mu(x); throws if x touches the support circle.
QuadValue apply_transform(const fields::KernelSymbol& kernel, double alpha,
                          const PlanarMeasure& mu, std::array<double, 2> x,
                          unsigned nodes);

// integral of grad K(c_J - y) dmu(y), by plane quadrature; the direct route
// to the linear Taylor term.
fields::FieldVector gradient_field(const fields::KernelSymbol& kernel, double alpha,
                                   const PlanarMeasure& mu, unsigned nodes);

struct LinearizationResult {
  double difference = 0.0;   // T mu(x) - T mu(z)
  double linear_term = 0.0;  // (x - z) . Z
  double residual = 0.0;     // difference - linear_term
  double ratio = 0.0;        // |residual| / ((P/side) |x - z|)
};

LinearizationResult linearization_residual(const fields::KernelSymbol& kernel,
                                           double alpha, const PlanarMeasure& mu,
                                           const energy::Cube& J,
                                           std::array<double, 2> x,
                                           std::array<double, 2> z, unsigned nodes);

// Unit atoms equispaced on the mid-segment of J on which the coordinate
// `constant_axis` is frozen; that coordinate energy is exactly zero while
// the total energy stays positive. Needs at least two atoms.
energy::AtomicMeasure perpendicular_segment_measure(const energy::Cube& J,
                                                    unsigned constant_axis,
                                                    unsigned count = 5);

struct ReversalReport {
  std::string schema = "ervl/1";
  double alpha = 0.0;
  double gamma = 0.0;
  std::vector<std::string> kernels;
  unsigned nodes = 0;
  unsigned atom_count = 0;
  unsigned killed_axis = 0;       // axis of the common field direction
  double field_alignment = 0.0;   // worst |Z x d| / |Z| over the kernel list
  double lhs = 0.0;               // mean over w x w of sum_l |T_l(x)-T_l(z)|^2
  double lhs_error = 0.0;         // node-doubling estimate
  double energy_total = 0.0;      // E(J, w)
  double energy_killed = 0.0;     // killed coordinate energy of w
  double poisson = 0.0;           // P(J, mu)
  double ratio = 0.0;             // lhs / (E^2 P^2)
  double c0 = 1.0;
  bool ratio_below_c0 = false;
  double linear_term_max = 0.0;   // max |(x-z) . Z| over atom pairs/kernels
  double residual_ratio_max = 0.0;  // empirical epsilon of the linearization
};

// One cell of the failure demonstration: cube J = unit square at the
// origin, measure = profile lifted to the circle of radius gamma * side.
ReversalReport reversal_ratio(const Rational& alpha, double gamma,
                              const std::vector<fields::KernelSymbol>& kernels,
                              const densities::CircleMeasure& profile, double c0,
                              unsigned nodes = 4096, unsigned atom_count = 5);

std::string reversal_report_json(const ReversalReport& report, int indent = 2);

}  // namespace ervl::reversal
