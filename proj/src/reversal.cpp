#include "ervl/reversal.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

#include "ervl/quadrature.hpp"

namespace ervl::reversal {

namespace {

// Integral of f(y) dmu(y) over the circle measure: smooth part by the
// trapezoid rule, atoms added exactly.
template <class F>
double integrate_measure(const PlanarMeasure& mu, unsigned nodes, F&& f) {
  std::vector<double> vals(nodes, 0.0);
  if (mu.profile.smooth) {
    for (unsigned i = 0; i < nodes; ++i) {
      const double theta = two_pi * double(i) / double(nodes);
      const double w = mu.profile.density_value(theta) / double(nodes);
      if (w != 0.0) vals[i] = w * f(mu.point_at(theta));
    }
  }
  double sum = pairwise_sum(vals);
  for (const auto& atom : mu.profile.atoms)
    sum += atom.mass.to_double() * f(mu.point_at(atom.angle));
  return sum;
}

double kernel_value(const fields::KernelSymbol& kernel, double alpha,
                    std::array<double, 2> w) {
  const double r = std::hypot(w[0], w[1]);
  if (r == 0.0) throw std::domain_error("kernel evaluated on its singularity");
  const double theta = std::atan2(w[1], w[0]);
  return kernel.omega(theta) / std::pow(r, 2.0 - alpha);
}

}  // namespace

std::array<double, 2> PlanarMeasure::point_at(double theta) const {
  return {center[0] - radius * std::cos(theta), center[1] - radius * std::sin(theta)};
}

double PlanarMeasure::total_mass() const { return profile.total(); }

PlanarMeasure lift_profile(const densities::CircleMeasure& profile, double radius,
                           std::array<double, 2> center) {
  if (radius <= 0) throw std::invalid_argument("lift_profile: radius must be positive");
  PlanarMeasure mu;
  mu.center = center;
  mu.radius = radius;
  mu.profile = profile;
  return mu;
}

QuadValue poisson_integral(double alpha, const energy::Cube& J, const PlanarMeasure& mu,
                           unsigned nodes) {
  if (J.dim() != 2) throw std::invalid_argument("poisson_integral: planar cubes only");
  const double side = J.side;
  auto f = [&](std::array<double, 2> y) {
    const double d = std::hypot(y[0] - J.center[0], y[1] - J.center[1]);
    return side / std::pow(side + d, 3.0 - alpha);
  };
  const double coarse = integrate_measure(mu, nodes, f);
  const double fine = integrate_measure(mu, 2 * nodes, f);
  return {fine, std::abs(fine - coarse)};
}

QuadValue apply_transform(const fields::KernelSymbol& kernel, double alpha,
                          const PlanarMeasure& mu, std::array<double, 2> x,
                          unsigned nodes) {
  const double dist = std::hypot(x[0] - mu.center[0], x[1] - mu.center[1]);
  if (std::abs(dist - mu.radius) < 1e-9 * mu.radius)
    throw std::invalid_argument("apply_transform: point on the support circle");
  auto f = [&](std::array<double, 2> y) {
    return kernel_value(kernel, alpha, {x[0] - y[0], x[1] - y[1]});
  };
  const double coarse = integrate_measure(mu, nodes, f);
  const double fine = integrate_measure(mu, 2 * nodes, f);
  return {fine, std::abs(fine - coarse)};
}

fields::FieldVector gradient_field(const fields::KernelSymbol& kernel, double alpha,
                                   const PlanarMeasure& mu, unsigned nodes) {
  // grad K(w) = [(alpha-2) Omega(theta_w) w + Omega'(theta_w) w_perp] / |w|^{4-alpha}
  // evaluated at w = c_J - y.
  auto f1 = [&](std::array<double, 2> y) {
    const double w0 = mu.center[0] - y[0], w1 = mu.center[1] - y[1];
    const double r = std::hypot(w0, w1);
    const double theta = std::atan2(w1, w0);
    const double om = kernel.omega(theta), op = kernel.omega_prime(theta);
    return ((alpha - 2.0) * om * w0 + op * (-w1)) / std::pow(r, 4.0 - alpha);
  };
  auto f2 = [&](std::array<double, 2> y) {
    const double w0 = mu.center[0] - y[0], w1 = mu.center[1] - y[1];
    const double r = std::hypot(w0, w1);
    const double theta = std::atan2(w1, w0);
    const double om = kernel.omega(theta), op = kernel.omega_prime(theta);
    return ((alpha - 2.0) * om * w1 + op * w0) / std::pow(r, 4.0 - alpha);
  };
  fields::FieldVector z;
  z.e1 = integrate_measure(mu, nodes, f1);
  z.e2 = integrate_measure(mu, nodes, f2);
  return z;
}

LinearizationResult linearization_residual(const fields::KernelSymbol& kernel,
                                           double alpha, const PlanarMeasure& mu,
                                           const energy::Cube& J,
                                           std::array<double, 2> x,
                                           std::array<double, 2> z, unsigned nodes) {
  if (!J.contains({x[0], x[1]}) || !J.contains({z[0], z[1]}))
    throw std::invalid_argument("linearization_residual: points must lie in the cube");
  LinearizationResult out;
  out.difference = apply_transform(kernel, alpha, mu, x, nodes).value -
                   apply_transform(kernel, alpha, mu, z, nodes).value;
  const fields::FieldVector zf = gradient_field(kernel, alpha, mu, nodes);
  out.linear_term = (x[0] - z[0]) * zf.e1 + (x[1] - z[1]) * zf.e2;
  out.residual = out.difference - out.linear_term;
  const double sep = std::hypot(x[0] - z[0], x[1] - z[1]);
  if (sep == 0.0) {
    out.ratio = 0.0;
    return out;
  }
  const double p = poisson_integral(alpha, J, mu, nodes).value;
  out.ratio = std::abs(out.residual) / (p / J.side * sep);
  return out;
}

energy::AtomicMeasure perpendicular_segment_measure(const energy::Cube& J,
                                                    unsigned constant_axis,
                                                    unsigned count) {
  if (J.dim() != 2 || constant_axis > 1)
    throw std::invalid_argument("perpendicular_segment_measure: planar cubes only");
  if (count < 2)
    throw std::invalid_argument(
        "perpendicular_segment_measure: a single atom has zero energy");
  const unsigned moving = 1 - constant_axis;
  energy::AtomicMeasure w;
  const double span = 0.8 * J.side;
  for (unsigned i = 0; i < count; ++i) {
    energy::Point p = J.center;
    p[moving] += span * (double(i) / double(count - 1) - 0.5);
    w.points.push_back(p);
    w.masses.push_back(1.0);
  }
  return w;
}

ReversalReport reversal_ratio(const Rational& alpha, double gamma,
                              const std::vector<fields::KernelSymbol>& kernels,
                              const densities::CircleMeasure& profile, double c0,
                              unsigned nodes, unsigned atom_count) {
  if (gamma <= 2.0) throw std::invalid_argument("reversal_ratio: gamma must exceed 2");
  if (kernels.empty()) throw std::invalid_argument("reversal_ratio: no kernels");

  const energy::Cube J{{0.0, 0.0}, 1.0};
  const double a = alpha.to_double();
  const PlanarMeasure mu = lift_profile(profile, gamma * J.side, {0.0, 0.0});

  ReversalReport rep;
  rep.alpha = a;
  rep.gamma = gamma;
  rep.nodes = nodes;
  rep.atom_count = atom_count;
  rep.c0 = c0;
  for (const auto& k : kernels) rep.kernels.push_back(k.label());

  // Common field direction; every Z must be parallel to it by construction
  // of the profile. Worst misalignment is recorded.
  std::vector<fields::FieldVector> zs;
  zs.reserve(kernels.size());
  double zmax = 0.0;
  std::size_t imax = 0;
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    zs.push_back(gradient_field(kernels[i], a, mu, nodes));
    if (zs.back().norm() > zmax) {
      zmax = zs.back().norm();
      imax = i;
    }
  }
  if (zmax > 0.0) {
    const double d1 = zs[imax].e1 / zmax, d2 = zs[imax].e2 / zmax;
    rep.killed_axis = std::abs(d1) >= std::abs(d2) ? 0 : 1;
    for (const auto& z : zs) {
      // Fields that vanish up to quadrature noise carry no direction.
      if (z.norm() <= 1e-9 * zmax) continue;
      const double cross = std::abs(z.e1 * d2 - z.e2 * d1);
      rep.field_alignment = std::max(rep.field_alignment, cross / z.norm());
    }
  } else {
    rep.killed_axis = 0;  // degenerate (alpha = 1): all fields vanish
  }

  const energy::AtomicMeasure w =
      perpendicular_segment_measure(J, rep.killed_axis, atom_count);
  rep.energy_total = energy::energy(J, w);
  rep.energy_killed = energy::coordinate_energy(rep.killed_axis, J, w);

  const QuadValue p = poisson_integral(a, J, mu, nodes);
  rep.poisson = p.value;

  // Transform values at the atoms, at two resolutions for the error bar.
  auto lhs_at = [&](unsigned nd) {
    std::vector<std::vector<double>> t(kernels.size(),
                                       std::vector<double>(w.points.size()));
    for (std::size_t l = 0; l < kernels.size(); ++l)
      for (std::size_t i = 0; i < w.points.size(); ++i)
        t[l][i] = apply_transform(kernels[l], a, mu,
                                  {w.points[i][0], w.points[i][1]}, nd)
                      .value;
    double sum = 0.0;
    for (std::size_t i = 0; i < w.points.size(); ++i)
      for (std::size_t j = 0; j < w.points.size(); ++j)
        for (std::size_t l = 0; l < kernels.size(); ++l) {
          const double d = t[l][i] - t[l][j];
          sum += d * d;
        }
    const double m = double(w.points.size());
    return sum / (m * m);
  };
  rep.lhs = lhs_at(nodes);
  rep.lhs_error = std::abs(rep.lhs - lhs_at(2 * nodes));

  rep.ratio = rep.lhs / (rep.energy_total * rep.energy_total * rep.poisson * rep.poisson);
  rep.ratio_below_c0 = rep.ratio < c0;

  for (std::size_t i = 0; i < w.points.size(); ++i)
    for (std::size_t j = i + 1; j < w.points.size(); ++j) {
      const std::array<double, 2> x{w.points[i][0], w.points[i][1]};
      const std::array<double, 2> z{w.points[j][0], w.points[j][1]};
      for (std::size_t l = 0; l < kernels.size(); ++l) {
        const double lin = std::abs((x[0] - z[0]) * zs[l].e1 + (x[1] - z[1]) * zs[l].e2);
        rep.linear_term_max = std::max(rep.linear_term_max, lin);
        const auto r = linearization_residual(kernels[l], a, mu, J, x, z, nodes);
        rep.residual_ratio_max = std::max(rep.residual_ratio_max, r.ratio);
      }
    }
  return rep;
}

std::string reversal_report_json(const ReversalReport& rep, int indent) {
  nlohmann::ordered_json j;
  j["schema"] = rep.schema;
  j["alpha"] = rep.alpha;
  j["gamma"] = rep.gamma;
  j["kernels"] = rep.kernels;
  j["nodes"] = rep.nodes;
  j["atom_count"] = rep.atom_count;
  j["killed_axis"] = rep.killed_axis;
  j["field_alignment"] = rep.field_alignment;
  j["lhs"] = rep.lhs;
  j["lhs_error"] = rep.lhs_error;
  j["energy_total"] = rep.energy_total;
  j["energy_killed"] = rep.energy_killed;
  j["poisson"] = rep.poisson;
  j["ratio"] = rep.ratio;
  j["c0"] = rep.c0;
  j["ratio_below_c0"] = rep.ratio_below_c0;
  j["linear_term_max"] = rep.linear_term_max;
  j["residual_ratio_max"] = rep.residual_ratio_max;
  return j.dump(indent);
}

}  // namespace ervl::reversal
