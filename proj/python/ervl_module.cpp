// Python bindings for the main operations: exact sequences and certificates,
// gradient fields, energies, and the reversal report. Exact rationals cross
// the boundary as "p/q" strings.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ervl/densities.hpp"
#include "ervl/energy.hpp"
#include "ervl/fields.hpp"
#include "ervl/reversal.hpp"
#include "ervl/toeplitz.hpp"

namespace py = pybind11;
using namespace ervl;

namespace {

Rational rat(const std::string& text) { return Rational::parse(text); }

std::vector<std::string> rat_list(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

py::dict cert_dict(const Certificate& c) {
  py::dict d;
  d["identity"] = c.identity;
  d["n"] = c.n;
  d["x"] = c.x;
  d["passed"] = c.passed;
  d["witness"] = c.witness;
  return d;
}

fields::KernelSymbol kernel_from(const std::string& name, int k) {
  if (name == "cos") return fields::KernelSymbol::cosine(k);
  if (name == "sin") return fields::KernelSymbol::sine(k);
  throw std::invalid_argument("kernel must be 'cos' or 'sin'");
}

densities::Variant variant_from(const std::string& name) {
  if (name == "signed") return densities::Variant::signed_products;
  if (name == "absolute") return densities::Variant::absolute_products;
  throw std::invalid_argument("variant must be 'signed' or 'absolute'");
}

}  // namespace

PYBIND11_MODULE(_ervl, m) {
  m.doc() = "exact and numerical verification of the energy-reversal counterexample";

  // exact sequences and identities -----------------------------------------
  m.def(
      "coeff_sequence",
      [](const std::string& alpha, const std::string& variant, unsigned N) {
        return rat_list(
            densities::coeff_sequence(rat(alpha), variant_from(variant), N).terms);
      },
      py::arg("alpha"), py::arg("variant"), py::arg("N"));

  m.def("telescoping_alpha0", [](unsigned N) {
    const auto t = densities::telescoping_alpha0(N);
    return py::make_tuple(t.partial_sum.str(), t.closed_form.str());
  });

  m.def("gram_determinant", [](unsigned n, const std::string& x) {
    return toeplitz::det_exact(toeplitz::build_gram(n, rat(x))).str();
  });

  m.def("verify_recursion", [](unsigned n_max, const std::string& x) {
    return cert_dict(toeplitz::verify_recursion(n_max, rat(x)));
  });
  m.def("verify_inverse_identity", [](unsigned n, const std::string& x) {
    return cert_dict(toeplitz::verify_inverse_identity(n, rat(x)));
  });
  m.def("verify_complement_identity", [](unsigned n, const std::string& x) {
    return cert_dict(toeplitz::verify_complement_identity(n, rat(x)));
  });
  m.def("verify_residue_identity", [](unsigned n, const std::vector<std::string>& zs) {
    std::vector<Rational> samples;
    for (const auto& z : zs) samples.push_back(rat(z));
    return cert_dict(toeplitz::verify_residue_identity(n, samples));
  });
  m.def("leading_minors_positive", [](unsigned n_max, const std::string& x) {
    return cert_dict(toeplitz::leading_minors_positive(n_max, rat(x)));
  });
  m.def("positivity_certificate",
        [](const std::string& alpha, const std::string& variant, unsigned N,
           unsigned grid) {
          return cert_dict(densities::positivity_certificate(
              rat(alpha), variant_from(variant), N, grid));
        });

  // measures and fields ------------------------------------------------------
  py::class_<densities::CircleMeasure>(m, "CircleMeasure")
      .def("total", &densities::CircleMeasure::total)
      .def("fourier_coefficient", [](const densities::CircleMeasure& c, long k) {
        const auto z = c.fourier_coefficient(k);
        return py::make_tuple(z.real(), z.imag());
      });

  m.def("riesz_measure",
        [](const std::string& alpha) { return densities::riesz_measure(rat(alpha)); });
  m.def("signed_profile", [](const std::string& alpha, unsigned N) {
    densities::FourierDensity d;
    d.coeffs =
        densities::coeff_sequence(rat(alpha), densities::Variant::signed_products, N);
    return densities::measure_from_density(d, Rational(1));
  });

  m.def(
      "z_field",
      [](const std::string& kernel, int k, const std::string& alpha,
         const densities::CircleMeasure& measure, const std::string& route,
         unsigned nodes) {
        const auto sym = kernel_from(kernel, k);
        const fields::FieldVector z =
            route == "quadrature"
                ? fields::z_field_quadrature(sym, rat(alpha).to_double(), measure, nodes)
                : fields::z_field_fourier(sym, rat(alpha), measure);
        return py::make_tuple(z.e1, z.e2);
      },
      py::arg("kernel"), py::arg("k"), py::arg("alpha"), py::arg("measure"),
      py::arg("route") = "fourier", py::arg("nodes") = 4096);

  m.def("parallelism_det",
        [](int k, const std::string& alpha, const densities::CircleMeasure& measure) {
          const auto r = fields::parallelism_det(k, rat(alpha), measure);
          return py::make_tuple(r.det, r.residual, r.exact);
        });
  m.def("riesz_condition_residual",
        [](const std::string& alpha, const densities::CircleMeasure& measure) {
          return fields::riesz_condition_residual(rat(alpha), measure);
        });

  // energies ------------------------------------------------------------------
  m.def(
      "energy",
      [](const std::vector<std::vector<double>>& points,
         const std::vector<double>& masses, const std::vector<double>& center,
         double side) {
        return energy::energy(energy::Cube{center, side},
                              energy::AtomicMeasure{points, masses});
      },
      py::arg("points"), py::arg("masses"), py::arg("center"), py::arg("side"));
  m.def(
      "coordinate_energy",
      [](unsigned axis, const std::vector<std::vector<double>>& points,
         const std::vector<double>& masses, const std::vector<double>& center,
         double side) {
        return energy::coordinate_energy(axis, energy::Cube{center, side},
                                         energy::AtomicMeasure{points, masses});
      },
      py::arg("axis"), py::arg("points"), py::arg("masses"), py::arg("center"),
      py::arg("side"));

  // reversal -------------------------------------------------------------------
  m.def(
      "reversal_ratio",
      [](const std::string& alpha, double gamma, const std::string& demo, unsigned M,
         unsigned N, double c0, unsigned nodes) {
        std::vector<fields::KernelSymbol> kernels;
        densities::CircleMeasure profile;
        if (demo == "trig") {
          for (unsigned k = 1; k <= M; ++k) {
            kernels.push_back(fields::KernelSymbol::cosine(int(k)));
            kernels.push_back(fields::KernelSymbol::sine(int(k)));
          }
          densities::FourierDensity d;
          d.coeffs = densities::coeff_sequence(
              rat(alpha), densities::Variant::signed_products, N);
          profile = densities::measure_from_density(d, Rational(1));
        } else {
          kernels = {fields::KernelSymbol::cosine(1), fields::KernelSymbol::sine(1)};
          profile = densities::riesz_measure(rat(alpha));
        }
        const auto rep =
            reversal::reversal_ratio(rat(alpha), gamma, kernels, profile, c0, nodes);
        py::dict d;
        d["alpha"] = rep.alpha;
        d["gamma"] = rep.gamma;
        d["ratio"] = rep.ratio;
        d["lhs"] = rep.lhs;
        d["lhs_error"] = rep.lhs_error;
        d["energy_total"] = rep.energy_total;
        d["energy_killed"] = rep.energy_killed;
        d["poisson"] = rep.poisson;
        d["killed_axis"] = rep.killed_axis;
        d["ratio_below_c0"] = rep.ratio_below_c0;
        d["residual_ratio_max"] = rep.residual_ratio_max;
        return d;
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("demo") = "riesz", py::arg("M") = 4,
      py::arg("N") = 64, py::arg("c0") = 1.0, py::arg("nodes") = 2048);
}
