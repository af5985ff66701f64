// ervl: build the exact certificate suites, densities, gradient-field
// tables and the energy-reversal failure report from the command line.
// All outputs are machine-readable files under --out.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ervl/certificate.hpp"
#include "ervl/densities.hpp"
#include "ervl/fields.hpp"
#include "ervl/reversal.hpp"
#include "ervl/toeplitz.hpp"

namespace fs = std::filesystem;
using ervl::Certificate;
using ervl::Rational;

namespace {

struct RunConfig {
  std::string alpha = "0";
  std::string x_grid = "1/10,1/2,1,3/2,2,5/2,3";
  std::string gammas = "8,16,32,64";
  unsigned n_max = 12;
  unsigned N = 64;
  unsigned nodes = 4096;
  unsigned grid = 4096;
  unsigned k_max = 8;
  unsigned M = 4;
  unsigned atoms = 5;
  double c0 = 1.0;
  std::string variant = "signed";
  std::string measure = "riesz";
  std::string kernels = "riesz";
  std::string out = "out";
  std::string format = "json";
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& p : split_csv(s)) out.push_back(Rational::parse(p));
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

void write_run_meta(const RunConfig& cfg, const std::string& command) {
  // The only output with a timestamp; report payloads stay byte-stable.
  nlohmann::ordered_json j;
  j["schema"] = "ervl/1";
  j["command"] = command;
  const auto now = std::chrono::system_clock::now();
  j["unix_time"] = std::chrono::duration_cast<std::chrono::seconds>(
                       now.time_since_epoch())
                       .count();
  write_file(fs::path(cfg.out) / "run_meta.json", j.dump(2) + "\n");
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_certificates(const RunConfig& cfg, const std::string& stem,
                       const std::vector<Certificate>& certs) {
  if (cfg.format == "csv") {
    std::string csv = "identity,n,x,status,witness\n";
    for (const auto& c : certs) {
      std::string w = c.witness;
      for (auto& ch : w)
        if (ch == ',') ch = ';';
      csv += c.identity + "," + std::to_string(c.n) + "," + c.x + "," +
             (c.passed ? "pass" : "fail") + "," + w + "\n";
    }
    write_file(fs::path(cfg.out) / (stem + ".csv"), csv);
  } else {
    nlohmann::ordered_json j;
    j["schema"] = "ervl/1";
    j["certificates"] = nlohmann::ordered_json::parse(ervl::certificates_to_json(certs));
    write_file(fs::path(cfg.out) / (stem + ".json"), j.dump(2) + "\n");
  }
}

int cmd_verify_appendix(const RunConfig& cfg) {
  namespace tp = ervl::toeplitz;
  std::vector<Certificate> certs;
  const auto grid = parse_rational_list(cfg.x_grid);
  const unsigned depth = std::min(cfg.n_max, 10u);

  for (const Rational& x : grid) {
    certs.push_back(tp::verify_recursion(cfg.n_max, x));
    for (unsigned n = 1; n <= depth; ++n) {
      certs.push_back(tp::verify_inverse_identity(n, x));
      certs.push_back(tp::verify_complement_identity(n, x));
    }
    if (x.sign() > 0) certs.push_back(tp::leading_minors_positive(cfg.n_max, x));
  }
  for (unsigned n = 1; n <= depth; ++n) {
    std::vector<Rational> samples;
    for (unsigned j = 0; j < n + 2; ++j)
      samples.push_back(Rational(long(2 * j + 3), 2));
    certs.push_back(tp::verify_residue_identity(n, samples));
  }

  emit_certificates(cfg, "appendix_certificates", certs);
  std::size_t failed = 0;
  for (const auto& c : certs)
    if (!c.passed) {
      ++failed;
      std::cerr << "FAIL " << c.identity << " n=" << c.n << " x=" << c.x << ": "
                << c.witness << "\n";
    }
  std::cout << certs.size() - failed << "/" << certs.size()
            << " certificates passed\n";
  return failed == 0 ? 0 : 1;
}

int cmd_density(const RunConfig& cfg) {
  namespace de = ervl::densities;
  const Rational alpha = Rational::parse(cfg.alpha);
  const de::Variant variant = cfg.variant == "absolute"
                                  ? de::Variant::absolute_products
                                  : de::Variant::signed_products;
  const de::CoefficientSequence seq = de::coeff_sequence(alpha, variant, cfg.N);

  std::string coeff_csv = "n,b_n\n";
  for (unsigned n = 1; n <= cfg.N; ++n)
    coeff_csv += std::to_string(n) + "," + seq.terms[n - 1].str() + "\n";
  write_file(fs::path(cfg.out) / "density_coefficients.csv", coeff_csv);

  de::FourierDensity d;
  d.coeffs = seq;
  std::string grid_csv = "theta,psi\n";
  for (unsigned i = 0; i < cfg.grid; ++i) {
    const double theta = 2.0 * 3.14159265358979323846 * double(i) / cfg.grid;
    grid_csv += format_g17(theta) + "," + format_g17(d.evaluate(theta)) + "\n";
  }
  write_file(fs::path(cfg.out) / "density_grid.csv", grid_csv);

  std::vector<Certificate> certs;
  certs.push_back(de::positivity_certificate(alpha, variant, cfg.N, cfg.grid));
  if (variant == de::Variant::absolute_products)
    certs.push_back(de::check_convexity(seq, cfg.N));
  if (alpha.is_zero()) {
    const auto tele = de::telescoping_alpha0(cfg.N);
    Certificate t{"telescoping", int(cfg.N), "2", tele.partial_sum == tele.closed_form,
                  "partial sum = " + tele.partial_sum.str()};
    certs.push_back(t);
  }
  emit_certificates(cfg, "density_certificates", certs);
  const bool ok = ervl::all_passed(certs);
  std::cout << (ok ? "density certificates passed\n" : "density certificates FAILED\n");
  return ok ? 0 : 1;
}

int cmd_fields(const RunConfig& cfg) {
  namespace de = ervl::densities;
  namespace fl = ervl::fields;
  const Rational alpha = Rational::parse(cfg.alpha);

  de::CircleMeasure measure;
  if (cfg.measure == "signed") {
    de::FourierDensity d;
    d.coeffs = de::coeff_sequence(alpha, de::Variant::signed_products, cfg.N);
    measure = de::measure_from_density(d, Rational(1));
  } else if (cfg.measure == "uniform") {
    measure = de::measure_from_density(de::uniform_density(alpha), Rational(1));
  } else {
    measure = de::riesz_measure(alpha);
  }

  nlohmann::ordered_json j;
  j["schema"] = "ervl/1";
  j["alpha"] = cfg.alpha;
  j["measure"] = cfg.measure;
  j["riesz_condition_residual"] = fl::riesz_condition_residual(alpha, measure);
  j["entries"] = nlohmann::ordered_json::array();

  std::vector<fl::FieldVector> all;
  for (unsigned k = 1; k <= cfg.k_max; ++k) {
    for (const bool sine : {false, true}) {
      const fl::KernelSymbol kernel =
          sine ? fl::KernelSymbol::sine(int(k)) : fl::KernelSymbol::cosine(int(k));
      const fl::FieldVector zf = fl::z_field_fourier(kernel, alpha, measure);
      const fl::QuadField zq =
          fl::z_field_quadrature_with_error(kernel, alpha.to_double(), measure, cfg.nodes);
      all.push_back(zf);
      nlohmann::ordered_json e;
      e["kernel"] = kernel.label();
      e["fourier"] = {{"e1", zf.e1}, {"e2", zf.e2}, {"exact", zf.has_exact()}};
      e["quadrature"] = {{"e1", zq.field.e1}, {"e2", zq.field.e2}, {"error", zq.error}};
      e["route_deviation"] = std::hypot(zf.e1 - zq.field.e1, zf.e2 - zq.field.e2);
      if (!sine) {
        const auto par = fl::parallelism_det(int(k), alpha, measure);
        e["parallelism"] = {{"det", par.det},
                            {"residual", par.residual},
                            {"exact", par.exact}};
      }
      j["entries"].push_back(e);
    }
  }
  j["span_rank"] = fl::span_rank(all, 1e-10);
  write_file(fs::path(cfg.out) / "fields.json", j.dump(2) + "\n");
  std::cout << "field table written (span rank " << j["span_rank"] << ")\n";
  return 0;
}

int cmd_reversal(const RunConfig& cfg) {
  namespace de = ervl::densities;
  namespace fl = ervl::fields;
  namespace rv = ervl::reversal;
  const Rational alpha = Rational::parse(cfg.alpha);

  std::vector<fl::KernelSymbol> kernels;
  de::CircleMeasure profile;
  if (cfg.kernels == "trig") {
    for (unsigned k = 1; k <= cfg.M; ++k) {
      kernels.push_back(fl::KernelSymbol::cosine(int(k)));
      kernels.push_back(fl::KernelSymbol::sine(int(k)));
    }
    de::FourierDensity d;
    d.coeffs = de::coeff_sequence(alpha, de::Variant::signed_products, cfg.N);
    profile = de::measure_from_density(d, Rational(1));
  } else {
    kernels.push_back(fl::KernelSymbol::cosine(1));
    kernels.push_back(fl::KernelSymbol::sine(1));
    profile = de::riesz_measure(alpha);
  }

  nlohmann::ordered_json j;
  j["schema"] = "ervl/1";
  j["alpha"] = cfg.alpha;
  j["demo"] = cfg.kernels;
  j["reports"] = nlohmann::ordered_json::array();
  std::string csv = "gamma,ratio,lhs,lhs_error,poisson,energy_total,residual_ratio_max\n";

  for (const auto& gtext : split_csv(cfg.gammas)) {
    const double gamma = std::stod(gtext);
    const rv::ReversalReport rep =
        rv::reversal_ratio(alpha, gamma, kernels, profile, cfg.c0, cfg.nodes, cfg.atoms);
    j["reports"].push_back(nlohmann::ordered_json::parse(rv::reversal_report_json(rep)));
    csv += format_g17(gamma) + "," + format_g17(rep.ratio) + "," +
           format_g17(rep.lhs) + "," + format_g17(rep.lhs_error) + "," +
           format_g17(rep.poisson) + "," + format_g17(rep.energy_total) + "," +
           format_g17(rep.residual_ratio_max) + "\n";
    std::cout << "gamma " << gamma << ": ratio " << rep.ratio
              << (rep.ratio_below_c0 ? " (below C0)" : "") << "\n";
  }
  write_file(fs::path(cfg.out) / "reversal_report.json", j.dump(2) + "\n");
  write_file(fs::path(cfg.out) / "reversal_ratio.csv", csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and numerical verification of the energy-reversal counterexample"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.set_config("--config", "", "flat key=value configuration file");
  app.add_option("--alpha", cfg.alpha, "fractional order as a rational 'p/q'");
  app.add_option("--x", cfg.x_grid, "comma list of rational x values");
  app.add_option("--gamma", cfg.gammas, "comma list of separation factors");
  app.add_option("--n-max", cfg.n_max, "exact suite depth");
  app.add_option("--N", cfg.N, "series truncation order");
  app.add_option("--nodes", cfg.nodes, "quadrature nodes");
  app.add_option("--grid", cfg.grid, "evaluation grid size");
  app.add_option("--k-max", cfg.k_max, "largest harmonic in field tables");
  app.add_option("--M", cfg.M, "largest harmonic in the trig kernel vector");
  app.add_option("--atoms", cfg.atoms, "atom count of the segment measure");
  app.add_option("--c0", cfg.c0, "reversal constant to refute");
  app.add_option("--variant", cfg.variant, "coefficient variant: signed|absolute");
  app.add_option("--measure", cfg.measure, "field measure: riesz|signed|uniform");
  app.add_option("--kernels", cfg.kernels, "reversal kernel family: riesz|trig");
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--format", cfg.format, "certificate report format: json|csv");

  auto* sub_appendix =
      app.add_subcommand("verify-appendix", "run the exact identity certificate suites");
  auto* sub_density = app.add_subcommand("density", "coefficient tables and positivity");
  auto* sub_fields = app.add_subcommand("fields", "gradient field tables, both routes");
  auto* sub_reversal = app.add_subcommand("reversal", "energy reversal failure report");
  auto* sub_all = app.add_subcommand("all", "everything with the current options");
  for (auto* s : {sub_appendix, sub_density, sub_fields, sub_reversal, sub_all})
    s->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::string command;
  for (int i = 1; i < argc; ++i) command += std::string(i > 1 ? " " : "") + argv[i];

  try {
    fs::create_directories(cfg.out);
    write_run_meta(cfg, command);
    int rc = 0;
    if (sub_appendix->parsed() || sub_all->parsed()) rc |= cmd_verify_appendix(cfg);
    if (sub_density->parsed() || sub_all->parsed()) rc |= cmd_density(cfg);
    if (sub_fields->parsed() || sub_all->parsed()) rc |= cmd_fields(cfg);
    if (sub_reversal->parsed() || sub_all->parsed()) rc |= cmd_reversal(cfg);
    return rc;
  } catch (const ervl::pole_error& e) {
    std::cerr << "pole error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
