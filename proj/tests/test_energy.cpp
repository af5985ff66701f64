#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ervl/energy.hpp"

using namespace ervl::energy;

namespace {

constexpr double kPi = 3.14159265358979323846;

AtomicMeasure random_measure(std::mt19937& rng, const Cube& J, unsigned count) {
  std::uniform_real_distribution<double> coord(-0.45, 0.45);
  std::uniform_real_distribution<double> mass(0.1, 3.0);
  AtomicMeasure w;
  for (unsigned i = 0; i < count; ++i) {
    Point p(J.dim());
    for (unsigned d = 0; d < J.dim(); ++d) p[d] = J.center[d] + J.side * coord(rng);
    w.points.push_back(p);
    w.masses.push_back(mass(rng));
  }
  return w;
}

Mat random_rotation(std::mt19937& rng, unsigned n) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  Mat r = Mat::identity(n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i + 1; j < n; ++j)
      r = r * Mat::plane_rotation(n, i, j, angle(rng));
  return r;
}

}  // namespace

TEST_CASE("energy hand values") {
  const Cube unit{{0.5, 0.5}, 1.0};
  AtomicMeasure single{{{0.25, 0.5}}, {2.0}};
  CHECK(energy(unit, single) == 0.0);

  AtomicMeasure diag{{{0.0, 0.0}, {1.0, 1.0}}, {1.0, 1.0}};
  CHECK(energy(unit, diag) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(coordinate_energy(1, unit, diag) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(coordinate_energy(0, unit, diag) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  AtomicMeasure vertical{{{0.5, 0.1}, {0.5, 0.9}}, {1.0, 1.0}};
  CHECK(coordinate_energy(0, unit, vertical) == 0.0);
  CHECK(coordinate_energy(1, unit, vertical) > 0.0);
}

TEST_CASE("validation rejects bad inputs") {
  const Cube unit{{0.5, 0.5}, 1.0};
  AtomicMeasure outside{{{2.0, 0.5}}, {1.0}};
  CHECK_THROWS_AS(energy(unit, outside), std::invalid_argument);
  AtomicMeasure zero_mass{{{0.5, 0.5}}, {0.0}};
  CHECK_THROWS_AS(energy(unit, zero_mass), std::invalid_argument);
  AtomicMeasure empty;
  CHECK_THROWS_AS(energy(unit, empty), std::domain_error);
}

TEST_CASE("rotated partial energy captures the diagonal") {
  const Cube unit{{0.5, 0.5}, 1.0};
  AtomicMeasure diag{{{0.0, 0.0}, {1.0, 1.0}}, {1.0, 1.0}};
  CHECK(rotated_partial_energy(Mat::identity(2), 0, unit, diag) ==
        doctest::Approx(coordinate_energy(0, unit, diag)));
  const Mat r = Mat::rotation2(-kPi / 4.0);
  CHECK(rotated_partial_energy(r, 0, unit, diag) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rotated_partial_energy(r, 1, unit, diag) ==
        doctest::Approx(0.0).epsilon(1e-14));

  Mat not_rot(2);
  not_rot(0, 0) = 2.0;
  not_rot(1, 1) = 1.0;
  CHECK_THROWS_AS(rotated_partial_energy(not_rot, 0, unit, diag),
                  std::invalid_argument);
}

TEST_CASE("partial energies recombine to the full energy") {
  std::mt19937 rng(99);
  for (unsigned n : {2u, 3u}) {
    const Cube J{Point(n, 0.0), 2.0};
    for (int trial = 0; trial < 200; ++trial) {
      const AtomicMeasure w = random_measure(rng, J, 2 + trial % 6);
      const Mat r = random_rotation(rng, n);
      const double e = energy(J, w);
      double sum = 0.0;
      for (unsigned j = 0; j < n; ++j) {
        const double p = rotated_partial_energy(r, j, J, w);
        sum += p * p;
      }
      CHECK(std::abs(sum - e * e) <= 1e-12 * std::max(1.0, e * e));
    }
  }
}

TEST_CASE("scaling and mass invariance") {
  std::mt19937 rng(123);
  const Cube J{{0.0, 0.0}, 1.0};
  const AtomicMeasure w = random_measure(rng, J, 5);
  const double e = energy(J, w);

  const Cube bigger{{0.0, 0.0}, 3.0};
  CHECK(std::abs(energy(bigger, w) - e / 3.0) <= 1e-12);

  AtomicMeasure scaled = w;
  for (auto& m : scaled.masses) m *= 17.5;
  CHECK(std::abs(energy(J, scaled) - e) <= 1e-12);
}

TEST_CASE("least symmetric eigenvalue") {
  Mat d2(2);
  d2(0, 0) = 3.0;
  d2(1, 1) = -1.0;
  CHECK(least_eigenvalue_sym(d2) == doctest::Approx(-1.0));
  Mat m2(2);
  m2(0, 0) = 2.0;
  m2(0, 1) = m2(1, 0) = 1.0;
  CHECK(least_eigenvalue_sym(m2) == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-12));

  Mat m3(3);
  m3(0, 0) = 2.0;
  m3(1, 1) = 3.0;
  m3(2, 2) = 4.0;
  m3(0, 1) = m3(1, 0) = 1.0;
  // Characteristic roots of [[2,1,0],[1,3,0],[0,0,4]]: (5 +- sqrt(5))/2 and 4.
  CHECK(least_eigenvalue_sym(m3) ==
        doctest::Approx((5.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));

  Mat m4(4);
  for (unsigned i = 0; i < 4; ++i) m4(i, i) = double(i + 1);
  m4(0, 3) = m4(3, 0) = 0.5;
  // 2x2 block {1,4} with coupling 0.5 plus diagonal {2,3}.
  const double low = (5.0 - std::sqrt(9.0 + 1.0)) / 2.0;
  CHECK(least_eigenvalue_sym(m4) == doctest::Approx(low).epsilon(1e-10));
}

TEST_CASE("eigenvalue bound for rotation families") {
  const Cube unit{{0.5, 0.5}, 1.0};
  AtomicMeasure diag{{{0.0, 0.0}, {1.0, 1.0}}, {1.0, 1.0}};

  RotationSet orth{{Mat::identity(2), Mat::rotation2(kPi / 2.0)}};
  const auto b = partial_energy_bound(orth, unit, diag);
  CHECK(b.eps == doctest::Approx(1.0));
  // Orthogonal directions recombine exactly.
  CHECK(b.rhs == doctest::Approx(b.lhs).epsilon(1e-12));

  RotationSet degenerate{{Mat::identity(2), Mat::identity(2)}};
  const auto d = partial_energy_bound(degenerate, unit, diag);
  CHECK(d.eps == doctest::Approx(0.0));
  CHECK(std::isinf(d.rhs));
}

TEST_CASE("eigenvalue bound holds on randomized instances") {
  std::mt19937 rng(2024);
  for (unsigned n : {2u, 3u}) {
    const Cube J{Point(n, 0.0), 1.5};
    for (int trial = 0; trial < 500; ++trial) {
      RotationSet rset;
      for (unsigned l = 0; l < n; ++l) rset.rotations.push_back(random_rotation(rng, n));
      const AtomicMeasure w = random_measure(rng, J, 2 + trial % 5);
      const auto b = partial_energy_bound(rset, J, w);
      CHECK(b.lhs <= b.rhs + 1e-12);
    }
  }
}
