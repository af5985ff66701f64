#pragma once

#include <vector>

namespace ervl::energy {

/*
 * Energies of atomic measures on cubes.
 *
 * E(J, w)^2 = (1/W^2) sum_{x,z} m_x m_z |x - z|^2 / side^2,  W = total mass,
 *
 * with coordinate energies restricting |x - z|^2 to one component and
 * partial energies measuring the component of x - z along a rotated axis.
 * The implementation cross-checks the double sum against the second-moment
 * form 2/W sum m_x |x - mean|^2 / side^2.
 */

using Point = std::vector<double>;

struct Cube {
  Point center;
  double side = 1.0;

  unsigned dim() const { return unsigned(center.size()); }
  bool contains(const Point& p, double slack = 1e-12) const;
};

struct AtomicMeasure {
  std::vector<Point> points;
  std::vector<double> masses;

  double total_mass() const;
};

// Small dense square matrix; enough for rotations and Gram matrices.
struct Mat {
  unsigned n = 0;
  std::vector<double> a;

  Mat() = default;
  explicit Mat(unsigned size) : n(size), a(std::size_t(size) * size, 0.0) {}
  double& operator()(unsigned i, unsigned j) { return a[i * n + j]; }
  double operator()(unsigned i, unsigned j) const { return a[i * n + j]; }

  static Mat identity(unsigned size);
  static Mat rotation2(double angle);
  // Rotation in the (i, j) coordinate plane of an n-dimensional space.
  static Mat plane_rotation(unsigned size, unsigned i, unsigned j, double angle);
  Mat transpose() const;
  Mat operator*(const Mat& o) const;
};

bool is_rotation(const Mat& r, double tol = 1e-12);

// Least eigenvalue of a symmetric matrix: closed form for n = 2, the
// trigonometric cubic for n = 3, cyclic Jacobi sweeps with a Gershgorin
// sanity bound otherwise.
double least_eigenvalue_sym(const Mat& m);

double energy(const Cube& J, const AtomicMeasure& w);
double coordinate_energy(unsigned axis, const Cube& J, const AtomicMeasure& w);

// Energy of the `axis` component of the rotated differences R(x - z);
// rejects non-orthogonal R.
double rotated_partial_energy(const Mat& rotation, unsigned axis, const Cube& J,
                              const AtomicMeasure& w);

struct RotationSet {
  std::vector<Mat> rotations;

  // Row l is the direction measured by the l-th first-axis partial energy,
  // i.e. the first row of R_l.
  Mat direction_matrix() const;
};

struct PartialEnergyBound {
  double lhs = 0.0;  // E(J, w)^2
  double rhs = 0.0;  // (1/eps) sum_l E_{R_l}^1(J, w)^2
  double eps = 0.0;  // least eigenvalue of M^T M
};

// Asserts lhs <= rhs + 1e-12; a singular direction matrix is reported with
// eps ~= 0 and an infinite rhs.
PartialEnergyBound partial_energy_bound(const RotationSet& rset, const Cube& J,
                                        const AtomicMeasure& w);

}  // namespace ervl::energy
