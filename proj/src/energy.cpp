#include "ervl/energy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ervl::energy {

namespace {

void validate(const Cube& J, const AtomicMeasure& w) {
  if (J.side <= 0) throw std::invalid_argument("cube side must be positive");
  if (w.points.size() != w.masses.size())
    throw std::invalid_argument("points/masses size mismatch");
  if (w.points.empty()) throw std::domain_error("energy of an empty measure");
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    if (w.masses[i] <= 0) throw std::invalid_argument("masses must be positive");
    if (w.points[i].size() != J.dim())
      throw std::invalid_argument("point dimension mismatch");
    if (!J.contains(w.points[i]))
      throw std::invalid_argument("atom outside the cube");
  }
}

// Shared double-sum kernel: mean of proj(x - z)^2 over w x w, normalized by
// side^2, where proj is any linear functional given by coefficients.
double directional_energy_sq(const Cube& J, const AtomicMeasure& w,
                             const std::vector<double>& direction) {
  const std::size_t count = w.points.size();
  double total = 0.0, sum = 0.0;
  for (double m : w.masses) total += m;
  if (total <= 0) throw std::domain_error("zero total mass");
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < direction.size(); ++c)
        d += direction[c] * (w.points[i][c] - w.points[j][c]);
      sum += w.masses[i] * w.masses[j] * d * d;
    }
  }
  return sum / (total * total * J.side * J.side);
}

}  // namespace

bool Cube::contains(const Point& p, double slack) const {
  if (p.size() != center.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(p[i] - center[i]) > side / 2 + slack) return false;
  return true;
}

double AtomicMeasure::total_mass() const {
  double t = 0.0;
  for (double m : masses) t += m;
  return t;
}

Mat Mat::identity(unsigned size) {
  Mat m(size);
  for (unsigned i = 0; i < size; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::rotation2(double angle) { return plane_rotation(2, 0, 1, angle); }

Mat Mat::plane_rotation(unsigned size, unsigned i, unsigned j, double angle) {
  if (i >= size || j >= size || i == j)
    throw std::invalid_argument("plane_rotation: bad axes");
  Mat m = identity(size);
  m(i, i) = std::cos(angle);
  m(j, j) = std::cos(angle);
  m(i, j) = -std::sin(angle);
  m(j, i) = std::sin(angle);
  return m;
}

Mat Mat::transpose() const {
  Mat t(n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::operator*(const Mat& o) const {
  if (n != o.n) throw std::invalid_argument("matrix size mismatch");
  Mat r(n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      const double v = (*this)(i, k);
      for (unsigned j = 0; j < n; ++j) r(i, j) += v * o(k, j);
    }
  return r;
}

bool is_rotation(const Mat& r, double tol) {
  const Mat g = r.transpose() * r;
  for (unsigned i = 0; i < r.n; ++i)
    for (unsigned j = 0; j < r.n; ++j)
      if (std::abs(g(i, j) - (i == j ? 1.0 : 0.0)) > tol) return false;
  return true;
}

double least_eigenvalue_sym(const Mat& m) {
  const unsigned n = m.n;
  if (n == 0) throw std::invalid_argument("empty matrix");
  if (n == 1) return m(0, 0);
  if (n == 2) {
    const double tr = m(0, 0) + m(1, 1);
    const double disc =
        std::sqrt(std::max(0.0, (m(0, 0) - m(1, 1)) * (m(0, 0) - m(1, 1)) +
                                    4.0 * m(0, 1) * m(1, 0)));
    return 0.5 * (tr - disc);
  }
  if (n == 3) {
    // Trigonometric solution of the characteristic cubic of a symmetric
    // 3x3 matrix.
    const double q = (m(0, 0) + m(1, 1) + m(2, 2)) / 3.0;
    Mat b(3);
    double p2 = 0.0;
    for (unsigned i = 0; i < 3; ++i)
      for (unsigned j = 0; j < 3; ++j) {
        b(i, j) = m(i, j) - (i == j ? q : 0.0);
        p2 += b(i, j) * b(i, j);
      }
    const double p = std::sqrt(p2 / 6.0);
    if (p < 1e-300) return q;
    double det = 0.0;
    det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
          b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
          b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    double r = det / (2.0 * p * p * p);
    r = std::min(1.0, std::max(-1.0, r));
    const double phi = std::acos(r) / 3.0;
    // Smallest eigenvalue corresponds to phi + 2*pi/3.
    return q + 2.0 * p * std::cos(phi + 2.0 * 3.14159265358979323846 / 3.0);
  }

  // Cyclic Jacobi sweeps.
  Mat a = m;
  for (unsigned sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (unsigned p = 0; p < n; ++p)
      for (unsigned q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-18) continue;
        const double theta = 0.5 * std::atan2(2.0 * a(p, q), a(q, q) - a(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (unsigned k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (unsigned k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  double least = a(0, 0);
  for (unsigned i = 1; i < n; ++i) least = std::min(least, a(i, i));

  // Gershgorin lower bound as a sanity check on the iteration.
  double gersh = std::numeric_limits<double>::infinity();
  for (unsigned i = 0; i < n; ++i) {
    double radius = 0.0;
    for (unsigned j = 0; j < n; ++j)
      if (j != i) radius += std::abs(m(i, j));
    gersh = std::min(gersh, m(i, i) - radius);
  }
  if (least < gersh - 1e-9) throw std::logic_error("least_eigenvalue_sym: diverged");
  return least;
}

double energy(const Cube& J, const AtomicMeasure& w) {
  validate(J, w);
  const unsigned n = J.dim();
  double sq = 0.0;
  for (unsigned c = 0; c < n; ++c) {
    std::vector<double> dir(n, 0.0);
    dir[c] = 1.0;
    sq += directional_energy_sq(J, w, dir);
  }

  // Second-moment identity: E^2 = 2/W sum m |x - mean|^2 / side^2.
  const double total = w.total_mass();
  Point mean(n, 0.0);
  for (std::size_t i = 0; i < w.points.size(); ++i)
    for (unsigned c = 0; c < n; ++c) mean[c] += w.masses[i] * w.points[i][c] / total;
  double moment = 0.0;
  for (std::size_t i = 0; i < w.points.size(); ++i)
    for (unsigned c = 0; c < n; ++c) {
      const double d = w.points[i][c] - mean[c];
      moment += w.masses[i] * d * d;
    }
  const double sq2 = 2.0 * moment / (total * J.side * J.side);
  if (std::abs(sq - sq2) > 1e-12 * std::max(1.0, sq))
    throw std::logic_error("energy: second-moment identity violated");

  return std::sqrt(sq);
}

double coordinate_energy(unsigned axis, const Cube& J, const AtomicMeasure& w) {
  validate(J, w);
  if (axis >= J.dim()) throw std::invalid_argument("coordinate_energy: bad axis");
  std::vector<double> dir(J.dim(), 0.0);
  dir[axis] = 1.0;
  return std::sqrt(directional_energy_sq(J, w, dir));
}

double rotated_partial_energy(const Mat& rotation, unsigned axis, const Cube& J,
                              const AtomicMeasure& w) {
  validate(J, w);
  if (rotation.n != J.dim() || axis >= J.dim())
    throw std::invalid_argument("rotated_partial_energy: dimension mismatch");
  if (!is_rotation(rotation))
    throw std::invalid_argument("rotated_partial_energy: matrix is not a rotation");
  // (R(x-z))_axis = row `axis` of R applied to the difference.
  std::vector<double> dir(J.dim());
  for (unsigned j = 0; j < J.dim(); ++j) dir[j] = rotation(axis, j);
  return std::sqrt(directional_energy_sq(J, w, dir));
}

Mat RotationSet::direction_matrix() const {
  if (rotations.empty()) throw std::invalid_argument("empty rotation set");
  const unsigned n = rotations.front().n;
  if (rotations.size() != n)
    throw std::invalid_argument("need exactly n rotations in dimension n");
  Mat m(n);
  for (unsigned l = 0; l < n; ++l) {
    if (rotations[l].n != n) throw std::invalid_argument("rotation size mismatch");
    for (unsigned j = 0; j < n; ++j) m(l, j) = rotations[l](0, j);
  }
  return m;
}

PartialEnergyBound partial_energy_bound(const RotationSet& rset, const Cube& J,
                                        const AtomicMeasure& w) {
  for (const auto& r : rset.rotations)
    if (!is_rotation(r))
      throw std::invalid_argument("partial_energy_bound: non-rotation in set");
  const Mat m = rset.direction_matrix();
  const double eps = std::max(0.0, least_eigenvalue_sym(m.transpose() * m));

  PartialEnergyBound out;
  out.eps = eps;
  const double e = energy(J, w);
  out.lhs = e * e;
  double sum = 0.0;
  for (const auto& r : rset.rotations) {
    const double p = rotated_partial_energy(r, 0, J, w);
    sum += p * p;
  }
  out.rhs = eps > 0 ? sum / eps : std::numeric_limits<double>::infinity();
  if (out.lhs > out.rhs + 1e-12)
    throw std::logic_error("partial_energy_bound: eigenvalue bound violated");
  return out;
}

}  // namespace ervl::energy
