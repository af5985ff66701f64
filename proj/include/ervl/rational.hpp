#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ervl {

// Thrown when a finite-product formula is evaluated at a point where one of
// its denominator factors vanishes.
struct pole_error : std::domain_error {
  using std::domain_error::domain_error;
};

/*
 * Arbitrary-precision rational scalar.
 *
 * Invariants: the value is always in lowest terms with a positive
 * denominator, and every arithmetic operation is exact. Division by zero
 * throws std::domain_error instead of producing a sentinel value.
 */
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}       // NOLINT: implicit by design
  Rational(int n) : v_(long(n)) {}  // NOLINT
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  // Accepts "p", "p/q" and a leading sign; throws std::invalid_argument on
  // malformed input and std::domain_error on a zero denominator.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return Rational(mpq_class(mpz_class(std::string(text)), 1));
      }
      mpz_class num{std::string(text.substr(0, slash))};
      mpz_class den{std::string(text.substr(slash + 1))};
      if (den == 0) throw std::domain_error("Rational: zero denominator");
      mpq_class q(num, den);
      q.canonicalize();
      return Rational(std::move(q));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    }
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  double to_double() const { return v_.get_d(); }
  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
  mpq_class v_;
};

inline Rational pow_int(const Rational& base, unsigned exp) {
  Rational out(1);
  Rational b = base;
  while (exp != 0) {
    if (exp & 1u) out *= b;
    b *= b;
    exp >>= 1;
  }
  return out;
}

}  // namespace ervl
