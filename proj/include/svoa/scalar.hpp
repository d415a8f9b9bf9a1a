// include/svoa/scalar.hpp — exact arithmetic in the field Q(sqrt(2)).
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace svoa {

// An element rat + irr*sqrt(2) with exact rational components.
//
// Q(sqrt(2)) is the smallest field containing every coefficient that occurs
// in the character and shadow series handled here: physical characters are
// plain-rational, while odd-sector basis functions carry a single factor of
// sqrt(2) per power. Multiplication uses (a+b√2)(c+d√2) = (ac+2bd)+(ad+bc)√2
// and inversion divides by the field norm a²−2b², which vanishes only at 0
// because √2 is irrational.
class Scalar {
 public:
  Scalar() : rat_(0), irr_(0) {}
  Scalar(long v) : rat_(v), irr_(0) {}          // NOLINT: implicit by design
  Scalar(const mpq_class& v) : rat_(v), irr_(0) {}  // NOLINT
  Scalar(mpq_class rat, mpq_class irr) : rat_(std::move(rat)), irr_(std::move(irr)) {}

  static Scalar sqrt2() { return Scalar(mpq_class(0), mpq_class(1)); }

  // sqrt(2)^e for any integer e (negative exponents via 1/sqrt2 = sqrt2/2).
  static Scalar sqrt2_pow(long e);

  const mpq_class& rat() const { return rat_; }
  const mpq_class& irr() const { return irr_; }

  bool is_zero() const { return rat_ == 0 && irr_ == 0; }
  bool is_rational() const { return irr_ == 0; }

  // Sign of the real number rat + irr*sqrt(2); total on all of Q(sqrt(2)).
  int sign() const;

  // Dimension-count predicates. Only meaningful for plain-rational values;
  // calling them on a value with a sqrt(2) component is a logic error.
  bool is_integer() const;
  bool is_nonnegative() const;

  Scalar inverse() const;  // throws std::domain_error on zero

  Scalar operator-() const { return Scalar(-rat_, -irr_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.rat_ == b.rat_ && a.irr_ == b.irr_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // "num/den" (or "num" for integers) for the rational part, with a
  // "+num/den*sqrt2" tail when the sqrt(2) component is nonzero.
  std::string to_string() const;

 private:
  mpq_class rat_, irr_;
};

}  // namespace svoa
