#include "svoa/scalar.hpp"

namespace svoa {

Scalar Scalar::sqrt2_pow(long e) {
  // sqrt2^(2j) = 2^j, sqrt2^(2j+1) = 2^j * sqrt2.
  long j = (e >= 0) ? e / 2 : -((-e + 1) / 2);
  bool odd = (e % 2) != 0;
  mpq_class two_j;
  if (j >= 0) {
    mpz_class num = 1;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(j));
    two_j = mpq_class(num);
  } else {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-j));
    two_j = mpq_class(1) / mpq_class(den);
  }
  if (!odd) return Scalar(two_j);
  // e odd and negative: e = 2j+1 with j chosen above (e.g. e=-1 -> j=-1).
  return Scalar(mpq_class(0), two_j);
}

int Scalar::sign() const {
  int sr = sgn(rat_);
  int si = sgn(irr_);
  if (si == 0) return sr;
  if (sr == 0) return si;
  if (sr == si) return sr;
  // Mixed signs: compare |rat| with |irr|*sqrt(2) via squares (exact).
  mpq_class r2 = rat_ * rat_;
  mpq_class i2 = 2 * irr_ * irr_;
  int c = cmp(r2, i2);
  if (c == 0) return 0;  // impossible for nonzero components (√2 irrational)
  return (c > 0) ? sr : si;
}

bool Scalar::is_integer() const {
  if (irr_ != 0)
    throw std::domain_error("Scalar::is_integer: value has a sqrt(2) component");
  return rat_.get_den() == 1;
}

bool Scalar::is_nonnegative() const {
  if (irr_ != 0)
    throw std::domain_error("Scalar::is_nonnegative: value has a sqrt(2) component");
  return rat_ >= 0;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("Scalar::inverse: division by zero");
  // 1/(a+b√2) = (a−b√2)/(a²−2b²)
  mpq_class norm = rat_ * rat_ - 2 * irr_ * irr_;
  return Scalar(rat_ / norm, -irr_ / norm);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  rat_ += o.rat_;
  irr_ += o.irr_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  rat_ -= o.rat_;
  irr_ -= o.irr_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  mpq_class r = rat_ * o.rat_ + 2 * irr_ * o.irr_;
  mpq_class i = rat_ * o.irr_ + irr_ * o.rat_;
  rat_ = std::move(r);
  irr_ = std::move(i);
  return *this;
}

std::string Scalar::to_string() const {
  if (irr_ == 0) return rat_.get_str();
  std::string tail = irr_.get_str() + "*sqrt2";
  if (rat_ == 0) return tail;
  return rat_.get_str() + (irr_ > 0 ? "+" : "") + tail;
}

}  // namespace svoa
