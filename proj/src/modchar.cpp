#include "svoa/modchar.hpp"

#include <stdexcept>

namespace svoa {

namespace {

long ticks_of_minus_c_over_24(const mpq_class& c) {
  // q^(-c/24) sits at tick -48c/24 = -2c; require c in (1/2)Z.
  mpq_class t = -2 * c;
  if (t.get_den() != 1)
    throw std::invalid_argument("central charge must be half-integral");
  mpz_class num = t.get_num();
  if (!num.fits_slong_p())
    throw std::invalid_argument("central charge out of range");
  return num.get_si();
}

// prod over n >= n0 of (1 + sign*q^(step_a*n + off))^e while exponents stay
// below the horizon.
QSeries geometric_product(long prec_tick, long n0, long stride, long offset, int sign, long e) {
  QSeries r = QSeries::one(prec_tick);
  for (long n = n0;; ++n) {
    long tick = stride * n + offset;
    if (tick >= prec_tick) break;
    r = r.times_binomial(Scalar(sign), tick, e);
  }
  return r;
}

}  // namespace

QSeries chi_half(long prec_tick) {
  // factors (1 + q^(n+1/2)) at ticks 48n + 24, then the q^(-1/48) shift
  return geometric_product(prec_tick + 1, 0, 48, 24, +1, +1).shifted(-1);
}

QSeries chi_tilde_half(long prec_tick) {
  QSeries p = geometric_product(prec_tick - 2, 1, 48, 0, +1, +1).shifted(2);
  return p.scaled(Scalar::sqrt2());
}

QSeries vacuum_char(const mpq_class& c, long prec_tick) {
  long shift = ticks_of_minus_c_over_24(c);
  return geometric_product(prec_tick - shift, 2, 48, 0, -1, -1).shifted(shift);
}

QSeries n1_vacuum_char(const mpq_class& c, long prec_tick) {
  long shift = ticks_of_minus_c_over_24(c);
  QSeries p = geometric_product(prec_tick - shift, 2, 48, 0, -1, -1);
  p = p * geometric_product(prec_tick - shift, 2, 48, -24, +1, +1);  // (1+q^(n-1/2))
  return p.shifted(shift);
}

QSeries verma_char(const mpq_class& c, const mpq_class& h, Sector sector, long prec_tick) {
  mpq_class lead_q = 48 * h - 2 * c;
  if (lead_q.get_den() != 1) throw std::invalid_argument("verma_char: h - c/24 off the tick grid");
  long shift = lead_q.get_num().get_si();
  QSeries p = geometric_product(prec_tick - shift, 1, 48, 0, -1, -1);
  if (sector == Sector::NS)
    p = p * geometric_product(prec_tick - shift, 1, 48, -24, +1, +1);
  return p.shifted(shift);
}

namespace {
// sum of k-th powers of divisors
mpz_class sigma_pow(long n, int k) {
  mpz_class s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_class dk, ek;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    s += dk;
    long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(ek.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
      s += ek;
    }
  }
  return s;
}

QSeries eisenstein(long prec_tick, int k, long factor) {
  long n_terms = (prec_tick + 47) / 48;
  std::vector<Scalar> coeffs(static_cast<size_t>(std::max<long>(prec_tick, 1)));
  coeffs[0] = Scalar(1);
  for (long n = 1; n < n_terms; ++n)
    coeffs[static_cast<size_t>(48 * n)] = Scalar(mpq_class(factor * sigma_pow(n, k)));
  return QSeries(0, std::move(coeffs), prec_tick);
}
}  // namespace

QSeries eisenstein4(long prec_tick) { return eisenstein(prec_tick, 3, 240); }
QSeries eisenstein6(long prec_tick) { return eisenstein(prec_tick, 5, -504); }

QSeries j_invariant(long prec_tick) {
  // The discriminant E4^3 - E6^2 = 1728 q + O(q^2) costs two q-orders of
  // precision in the division, so build the inputs two orders wider.
  long wide = prec_tick + 96;
  QSeries e4 = eisenstein4(wide);
  QSeries e6 = eisenstein6(wide);
  QSeries e4cubed = e4.pow(3);
  QSeries delta = e4cubed - e6.pow(2);
  return (e4cubed * delta.inverse()).scaled(Scalar(1728)).truncated(prec_tick);
}

QSeries j_cap(long prec_tick) {
  return j_invariant(prec_tick) - QSeries::monomial(Scalar(744), 0, prec_tick);
}

QSeries u_eta_quotient(long prec_tick) {
  return geometric_product(prec_tick + 48, 1, 96, -48, -1, 24).shifted(-48).truncated(prec_tick);
}

QSeries mckay_thompson(const std::string& cls, long prec_tick) {
  if (cls == "1A") return j_cap(prec_tick);
  if (cls == "2B") {
    return u_eta_quotient(prec_tick) + QSeries::monomial(Scalar(24), 0, prec_tick);
  }
  if (cls == "2A") {
    // u + 2^12 u^(-1) + 24
    QSeries u = u_eta_quotient(prec_tick + 96);
    QSeries r = u + u.inverse().scaled(Scalar(mpq_class(4096)));
    return (r + QSeries::monomial(Scalar(24), 0, r.prec_tick())).truncated(prec_tick);
  }
  throw std::invalid_argument("mckay_thompson: unknown class " + cls);
}

}  // namespace svoa
