// include/svoa/qseries.hpp — dense truncated Laurent series on a 1/48 grid.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svoa/scalar.hpp"

namespace svoa {

// Thrown when a coefficient at or beyond the series' precision horizon is
// requested. Truncation is never silently treated as zero.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Default working precision in ticks (1 tick = q^(1/48)).
// SVOA_TERMS, when set, overrides the default number of whole q-orders.
struct PrecisionPolicy {
  static long default_ticks();
};

// A truncated Laurent series  sum_{t >= min_tick} c_t q^(t/48)  whose
// coefficients are known exactly for ticks in [min_tick, prec_tick) and
// unknown beyond. All exponents that occur in this problem domain live on
// the 1/48 grid: q^(1/2) is 24 ticks, q^(1/24) is 2 ticks, a central charge
// prefactor q^(-c/24) is -2c ticks.
//
// Representation invariants (enforced by normalize()):
//   * coeffs.front() != 0 unless the series is zero on its window;
//   * the zero series has empty coeffs and min_tick == prec_tick.
//
// Values are immutable in spirit: every operation returns a new series, and
// shared QSeries objects may be read concurrently from multiple threads.
class QSeries {
 public:
  static constexpr long kTickDen = 48;

  // Zero series with nothing known at or beyond prec_tick.
  explicit QSeries(long prec_tick = 0) : min_tick_(prec_tick), prec_tick_(prec_tick) {}

  // Series with given coefficients starting at min_tick; precision defaults
  // to the end of the coefficient window.
  QSeries(long min_tick, std::vector<Scalar> coeffs, std::optional<long> prec_tick = {});

  static QSeries monomial(const Scalar& c, long tick, long prec_tick);
  static QSeries one(long prec_tick) { return monomial(Scalar(1), 0, prec_tick); }

  long min_tick() const { return min_tick_; }
  long prec_tick() const { return prec_tick_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient at a tick. Below min_tick: exact zero. At or beyond
  // prec_tick: PrecisionError.
  const Scalar& at(long tick) const;

  // All ticks in [min_tick, prec_tick) with nonzero coefficient.
  std::vector<long> support() const;

  QSeries truncated(long prec_tick) const;          // lower the horizon
  QSeries shifted(long ticks) const;                // multiply by q^(ticks/48)
  QSeries scaled(const Scalar& s) const;

  QSeries operator-() const { return scaled(Scalar(-1)); }
  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b);

  // Multiplicative inverse. Requires a nonzero leading coefficient (always
  // invertible in Q(sqrt2)); the result is exact to prec_tick - 2*min_tick.
  QSeries inverse() const;

  // Integer power by repeated squaring; negative exponents via inverse().
  // pow(a, 0) is 1 carried at a's relative precision.
  QSeries pow(long e) const;

  // Multiply by the sparse factor (1 + c*q^(tick/48))^e for integer e.
  // O(n) per application; the workhorse behind all product formulas.
  QSeries times_binomial(const Scalar& c, long tick, long e) const;

  // Derivative with respect to x = q^(step/48): the term c*q^(t/48) = c*x^(t/step)
  // maps to c*(t/step)*x^(t/step - 1), i.e. lands on tick t - step with the
  // exact rational factor t/step. Precision drops by one step.
  QSeries derivative(long step) const;

  // Serialization: {"tick_den":48,"min_tick":..,"prec_tick":..,"coeffs":[[rat,irr],..]}
  // with lowest-terms decimal strings; round-trips bit-exactly.
  std::string to_json() const;
  static QSeries from_json(const std::string& text);

  std::string to_string(int max_terms = 12) const;  // human-readable preview

 private:
  void normalize();

  long min_tick_ = 0;
  long prec_tick_ = 0;
  std::vector<Scalar> coeffs_;  // coeffs_[i] is the coefficient at min_tick_ + i
};

// --- series re-expansion ----------------------------------------------------
//
// Both routes below re-express a series F in powers of another series phi
// with positive leading exponent. They are deliberately independent: rebase
// eliminates triangularly, lagrange_coefficient applies the Bürmann–Lagrange
// formula, and agreement of the two is one of the verification pillars.

// Triangular elimination: writes F = sum_{r=0..r_max} alpha_r phi^r + O(phi^(r_max+1))
// and returns (alpha_0, ..., alpha_r_max).
//
// Requires phi.min_tick > 0 and F's leading exponent to be a nonnegative
// multiple of phi's. At step r the residual's coefficient at tick r*s
// (s = phi.min_tick) is divided by u^r (u = phi's leading coefficient), the
// multiple alpha_r * phi^r is subtracted, and the residual's order rises.
// Insufficient precision surfaces as PrecisionError, never as wrong output.
std::vector<Scalar> rebase(const QSeries& F, const QSeries& phi, int r_max);

// Bürmann–Lagrange: the coefficient alpha_r (r >= 1) of phi^r in the
// expansion of F equals the coefficient of x^(r-1) in
//     (1/r) * dF/dx * (x / phi)^r,
// where x = q^(step/48) is the grid variable in which phi = u*x*(1 + O(x)).
Scalar lagrange_coefficient(const QSeries& F, const QSeries& phi, long r, long step);

}  // namespace svoa
