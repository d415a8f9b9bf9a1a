#include "svoa/qseries.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "svoa/qseries_mul.hpp"

namespace svoa {

long PrecisionPolicy::default_ticks() {
  if (const char* env = std::getenv("SVOA_TERMS")) {
    char* end = nullptr;
    long terms = std::strtol(env, &end, 10);
    if (end && *end == '\0' && terms > 0) return terms * QSeries::kTickDen;
  }
  return 8 * QSeries::kTickDen;
}

QSeries::QSeries(long min_tick, std::vector<Scalar> coeffs, std::optional<long> prec_tick)
    : min_tick_(min_tick),
      prec_tick_(prec_tick.value_or(min_tick + static_cast<long>(coeffs.size()))),
      coeffs_(std::move(coeffs)) {
  if (prec_tick_ < min_tick_ + static_cast<long>(coeffs_.size()))
    throw std::invalid_argument("QSeries: precision horizon inside coefficient window");
  coeffs_.resize(static_cast<size_t>(prec_tick_ - min_tick_));
  normalize();
}

QSeries QSeries::monomial(const Scalar& c, long tick, long prec_tick) {
  if (tick >= prec_tick)
    throw std::invalid_argument("QSeries::monomial: tick at or beyond precision");
  std::vector<Scalar> v(static_cast<size_t>(prec_tick - tick));
  v[0] = c;
  return QSeries(tick, std::move(v), prec_tick);
}

void QSeries::normalize() {
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    min_tick_ = prec_tick_;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    min_tick_ += static_cast<long>(lead);
  }
}

const Scalar& QSeries::at(long tick) const {
  static const Scalar zero;
  if (tick >= prec_tick_)
    throw PrecisionError("QSeries::at: tick " + std::to_string(tick) +
                         " is at or beyond precision horizon " + std::to_string(prec_tick_));
  if (tick < min_tick_) return zero;
  return coeffs_[static_cast<size_t>(tick - min_tick_)];
}

std::vector<long> QSeries::support() const {
  std::vector<long> s;
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) s.push_back(min_tick_ + static_cast<long>(i));
  return s;
}

QSeries QSeries::truncated(long prec_tick) const {
  if (prec_tick > prec_tick_)
    throw PrecisionError("QSeries::truncated: cannot raise precision");
  QSeries r;
  r.prec_tick_ = prec_tick;
  if (prec_tick > min_tick_)
    r.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + (prec_tick - min_tick_));
  r.min_tick_ = prec_tick - static_cast<long>(r.coeffs_.size());
  r.normalize();
  return r;
}

QSeries QSeries::shifted(long ticks) const {
  QSeries r = *this;
  r.min_tick_ += ticks;
  r.prec_tick_ += ticks;
  return r;
}

QSeries QSeries::scaled(const Scalar& s) const {
  if (s.is_zero()) return QSeries(prec_tick_);
  QSeries r = *this;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  long prec = std::min(a.prec_tick_, b.prec_tick_);
  long lo = std::min(std::min(a.min_tick_, b.min_tick_), prec);
  QSeries r;
  r.min_tick_ = lo;
  r.prec_tick_ = prec;
  r.coeffs_.assign(static_cast<size_t>(prec - lo), Scalar());
  for (long t = std::max(a.min_tick_, lo); t < std::min(a.prec_tick_, prec); ++t)
    r.coeffs_[static_cast<size_t>(t - lo)] += a.coeffs_[static_cast<size_t>(t - a.min_tick_)];
  for (long t = std::max(b.min_tick_, lo); t < std::min(b.prec_tick_, prec); ++t)
    r.coeffs_[static_cast<size_t>(t - lo)] += b.coeffs_[static_cast<size_t>(t - b.min_tick_)];
  r.normalize();
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + b.scaled(Scalar(-1)); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  // Truncated-product rule: each factor's horizon is offset by the other's
  // leading exponent, and the tighter bound wins.
  long min_tick = a.min_tick_ + b.min_tick_;
  long prec = std::min(a.prec_tick_ + b.min_tick_, b.prec_tick_ + a.min_tick_);
  if (a.is_zero() || b.is_zero()) return QSeries(prec);
  size_t n_out = static_cast<size_t>(prec - min_tick);
  // Hand large jobs to the parallel kernel; keep small ones serial.
  size_t work = n_out * std::max<size_t>(a.coeffs_.size(), 1);
  auto coeffs = (work >= size_t{1} << 18)
                    ? kernel::cauchy_parallel(a.coeffs_, b.coeffs_, n_out)
                    : kernel::cauchy_serial(a.coeffs_, b.coeffs_, n_out);
  return QSeries(min_tick, std::move(coeffs), prec);
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.min_tick_ == b.min_tick_ && a.prec_tick_ == b.prec_tick_ && a.coeffs_ == b.coeffs_;
}

QSeries QSeries::inverse() const {
  if (is_zero()) throw std::domain_error("QSeries::inverse: zero series");
  // With a = u q^(m/48) (1 + x), the reciprocal coefficients follow the
  // standard recurrence b_0 = 1/u, b_i = -(sum_{j>=1} a_j b_{i-j}) / u.
  long n = prec_tick_ - min_tick_;
  const Scalar u_inv = coeffs_[0].inverse();
  std::vector<Scalar> b(static_cast<size_t>(n));
  b[0] = u_inv;
  for (long i = 1; i < n; ++i) {
    Scalar acc;
    for (long j = 1; j <= i; ++j) {
      if (!coeffs_[static_cast<size_t>(j)].is_zero() && !b[static_cast<size_t>(i - j)].is_zero())
        acc += coeffs_[static_cast<size_t>(j)] * b[static_cast<size_t>(i - j)];
    }
    b[static_cast<size_t>(i)] = -acc * u_inv;
  }
  return QSeries(-min_tick_, std::move(b), prec_tick_ - 2 * min_tick_);
}

QSeries QSeries::pow(long e) const {
  if (e == 0) {
    if (is_zero()) throw std::domain_error("QSeries::pow: 0^0");
    return QSeries::one(prec_tick_ - min_tick_);
  }
  if (e < 0) return inverse().pow(-e);
  if (is_zero()) return *this;
  QSeries base = *this;
  QSeries acc = QSeries::one(prec_tick_ - min_tick_);
  bool acc_is_one = true;
  long n = e;
  while (n > 0) {
    if (n & 1) {
      acc = acc_is_one ? base : acc * base;
      acc_is_one = false;
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

QSeries QSeries::times_binomial(const Scalar& c, long tick, long e) const {
  if (tick <= 0) throw std::invalid_argument("times_binomial: factor exponent must be positive");
  if (is_zero() || e == 0) return *this;
  QSeries r = *this;
  long n = r.prec_tick_ - r.min_tick_;
  if (e > 0) {
    // multiply by (1 + c q^tick) e times: a_t += c * a_(t-tick), descending
    for (long rep = 0; rep < e; ++rep)
      for (long i = n - 1; i >= tick; --i) {
        const Scalar& lower = r.coeffs_[static_cast<size_t>(i - tick)];
        if (!lower.is_zero()) r.coeffs_[static_cast<size_t>(i)] += c * lower;
      }
  } else {
    // divide by (1 + c q^tick): b_t = a_t - c * b_(t-tick), ascending
    for (long rep = 0; rep < -e; ++rep)
      for (long i = tick; i < n; ++i) {
        const Scalar& lower = r.coeffs_[static_cast<size_t>(i - tick)];
        if (!lower.is_zero()) r.coeffs_[static_cast<size_t>(i)] -= c * lower;
      }
  }
  r.normalize();
  return r;
}

QSeries QSeries::derivative(long step) const {
  if (step <= 0) throw std::invalid_argument("derivative: step must be positive");
  QSeries r;
  r.min_tick_ = min_tick_ - step;
  r.prec_tick_ = prec_tick_ - step;
  r.coeffs_.resize(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    long t = min_tick_ + static_cast<long>(i);
    if (coeffs_[i].is_zero() || t == 0) continue;
    mpq_class factor{mpz_class(t), mpz_class(step)};
    factor.canonicalize();
    r.coeffs_[i] = coeffs_[i] * Scalar(factor);
  }
  r.normalize();
  return r;
}

namespace {
nlohmann::ordered_json scalar_to_json(const Scalar& s) {
  return nlohmann::ordered_json::array({s.rat().get_str(), s.irr().get_str()});
}
Scalar scalar_from_json(const nlohmann::json& j) {
  mpq_class rat(j.at(0).get<std::string>());
  mpq_class irr(j.at(1).get<std::string>());
  rat.canonicalize();
  irr.canonicalize();
  return Scalar(std::move(rat), std::move(irr));
}
}  // namespace

std::string QSeries::to_json() const {
  nlohmann::ordered_json j;
  j["tick_den"] = kTickDen;
  j["min_tick"] = min_tick_;
  j["prec_tick"] = prec_tick_;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : coeffs_) arr.push_back(scalar_to_json(c));
  j["coeffs"] = std::move(arr);
  return j.dump();
}

QSeries QSeries::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  if (j.at("tick_den").get<long>() != kTickDen)
    throw std::invalid_argument("QSeries::from_json: unsupported tick_den");
  long min_tick = j.at("min_tick").get<long>();
  long prec_tick = j.at("prec_tick").get<long>();
  std::vector<Scalar> coeffs;
  for (const auto& e : j.at("coeffs")) coeffs.push_back(scalar_from_json(e));
  return QSeries(min_tick, std::move(coeffs), prec_tick);
}

std::string QSeries::to_string(int max_terms) const {
  if (is_zero()) return "0 + O(q^" + std::to_string(prec_tick_) + "/48)";
  std::ostringstream out;
  int shown = 0;
  for (size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
    if (coeffs_[i].is_zero()) continue;
    long t = min_tick_ + static_cast<long>(i);
    if (shown > 0) out << " + ";
    out << coeffs_[i].to_string();
    if (t != 0) {
      out << "*q^(" << t << "/48)";
    }
    ++shown;
  }
  out << " + O(q^(" << prec_tick_ << "/48))";
  return out.str();
}

std::vector<Scalar> rebase(const QSeries& F, const QSeries& phi, int r_max) {
  if (phi.is_zero() || phi.min_tick() <= 0)
    throw std::invalid_argument("rebase: phi must have positive leading exponent");
  const long s = phi.min_tick();
  if (!F.is_zero()) {
    if (F.min_tick() < 0 || F.min_tick() % s != 0)
      throw std::invalid_argument(
          "rebase: F's leading exponent must be a nonnegative multiple of phi's");
  }
  const Scalar u = phi.at(s);
  std::vector<Scalar> alpha;
  alpha.reserve(static_cast<size_t>(r_max) + 1);
  QSeries residual = F;
  QSeries phi_pow = QSeries::one(phi.prec_tick() - phi.min_tick());  // phi^0
  Scalar u_pow(1);
  for (int r = 0; r <= r_max; ++r) {
    if (r > 0) {
      phi_pow = phi_pow * phi;
      u_pow *= u;
    }
    // Residual starts at order >= r*s by construction; its coefficient there
    // is alpha_r * u^r.
    Scalar a_r = residual.at(static_cast<long>(r) * s) / u_pow;
    alpha.push_back(a_r);
    if (!a_r.is_zero()) residual = residual - phi_pow.scaled(a_r);
  }
  return alpha;
}

Scalar lagrange_coefficient(const QSeries& F, const QSeries& phi, long r, long step) {
  if (r < 1) throw std::invalid_argument("lagrange_coefficient: r must be >= 1");
  if (phi.is_zero() || phi.min_tick() != step)
    throw std::invalid_argument("lagrange_coefficient: phi must be u*x*(1+O(x)) in the step grid");
  QSeries dF = F.derivative(step);
  // (x/phi)^r: phi/x has leading exponent 0, so inversion costs no precision.
  QSeries x_over_phi = phi.shifted(-step).inverse();
  QSeries g = dF * x_over_phi.pow(r);
  return g.at((r - 1) * step) / Scalar(mpq_class(static_cast<long>(r)));
}

}  // namespace svoa
