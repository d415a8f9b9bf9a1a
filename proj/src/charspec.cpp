#include "svoa/charspec.hpp"

#include <stdexcept>

#include "svoa/modchar.hpp"

namespace svoa {

namespace {

// 2c as a plain integer tick count; the candidate-character machinery only
// makes sense for half-integral central charge.
long two_c_ticks(const mpq_class& c) {
  mpq_class t = 2 * c;
  t.canonicalize();
  if (t.get_den() != 1 || !t.get_num().fits_slong_p())
    throw std::invalid_argument("central charge must be a half-integer");
  return t.get_num().get_si();
}

}  // namespace

int CharacterSpec::k() const {
  long den = (mode == Mode::SVOA) ? 8 : 12;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), mpq_class(c / den).get_num().get_mpz_t(),
             mpq_class(c / den).get_den().get_mpz_t());
  if (!q.fits_sint_p() || q < 0)
    throw std::invalid_argument("central charge out of range for basis index");
  return static_cast<int>(q.get_si());
}

long CharacterSpec::cond_tick(long n) const { return -two_c_ticks(c) + 24 * n; }

long CharacterSpec::shadow_tick(long n) const {
  return 2 * two_c_ticks(c) - 48 * k() + 48 * n;
}

std::vector<QSeries> character_basis(const CharacterSpec& spec, long prec_tick) {
  const long e0 = two_c_ticks(spec.c);
  const int k = spec.k();
  // Working precision: powers and one inversion each lose ticks proportional
  // to the exponents involved; the margin below covers the worst chain.
  const long wide = prec_tick + 2 * std::abs(e0) + 48 * (k + 2) + 96;
  QSeries chi = chi_half(wide);
  QSeries w24_inv = chi.pow(24).inverse();
  std::vector<QSeries> basis;
  basis.reserve(k + 1);
  QSeries cur = chi.pow(e0);
  for (int r = 0; r <= k; ++r) {
    basis.push_back(cur.truncated(prec_tick));
    if (r < k) cur = cur * w24_inv;
  }
  return basis;
}

std::vector<QSeries> shadow_basis(const CharacterSpec& spec, long prec_tick) {
  const long e0 = two_c_ticks(spec.c);
  const int k = spec.k();
  const long wide = prec_tick + 4 * std::abs(e0) + 96 * (k + 2) + 192;
  QSeries ct = chi_tilde_half(wide);
  QSeries w24_inv = ct.pow(24).inverse();
  // alpha makes the shadow coefficients rational: chi~_{1/2}^e carries a
  // factor sqrt(2)^e, and e = 2c - 24r is odd exactly when c is a proper
  // half-integer.
  const bool integral_c = (e0 % 2 == 0);
  const Scalar alpha = integral_c ? Scalar(1) : Scalar(0, mpq_class(1, 2));
  std::vector<QSeries> basis;
  basis.reserve(k + 1);
  QSeries cur = ct.pow(e0);
  for (int r = 0; r <= k; ++r) {
    Scalar sign = (r % 2 == 0) ? alpha : -alpha;
    basis.push_back(cur.truncated(prec_tick).scaled(sign));
    if (r < k) cur = cur * w24_inv;
  }
  return basis;
}

long SymbolicSeries::prec_tick() const {
  long p = base_.prec_tick();
  for (const auto& [id, s] : parts_) p = std::min(p, s.prec_tick());
  return p;
}

void SymbolicSeries::add_part(int id, QSeries series) {
  for (const auto& [eid, s] : parts_)
    if (eid == id) throw std::logic_error("SymbolicSeries: duplicate part id");
  parts_.emplace_back(id, std::move(series));
}

LinearForm SymbolicSeries::at(long tick) const {
  LinearForm f(base_.at(tick));
  for (const auto& [id, s] : parts_) f += LinearForm::variable(id, s.at(tick));
  return f;
}

QSeries SymbolicSeries::substitute(const std::map<int, Scalar>& assignment) const {
  QSeries r = base_;
  for (const auto& [id, s] : parts_) {
    auto it = assignment.find(id);
    if (it == assignment.end())
      throw std::logic_error("SymbolicSeries::substitute: unbound variable " +
                             std::to_string(id));
    r = r + s.scaled(it->second);
  }
  return r;
}

SymbolicSeries& SymbolicSeries::operator-=(const SymbolicSeries& o) {
  base_ = base_ - o.base_;
  for (const auto& [id, s] : o.parts_) {
    bool merged = false;
    for (auto& [eid, es] : parts_) {
      if (eid == id) {
        es = es - s;
        merged = true;
        break;
      }
    }
    if (!merged) parts_.emplace_back(id, s.scaled(Scalar(-1)));
  }
  return *this;
}

void SymbolicSeries::subtract_multiple(const LinearForm& form,
                                       const QSeries& series) {
  if (!form.constant().is_zero())
    base_ = base_ - series.scaled(form.constant());
  for (const auto& [id, coeff] : form.coeffs()) {
    bool merged = false;
    for (auto& [eid, es] : parts_) {
      if (eid == id) {
        es = es - series.scaled(coeff);
        merged = true;
        break;
      }
    }
    if (!merged) parts_.emplace_back(id, series.scaled(-coeff));
  }
}

SymbolicCharacter fit_symbolic(const CharacterSpec& spec,
                               const std::vector<Scalar>& targets,
                               long prec_tick) {
  const int k = spec.k();
  const auto basis = character_basis(spec, prec_tick);
  const auto sbasis = shadow_basis(spec, prec_tick);
  const long m = static_cast<long>(targets.size());

  SymbolicCharacter out;
  out.spec = spec;
  out.a.assign(k + 1, LinearForm{});

  // Unit-triangular determination: basis member r first contributes at
  // condition index r, with coefficient 1.
  for (long n = 0; n <= k; ++n) {
    if (n < m) {
      Scalar s = targets[n];
      for (long r = 0; r < n; ++r)
        s -= out.a[r].constant() * basis[r].at(spec.cond_tick(n));
      out.a[n] = LinearForm(s);
    } else {
      out.a[n] = LinearForm::variable(static_cast<int>(n));
      out.free_ids.push_back(static_cast<int>(n));
    }
  }

  // Prescribed coefficients beyond the basis size cannot determine anything;
  // they become consistency conditions on the already-fitted expansion.
  for (long n = k + 1; n < m; ++n) {
    LinearForm f;
    for (long r = 0; r <= k; ++r)
      f += out.a[r] * basis[r].at(spec.cond_tick(n));
    f -= LinearForm(targets[n]);
    out.consistency.emplace_back(n, f);
  }

  QSeries cbase(prec_tick), sbase(prec_tick);
  for (long r = 0; r <= k; ++r) {
    if (out.a[r].is_constant() && !out.a[r].constant().is_zero()) {
      cbase = cbase + basis[r].scaled(out.a[r].constant());
      sbase = sbase + sbasis[r].scaled(out.a[r].constant());
    }
  }
  SymbolicSeries chi(std::move(cbase)), shadow(std::move(sbase));
  for (long r = 0; r <= k; ++r) {
    if (!out.a[r].is_constant()) {
      chi.add_part(static_cast<int>(r), basis[r]);
      shadow.add_part(static_cast<int>(r), sbasis[r]);
    }
  }
  out.character = std::move(chi);
  out.shadow = std::move(shadow);
  return out;
}

FittedCharacter fit_character(const CharacterSpec& spec,
                              const std::vector<Scalar>& targets,
                              long prec_tick) {
  const int k = spec.k();
  if (static_cast<long>(targets.size()) != k + 1)
    throw std::invalid_argument("fit_character: need exactly k+1 targets");
  SymbolicCharacter sym = fit_symbolic(spec, targets, prec_tick);
  FittedCharacter out;
  out.spec = spec;
  out.a.reserve(k + 1);
  for (const auto& f : sym.a) out.a.push_back(f.constant());
  out.character = sym.character.substitute({});
  out.shadow = sym.shadow.substitute({});
  return out;
}

FittedCharacter extremal_n1(const mpq_class& c, long prec_tick) {
  CharacterSpec spec{c, Mode::N1};
  const int k = spec.k();
  QSeries vac = n1_vacuum_char(c, spec.cond_tick(k) + 1);
  std::vector<Scalar> targets;
  targets.reserve(k + 1);
  for (long n = 0; n <= k; ++n) targets.push_back(vac.at(spec.cond_tick(n)));
  return fit_character(spec, targets, prec_tick);
}

QSeries primary_multiplicities(const CharacterSpec& spec, const QSeries& chi,
                               long thru_tick) {
  if (thru_tick >= chi.prec_tick())
    throw PrecisionError("primary_multiplicities: character too short");
  const long lo = spec.cond_tick(0);
  const long wide = thru_tick + 1;
  Sector sector = (spec.mode == Mode::SVOA) ? Sector::Plain : Sector::NS;
  // Generic highest-weight character at weight h is a tick shift of the one
  // at weight 0, so one product serves every subtraction step.
  QSeries hw0 = verma_char(spec.c, 0, sector, wide);
  QSeries vac = (spec.mode == Mode::SVOA) ? vacuum_char(spec.c, wide)
                                          : n1_vacuum_char(spec.c, wide);

  QSeries residual = chi.truncated(wide);
  std::vector<Scalar> mult(static_cast<size_t>(wide - lo));
  for (long t = lo; t <= thru_tick; ++t) {
    Scalar m = residual.at(t);
    if (m.is_zero()) continue;
    mult[static_cast<size_t>(t - lo)] = m;
    if (t == lo)
      residual = residual - vac.scaled(m);
    else
      residual = residual - hw0.shifted(t - lo).scaled(m);
  }
  return QSeries(lo, std::move(mult), wide);
}

bool primaries_heuristic(const CharacterSpec& spec) {
  // Below these thresholds generic highest-weight modules can shorten, so
  // greedy subtraction only bounds the true multiplicities.
  return (spec.mode == Mode::SVOA) ? (spec.c <= 25) : (spec.c <= mpq_class(27, 2));
}

std::pair<QSeries, QSeries> even_odd_split(const mpq_class& c,
                                           const QSeries& chi) {
  const long base = -two_c_ticks(c);
  if (chi.is_zero())
    return {QSeries(chi.prec_tick()), QSeries(chi.prec_tick())};
  const long lo = chi.min_tick();
  std::vector<Scalar> even(static_cast<size_t>(chi.prec_tick() - lo));
  std::vector<Scalar> odd(even.size());
  for (long t = lo; t < chi.prec_tick(); ++t) {
    const Scalar& v = chi.at(t);
    if (v.is_zero()) continue;
    long res = ((t - base) % 48 + 48) % 48;
    if (res == 0)
      even[static_cast<size_t>(t - lo)] = v;
    else if (res == 24)
      odd[static_cast<size_t>(t - lo)] = v;
    else
      throw std::invalid_argument("even_odd_split: tick off the half-integer grid");
  }
  return {QSeries(lo, std::move(even), chi.prec_tick()),
          QSeries(lo, std::move(odd), chi.prec_tick())};
}

}  // namespace svoa
