#include "svoa/feasibility.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "svoa/modchar.hpp"

#ifdef SVOA_HAVE_OPENMP
#include <omp.h>
#endif

namespace svoa {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    default: return "inconclusive";
  }
}

namespace {

// ----------------------------------------------------------------------
// rational helpers

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

mpz_class ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

bool scalar_is_integer(const Scalar& s) {
  return s.is_rational() && s.rat().get_den() == 1;
}

// Affine form with plain rational entries (the systems built here never
// produce irrational coefficients: the shadow normalization absorbs sqrt2).
struct RatForm {
  std::map<int, mpq_class> coef;
  mpq_class cst;
};

std::optional<RatForm> to_rat(const LinearForm& f) {
  if (!f.constant().is_rational()) return std::nullopt;
  RatForm r;
  r.cst = f.constant().rat();
  for (const auto& [id, s] : f.coeffs()) {
    if (!s.is_rational()) return std::nullopt;
    if (s.rat() != 0) r.coef[id] = s.rat();
  }
  return r;
}

LinearForm reduce_by(const LinearForm& f, const std::map<int, Scalar>& pins) {
  LinearForm r(f.constant());
  for (const auto& [id, coeff] : f.coeffs()) {
    auto it = pins.find(id);
    if (it == pins.end())
      r += LinearForm::variable(id, coeff);
    else
      r += LinearForm(coeff * it->second);
  }
  return r;
}

bool relation_holds(const Scalar& value, Relation rel) {
  switch (rel) {
    case Relation::Zero: return value.is_zero();
    case Relation::NonNegative: return value.sign() >= 0;
    case Relation::Integral: return scalar_is_integer(value);
  }
  return false;
}

// ----------------------------------------------------------------------
// congruences: x == res (mod mod), mod >= 1

struct Congruence {
  mpz_class mod{1}, res{0};
};

// Integer solutions x of gamma*x + delta in Z, as a congruence class.
std::optional<Congruence> solve_integrality(const mpq_class& gamma,
                                            const mpq_class& delta) {
  mpz_class q = gamma.get_den(), v = delta.get_den();
  mpz_class L;
  mpz_lcm(L.get_mpz_t(), q.get_mpz_t(), v.get_mpz_t());
  mpz_class A = gamma.get_num() * (L / q) % L;
  mpz_class C = (-(delta.get_num() * (L / v))) % L;
  if (A < 0) A += L;
  if (C < 0) C += L;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), L.get_mpz_t());
  if (C % g != 0) return std::nullopt;
  mpz_class L1 = L / g;
  if (L1 == 1) return Congruence{1, 0};
  mpz_class A1 = A / g, C1 = C / g, inv;
  if (mpz_invert(inv.get_mpz_t(), A1.get_mpz_t(), L1.get_mpz_t()) == 0)
    return std::nullopt;  // cannot happen: A1 and L1 are coprime
  Congruence out;
  out.mod = L1;
  out.res = (C1 * inv) % L1;
  if (out.res < 0) out.res += L1;
  return out;
}

std::optional<Congruence> merge_congruences(const Congruence& a,
                                            const Congruence& b) {
  mpz_class g, diff = b.res - a.res;
  mpz_gcd(g.get_mpz_t(), a.mod.get_mpz_t(), b.mod.get_mpz_t());
  if (diff % g != 0) return std::nullopt;
  mpz_class M;
  mpz_lcm(M.get_mpz_t(), a.mod.get_mpz_t(), b.mod.get_mpz_t());
  mpz_class m1g = a.mod / g, m2g = b.mod / g, inv;
  if (m2g == 1) {
    Congruence out{M, a.res % M};
    if (out.res < 0) out.res += M;
    return out;
  }
  mpz_invert(inv.get_mpz_t(), m1g.get_mpz_t(), m2g.get_mpz_t());
  mpz_class t = ((diff / g) * inv) % m2g;
  Congruence out;
  out.mod = M;
  out.res = (a.res + a.mod * t) % M;
  if (out.res < 0) out.res += M;
  return out;
}

struct VarState {
  std::optional<mpq_class> lo, hi;
  Congruence cong;
  bool pinned = false;
};

std::string q_str(const mpq_class& q) { return q.get_str(); }

// ----------------------------------------------------------------------
// Fourier–Motzkin elimination with provenance

struct Row {
  std::map<int, mpq_class> coef;
  mpq_class cst;
  std::vector<std::pair<size_t, mpq_class>> mult;  // step index -> multiplier
};

void add_mult(std::vector<std::pair<size_t, mpq_class>>& into,
              const std::vector<std::pair<size_t, mpq_class>>& from,
              const mpq_class& scale) {
  for (const auto& [idx, lam] : from) {
    bool found = false;
    for (auto& [i2, l2] : into)
      if (i2 == idx) {
        l2 += lam * scale;
        found = true;
        break;
      }
    if (!found) into.emplace_back(idx, lam * scale);
  }
}

// Scale a row so its entries form a primitive integer vector (for dedup).
void canonicalize_row(Row& r) {
  mpz_class den{1}, num{0};
  for (const auto& [id, c] : r.coef) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
  }
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.cst.get_den().get_mpz_t());
  mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), r.cst.get_num().get_mpz_t());
  if (num == 0) return;
  mpq_class s(den, num);
  if (s < 0) s = -s;
  s.canonicalize();
  for (auto& [id, c] : r.coef) c *= s;
  r.cst *= s;
  for (auto& [i, l] : r.mult) l *= s;
}

// Eliminate `var`; returns false (with `contradiction` set) if a constant
// negative row appears. Rows exceeding `cap` abort with nullopt-like flag.
bool fm_eliminate(std::vector<Row>& rows, int var, size_t cap,
                  std::optional<Row>& contradiction, bool& overflow) {
  std::vector<Row> keep, pos, neg;
  for (auto& r : rows) {
    auto it = r.coef.find(var);
    if (it == r.coef.end() || it->second == 0) {
      if (it != r.coef.end()) r.coef.erase(it);
      keep.push_back(std::move(r));
    } else if (it->second > 0) {
      pos.push_back(std::move(r));
    } else {
      neg.push_back(std::move(r));
    }
  }
  std::map<std::string, bool> seen;
  auto key_of = [](const Row& r) {
    std::ostringstream k;
    for (const auto& [id, c] : r.coef) k << id << ":" << c.get_str() << ";";
    k << "|" << r.cst.get_str();
    return k.str();
  };
  for (auto& r : keep) seen[key_of(r)] = true;
  for (const auto& p : pos) {
    mpq_class gp = p.coef.at(var);
    for (const auto& n : neg) {
      mpq_class gn = n.coef.at(var);  // gn < 0
      Row r;
      r.cst = (-gn) * p.cst + gp * n.cst;
      for (const auto& [id, c] : p.coef)
        if (id != var) r.coef[id] += (-gn) * c;
      for (const auto& [id, c] : n.coef)
        if (id != var) r.coef[id] += gp * c;
      for (auto it = r.coef.begin(); it != r.coef.end();)
        it = (it->second == 0) ? r.coef.erase(it) : std::next(it);
      add_mult(r.mult, p.mult, -gn);
      add_mult(r.mult, n.mult, gp);
      if (r.coef.empty()) {
        if (r.cst < 0) {
          contradiction = std::move(r);
          return false;
        }
        continue;  // tautology
      }
      canonicalize_row(r);
      auto key = key_of(r);
      if (!seen[key]) {
        seen[key] = true;
        keep.push_back(std::move(r));
        if (keep.size() > cap) {
          overflow = true;
          return true;
        }
      }
    }
  }
  rows = std::move(keep);
  return true;
}

// ----------------------------------------------------------------------
// the solver core

struct System {
  CharacterSpec spec;
  mpq_class mu{0};
  SymbolicCharacter sym;
  std::vector<ConstraintStep> steps;
  FeasibilityOptions opts;
};

void finish_infeasible_at(FeasibilityResult& res, size_t i,
                          ConstraintStep::Outcome oc, const std::string& det) {
  res.steps[i].outcome = oc;
  if (!det.empty()) res.steps[i].detail = det;
  res.verdict = Verdict::Infeasible;
  res.violated_step = i;
}

// Evaluate every step under a full assignment; returns index of the first
// violated step, or nullopt if all hold.
std::optional<size_t> first_violation(const std::vector<ConstraintStep>& steps,
                                      const std::map<int, Scalar>& assignment) {
  for (size_t i = 0; i < steps.size(); ++i) {
    Scalar v = steps[i].form.evaluate(assignment);
    if (!relation_holds(v, steps[i].relation)) return i;
  }
  return std::nullopt;
}

FeasibilityResult run_system(System&& sys) {
  FeasibilityResult res;
  res.spec = sys.sym.spec;
  res.mu = sys.mu;
  res.steps = std::move(sys.steps);

  std::map<int, VarState> st;
  for (int id : sys.sym.free_ids) st[id];

  std::optional<size_t> conflict_at;

  // --- single ordered propagation pass -------------------------------
  for (size_t i = 0; i < res.steps.size(); ++i) {
    ConstraintStep& step = res.steps[i];
    LinearForm rf = reduce_by(step.form, res.pinned);
    if (rf.is_constant()) {
      if (relation_holds(rf.constant(), step.relation)) {
        step.outcome = ConstraintStep::Outcome::Satisfied;
      } else {
        finish_infeasible_at(res, i, ConstraintStep::Outcome::Violated,
                             "value " + rf.constant().to_string());
        return res;
      }
      continue;
    }
    auto rr = to_rat(rf);
    if (!rr || rr->coef.size() != 1) {
      step.outcome = ConstraintStep::Outcome::Deferred;
      continue;
    }
    const int id = rr->coef.begin()->first;
    const mpq_class gamma = rr->coef.begin()->second;
    const mpq_class delta = rr->cst;
    VarState& vs = st[id];
    std::ostringstream det;
    switch (step.relation) {
      case Relation::Zero: {
        mpq_class v = -delta / gamma;
        v.canonicalize();
        if (v.get_den() != 1) {
          finish_infeasible_at(res, i, ConstraintStep::Outcome::Violated,
                               "a" + std::to_string(id) + " = " + q_str(v) +
                                   " is not an integer");
          return res;
        }
        if ((vs.lo && v < *vs.lo) || (vs.hi && v > *vs.hi)) {
          finish_infeasible_at(res, i, ConstraintStep::Outcome::Violated,
                               "a" + std::to_string(id) + " = " + q_str(v) +
                                   " lies outside the admissible interval");
          return res;
        }
        mpz_class vn = v.get_num();
        mpz_class rem = (vn - vs.cong.res) % vs.cong.mod;
        if (rem != 0) {
          finish_infeasible_at(res, i, ConstraintStep::Outcome::Violated,
                               "a" + std::to_string(id) + " = " + q_str(v) +
                                   " violates the accumulated congruence");
          return res;
        }
        vs.pinned = true;
        vs.lo = vs.hi = v;
        res.pinned[id] = Scalar(mpq_class(v));
        step.outcome = ConstraintStep::Outcome::Pinned;
        step.detail = "a" + std::to_string(id) + " = " + q_str(v);
        break;
      }
      case Relation::NonNegative: {
        mpq_class bound = -delta / gamma;
        bound.canonicalize();
        if (gamma > 0) {
          if (!vs.lo || bound > *vs.lo) {
            vs.lo = bound;
            step.outcome = ConstraintStep::Outcome::BoundUpdated;
            step.detail = "a" + std::to_string(id) + " >= " + q_str(bound);
          } else {
            step.outcome = ConstraintStep::Outcome::Satisfied;
            step.detail = "implied by earlier bounds";
          }
        } else {
          if (!vs.hi || bound < *vs.hi) {
            vs.hi = bound;
            step.outcome = ConstraintStep::Outcome::BoundUpdated;
            step.detail = "a" + std::to_string(id) + " <= " + q_str(bound);
          } else {
            step.outcome = ConstraintStep::Outcome::Satisfied;
            step.detail = "implied by earlier bounds";
          }
        }
        if (vs.lo && vs.hi && *vs.lo > *vs.hi) {
          finish_infeasible_at(
              res, i, ConstraintStep::Outcome::Violated,
              "interval for a" + std::to_string(id) + " is empty: " +
                  q_str(*vs.lo) + " > " + q_str(*vs.hi));
          return res;
        }
        break;
      }
      case Relation::Integral: {
        auto sol = solve_integrality(gamma, delta);
        if (!sol) {
          finish_infeasible_at(res, i, ConstraintStep::Outcome::Violated,
                               "no integer a" + std::to_string(id) +
                                   " makes this form integral");
          return res;
        }
        auto merged = merge_congruences(vs.cong, *sol);
        if (!merged) {
          step.outcome = ConstraintStep::Outcome::CongruenceConflict;
          step.detail = "a" + std::to_string(id) + " == " +
                        sol->res.get_str() + " (mod " + sol->mod.get_str() +
                        ") conflicts with a" + std::to_string(id) + " == " +
                        vs.cong.res.get_str() + " (mod " +
                        vs.cong.mod.get_str() + ")";
          if (!conflict_at) conflict_at = i;
        } else {
          vs.cong = *merged;
          step.outcome = ConstraintStep::Outcome::CongruenceUpdated;
          step.detail = "a" + std::to_string(id) + " == " +
                        vs.cong.res.get_str() + " (mod " +
                        vs.cong.mod.get_str() + ")";
        }
        break;
      }
    }
  }

  // --- collect unpinned variables -------------------------------------
  std::vector<int> open;
  for (int id : sys.sym.free_ids)
    if (!st[id].pinned) open.push_back(id);
  std::sort(open.begin(), open.end());

  auto complete_witness = [&](const std::map<int, Scalar>& assignment) {
    Witness w;
    w.assignment = assignment;
    std::map<int, Scalar> full = res.pinned;
    full.insert(assignment.begin(), assignment.end());
    for (const auto& f : sys.sym.a) w.a.push_back(f.evaluate(full));
    return w;
  };
  auto full_assignment = [&](const std::map<int, Scalar>& open_vals) {
    std::map<int, Scalar> full = res.pinned;
    full.insert(open_vals.begin(), open_vals.end());
    return full;
  };

  if (open.empty()) {
    auto bad = first_violation(res.steps, res.pinned);
    if (bad) {
      finish_infeasible_at(res, *bad, ConstraintStep::Outcome::Violated,
                           "violated by the forced assignment");
      return res;
    }
    res.verdict = Verdict::Feasible;
    res.witness = complete_witness({});
    if (sys.opts.enumerate_all) res.witnesses.push_back(*res.witness);
    return res;
  }

  // --- Fourier–Motzkin over the open variables -------------------------
  {
    std::vector<Row> rows;
    for (size_t i = 0; i < res.steps.size(); ++i) {
      if (res.steps[i].relation == Relation::Integral) continue;
      LinearForm rf = reduce_by(res.steps[i].form, res.pinned);
      if (rf.is_constant()) continue;
      auto rr = to_rat(rf);
      if (!rr) continue;
      Row r;
      r.coef = rr->coef;
      r.cst = rr->cst;
      r.mult.emplace_back(i, mpq_class(1));
      rows.push_back(r);
      if (res.steps[i].relation == Relation::Zero) {
        Row r2;
        for (const auto& [id, c] : rr->coef) r2.coef[id] = -c;
        r2.cst = -rr->cst;
        r2.mult.emplace_back(i, mpq_class(-1));
        rows.push_back(std::move(r2));
      }
    }
    bool overflow = false;
    std::optional<Row> contradiction;
    for (int var : open) {
      // project out everything except `var` on a working copy to get bounds
      std::vector<Row> work = rows;
      for (int other : open) {
        if (other == var) continue;
        if (!fm_eliminate(work, other, 20000, contradiction, overflow)) break;
        if (overflow) break;
      }
      if (contradiction) break;
      if (overflow) break;
      for (const auto& r : work) {
        auto it = r.coef.find(var);
        if (it == r.coef.end() || r.coef.size() != 1) continue;
        mpq_class bound = -r.cst / it->second;
        bound.canonicalize();
        VarState& vs = st[var];
        if (it->second > 0) {
          if (!vs.lo || bound > *vs.lo) vs.lo = bound;
        } else {
          if (!vs.hi || bound < *vs.hi) vs.hi = bound;
        }
      }
    }
    if (contradiction) {
      FarkasCombination fc;
      fc.terms = contradiction->mult;
      fc.value = Scalar(contradiction->cst);
      res.farkas = std::move(fc);
      res.verdict = Verdict::Infeasible;
      res.note =
          "nonnegative combination of the listed constraints equals a "
          "negative constant";
      return res;
    }
    if (overflow)
      res.note = "inequality elimination aborted (row cap); bounds may be "
                 "incomplete";
  }

  // interval emptiness after projection
  for (int id : open) {
    VarState& vs = st[id];
    if (vs.lo && vs.hi && *vs.lo > *vs.hi) {
      res.verdict = Verdict::Infeasible;
      res.note = "projected interval for a" + std::to_string(id) +
                 " is empty: " + q_str(*vs.lo) + " > " + q_str(*vs.hi);
      return res;
    }
  }

  // --- unbounded direction: probe a single candidate -------------------
  bool bounded = true;
  for (int id : open)
    if (!st[id].lo || !st[id].hi) bounded = false;

  auto probe_value = [&](const VarState& vs) {
    // congruence representative nearest zero, clamped into the interval
    mpz_class v = vs.cong.res % vs.cong.mod;
    if (v < 0) v += vs.cong.mod;
    if (v * 2 > vs.cong.mod) v -= vs.cong.mod;
    if (vs.lo) {
      mpz_class lo_i = ceil_q(*vs.lo);
      if (v < lo_i) {
        mpz_class k = (lo_i - v + vs.cong.mod - 1) / vs.cong.mod;
        v += k * vs.cong.mod;
      }
    }
    if (vs.hi) {
      mpz_class hi_i = floor_q(*vs.hi);
      if (v > hi_i) {
        mpz_class k = (v - hi_i + vs.cong.mod - 1) / vs.cong.mod;
        v -= k * vs.cong.mod;
      }
    }
    return v;
  };

  if (!bounded) {
    if (conflict_at) {
      finish_infeasible_at(res, *conflict_at,
                           ConstraintStep::Outcome::CongruenceConflict,
                           res.steps[*conflict_at].detail);
      res.note = "incompatible congruences exclude every integer value";
      return res;
    }
    std::map<int, Scalar> probe;
    bool probe_ok = true;
    for (int id : open) {
      mpz_class v = probe_value(st[id]);
      if ((st[id].lo && mpq_class(v) < *st[id].lo) ||
          (st[id].hi && mpq_class(v) > *st[id].hi)) {
        probe_ok = false;
        break;
      }
      probe[id] = Scalar(mpq_class(v));
    }
    if (probe_ok && !first_violation(res.steps, full_assignment(probe))) {
      res.verdict = Verdict::Feasible;
      res.witness = complete_witness(probe);
      if (sys.opts.enumerate_all) {
        res.witnesses.push_back(*res.witness);
        res.note = "open direction: witness list is not exhaustive";
      }
      return res;
    }
    res.verdict = Verdict::Inconclusive;
    res.note = "an open variable has no two-sided bound";
    return res;
  }

  // --- exhaustive enumeration of the integer box -----------------------
  struct Axis {
    int id;
    mpz_class start, step;
    mpz_class count;
  };
  std::vector<Axis> axes;
  mpz_class total{1};
  for (int id : open) {
    VarState& vs = st[id];
    Axis ax;
    ax.id = id;
    ax.step = vs.cong.mod;
    mpz_class lo_i = ceil_q(*vs.lo), hi_i = floor_q(*vs.hi);
    mpz_class shift = (vs.cong.res - lo_i) % vs.cong.mod;
    if (shift < 0) shift += vs.cong.mod;
    ax.start = lo_i + shift;
    ax.count = (ax.start > hi_i) ? 0 : (hi_i - ax.start) / ax.step + 1;
    total *= ax.count;
    axes.push_back(std::move(ax));
  }
  if (total == 0) {
    res.verdict = Verdict::Infeasible;
    res.note = "integer box is empty (bounds and congruence exclude every "
               "value)";
    return res;
  }
  if (!total.fits_ulong_p() ||
      total.get_ui() > sys.opts.enum_cap) {
    res.verdict = Verdict::Inconclusive;
    res.note = "integer box holds " + total.get_str() +
               " points, above the enumeration cap";
    return res;
  }
  res.candidates = total.get_ui();

  std::vector<mpz_class> idx(axes.size(), 0);
  const size_t kMaxRejectRecords = 4096;
  bool more = true;
  while (more) {
    std::map<int, Scalar> vals;
    for (size_t j = 0; j < axes.size(); ++j)
      vals[axes[j].id] =
          Scalar(mpq_class(axes[j].start + idx[j] * axes[j].step));
    auto bad = first_violation(res.steps, full_assignment(vals));
    if (bad) {
      if (res.rejected.size() < kMaxRejectRecords)
        res.rejected.push_back(RejectedCandidate{vals, *bad});
    } else {
      Witness w = complete_witness(vals);
      if (!res.witness) res.witness = w;
      if (sys.opts.enumerate_all) {
        res.witnesses.push_back(std::move(w));
      } else {
        break;
      }
    }
    // odometer increment
    size_t j = 0;
    for (; j < axes.size(); ++j) {
      idx[j] += 1;
      if (idx[j] < axes[j].count) break;
      idx[j] = 0;
    }
    if (j == axes.size()) more = false;
  }

  if (res.witness) {
    res.verdict = Verdict::Feasible;
    if (res.rejected.size() >= kMaxRejectRecords)
      res.note = "rejected-candidate log truncated";
  } else {
    res.verdict = Verdict::Infeasible;
    res.note = "exhaustive enumeration of " + total.get_str() +
               " candidates; every one violates a listed constraint" +
               (res.rejected.size() >= kMaxRejectRecords
                    ? " (record log truncated)"
                    : "");
  }
  return res;
}

// ----------------------------------------------------------------------
// system builders

mpq_class weight_of_condition(long n) {
  mpq_class w(n, 2);
  w.canonicalize();
  return w;
}

System build_system(const mpq_class& c, Mode mode, long m, const mpq_class& mu,
                    bool odd_shadow_vanishes, bool require_new_primary,
                    const FeasibilityOptions& opts) {
  CharacterSpec spec{c, mode};
  const long sd = opts.shadow_depth, cd = opts.char_depth;
  const long prec =
      std::max(spec.cond_tick(m - 1 + cd), spec.shadow_tick(sd)) + 1 +
      opts.prec_margin;

  QSeries vac = (mode == Mode::SVOA) ? vacuum_char(c, prec)
                                     : n1_vacuum_char(c, prec);
  std::vector<Scalar> targets;
  targets.reserve(m);
  for (long n = 0; n < m; ++n) targets.push_back(vac.at(spec.cond_tick(n)));

  System sys{spec, mu, fit_symbolic(spec, targets, prec), {}, opts};

  for (const auto& [n, f] : sys.sym.consistency) {
    ConstraintStep s;
    s.description = "prescribed coefficient C_" + std::to_string(n) +
                    " (weight " + q_str(weight_of_condition(n)) +
                    ") equals the vacuum value";
    s.form = f;
    s.relation = Relation::Zero;
    sys.steps.push_back(std::move(s));
  }

  if (odd_shadow_vanishes) {
    ConstraintStep s;
    s.description =
        "leading shadow coefficient B_0 vanishes (odd part present)";
    s.form = sys.sym.shadow.at(spec.shadow_tick(0));
    s.relation = Relation::Zero;
    sys.steps.push_back(std::move(s));
  }

  // Symbolic primary multiplicities by greedy highest-weight subtraction.
  Sector sector = (mode == Mode::SVOA) ? Sector::Plain : Sector::NS;
  QSeries hw0 = verma_char(c, 0, sector, prec);
  SymbolicSeries resid = sys.sym.character;
  resid -= SymbolicSeries(vac);  // vacuum multiplicity is C_0 = 1
  std::vector<std::pair<long, LinearForm>> primary_forms;
  const long lo_tick = spec.cond_tick(0);
  for (long n = 1; n <= m - 1 + cd; ++n) {
    const long t = spec.cond_tick(n);
    LinearForm p = resid.at(t);
    if (n >= m) primary_forms.emplace_back(n, p);
    resid.subtract_multiple(p, hw0.shifted(t - lo_tick));
  }

  if (require_new_primary) {
    ConstraintStep s;
    s.description = "at least one primary of weight " +
                    q_str(weight_of_condition(m)) + " is present";
    assert(!primary_forms.empty() && primary_forms.front().first == m);
    s.form = primary_forms.front().second - LinearForm(Scalar(1));
    s.relation = Relation::NonNegative;
    sys.steps.push_back(std::move(s));
    primary_forms.erase(primary_forms.begin());
  }

  for (long j = 0; j < sd; ++j) {
    LinearForm b = sys.sym.shadow.at(spec.shadow_tick(j));
    ConstraintStep s1;
    s1.description = "shadow coefficient B_" + std::to_string(j) +
                     " is nonnegative";
    s1.form = b;
    s1.relation = Relation::NonNegative;
    sys.steps.push_back(std::move(s1));
    ConstraintStep s2;
    s2.description = "shadow coefficient B_" + std::to_string(j) +
                     " is an integer";
    s2.form = b;
    s2.relation = Relation::Integral;
    sys.steps.push_back(std::move(s2));
  }

  for (const auto& [n, p] : primary_forms) {
    ConstraintStep s;
    s.description = "multiplicity of weight-" + q_str(weight_of_condition(n)) +
                    " primaries is nonnegative";
    s.form = p;
    s.relation = Relation::NonNegative;
    sys.steps.push_back(std::move(s));
  }

  return sys;
}

}  // namespace

// ----------------------------------------------------------------------
// public entry points

FeasibilityResult test_min_weight_exceeds(const mpq_class& c,
                                          const mpq_class& mu, Mode mode,
                                          const FeasibilityOptions& opts) {
  mpq_class two_mu = 2 * mu;
  two_mu.canonicalize();
  if (mu <= 0 || two_mu.get_den() != 1 || !two_mu.get_num().fits_slong_p())
    throw std::invalid_argument(
        "test_min_weight_exceeds: mu must be a positive half-integer");
  const long m = two_mu.get_num().get_si() + 1;
  return run_system(build_system(c, mode, m, mu, false, false, opts));
}

FeasibilityResult verify_maxodd(const mpq_class& c,
                                const FeasibilityOptions& opts) {
  mpq_class q = c / 24;
  q.canonicalize();
  if (c <= 0 || q.get_den() != 1)
    throw std::invalid_argument(
        "verify_maxodd: central charge must be a positive multiple of 24");
  const long m = mpq_class(c / 12).get_num().get_si() + 2;
  FeasibilityOptions o = opts;
  o.shadow_depth = std::max(opts.shadow_depth,
                            mpq_class(c / 12).get_num().get_si() + 8);
  return run_system(build_system(c, Mode::SVOA, m, c / 24 + mpq_class(1, 2),
                                 true, false, o));
}

FeasibilityResult noneighbour_check(const FeasibilityOptions& opts) {
  FeasibilityOptions o = opts;
  o.enumerate_all = true;
  return run_system(
      build_system(48, Mode::SVOA, 5, mpq_class(5, 2), false, true, o));
}

// ----------------------------------------------------------------------
// certificate replay

bool replay_certificate(const FeasibilityResult& r) {
  auto reduced_value = [&](size_t i,
                           const std::map<int, Scalar>& extra) -> Scalar {
    std::map<int, Scalar> full = r.pinned;
    full.insert(extra.begin(), extra.end());
    return r.steps[i].form.evaluate(full);
  };

  switch (r.verdict) {
    case Verdict::Inconclusive:
      return true;
    case Verdict::Feasible: {
      if (!r.witness) return false;
      std::map<int, Scalar> full = r.pinned;
      full.insert(r.witness->assignment.begin(), r.witness->assignment.end());
      for (const auto& s : r.steps)
        if (!relation_holds(s.form.evaluate(full), s.relation)) return false;
      return true;
    }
    case Verdict::Infeasible: {
      if (r.farkas) {
        // sum lambda_i * form_i must reduce (under the recorded pins) to the
        // recorded negative constant, with valid multiplier signs.
        LinearForm acc;
        for (const auto& [idx, lam] : r.farkas->terms) {
          if (idx >= r.steps.size()) return false;
          const auto& s = r.steps[idx];
          if (s.relation == Relation::Integral) return false;
          if (s.relation == Relation::NonNegative && lam.sign() < 0)
            return false;
          LinearForm f = reduce_by(s.form, r.pinned);
          f *= lam;
          acc += f;
        }
        return acc.is_constant() && acc.constant() == r.farkas->value &&
               r.farkas->value.sign() < 0;
      }
      if (!r.rejected.empty()) {
        for (const auto& rec : r.rejected) {
          if (rec.violated_step >= r.steps.size()) return false;
          Scalar v = reduced_value(rec.violated_step, rec.assignment);
          if (relation_holds(v, r.steps[rec.violated_step].relation))
            return false;
        }
        return true;
      }
      if (r.violated_step) {
        const size_t i = *r.violated_step;
        if (i >= r.steps.size()) return false;
        const auto& s = r.steps[i];
        if (s.outcome == ConstraintStep::Outcome::CongruenceConflict) {
          // Re-derive the accumulated congruence from the earlier steps and
          // confirm it is incompatible with this one.
          LinearForm rf = reduce_by(s.form, r.pinned);
          auto rr = to_rat(rf);
          if (!rr || rr->coef.size() != 1) return false;
          const int id = rr->coef.begin()->first;
          auto mine = solve_integrality(rr->coef.begin()->second, rr->cst);
          if (!mine) return true;  // even alone unsatisfiable
          Congruence acc{1, 0};
          for (size_t j = 0; j < i; ++j) {
            if (r.steps[j].relation != Relation::Integral) continue;
            LinearForm g = reduce_by(r.steps[j].form, r.pinned);
            auto gr = to_rat(g);
            if (!gr || gr->coef.size() != 1) continue;
            if (gr->coef.begin()->first != id) continue;
            auto sol = solve_integrality(gr->coef.begin()->second, gr->cst);
            if (!sol) return true;
            auto merged = merge_congruences(acc, *sol);
            if (!merged) return true;
            acc = *merged;
          }
          return !merge_congruences(acc, *mine).has_value();
        }
        Scalar v = reduced_value(i, {});
        return !relation_holds(v, s.relation);
      }
      // Empty-box infeasibility: re-derive interval and congruence per
      // variable from the recorded steps and confirm some box is empty.
      {
        std::map<int, VarState> st;
        for (const auto& s : r.steps) {
          LinearForm rf = reduce_by(s.form, r.pinned);
          auto rr = to_rat(rf);
          if (!rr || rr->coef.size() != 1) continue;
          const int id = rr->coef.begin()->first;
          const mpq_class gamma = rr->coef.begin()->second;
          const mpq_class delta = rr->cst;
          VarState& vs = st[id];
          if (s.relation == Relation::NonNegative) {
            mpq_class bound = -delta / gamma;
            bound.canonicalize();
            if (gamma > 0) {
              if (!vs.lo || bound > *vs.lo) vs.lo = bound;
            } else {
              if (!vs.hi || bound < *vs.hi) vs.hi = bound;
            }
          } else if (s.relation == Relation::Integral) {
            auto sol = solve_integrality(gamma, delta);
            if (!sol) return true;
            auto merged = merge_congruences(vs.cong, *sol);
            if (merged) vs.cong = *merged;
          }
        }
        for (const auto& [id, vs] : st) {
          if (!vs.lo || !vs.hi) continue;
          if (*vs.lo > *vs.hi) return true;
          mpz_class lo_i = ceil_q(*vs.lo), hi_i = floor_q(*vs.hi);
          mpz_class shift = (vs.cong.res - lo_i) % vs.cong.mod;
          if (shift < 0) shift += vs.cong.mod;
          if (lo_i + shift > hi_i) return true;
        }
        return false;
      }
    }
  }
  return false;
}

// ----------------------------------------------------------------------
// bound scan and table

namespace {

const mpq_class kHalf(1, 2);

bool is_classification_row(const mpq_class& c) {
  static const mpq_class vals[] = {mpq_class(10),     mpq_class(11),
                                   mpq_class(25, 2),  mpq_class(13),
                                   mpq_class(27, 2),  mpq_class(29, 2),
                                   mpq_class(33, 2)};
  for (const auto& v : vals)
    if (c == v) return true;
  return false;
}

// Largest minimal weight reached by a known construction, where it falls
// short of the character-theoretic upper bound (range rows of the table).
std::optional<mpq_class> construction_lower(const mpq_class& c) {
  if (c == mpq_class(49, 2)) return kHalf;
  if (c > mpq_class(49, 2) && c < mpq_class(63, 2)) return mpq_class(1);
  if (c >= mpq_class(65, 2) && c <= mpq_class(67, 2)) return mpq_class(1);
  if (c >= 34 && c <= 39) return mpq_class(1);
  if (c == mpq_class(79, 2)) return mpq_class(3, 2);
  if (c >= mpq_class(81, 2) && c <= 47) return mpq_class(1);
  if (c == mpq_class(95, 2)) return mpq_class(3, 2);
  if (c == 48) return mpq_class(2);
  return std::nullopt;
}

}  // namespace

BoundReport analytic_mu_max(const mpq_class& c, const FeasibilityOptions& opts) {
  BoundReport rep;
  rep.c = c;
  const mpq_class cap = c / 24 + 2;
  for (mpq_class mu = kHalf; mu <= cap; mu += kHalf) {
    FeasibilityResult r = test_min_weight_exceeds(c, mu, Mode::SVOA, opts);
    rep.trail.emplace_back(mu, r.verdict);
    if (r.verdict == Verdict::Infeasible) {
      rep.mu_analytic = mu;
      break;
    }
  }
  if (is_classification_row(c)) {
    rep.mu_printed = kHalf;
    rep.annotation =
        "upper bound 1/2 from the completeness of the classified theory "
        "list at this central charge; character conditions alone give " +
        (rep.mu_analytic ? rep.mu_analytic->get_str() : std::string("none"));
  } else if (rep.mu_analytic) {
    rep.mu_printed = *rep.mu_analytic;
    auto lower = construction_lower(c);
    if (lower && *lower < rep.mu_printed)
      rep.annotation = "largest known construction reaches " + lower->get_str();
  } else {
    rep.annotation = "no infeasible level found up to " + cap.get_str();
  }
  return rep;
}

std::vector<BoundReport> table_sweep(const mpq_class& from, const mpq_class& to,
                                     const mpq_class& step,
                                     const FeasibilityOptions& opts) {
  if (step <= 0) throw std::invalid_argument("table_sweep: step must be > 0");
  std::vector<mpq_class> cs;
  for (mpq_class c = from; c <= to; c += step) cs.push_back(c);
  std::vector<BoundReport> out(cs.size());
#ifdef SVOA_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long i = 0; i < static_cast<long>(cs.size()); ++i) {
    try {
      out[i] = analytic_mu_max(cs[i], opts);
    } catch (const std::exception& e) {
      out[i].c = cs[i];
      out[i].annotation = std::string("error: ") + e.what();
    }
  }
  return out;
}

}  // namespace svoa
