// include/svoa/charspec.hpp — candidate characters of self-dual theories.
//
// A candidate character at central charge c is written over the basis
//   chi_r = chi_{1/2}^{2c-24r},  r = 0..k,
// where chi_{1/2} is the free-fermion character and k counts how many basis
// members keep the leading exponent within the allowed range:
//   k = floor(c/8)   (plain self-dual case)
//   k = floor(c/12)  (superconformal case, same basis, shorter range)
// Each chi_r leads at q^{(-2c+24r)/48} with unit coefficient, so fitting
// prescribed low coefficients is a unit-triangular solve.
//
// The companion ("shadow") expansion replaces chi_{1/2} by the twisted
// building block chi~_{1/2} and alternates signs:
//   shadow = alpha * sum_r (-1)^r a_r chi~_{1/2}^{2c-24r},
//   alpha  = 1 if c is an integer, 1/sqrt(2) otherwise,
// which makes every shadow coefficient rational whenever the a_r are. Its
// leading power is q^{c/12 - k}; B_n denotes the coefficient of q^{c/12-k+n}.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "svoa/linear_form.hpp"
#include "svoa/qseries.hpp"

namespace svoa {

enum class Mode { SVOA, N1 };

struct CharacterSpec {
  mpq_class c;
  Mode mode = Mode::SVOA;

  // Index of the last admissible basis member (see header comment).
  int k() const;
  // Tick of q^{-c/24 + n/2}: where condition n on the character lives.
  long cond_tick(long n) const;
  // Tick of q^{c/12 - k + n}: where shadow coefficient B_n lives.
  long shadow_tick(long n) const;
};

// The basis characters chi_r (r = 0..k), exact to prec_tick.
std::vector<QSeries> character_basis(const CharacterSpec& spec, long prec_tick);
// The signed shadow counterparts alpha * (-1)^r chi~_{1/2}^{2c-24r}.
std::vector<QSeries> shadow_basis(const CharacterSpec& spec, long prec_tick);

// A q-expansion whose coefficients are affine in the free a_r:
//   base + sum_j x_{id_j} * part_j.
class SymbolicSeries {
 public:
  SymbolicSeries() = default;
  explicit SymbolicSeries(QSeries base) : base_(std::move(base)) {}

  const QSeries& base() const { return base_; }
  const std::vector<std::pair<int, QSeries>>& parts() const { return parts_; }
  long prec_tick() const;

  void add_part(int id, QSeries series);
  LinearForm at(long tick) const;
  QSeries substitute(const std::map<int, Scalar>& assignment) const;
  SymbolicSeries& operator-=(const SymbolicSeries& o);
  // Subtract form * series (stays affine: the form's variables distribute).
  void subtract_multiple(const LinearForm& form, const QSeries& series);

 private:
  QSeries base_{0};
  std::vector<std::pair<int, QSeries>> parts_;
};

// Result of matching prescribed coefficients C_0..C_{m-1} at the condition
// ticks. a_n is determined by C_n for n <= k (unit-triangular); any a_r with
// r >= m stays free under variable id r. Conditions with n > k cannot
// determine anything and land in `consistency`: each recorded form must
// evaluate to zero (form = fitted coefficient minus target).
struct SymbolicCharacter {
  CharacterSpec spec;
  std::vector<LinearForm> a;          // size k+1
  std::vector<int> free_ids;          // ids of the undetermined a_r
  SymbolicSeries character;
  SymbolicSeries shadow;
  std::vector<std::pair<long, LinearForm>> consistency;  // (n, must be 0)
};

SymbolicCharacter fit_symbolic(const CharacterSpec& spec,
                               const std::vector<Scalar>& targets,
                               long prec_tick);

// Fully determined fit: requires exactly k+1 targets.
struct FittedCharacter {
  CharacterSpec spec;
  std::vector<Scalar> a;
  QSeries character;
  QSeries shadow;
};

FittedCharacter fit_character(const CharacterSpec& spec,
                              const std::vector<Scalar>& targets,
                              long prec_tick);

// The superconformal expansion whose coefficients match the superconformal
// vacuum up to and including q^{k/2 - c/24} (the longest match the basis
// admits). Returns (character, shadow).
FittedCharacter extremal_n1(const mpq_class& c, long prec_tick);

// Multiplicities of lowest-weight vectors obtained by greedily subtracting
// the vacuum character and then generic highest-weight characters in
// ascending weight order. Sector follows the mode (plain / Neveu-Schwarz).
// Result holds the multiplicity of weight (tick + 2c)/48 at each tick.
// Generic highest-weight characters are only guaranteed correct for c > 25
// (resp. c > 27/2); below that the subtraction is a useful heuristic and
// callers should label it as such (see primaries_heuristic).
QSeries primary_multiplicities(const CharacterSpec& spec, const QSeries& chi,
                               long thru_tick);
bool primaries_heuristic(const CharacterSpec& spec);

// Split into the two residue classes of exponents mod 1: ticks congruent to
// -2c mod 48 ("even") and the opposite class ("odd").
std::pair<QSeries, QSeries> even_odd_split(const mpq_class& c,
                                           const QSeries& chi);

}  // namespace svoa
