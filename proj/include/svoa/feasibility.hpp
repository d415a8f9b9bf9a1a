// include/svoa/feasibility.hpp — exact feasibility tests for candidate
// characters, and the minimal-weight bound table built from them.
//
// A hypothesis "some theory at central charge c has minimal weight > mu" is
// encoded as a finite constraint system over the undetermined basis
// coefficients a_r (integer variables):
//   * the character matches the vacuum character through q^(mu - c/24)
//     (primaries first show up in the coefficient at twice their weight),
//   * shadow coefficients B_j are nonnegative integers,
//   * primary multiplicities beyond the matched range are nonnegative.
// The engine propagates interval and congruence information variable by
// variable, falls back to exact Fourier–Motzkin elimination for coupled
// inequalities, and finishes by enumerating the remaining integer box.
// Every Infeasible answer carries a machine-checkable certificate; every
// Feasible answer carries an explicit integer witness.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "svoa/charspec.hpp"

namespace svoa {

enum class Verdict { Feasible, Infeasible, Inconclusive };
enum class Relation { NonNegative, Integral, Zero };

const char* to_string(Verdict v);

struct ConstraintStep {
  enum class Outcome {
    Satisfied,          // constant form, holds
    Violated,           // constant (or fully forced) form, fails
    Pinned,             // equality fixed a variable
    BoundUpdated,       // interval endpoint tightened
    CongruenceUpdated,  // modular condition tightened
    CongruenceConflict, // incompatible with the accumulated congruence
    Deferred            // several variables; checked later
  };
  std::string description;
  LinearForm form;   // the affine expression the relation applies to
  Relation relation;
  Outcome outcome = Outcome::Deferred;
  std::string detail;
};

struct Witness {
  std::map<int, Scalar> assignment;  // values of the free a_r
  std::vector<Scalar> a;             // the completed coefficient vector
};

// One rejected point of the final enumeration: the assignment together with
// the first constraint it violates. Re-evaluating that constraint's form
// under the assignment reproduces the violation.
struct RejectedCandidate {
  std::map<int, Scalar> assignment;
  size_t violated_step;
};

// Nonnegative combination of inequality steps that reduces to a negative
// constant: sum_i lambda_i * form_i == value < 0 with lambda_i >= 0 on
// NonNegative steps (steps with relation Zero may take either sign).
struct FarkasCombination {
  std::vector<std::pair<size_t, Scalar>> terms;
  Scalar value;
};

struct FeasibilityResult {
  Verdict verdict = Verdict::Inconclusive;
  CharacterSpec spec;
  mpq_class mu{0};                       // hypothesis parameter (if any)
  std::vector<ConstraintStep> steps;     // ordered constraint trace
  std::map<int, Scalar> pinned;          // values forced by equalities
  std::optional<size_t> violated_step;   // Infeasible: forced violation
  std::optional<FarkasCombination> farkas;  // Infeasible: linear combination
  std::vector<RejectedCandidate> rejected;  // Infeasible: exhausted box
  unsigned long long candidates = 0;     // size of the enumerated box
  std::optional<Witness> witness;        // Feasible
  std::vector<Witness> witnesses;        // all survivors (enumerate_all)
  std::string note;
};

struct FeasibilityOptions {
  long char_depth = 16;     // primary-multiplicity checks past the match
  long shadow_depth = 8;    // shadow coefficients checked
  unsigned long long enum_cap = 1000000;
  bool enumerate_all = false;
  long prec_margin = 48;
};

// Is a character consistent with minimal weight > mu at central charge c?
// mu must be a positive half-integer.
FeasibilityResult test_min_weight_exceeds(const mpq_class& c, const mpq_class& mu,
                                          Mode mode = Mode::SVOA,
                                          const FeasibilityOptions& opts = {});

// c = 24, 48, 72, 96: a theory with odd part present (leading shadow
// coefficient zero) and minimal weight > c/24 + 1/2 admits no character.
FeasibilityResult verify_maxodd(const mpq_class& c,
                                const FeasibilityOptions& opts = {});

// Central charge 48, minimal weight exactly 5/2: enumerate all candidate
// characters (vacuum match through q^2, at least one weight-5/2 primary).
// Exactly two survive.
FeasibilityResult noneighbour_check(const FeasibilityOptions& opts = {});

// Re-check a result's certificate or witness by plain re-evaluation.
bool replay_certificate(const FeasibilityResult& r);

// The upper-bound scan: smallest mu with an Infeasible verdict.
struct BoundReport {
  mpq_class c;
  std::optional<mpq_class> mu_analytic;  // from the character constraints
  mpq_class mu_printed{0};               // table value (annotated rows differ)
  std::string annotation;
  std::vector<std::pair<mpq_class, Verdict>> trail;
};

BoundReport analytic_mu_max(const mpq_class& c,
                            const FeasibilityOptions& opts = {});
std::vector<BoundReport> table_sweep(const mpq_class& from, const mpq_class& to,
                                     const mpq_class& step,
                                     const FeasibilityOptions& opts = {});

}  // namespace svoa
