// include/svoa/linear_form.hpp — affine forms over named free coefficients.
#pragma once

#include <map>
#include <string>

#include "svoa/scalar.hpp"

namespace svoa {

// constant + sum_i coeff_i * x_i, with exact Q(sqrt2) entries. Free-variable
// ids are the basis indices r whose a_r a fit left undetermined, so one
// symbolic expansion serves an entire feasibility search.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(Scalar c) : constant_(std::move(c)) {}
  static LinearForm variable(int id, const Scalar& coeff = Scalar(1));

  const Scalar& constant() const { return constant_; }
  const std::map<int, Scalar>& coeffs() const { return coeffs_; }
  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }

  // The single (id, coeff) pair of a univariate form.
  std::pair<int, Scalar> single_variable() const;

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  LinearForm& operator*=(const Scalar& s);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, const Scalar& s) { return a *= s; }
  friend bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
  }

  // Evaluate under an assignment; every variable of the form must be bound.
  Scalar evaluate(const std::map<int, Scalar>& assignment) const;

  std::string to_string(const std::string& var_prefix = "a") const;

 private:
  Scalar constant_;
  std::map<int, Scalar> coeffs_;
};

}  // namespace svoa
