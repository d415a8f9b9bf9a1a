#include "svoa/linear_form.hpp"

#include <sstream>
#include <stdexcept>

namespace svoa {

LinearForm LinearForm::variable(int id, const Scalar& coeff) {
  LinearForm f;
  if (!coeff.is_zero()) f.coeffs_[id] = coeff;
  return f;
}

std::pair<int, Scalar> LinearForm::single_variable() const {
  if (coeffs_.size() != 1)
    throw std::logic_error("LinearForm::single_variable: form is not univariate");
  return *coeffs_.begin();
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  constant_ += o.constant_;
  for (const auto& [id, c] : o.coeffs_) {
    auto it = coeffs_.find(id);
    if (it == coeffs_.end()) {
      coeffs_.emplace(id, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  constant_ -= o.constant_;
  for (const auto& [id, c] : o.coeffs_) {
    auto it = coeffs_.find(id);
    if (it == coeffs_.end()) {
      coeffs_.emplace(id, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  return *this;
}

LinearForm& LinearForm::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    constant_ = Scalar();
    coeffs_.clear();
    return *this;
  }
  constant_ *= s;
  for (auto& [id, c] : coeffs_) c *= s;
  return *this;
}

Scalar LinearForm::evaluate(const std::map<int, Scalar>& assignment) const {
  Scalar v = constant_;
  for (const auto& [id, c] : coeffs_) {
    auto it = assignment.find(id);
    if (it == assignment.end())
      throw std::logic_error("LinearForm::evaluate: unbound variable " +
                             std::to_string(id));
    v += c * it->second;
  }
  return v;
}

std::string LinearForm::to_string(const std::string& var_prefix) const {
  std::ostringstream out;
  bool first = true;
  if (!constant_.is_zero() || coeffs_.empty()) {
    out << constant_.to_string();
    first = false;
  }
  for (const auto& [id, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    if (!(c == Scalar(1))) out << "(" << c.to_string() << ")*";
    out << var_prefix << id;
  }
  return out.str();
}

}  // namespace svoa
