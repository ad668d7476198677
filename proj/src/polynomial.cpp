#include "fivevertex/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "fivevertex/errors.hpp"

namespace fv {

ExactPolynomial::ExactPolynomial(std::vector<mpq_class> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

ExactPolynomial ExactPolynomial::constant(const mpq_class& c) { return ExactPolynomial({c}); }

ExactPolynomial ExactPolynomial::monomial(const mpq_class& c, std::size_t power) {
  std::vector<mpq_class> coeffs(power + 1);
  coeffs[power] = c;
  return ExactPolynomial(std::move(coeffs));
}

void ExactPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpq_class ExactPolynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpq_class(0);
}

mpq_class ExactPolynomial::leading_coefficient() const {
  return coeffs_.empty() ? mpq_class(0) : coeffs_.back();
}

long ExactPolynomial::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return static_cast<long>(i);
  return -1;
}

mpq_class ExactPolynomial::evaluate(const mpq_class& y) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

ExactPolynomial ExactPolynomial::shifted_down(std::size_t k) const {
  for (std::size_t i = 0; i < std::min(k, coeffs_.size()); ++i)
    if (sgn(coeffs_[i]) != 0)
      throw ConsistencyError("shifted_down: nonzero coefficient below the shift");
  if (k >= coeffs_.size()) return {};
  return ExactPolynomial(std::vector<mpq_class>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator*=(const ExactPolynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<mpq_class> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

ExactPolynomial& ExactPolynomial::operator*=(const mpq_class& rhs) {
  for (auto& c : coeffs_) c *= rhs;
  trim();
  return *this;
}

ExactPolynomial operator-(const ExactPolynomial& p) {
  ExactPolynomial out = p;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

ExactPolynomial operator/(const ExactPolynomial& num, const ExactPolynomial& den) {
  if (den.is_zero()) throw ConsistencyError("polynomial division by zero");
  if (num.is_zero()) return {};
  if (num.degree() < den.degree()) throw ConsistencyError("inexact polynomial division");
  std::vector<mpq_class> rem = num.coeffs_;
  const std::size_t dn = den.coeffs_.size();
  std::vector<mpq_class> quot(rem.size() - dn + 1);
  const mpq_class& lead = den.coeffs_.back();
  for (std::size_t i = quot.size(); i-- > 0;) {
    mpq_class q = rem[i + dn - 1] / lead;
    quot[i] = q;
    if (sgn(q) == 0) continue;
    for (std::size_t j = 0; j < dn; ++j) rem[i + j] -= q * den.coeffs_[j];
  }
  for (std::size_t i = 0; i + 1 < dn; ++i)
    if (sgn(rem[i]) != 0) throw ConsistencyError("inexact polynomial division");
  return ExactPolynomial(std::move(quot));
}

std::string ExactPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[i].get_str();
    if (i > 0) os << "*y^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace fv
