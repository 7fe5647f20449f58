#pragma once

#include <vector>

#include "toda/errors.hpp"
#include "toda/matrix.hpp"

namespace toda {

// Dense polynomial in z with complex coefficients, stored ascending. The
// coefficient array is structural: its size fixes the represented degree and
// trailing zeros are kept, so degree bounds can be asserted on construction
// results.
class Polynomial {
 public:
  Polynomial() : c_{cplx(0.0)} {}
  explicit Polynomial(std::vector<cplx> c) : c_(std::move(c)) {
    if (c_.empty()) c_.push_back(cplx(0.0));
  }

  static Polynomial constant(cplx v) { return Polynomial({v}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }

  cplx coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return cplx(0.0);
    return c_[static_cast<size_t>(k)];
  }

  cplx eval(cplx z) const {
    cplx acc(0.0);
    for (int k = degree(); k >= 0; --k) acc = acc * z + c_[static_cast<size_t>(k)];
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<cplx> c(std::max(c_.size(), o.c_.size()), cplx(0.0));
    for (size_t k = 0; k < c.size(); ++k)
      c[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
    return Polynomial(std::move(c));
  }

  Polynomial operator-(const Polynomial& o) const {
    std::vector<cplx> c(std::max(c_.size(), o.c_.size()), cplx(0.0));
    for (size_t k = 0; k < c.size(); ++k)
      c[k] = coeff(static_cast<int>(k)) - o.coeff(static_cast<int>(k));
    return Polynomial(std::move(c));
  }

  Polynomial operator*(const Polynomial& o) const {
    std::vector<cplx> c(c_.size() + o.c_.size() - 1, cplx(0.0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(c));
  }

  Polynomial scaled(cplx s) const {
    std::vector<cplx> c(c_);
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }

 private:
  std::vector<cplx> c_;
};

inline double max_abs_coeff(const Polynomial& p) {
  double m = 0.0;
  for (const auto& v : p.coeffs()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_coeff_diff(const Polynomial& p, const Polynomial& q) {
  return max_abs_coeff(p - q);
}

}  // namespace toda
