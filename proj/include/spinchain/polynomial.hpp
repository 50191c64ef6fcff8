#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace spinchain {

// Just enough univariate polynomial algebra for the re-expansion checks:
// add, multiply, differentiate, evaluate. Coefficient type is generic so
// the same code runs on exact rationals and on doubles.
template <typename T>
class Polynomial {
 public:
  Polynomial() : coeffs_(1, T{}) {}
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, T{});
    trim();
  }

  static Polynomial constant(const T& c) { return Polynomial({c}); }
  // c * x^k
  static Polynomial monomial(const T& c, std::size_t k) {
    std::vector<T> v(k + 1, T{});
    v[k] = c;
    return Polynomial(std::move(v));
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  // Coefficient of x^k (zero beyond the stored degree).
  T coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : T{};
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.coeffs_.size(), b.coeffs_.size()), T{});
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.coeffs_.size(), b.coeffs_.size()), T{});
    for (std::size_t i = 0; i < v.size(); ++i)
      v[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(a.coeffs_.size() + b.coeffs_.size() - 1, T{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
  }

  Polynomial derivative() const {
    if (coeffs_.size() == 1) return Polynomial();
    std::vector<T> v(coeffs_.size() - 1, T{});
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      v[i - 1] = coeffs_[i] * T(static_cast<long long>(i));
    return Polynomial(std::move(v));
  }

  T eval(const T& x) const {  // Horner
    T acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;)
      acc = acc * x + coeffs_[i];
    return acc;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == T{}) coeffs_.pop_back();
  }
  std::vector<T> coeffs_;  // coeffs_[k] multiplies x^k
};

}  // namespace spinchain
