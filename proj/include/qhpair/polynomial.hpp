// Sparse multivariate polynomials with exact rational coefficients.
#ifndef QHPAIR_POLYNOMIAL_HPP
#define QHPAIR_POLYNOMIAL_HPP

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "qhpair/core.hpp"

namespace qhpair {

class Polynomial {
 public:
  using Monomial = std::vector<int>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int j);
  static Polynomial linear(const LinearForm& l);

  int nvars() const { return nvars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(int var) const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(int k) const;

  /// Exact quotient by a nonzero linear form, or nullopt if it does not divide.
  std::optional<Polynomial> divide_linear(const LinearForm& l) const;

  /// Substitutes Y = a * x; `a` is nvars() x m and the result lives in m
  /// variables.
  Polynomial pullback(const Mat<Rational>& a) const;

  Rational evaluate(const Vec<Rational>& y) const;

  template <class T>
  T evaluate(const T* y) const {
    T total(0);
    for (const auto& [m, c] : terms_) {
      T v(c.to_double());
      for (int j = 0; j < nvars_; ++j)
        for (int e = 0; e < m[static_cast<std::size_t>(j)]; ++e) v *= y[j];
      total += v;
    }
    return total;
  }

 private:
  int nvars_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace qhpair

#endif  // QHPAIR_POLYNOMIAL_HPP
