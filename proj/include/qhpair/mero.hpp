// The function class of every residue formula in the library: finite sums of
//
//   g(Y) e^{l(Y)} / ( prod L_i(Y)^{k_i} prod (1 - e^{b_j(Y)})^{m_j} )
//
// with g a polynomial and l, L_i, b_j rational linear forms in Y.
#ifndef QHPAIR_MERO_HPP
#define QHPAIR_MERO_HPP

#include <complex>
#include <vector>

#include "qhpair/polynomial.hpp"

namespace qhpair {

struct Factor {
  LinearForm form;
  int mult = 1;

  friend bool operator==(const Factor& a, const Factor& b) {
    return a.mult == b.mult && a.form == b.form;
  }
};

class MeroTerm {
 public:
  MeroTerm() = default;
  explicit MeroTerm(int rank);
  MeroTerm(Polynomial numerator, LinearForm exponent, std::vector<Factor> linear,
           std::vector<Factor> expden);

  static MeroTerm constant(int rank, const Rational& c);

  int rank() const { return rank_; }
  const Polynomial& numerator() const { return numerator_; }
  const LinearForm& exponent() const { return exponent_; }
  const std::vector<Factor>& linear() const { return linear_; }
  const std::vector<Factor>& expden() const { return expden_; }

  bool is_zero() const { return numerator_.is_zero(); }
  bool is_rational() const { return expden_.empty() && qhpair::is_zero(exponent_); }
  int linear_degree() const;
  int pole_order() const;

  /// Same denominator and exponent, so numerators can be added.
  bool same_shape(const MeroTerm& o) const;

  MeroTerm pullback(const Mat<Rational>& a) const;
  MeroTerm scaled(const Rational& c) const;
  friend MeroTerm operator*(const MeroTerm& a, const MeroTerm& b);

  Rational evaluate_exact(const Vec<Rational>& y) const;

  template <class T>
  T evaluate(const T* y) const {
    T value = numerator_.evaluate(y);
    if (!qhpair::is_zero(exponent_)) value *= std::exp(dot(exponent_, y));
    for (const auto& f : linear_) value /= ipow(dot(f.form, y), f.mult);
    for (const auto& f : expden_)
      value /= ipow(T(1) - std::exp(dot(f.form, y)), f.mult);
    return value;
  }

  friend bool operator==(const MeroTerm& a, const MeroTerm& b) {
    return a.same_shape(b) && a.numerator_ == b.numerator_;
  }

 private:
  template <class T>
  static T dot(const LinearForm& l, const T* y) {
    T s(0);
    for (Index j = 0; j < l.size(); ++j)
      if (!l(j).is_zero()) s += T(l(j).to_double()) * y[j];
    return s;
  }
  template <class T>
  static T ipow(T v, int k) {
    T r(1);
    for (int i = 0; i < k; ++i) r *= v;
    return r;
  }

  // Linear forms made primitive-integral with positive leading coefficient
  // (scale pushed into the numerator), equal factors merged, numerator
  // divisibility cancelled, factors sorted.
  void normalize();

  int rank_ = 0;
  Polynomial numerator_;
  LinearForm exponent_;
  std::vector<Factor> linear_;
  std::vector<Factor> expden_;
};

class MeroFunction {
 public:
  MeroFunction() = default;
  explicit MeroFunction(int rank) : rank_(rank) {}
  MeroFunction(int rank, std::vector<MeroTerm> terms);
  MeroFunction(const MeroTerm& term);  // NOLINT: implicit lift is convenient

  static MeroFunction constant(int rank, const Rational& c);
  /// 1 / prod forms.
  static MeroFunction simple_fraction(const std::vector<LinearForm>& forms);

  int rank() const { return rank_; }
  const std::vector<MeroTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  int pole_order() const;

  /// min over terms of (denominator degree - numerator degree); only
  /// meaningful for rational functions.
  int decay_degree() const;

  void add(const MeroTerm& t);
  MeroFunction& operator+=(const MeroFunction& o);
  MeroFunction& operator-=(const MeroFunction& o);
  friend MeroFunction operator+(MeroFunction a, const MeroFunction& b) { return a += b; }
  friend MeroFunction operator-(MeroFunction a, const MeroFunction& b) { return a -= b; }
  friend MeroFunction operator*(const MeroFunction& a, const MeroFunction& b);
  MeroFunction scaled(const Rational& c) const;

  MeroFunction pullback(const Mat<Rational>& a) const;

  /// Exact value of a rational function (no exponentials allowed).
  Rational evaluate_exact(const Vec<Rational>& y) const;

  template <class T>
  T evaluate(const T* y) const {
    T s(0);
    for (const auto& t : terms_) s += t.evaluate(y);
    return s;
  }
  template <class T>
  T evaluate(const Vec<T>& y) const {
    return evaluate(y.data());
  }

  /// Every linear and exponential denominator form, deduplicated.
  std::vector<LinearForm> denominator_forms() const;

  friend bool operator==(const MeroFunction& a, const MeroFunction& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

 private:
  int rank_ = 0;
  std::vector<MeroTerm> terms_;
};

/// Primitive integral multiple of l with positive leading coefficient, and
/// the scalar s with l = s * result.
LinearForm primitive_form(const LinearForm& l, Rational* scale = nullptr);

/// l and m differ by a nonzero scalar.
bool proportional(const LinearForm& l, const LinearForm& m);

}  // namespace qhpair

#endif  // QHPAIR_MERO_HPP
