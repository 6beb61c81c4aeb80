// Exact scalar type, Eigen aliases and the error hierarchy shared by every
// module of the library.
#ifndef QHPAIR_CORE_HPP
#define QHPAIR_CORE_HPP

#include <gmpxx.h>

#include <Eigen/Core>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qhpair {

// Error categories map one-to-one onto CLI exit codes (2, 3, 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ComputationError : public Error {
 public:
  using Error::Error;
};

using Integer = mpz_class;

/// Arbitrary-precision rational kept in canonical form (positive
/// denominator, coprime numerator).
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v) : q_(Integer(std::to_string(v))) {}
  Rational(unsigned long v) : q_(v) {}
  explicit Rational(const Integer& n) : q_(n) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
  static Rational parse(std::string_view text);

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }
  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ComputationError("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.q_ = -a.q_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Largest integer <= r.
Integer floor(const Rational& r);

/// r - floor(r), always in [0, 1).
Rational fractional_part(const Rational& r);

Rational pow(const Rational& base, int exponent);

Rational factorial(int n);

Rational binomial(int n, int k);

/// Generalized binomial coefficient C(a, k) for integer a (possibly
/// negative) and k >= 0.
Rational binomial_general(int a, int k);

}  // namespace qhpair

namespace Eigen {

template <>
struct NumTraits<qhpair::Rational> : GenericNumTraits<qhpair::Rational> {
  using Real = qhpair::Rational;
  using NonInteger = qhpair::Rational;
  using Literal = qhpair::Rational;
  using Nested = qhpair::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qhpair {

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

/// Coefficients of a covector in the ambient Y-coordinates.
using LinearForm = Vec<Rational>;

template <class Scalar>
Vec<Scalar> make_vec(std::initializer_list<Scalar> values) {
  Vec<Scalar> v(static_cast<Index>(values.size()));
  Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

inline LinearForm form(std::initializer_list<Rational> values) {
  return make_vec<Rational>(values);
}

/// Row-major literal helper: mat({{1, 2}, {3, 4}}).
Mat<Rational> mat(std::initializer_list<std::initializer_list<Rational>> rows);

inline bool is_zero(const Vec<Rational>& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

bool lex_less(const Vec<Rational>& a, const Vec<Rational>& b);

template <class Out>
Vec<Out> to_numeric(const Vec<Rational>& v) {
  Vec<Out> r(v.size());
  for (Index i = 0; i < v.size(); ++i) r(i) = Out(v(i).to_double());
  return r;
}

template <class Out>
Mat<Out> to_numeric(const Mat<Rational>& m) {
  Mat<Out> r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = Out(m(i, j).to_double());
  return r;
}

std::string to_string(const Vec<Rational>& v);

}  // namespace qhpair

#endif  // QHPAIR_CORE_HPP
