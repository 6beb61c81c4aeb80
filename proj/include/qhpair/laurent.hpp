// Nested truncated Laurent series in Z_1, ..., Z_r realizing the regime
// |Z_r| << ... << |Z_1|. A tower of level k expands in Z_k; its
// coefficients are towers of level k - 1 and level 0 is a plain scalar.
//
// Each level records `prec`: every coefficient of exponent <= prec is known
// (an unstored exponent in that range is an exact zero); nothing is known
// above prec. kExact marks a level with no truncation at all.
#ifndef QHPAIR_LAURENT_HPP
#define QHPAIR_LAURENT_HPP

#include <complex>
#include <limits>
#include <vector>

#include "qhpair/polynomial.hpp"

namespace qhpair {

class InsufficientPrecision : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

inline constexpr int kExact = std::numeric_limits<int>::max();

class SeriesTower {
 public:
  SeriesTower() = default;

  static SeriesTower zero(int level);
  static SeriesTower constant(int level, const Rational& c);
  /// Level-k tower with a single coefficient `c` at exponent e.
  static SeriesTower lift(SeriesTower c, int e, int prec = kExact);
  /// Level-k tower from a contiguous run of coefficients starting at `val`.
  static SeriesTower from_coefficients(int level, int val, std::vector<SeriesTower> coeffs,
                                       int prec);

  int level() const { return level_; }
  int val() const { return val_; }
  int prec() const { return prec_; }
  int end() const { return val_ + static_cast<int>(coeffs_.size()); }
  const std::vector<SeriesTower>& coefficients() const { return coeffs_; }
  const Rational& scalar() const { return scalar_; }

  bool is_exact_zero() const;
  /// Lowest exponent that may carry a nonzero coefficient.
  long long valuation_bound() const;

  /// Coefficient of Z_level^e; throws InsufficientPrecision above prec.
  SeriesTower coefficient(int e) const;

  /// Coefficient of Z_k^{-1} taken at every level, innermost level first.
  Rational residue() const;

  /// Lowest stored exponent per level, indexed by level - 1.
  std::vector<long long> min_exponents() const;

  /// Drops exponents above limit[level - 1] at every level.
  SeriesTower truncated(const std::vector<long long>& limits) const;

  friend SeriesTower operator+(const SeriesTower& a, const SeriesTower& b);
  friend SeriesTower operator-(const SeriesTower& a, const SeriesTower& b);
  friend SeriesTower operator*(const SeriesTower& a, const SeriesTower& b);
  SeriesTower scaled(const Rational& c) const;
  SeriesTower pow(int k) const;

  /// Product that discards exponents above `limits` (per level); used when
  /// only low coefficients of a longer product are needed.
  static SeriesTower multiply(const SeriesTower& a, const SeriesTower& b,
                              const std::vector<long long>* limits);

  /// Sums the retained coefficients at the point z (z[0] = Z_1).
  std::complex<double> evaluate(const std::complex<double>* z) const;

  /// Retained coefficients agree exactly (precision is ignored).
  bool same_coefficients(const SeriesTower& o) const;

 private:
  void strip();

  int level_ = 0;
  int val_ = 0;
  int prec_ = kExact;
  std::vector<SeriesTower> coeffs_;
  Rational scalar_;
};

/// B_n with B_1 = -1/2. Thread safe; values are cached.
Rational bernoulli(int n);

/// Exact tower of a polynomial in Z_1..Z_level.
SeriesTower from_polynomial(const Polynomial& p, int level);

/// Polynomial tower keeping exponents <= cap at every level.
SeriesTower truncated_polynomial(const Polynomial& p, int level, int cap);

/// 1 / l(Z). l must not depend on variables beyond `level`.
SeriesTower expand_linform_inverse(const LinearForm& l, int level, int cap);

/// exp(l(Z)).
SeriesTower expand_exp_linear(const LinearForm& l, int level, int cap);

/// 1 / (1 - exp(b(Z))).
SeriesTower expand_one_minus_exp_inverse(const LinearForm& b, int level, int cap);

}  // namespace qhpair

#endif  // QHPAIR_LAURENT_HPP
