// Type A root data in Y-coordinates.
//
// Vectors are written by their values Y_j = e_j(X) on the simple roots, so
// fundamental weights are the unit vectors. Covectors are coefficient vectors
// on Y, the simple root e_j being the unit covector. The inner product on
// vectors is the inverse Cartan matrix, and <alpha, v> = alpha . v for a root
// alpha, since roots are identified with coroots.
#ifndef QHPAIR_ROOTSYSTEM_HPP
#define QHPAIR_ROOTSYSTEM_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qhpair/arrangement.hpp"
#include "qhpair/lattice.hpp"
#include "qhpair/polynomial.hpp"

namespace qhpair {

class RootSystem {
 public:
  /// SU(n), n >= 2.
  explicit RootSystem(int n);
  /// "su2", "su3", ... (case-insensitive).
  static RootSystem parse(std::string_view selector);

  int n() const { return n_; }
  int rank() const { return n_ - 1; }
  std::string name() const { return "su" + std::to_string(n_); }

  const std::vector<LinearForm>& simple_roots() const { return simple_; }
  /// gamma_jk = Y_j + ... + Y_{k-1}, ordered by height, then by j.
  const std::vector<LinearForm>& positive_roots() const { return positive_; }
  /// (j, k), 1-based, of each positive root.
  const std::vector<std::pair<int, int>>& root_labels() const { return labels_; }

  const Mat<Rational>& cartan() const { return cartan_; }
  /// Inner product on Y-coordinate vectors (inverse Cartan matrix).
  const Mat<Rational>& gram() const { return gram_; }
  const LatticeBasis& integer_lattice() const { return integer_; }
  const LatticeBasis& weight_lattice() const { return weight_; }
  Vec<Rational> rho() const { return Vec<Rational>::Constant(rank(), Rational(1)); }

  /// The positive roots as an arrangement in the default order.
  Arrangement root_arrangement() const;
  /// Vector in t corresponding to a covector.
  Vec<Rational> vector_of(const LinearForm& c) const { return cartan_ * c; }

  bool is_regular(const Vec<Rational>& v) const;

 private:
  int n_;
  std::vector<LinearForm> simple_;
  std::vector<LinearForm> positive_;
  std::vector<std::pair<int, int>> labels_;
  Mat<Rational> cartan_;
  Mat<Rational> gram_;
  LatticeBasis integer_;
  LatticeBasis weight_;
};

/// dim V_lambda for dominant lambda (fundamental-weight coordinates).
Integer weyl_dim(const RootSystem& rs, const Vec<Rational>& lambda);

/// Regular integral weights with |coordinates| <= bound, in lexicographic order.
std::vector<Vec<Rational>> enumerate_regular_weights(const RootSystem& rs, int bound);

/// Strictly dominant weights with coordinates in [1, bound].
std::vector<Vec<Rational>> dominant_regular_weights(const RootSystem& rs, int bound);

/// Weyl group element as a permutation pi of {0..n-1}, acting by
/// (w X)_i = X_{pi(i)}.
using Permutation = std::vector<int>;

/// All of S_n in lexicographic order.
std::vector<Permutation> weyl_group(const RootSystem& rs);
/// Permutations fixing the last coordinate (W_{n-1}).
std::vector<Permutation> weyl_subgroup(const RootSystem& rs);

/// Matrix A with Y(w X) = A Y(X).
Mat<Rational> weyl_matrix(const RootSystem& rs, const Permutation& w);

/// Distinct images of lambda, sorted lexicographically.
std::vector<Vec<Rational>> weyl_orbit(const RootSystem& rs, const Vec<Rational>& lambda);

/// Componentwise fractional part, in [0, 1).
Vec<Rational> fractional_reduce(const Vec<Rational>& gamma);

/// Product of the positive roots.
Polynomial dd_poly(const RootSystem& rs);

/// vol G / vol T = prod 1 / (2 pi <alpha, rho>).
double vol_ratio(const RootSystem& rs);

/// prod <alpha, rho> over positive roots.
Integer rho_product(const RootSystem& rs);

}  // namespace qhpair

#endif  // QHPAIR_ROOTSYSTEM_HPP
