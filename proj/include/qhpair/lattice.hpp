// Integer lattices in a fixed ambient coordinate system.
//
// Vectors are written in the ambient Y-coordinates (the values Y_j(v)); the
// inner product is always carried explicitly as a Gram matrix on those
// coordinates.
#ifndef QHPAIR_LATTICE_HPP
#define QHPAIR_LATTICE_HPP

#include <vector>

#include "qhpair/core.hpp"

namespace qhpair {

/// left * input * right = diag(diagonal, 0, ...), left/right unimodular,
/// diagonal[i] | diagonal[i+1].
struct SmithForm {
  std::vector<Integer> diagonal;
  Mat<Rational> left;
  Mat<Rational> right;
};

/// Smith normal form of an integer matrix (entries must be integral).
SmithForm snf(const Mat<Rational>& matrix);

/// Scales a rational matrix to an integer one by the lcm of denominators.
Mat<Rational> clear_denominators(const Mat<Rational>& m, Integer* scale = nullptr);

class LatticeBasis {
 public:
  LatticeBasis() = default;
  /// Columns of `generators` span the lattice; `gram` is the ambient inner
  /// product. Throws PreconditionError if generators are singular or gram is
  /// not symmetric positive definite.
  LatticeBasis(Mat<Rational> generators, Mat<Rational> gram);

  Index rank() const { return generators_.cols(); }
  const Mat<Rational>& generators() const { return generators_; }
  const Mat<Rational>& gram() const { return gram_; }

  /// Coordinates of v in the generator basis.
  Vec<Rational> coordinates(const Vec<Rational>& v) const;
  bool contains(const Vec<Rational>& v) const;
  Rational inner(const Vec<Rational>& a, const Vec<Rational>& b) const;
  /// Covector <v, .> in Y-coefficients.
  LinearForm covector(const Vec<Rational>& v) const { return gram_ * v; }
  /// Vector representing the covector c via the inner product.
  Vec<Rational> vector_of(const LinearForm& c) const;

  /// Same generated lattice (gram is compared too).
  bool same_lattice(const LatticeBasis& other) const;

 private:
  Mat<Rational> generators_;
  Mat<Rational> gram_;
  Mat<Rational> inverse_;
  Mat<Rational> gram_inverse_;
};

struct CosetSystem {
  Integer index;
  std::vector<Vec<Rational>> representatives;
};

/// M / span(sublattice_generators) with representatives reduced into the
/// half-open parallelepiped of the sublattice generators, sorted
/// lexicographically.
CosetSystem lattice_quotient(const LatticeBasis& m,
                             const Mat<Rational>& sublattice_generators);

/// The u in M with t - u = sum n_a a, 0 <= n_a < 1 over the columns a of
/// sigma; sorted lexicographically. |result| = |M / M_sigma|.
CosetSystem coset_reps_in_box(const LatticeBasis& m, const Mat<Rational>& sigma,
                              const Vec<Rational>& t);

/// {m : <m, n> in Z for all n in N}, expressed in the same ambient
/// coordinates with the same Gram matrix.
LatticeBasis dual_lattice(const LatticeBasis& n);

/// Lattice of points of `l` lying in span(subspace_basis), written in the
/// coordinates of `subspace_basis` with the restricted Gram matrix.
LatticeBasis intersect_subspace(const LatticeBasis& l,
                                const Mat<Rational>& subspace_basis);

/// Covector lattice dual to a lattice given in some coordinates: columns
/// are the covector coefficients c with c . n in Z.
Mat<Rational> dual_covectors(const Mat<Rational>& generators);

}  // namespace qhpair

#endif  // QHPAIR_LATTICE_HPP
