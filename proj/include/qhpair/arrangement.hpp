// Hyperplane arrangements: bases, circuits, no-broken-circuit diagonal
// bases and simple fractions.
#ifndef QHPAIR_ARRANGEMENT_HPP
#define QHPAIR_ARRANGEMENT_HPP

#include <cstdint>
#include <vector>

#include "qhpair/mero.hpp"
#include "qhpair/residue.hpp"

namespace qhpair {

/// Indices into an arrangement, listed in the arrangement's total order.
using OrderedBasis = std::vector<int>;

class Arrangement {
 public:
  Arrangement() = default;
  /// `order` lists the indices from smallest to largest; empty means the
  /// index order. Zero and duplicate forms are rejected.
  Arrangement(int rank, std::vector<LinearForm> forms, std::vector<int> order = {});

  int rank() const { return rank_; }
  int size() const { return static_cast<int>(forms_.size()); }
  const LinearForm& form(int i) const { return forms_[static_cast<std::size_t>(i)]; }
  const std::vector<LinearForm>& forms() const { return forms_; }
  const std::vector<int>& order() const { return order_; }
  /// Position of index i in the total order.
  int position(int i) const { return position_[static_cast<std::size_t>(i)]; }

  Arrangement with_order(std::vector<int> order) const {
    return Arrangement(rank_, forms_, std::move(order));
  }

  bool spans() const;
  /// Pairs (i, j), i < j, of distinct but proportional forms.
  std::vector<std::pair<int, int>> proportional_pairs() const;

  /// Sorts indices increasingly in the total order.
  OrderedBasis sorted(std::vector<int> indices) const;
  std::vector<LinearForm> forms_of(const OrderedBasis& b) const;

 private:
  int rank_ = 0;
  std::vector<LinearForm> forms_;
  std::vector<int> order_;
  std::vector<int> position_;
};

struct DiagonalBasis {
  std::vector<OrderedBasis> members;
  /// certificate(i, j) = Res^{members[i]}(phi_{members[j]}).
  Mat<Rational> certificate;
};

std::vector<OrderedBasis> enumerate_bases(const Arrangement& a);

/// Minimal dependent subsets, each sorted by index.
std::vector<std::vector<int>> circuits(const Arrangement& a);

/// No-broken-circuit bases of the stored order, certified diagonal.
DiagonalBasis diagonal_basis(const Arrangement& a, const ResidueOptions& options = {});

/// Res^{tau}(phi_sigma) for every tau, sigma in `members`.
Mat<Rational> residue_certificate(const Arrangement& a, const std::vector<OrderedBasis>& members,
                                  const ResidueOptions& options = {});

MeroFunction simple_fraction(const Arrangement& a, const OrderedBasis& sigma);

/// Coefficients Res^tau(phi_sigma) of phi_sigma in the diagonal basis.
std::vector<Rational> expand_in_diagonal_basis(const Arrangement& a, const DiagonalBasis& ob,
                                               const OrderedBasis& sigma,
                                               const ResidueOptions& options = {});

/// Result of testing phi_sigma = sum_tau Res^tau(phi_sigma) phi_tau exactly at
/// seeded random regular rational points, for every basis sigma.
struct SpanningCheck {
  int bases = 0;
  int points = 0;
  int failures = 0;
  std::vector<std::vector<Rational>> coefficients;  // per basis, in member order
};
SpanningCheck check_spanning(const Arrangement& a, const DiagonalBasis& ob, std::uint64_t seed,
                             int points, const ResidueOptions& options = {});

struct ExtendedArrangement {
  Arrangement arrangement;
  DiagonalBasis basis;
};

/// Lifts a diagonal basis of a rank r-1 quotient arrangement (forms on the
/// first r-1 coordinates) and appends e1, which must have a nonzero last
/// coordinate, as the last element of every member.
ExtendedArrangement extend_diagonal_basis(const Arrangement& quotient, const DiagonalBasis& ob,
                                          const LinearForm& e1,
                                          const ResidueOptions& options = {});

}  // namespace qhpair

#endif  // QHPAIR_ARRANGEMENT_HPP
