#include "qhpair/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "qhpair/linalg.hpp"

namespace qhpair {

namespace {

using IntRows = std::vector<std::vector<Integer>>;

IntRows to_int_rows(const Mat<Rational>& m) {
  IntRows rows(static_cast<std::size_t>(m.rows()),
               std::vector<Integer>(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_integer())
        throw PreconditionError("snf: matrix entry " + m(i, j).str() +
                                " is not an integer");
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          m(i, j).numerator();
    }
  return rows;
}

Mat<Rational> from_int_rows(const IntRows& rows, Index r, Index c) {
  Mat<Rational> m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      m(i, j) = Rational(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return m;
}

IntRows identity_rows(std::size_t n) {
  IntRows id(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Elementary operations mirrored into the transforms: rows act on `left`,
// columns on `right`.
struct SnfState {
  IntRows a;
  IntRows left;
  IntRows right;
  std::size_t m;
  std::size_t n;

  void swap_rows(std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(left[i], left[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : right) std::swap(row[i], row[j]);
  }
  // row_i -= q * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < n; ++c) a[i][c] -= q * a[j][c];
    for (std::size_t c = 0; c < m; ++c) left[i][c] -= q * left[j][c];
  }
  // col_i -= q * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < m; ++r) a[r][i] -= q * a[r][j];
    for (std::size_t r = 0; r < n; ++r) right[r][i] -= q * right[r][j];
  }
  void negate_row(std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : left[i]) x = -x;
  }
};

}  // namespace

SmithForm snf(const Mat<Rational>& matrix) {
  SnfState s{to_int_rows(matrix), identity_rows(static_cast<std::size_t>(matrix.rows())),
             identity_rows(static_cast<std::size_t>(matrix.cols())),
             static_cast<std::size_t>(matrix.rows()),
             static_cast<std::size_t>(matrix.cols())};
  std::vector<Integer> diagonal;
  const std::size_t k = std::min(s.m, s.n);
  for (std::size_t t = 0; t < k; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto find_pivot = [&](std::size_t& pi, std::size_t& pj) {
      bool found = false;
      Integer best;
      for (std::size_t i = t; i < s.m; ++i)
        for (std::size_t j = t; j < s.n; ++j) {
          if (s.a[i][j] == 0) continue;
          Integer v = abs(s.a[i][j]);
          if (!found || v < best) {
            best = v;
            pi = i;
            pj = j;
            found = true;
          }
        }
      return found;
    };
    std::size_t pi = 0, pj = 0;
    if (!find_pivot(pi, pj)) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < s.m; ++i) {
        if (s.a[i][t] == 0) continue;
        s.add_row(i, t, floor_div(s.a[i][t], s.a[t][t]));
        if (s.a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < s.n; ++j) {
        if (s.a[t][j] == 0) continue;
        s.add_col(j, t, floor_div(s.a[t][j], s.a[t][t]));
        if (s.a[t][j] != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder exists in row/column t; move it to the pivot.
        std::size_t bi = t, bj = t;
        Integer best = abs(s.a[t][t]);
        for (std::size_t i = t + 1; i < s.m; ++i)
          if (s.a[i][t] != 0 && abs(s.a[i][t]) < best) {
            best = abs(s.a[i][t]);
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < s.n; ++j)
          if (s.a[t][j] != 0 && abs(s.a[t][j]) < best) {
            best = abs(s.a[t][j]);
            bi = t;
            bj = j;
          }
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);
        continue;
      }
      // Divisibility condition on the trailing block.
      bool fixed = false;
      for (std::size_t i = t + 1; i < s.m && !fixed; ++i)
        for (std::size_t j = t + 1; j < s.n && !fixed; ++j) {
          Integer r;
          mpz_fdiv_r(r.get_mpz_t(), s.a[i][j].get_mpz_t(), s.a[t][t].get_mpz_t());
          if (r != 0) {
            s.add_row(t, i, Integer(-1));
            fixed = true;
          }
        }
      if (!fixed) break;
    }
    if (s.a[t][t] < 0) s.negate_row(t);
    diagonal.push_back(s.a[t][t]);
  }
  SmithForm out;
  out.diagonal = std::move(diagonal);
  out.left = from_int_rows(s.left, matrix.rows(), matrix.rows());
  out.right = from_int_rows(s.right, matrix.cols(), matrix.cols());
  return out;
}

Mat<Rational> clear_denominators(const Mat<Rational>& m, Integer* scale) {
  Integer l = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      Integer d = m(i, j).denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  if (scale) *scale = l;
  return m * Rational(l);
}

LatticeBasis::LatticeBasis(Mat<Rational> generators, Mat<Rational> gram)
    : generators_(std::move(generators)), gram_(std::move(gram)) {
  if (generators_.rows() != generators_.cols())
    throw PreconditionError("lattice generators must form a square matrix");
  if (gram_.rows() != generators_.rows() || gram_.cols() != generators_.rows())
    throw PreconditionError("gram matrix has the wrong shape");
  if (!(gram_ == gram_.transpose()))
    throw PreconditionError("gram matrix is not symmetric");
  for (Index k = 1; k <= gram_.rows(); ++k)
    if (linalg::determinant<Rational>(gram_.topLeftCorner(k, k)).sign() <= 0)
      throw PreconditionError("gram matrix is not positive definite");
  inverse_ = linalg::inverse_or_throw(generators_, "lattice generators");
  gram_inverse_ = linalg::inverse_or_throw(gram_, "gram matrix");
}

Vec<Rational> LatticeBasis::coordinates(const Vec<Rational>& v) const {
  return inverse_ * v;
}

bool LatticeBasis::contains(const Vec<Rational>& v) const {
  const Vec<Rational> c = coordinates(v);
  for (Index i = 0; i < c.size(); ++i)
    if (!c(i).is_integer()) return false;
  return true;
}

Rational LatticeBasis::inner(const Vec<Rational>& a, const Vec<Rational>& b) const {
  return (a.transpose() * gram_ * b)(0, 0);
}

Vec<Rational> LatticeBasis::vector_of(const LinearForm& c) const {
  return gram_inverse_ * c;
}

bool LatticeBasis::same_lattice(const LatticeBasis& other) const {
  if (rank() != other.rank() || !(gram_ == other.gram_)) return false;
  for (Index j = 0; j < rank(); ++j) {
    if (!contains(other.generators_.col(j))) return false;
    if (!other.contains(generators_.col(j))) return false;
  }
  return true;
}

namespace {

void sort_unique_checked(std::vector<Vec<Rational>>& reps) {
  std::sort(reps.begin(), reps.end(), lex_less);
  for (std::size_t i = 1; i < reps.size(); ++i)
    if (reps[i] == reps[i - 1])
      throw ComputationError("coset representatives are not distinct");
}

// Representatives of M / span(sigma) in ambient coordinates (unreduced).
std::pair<Integer, std::vector<Vec<Rational>>> raw_cosets(const LatticeBasis& m,
                                                         const Mat<Rational>& sigma) {
  if (sigma.rows() != m.rank() || sigma.cols() != m.rank())
    throw PreconditionError("sublattice generators must be a basis of the ambient space");
  const Mat<Rational> coords = m.generators().rows() == 0
                                   ? Mat<Rational>(0, 0)
                                   : Mat<Rational>(linalg::inverse_or_throw(
                                                       m.generators(), "lattice") *
                                                   sigma);
  for (Index i = 0; i < coords.rows(); ++i)
    for (Index j = 0; j < coords.cols(); ++j)
      if (!coords(i, j).is_integer())
        throw PreconditionError("sublattice generator is not in the lattice");
  if (linalg::determinant(coords).is_zero())
    throw PreconditionError("sublattice has infinite index (singular generators)");
  const SmithForm f = snf(coords);
  const Mat<Rational> left_inv = linalg::inverse_or_throw(f.left, "snf transform");
  Integer index = 1;
  for (const auto& d : f.diagonal) index *= d;

  std::vector<Vec<Rational>> reps;
  const Index n = m.rank();
  Vec<Rational> k = Vec<Rational>::Zero(n);
  for (;;) {
    reps.push_back(m.generators() * (left_inv * k));
    Index i = 0;
    for (; i < n; ++i) {
      k(i) += Rational(1);
      if (k(i) < Rational(f.diagonal[static_cast<std::size_t>(i)])) break;
      k(i) = Rational(0);
    }
    if (i == n) break;
  }
  return {index, std::move(reps)};
}

Vec<Rational> floor_vec(const Vec<Rational>& v) {
  Vec<Rational> r(v.size());
  for (Index i = 0; i < v.size(); ++i) r(i) = Rational(floor(v(i)));
  return r;
}

}  // namespace

CosetSystem lattice_quotient(const LatticeBasis& m,
                             const Mat<Rational>& sublattice_generators) {
  auto [index, reps] = raw_cosets(m, sublattice_generators);
  const Mat<Rational> inv = linalg::inverse_or_throw(sublattice_generators, "sublattice");
  for (auto& a : reps) a = a - sublattice_generators * floor_vec(inv * a);
  sort_unique_checked(reps);
  return {index, std::move(reps)};
}

CosetSystem coset_reps_in_box(const LatticeBasis& m, const Mat<Rational>& sigma,
                              const Vec<Rational>& t) {
  if (t.size() != m.rank()) throw PreconditionError("shift has the wrong dimension");
  if (linalg::rank(sigma) != m.rank() || sigma.cols() != m.rank())
    throw PreconditionError("sigma is not a basis");
  auto [index, reps] = raw_cosets(m, sigma);
  const Mat<Rational> inv = linalg::inverse_or_throw(sigma, "sigma");
  for (auto& a : reps) a = a + sigma * floor_vec(inv * (t - a));
  sort_unique_checked(reps);
  return {index, std::move(reps)};
}

LatticeBasis dual_lattice(const LatticeBasis& n) {
  const Mat<Rational> gi = linalg::inverse_or_throw(n.gram(), "gram");
  const Mat<Rational> ni = linalg::inverse_or_throw(n.generators(), "lattice");
  return LatticeBasis(gi * ni.transpose(), n.gram());
}

LatticeBasis intersect_subspace(const LatticeBasis& l,
                                const Mat<Rational>& subspace_basis) {
  const Index s = subspace_basis.cols();
  if (subspace_basis.rows() != l.rank())
    throw PreconditionError("subspace basis has the wrong ambient dimension");
  if (linalg::rank(subspace_basis) != s)
    throw PreconditionError("subspace basis vectors are dependent");
  const Mat<Rational> gram = subspace_basis.transpose() * l.gram() * subspace_basis;
  if (s == 0) return LatticeBasis(Mat<Rational>(0, 0), gram);
  const Mat<Rational> b = linalg::inverse_or_throw(l.generators(), "lattice") * subspace_basis;
  Integer scale;
  const Mat<Rational> bi = clear_denominators(b, &scale);
  const SmithForm f = snf(bi);
  if (static_cast<Index>(f.diagonal.size()) != s)
    throw ComputationError("intersect_subspace: unexpected rank deficiency");
  Mat<Rational> d = Mat<Rational>::Zero(s, s);
  for (Index i = 0; i < s; ++i)
    d(i, i) = Rational(scale, f.diagonal[static_cast<std::size_t>(i)]);
  return LatticeBasis(f.right * d, gram);
}

Mat<Rational> dual_covectors(const Mat<Rational>& generators) {
  return linalg::inverse_or_throw(generators, "lattice").transpose();
}

}  // namespace qhpair
