#include "qhpair/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "qhpair/linalg.hpp"

namespace qhpair {

Arrangement::Arrangement(int rank, std::vector<LinearForm> forms, std::vector<int> order)
    : rank_(rank), forms_(std::move(forms)), order_(std::move(order)) {
  if (rank < 0) throw PreconditionError("negative arrangement rank");
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    if (forms_[i].size() != rank)
      throw PreconditionError("arrangement form " + std::to_string(i + 1) + " has the wrong length");
    if (is_zero(forms_[i]))
      throw PreconditionError("arrangement form " + std::to_string(i + 1) + " is zero");
    for (std::size_t j = 0; j < i; ++j)
      if (forms_[j] == forms_[i])
        throw PreconditionError("arrangement forms " + std::to_string(j + 1) + " and " +
                                std::to_string(i + 1) + " are equal");
  }
  if (order_.empty()) {
    order_.resize(forms_.size());
    std::iota(order_.begin(), order_.end(), 0);
  }
  if (order_.size() != forms_.size())
    throw PreconditionError("order must list every arrangement index exactly once");
  position_.assign(forms_.size(), -1);
  for (std::size_t p = 0; p < order_.size(); ++p) {
    const int i = order_[p];
    if (i < 0 || i >= size() || position_[static_cast<std::size_t>(i)] >= 0)
      throw PreconditionError("order must list every arrangement index exactly once");
    position_[static_cast<std::size_t>(i)] = static_cast<int>(p);
  }
}

namespace {

Mat<Rational> rows_of(const std::vector<LinearForm>& forms, int rank) {
  Mat<Rational> m(static_cast<Index>(forms.size()), rank);
  for (std::size_t i = 0; i < forms.size(); ++i) m.row(static_cast<Index>(i)) = forms[i].transpose();
  return m;
}

int rank_of(const Arrangement& a, const std::vector<int>& idx) {
  std::vector<LinearForm> f;
  for (int i : idx) f.push_back(a.form(i));
  return static_cast<int>(linalg::rank(rows_of(f, a.rank())));
}

// Calls fn on every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_subset(int n, int k, Fn fn) {
  if (k > n) return;
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    fn(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

bool Arrangement::spans() const {
  std::vector<int> all(forms_.size());
  std::iota(all.begin(), all.end(), 0);
  return rank_of(*this, all) == rank_;
}

std::vector<std::pair<int, int>> Arrangement::proportional_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (proportional(form(i), form(j))) out.emplace_back(i, j);
  return out;
}

OrderedBasis Arrangement::sorted(std::vector<int> indices) const {
  std::sort(indices.begin(), indices.end(),
            [&](int x, int y) { return position(x) < position(y); });
  return indices;
}

std::vector<LinearForm> Arrangement::forms_of(const OrderedBasis& b) const {
  std::vector<LinearForm> out;
  for (int i : b) {
    if (i < 0 || i >= size()) throw PreconditionError("basis index out of range");
    out.push_back(form(i));
  }
  return out;
}

namespace {

bool positions_less(const Arrangement& a, const OrderedBasis& x, const OrderedBasis& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [&](int p, int q) { return a.position(p) < a.position(q); });
}

}  // namespace

std::vector<OrderedBasis> enumerate_bases(const Arrangement& a) {
  std::vector<OrderedBasis> out;
  if (a.rank() == 0) return {OrderedBasis{}};
  for_each_subset(a.size(), a.rank(), [&](const std::vector<int>& c) {
    if (rank_of(a, c) == a.rank()) out.push_back(a.sorted(c));
  });
  std::sort(out.begin(), out.end(),
            [&](const OrderedBasis& x, const OrderedBasis& y) { return positions_less(a, x, y); });
  return out;
}

std::vector<std::vector<int>> circuits(const Arrangement& a) {
  std::vector<std::vector<int>> out;
  for (int k = 2; k <= std::min(a.size(), a.rank() + 1); ++k) {
    for_each_subset(a.size(), k, [&](const std::vector<int>& c) {
      if (rank_of(a, c) != k - 1) return;
      for (int drop = 0; drop < k; ++drop) {
        std::vector<int> sub;
        for (int j = 0; j < k; ++j)
          if (j != drop) sub.push_back(c[static_cast<std::size_t>(j)]);
        if (rank_of(a, sub) != k - 1) return;
      }
      out.push_back(c);
    });
  }
  return out;
}

MeroFunction simple_fraction(const Arrangement& a, const OrderedBasis& sigma) {
  if (static_cast<int>(sigma.size()) != a.rank())
    throw PreconditionError("simple fraction needs a full basis");
  if (a.rank() == 0) return MeroFunction::constant(0, Rational(1));
  return MeroFunction::simple_fraction(a.forms_of(sigma));
}

Mat<Rational> residue_certificate(const Arrangement& a, const std::vector<OrderedBasis>& members,
                                  const ResidueOptions& options) {
  const Index n = static_cast<Index>(members.size());
  Mat<Rational> cert(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto tau = a.forms_of(members[static_cast<std::size_t>(i)]);
    for (Index j = 0; j < n; ++j)
      cert(i, j) = res_tau(tau, simple_fraction(a, members[static_cast<std::size_t>(j)]), options);
  }
  return cert;
}

DiagonalBasis diagonal_basis(const Arrangement& a, const ResidueOptions& options) {
  if (!a.spans()) throw PreconditionError("arrangement does not span the ambient space");
  std::vector<std::vector<int>> broken;
  for (auto c : circuits(a)) {
    const auto smallest = std::min_element(
        c.begin(), c.end(), [&](int x, int y) { return a.position(x) < a.position(y); });
    c.erase(smallest);
    std::sort(c.begin(), c.end());
    broken.push_back(std::move(c));
  }
  DiagonalBasis db;
  for (const auto& b : enumerate_bases(a)) {
    std::vector<int> s = b;
    std::sort(s.begin(), s.end());
    const bool nbc = std::none_of(broken.begin(), broken.end(), [&](const std::vector<int>& bc) {
      return std::includes(s.begin(), s.end(), bc.begin(), bc.end());
    });
    if (nbc) db.members.push_back(b);
  }
  db.certificate = residue_certificate(a, db.members, options);
  const Index n = static_cast<Index>(db.members.size());
  if (!(db.certificate == Mat<Rational>::Identity(n, n)))
    throw ComputationError("diagonal basis certificate is not the identity");
  return db;
}

std::vector<Rational> expand_in_diagonal_basis(const Arrangement& a, const DiagonalBasis& ob,
                                               const OrderedBasis& sigma,
                                               const ResidueOptions& options) {
  const MeroFunction phi = simple_fraction(a, sigma);
  std::vector<Rational> out;
  for (const auto& tau : ob.members) out.push_back(res_tau(a.forms_of(tau), phi, options));
  return out;
}

ExtendedArrangement extend_diagonal_basis(const Arrangement& quotient, const DiagonalBasis& ob,
                                          const LinearForm& e1, const ResidueOptions& options) {
  const int r = quotient.rank() + 1;
  if (e1.size() != r) throw PreconditionError("e1 has the wrong length");
  if (e1(r - 1).is_zero())
    throw PreconditionError("e1 must have a nonzero last coordinate (transverse to the quotient)");
  std::vector<LinearForm> forms;
  for (const auto& f : quotient.forms()) {
    LinearForm g = LinearForm::Zero(r);
    g.head(r - 1) = f;
    forms.push_back(std::move(g));
  }
  forms.push_back(e1);
  std::vector<int> order = quotient.order();
  order.push_back(quotient.size());
  ExtendedArrangement out{Arrangement(r, std::move(forms), std::move(order)), {}};
  for (const auto& m : ob.members) {
    OrderedBasis b = m;
    b.push_back(quotient.size());
    out.basis.members.push_back(std::move(b));
  }
  out.basis.certificate = residue_certificate(out.arrangement, out.basis.members, options);
  const Index n = static_cast<Index>(out.basis.members.size());
  if (!(out.basis.certificate == Mat<Rational>::Identity(n, n)))
    throw ComputationError("extended diagonal basis certificate is not the identity");
  return out;
}

SpanningCheck check_spanning(const Arrangement& a, const DiagonalBasis& ob, std::uint64_t seed,
                             int points, const ResidueOptions& options) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 7);
  std::vector<Vec<Rational>> ys;
  while (static_cast<int>(ys.size()) < points) {
    Vec<Rational> y(a.rank());
    for (Index i = 0; i < y.size(); ++i) y(i) = Rational(num(rng), den(rng));
    bool regular = true;
    for (const auto& f : a.forms()) regular = regular && !f.dot(y).is_zero();
    if (regular) ys.push_back(y);
  }
  std::vector<MeroFunction> phis;
  for (const auto& m : ob.members) phis.push_back(simple_fraction(a, m));

  SpanningCheck out;
  out.points = points;
  for (const auto& sigma : enumerate_bases(a)) {
    ++out.bases;
    auto c = expand_in_diagonal_basis(a, ob, sigma, options);
    const MeroFunction phi = simple_fraction(a, sigma);
    for (const auto& y : ys) {
      Rational r = phi.evaluate_exact(y);
      for (std::size_t k = 0; k < c.size(); ++k) r -= c[k] * phis[k].evaluate_exact(y);
      if (!r.is_zero()) ++out.failures;
    }
    out.coefficients.push_back(std::move(c));
  }
  return out;
}

}  // namespace qhpair
