#include "qhpair/rootsystem.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "qhpair/linalg.hpp"

namespace qhpair {

RootSystem::RootSystem(int n) : n_(n) {
  if (n < 2) throw PreconditionError("SU(n) needs n >= 2");
  const int r = n - 1;
  for (int j = 0; j < r; ++j) {
    LinearForm e = LinearForm::Zero(r);
    e(j) = Rational(1);
    simple_.push_back(e);
  }
  for (int h = 1; h <= r; ++h) {
    for (int j = 0; j + h <= r; ++j) {
      LinearForm g = LinearForm::Zero(r);
      for (int l = j; l < j + h; ++l) g(l) = Rational(1);
      positive_.push_back(g);
      labels_.emplace_back(j + 1, j + h + 1);
    }
  }
  cartan_ = Mat<Rational>::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    cartan_(i, i) = Rational(2);
    if (i + 1 < r) cartan_(i, i + 1) = cartan_(i + 1, i) = Rational(-1);
  }
  gram_ = linalg::inverse_or_throw(cartan_, "Cartan matrix");
  integer_ = LatticeBasis(cartan_, gram_);
  weight_ = LatticeBasis(Mat<Rational>::Identity(r, r), gram_);
}

RootSystem RootSystem::parse(std::string_view selector) {
  std::string s;
  for (char c : selector) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s.size() < 3 || s.compare(0, 2, "su") != 0 ||
      !std::all_of(s.begin() + 2, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("group selector must look like su2, su3, ...: '" + std::string(selector) + "'");
  if (s.size() > 5) throw PreconditionError("group rank too large: " + s);
  return RootSystem(std::stoi(s.substr(2)));
}

Arrangement RootSystem::root_arrangement() const { return Arrangement(rank(), positive_); }

bool RootSystem::is_regular(const Vec<Rational>& v) const {
  return std::none_of(positive_.begin(), positive_.end(),
                      [&](const LinearForm& a) { return a.dot(v).is_zero(); });
}

Integer weyl_dim(const RootSystem& rs, const Vec<Rational>& lambda) {
  if (lambda.size() != rs.rank()) throw PreconditionError("weight has the wrong length");
  for (Index i = 0; i < lambda.size(); ++i)
    if (!lambda(i).is_integer() || lambda(i).sign() < 0)
      throw PreconditionError("weyl_dim needs a dominant integral weight");
  const Vec<Rational> shifted = lambda + rs.rho();
  Rational d(1);
  for (const auto& a : rs.positive_roots()) d *= a.dot(shifted) / a.dot(rs.rho());
  if (!d.is_integer()) throw ComputationError("Weyl dimension is not an integer");
  return d.numerator();
}

namespace {

void box_scan(int r, int lo, int hi, const std::function<void(const Vec<Rational>&)>& fn) {
  if (hi < lo) return;
  std::vector<int> c(static_cast<std::size_t>(r), lo);
  for (;;) {
    Vec<Rational> v(r);
    for (int j = 0; j < r; ++j) v(j) = Rational(c[static_cast<std::size_t>(j)]);
    fn(v);
    int j = r - 1;
    while (j >= 0 && c[static_cast<std::size_t>(j)] == hi) c[static_cast<std::size_t>(j--)] = lo;
    if (j < 0) return;
    ++c[static_cast<std::size_t>(j)];
  }
}

}  // namespace

std::vector<Vec<Rational>> enumerate_regular_weights(const RootSystem& rs, int bound) {
  std::vector<Vec<Rational>> out;
  if (bound < 1) return out;
  box_scan(rs.rank(), -bound, bound, [&](const Vec<Rational>& v) {
    if (rs.is_regular(v)) out.push_back(v);
  });
  return out;
}

std::vector<Vec<Rational>> dominant_regular_weights(const RootSystem& rs, int bound) {
  std::vector<Vec<Rational>> out;
  box_scan(rs.rank(), 1, bound, [&](const Vec<Rational>& v) { out.push_back(v); });
  return out;
}

std::vector<Permutation> weyl_group(const RootSystem& rs) {
  Permutation p(static_cast<std::size_t>(rs.n()));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Permutation> weyl_subgroup(const RootSystem& rs) {
  std::vector<Permutation> out;
  for (auto& p : weyl_group(rs))
    if (p.back() == rs.n() - 1) out.push_back(std::move(p));
  return out;
}

Mat<Rational> weyl_matrix(const RootSystem& rs, const Permutation& w) {
  const int n = rs.n(), r = rs.rank();
  if (static_cast<int>(w.size()) != n) throw PreconditionError("permutation has the wrong length");
  // X_i = S_i + const with S_i = Y_i + ... + Y_{n-1}, S_n = 0.
  auto s = [&](int i) {
    LinearForm v = LinearForm::Zero(r);
    for (int l = i; l < r; ++l) v(l) = Rational(1);
    return v;
  };
  Mat<Rational> a(r, r);
  for (int j = 0; j < r; ++j)
    a.row(j) = (s(w[static_cast<std::size_t>(j)]) - s(w[static_cast<std::size_t>(j + 1)])).transpose();
  return a;
}

std::vector<Vec<Rational>> weyl_orbit(const RootSystem& rs, const Vec<Rational>& lambda) {
  std::vector<Vec<Rational>> out;
  for (const auto& w : weyl_group(rs)) {
    Vec<Rational> v = weyl_matrix(rs, w) * lambda;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

Vec<Rational> fractional_reduce(const Vec<Rational>& gamma) {
  Vec<Rational> out(gamma.size());
  for (Index i = 0; i < gamma.size(); ++i) out(i) = fractional_part(gamma(i));
  return out;
}

Polynomial dd_poly(const RootSystem& rs) {
  Polynomial p = Polynomial::constant(rs.rank(), Rational(1));
  for (const auto& a : rs.positive_roots()) p = p * Polynomial::linear(a);
  return p;
}

double vol_ratio(const RootSystem& rs) {
  double v = 1.0;
  for (const auto& a : rs.positive_roots()) v /= 2.0 * std::numbers::pi * a.dot(rs.rho()).to_double();
  return v;
}

Integer rho_product(const RootSystem& rs) {
  Integer p = 1;
  for (const auto& a : rs.positive_roots()) p *= a.dot(rs.rho()).numerator();
  return p;
}

}  // namespace qhpair
