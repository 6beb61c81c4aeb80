#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "qhpair/lattice.hpp"
#include "qhpair/rootsystem.hpp"

using namespace qhpair;

namespace {

Vec<Rational> w(std::initializer_list<Rational> v) { return make_vec<Rational>(v); }

// Weyl dimension from the explicit X-coordinate formula
// prod_{i<j} (l_i - l_j + j - i) / (j - i), with l_i = sum_{k>=i} lambda_k.
Integer dim_oracle(const std::vector<int>& lambda) {
  const int n = static_cast<int>(lambda.size()) + 1;
  std::vector<long> l(static_cast<std::size_t>(n), 0);
  for (int i = n - 2; i >= 0; --i) l[static_cast<std::size_t>(i)] = l[static_cast<std::size_t>(i + 1)] + lambda[static_cast<std::size_t>(i)];
  Rational d(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      d *= Rational(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)] + j - i, j - i);
  return d.numerator();
}

}  // namespace

TEST_SUITE("rootsystem") {
  TEST_CASE("root data") {
    for (int n = 2; n <= 6; ++n) {
      const RootSystem rs(n);
      CHECK(static_cast<int>(rs.positive_roots().size()) == n * (n - 1) / 2);
      CHECK(dual_lattice(rs.integer_lattice()).same_lattice(rs.weight_lattice()));
      for (const auto& e : rs.simple_roots()) CHECK(e.dot(rs.rho()) == Rational(1));
      CHECK(rs.weight_lattice().contains(rs.rho()));
      // <omega_i, e_j> = delta_ij: pair the coroot vector of e_j with unit vectors.
      for (int i = 0; i < rs.rank(); ++i)
        for (int j = 0; j < rs.rank(); ++j) {
          Vec<Rational> om = Vec<Rational>::Zero(rs.rank());
          om(i) = Rational(1);
          CHECK(rs.weight_lattice().inner(om, rs.vector_of(rs.simple_roots()[static_cast<std::size_t>(j)])) ==
                Rational(i == j ? 1 : 0));
        }
      // Root vectors have squared length 2.
      for (const auto& a : rs.positive_roots()) {
        const auto v = rs.vector_of(a);
        CHECK(rs.weight_lattice().inner(v, v) == Rational(2));
      }
    }
    CHECK(RootSystem::parse("SU3").n() == 3);
    CHECK_THROWS_AS(RootSystem::parse("so5"), ParseError);
    CHECK_THROWS_AS(RootSystem(1), PreconditionError);
  }

  TEST_CASE("weyl_dim") {
    const RootSystem su2(2), su3(3);
    for (int k = 0; k <= 10; ++k) CHECK(weyl_dim(su2, w({k})) == k + 1);
    CHECK(weyl_dim(su3, w({0, 0})) == 1);
    CHECK(weyl_dim(su3, w({1, 0})) == 3);
    CHECK(weyl_dim(su3, w({0, 1})) == 3);
    CHECK(weyl_dim(su3, w({1, 1})) == 8);
    CHECK(weyl_dim(su3, w({2, 0})) == 6);
    CHECK(weyl_dim(su3, w({3, 0})) == 10);
    CHECK(weyl_dim(su3, w({2, 2})) == 27);
    CHECK_THROWS_AS(weyl_dim(su3, w({-1, 0})), PreconditionError);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(0, 5);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 2 + trial % 4;
      const RootSystem rs(n);
      std::vector<int> lam;
      Vec<Rational> v(n - 1);
      for (int j = 0; j < n - 1; ++j) {
        lam.push_back(d(rng));
        v(j) = Rational(lam.back());
      }
      CHECK(weyl_dim(rs, v) == dim_oracle(lam));
    }
  }

  TEST_CASE("weight enumeration") {
    const RootSystem su2(2), su3(3);
    CHECK(enumerate_regular_weights(su2, 2) == std::vector<Vec<Rational>>{w({-2}), w({-1}), w({1}), w({2})});
    CHECK(enumerate_regular_weights(su2, 0).empty());
    // Brute force for SU(3), bound 1: walls are Y1 = 0, Y2 = 0, Y1 + Y2 = 0.
    int count = 0;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) count += (a != 0 && b != 0 && a + b != 0);
    CHECK(static_cast<int>(enumerate_regular_weights(su3, 1).size()) == count);
    CHECK(count == 2);
    for (int b = 1; b <= 4; ++b) {
      const auto small = enumerate_regular_weights(su3, b - 1);
      const auto big = enumerate_regular_weights(su3, b);
      for (const auto& v : small) CHECK(std::find(big.begin(), big.end(), v) != big.end());
    }
    CHECK(dominant_regular_weights(su2, 3) == std::vector<Vec<Rational>>{w({1}), w({2}), w({3})});
    CHECK(dominant_regular_weights(su3, 2) ==
          std::vector<Vec<Rational>>{w({1, 1}), w({1, 2}), w({2, 1}), w({2, 2})});
    for (int n = 2; n <= 5; ++n) {
      const RootSystem rs(n);
      CHECK(dominant_regular_weights(rs, 1) == std::vector<Vec<Rational>>{rs.rho()});
    }
  }

  TEST_CASE("Weyl group action") {
    const RootSystem su2(2), su3(3), su4(4);
    CHECK(weyl_group(su3).size() == 6);
    CHECK(weyl_subgroup(su3).size() == 2);
    CHECK(weyl_group(su4).size() == 24);
    CHECK(weyl_orbit(su2, su2.rho()) == std::vector<Vec<Rational>>{w({-1}), w({1})});
    CHECK(weyl_matrix(su3, {1, 0, 2}) == mat({{-1, 0}, {1, 1}}));
    // The action permutes the roots up to sign and preserves the inner product.
    for (const RootSystem* rs : {&su3, &su4}) {
      for (const auto& p : weyl_group(*rs)) {
        const Mat<Rational> a = weyl_matrix(*rs, p);
        CHECK(a.transpose() * rs->gram() * a == rs->gram());
        for (const auto& g : rs->positive_roots()) {
          const LinearForm h = a.transpose() * g;
          bool found = false;
          for (const auto& g2 : rs->positive_roots()) found = found || h == g2 || h == LinearForm(-g2);
          CHECK(found);
        }
      }
    }
    // Orbit of a regular weight is free.
    CHECK(weyl_orbit(su3, w({1, 2})).size() == 6);
    CHECK(weyl_orbit(su3, w({1, 0})).size() == 3);
  }

  TEST_CASE("dd_poly and its antisymmetry") {
    const RootSystem su2(2), su3(3), su4(4);
    CHECK(dd_poly(su2) == Polynomial::variable(1, 0));
    const Polynomial y1 = Polynomial::variable(2, 0), y2 = Polynomial::variable(2, 1);
    CHECK(dd_poly(su3) == y1 * y2 * (y1 + y2));
    CHECK(dd_poly(su4).degree() == 6);
    for (const RootSystem* rs : {&su2, &su3, &su4}) {
      const Polynomial d = dd_poly(*rs);
      for (int i = 0; i + 1 < rs->n(); ++i) {
        Permutation s(static_cast<std::size_t>(rs->n()));
        std::iota(s.begin(), s.end(), 0);
        std::swap(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(i + 1)]);
        CHECK(d.pullback(weyl_matrix(*rs, s)) == d * Rational(-1));
      }
    }
  }

  TEST_CASE("fractional_reduce and volume ratio") {
    CHECK(fractional_reduce(w({Rational(5, 4), Rational(-1, 2)})) == w({Rational(1, 4), Rational(1, 2)}));
    CHECK(fractional_reduce(w({0, 0})) == w({0, 0}));
    CHECK(fractional_reduce(w({1, 1})) == w({0, 0}));
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-50, 50);
    for (int i = 0; i < 50; ++i) {
      const Vec<Rational> g = w({Rational(d(rng), 1 + std::abs(d(rng))), Rational(d(rng), 7)});
      const Vec<Rational> f = fractional_reduce(g);
      CHECK(fractional_reduce(f) == f);
      for (Index j = 0; j < 2; ++j) {
        CHECK(f(j) >= Rational(0));
        CHECK(f(j) < Rational(1));
        CHECK((g(j) - f(j)).is_integer());
      }
    }
    const double pi = std::numbers::pi;
    CHECK(vol_ratio(RootSystem(2)) == doctest::Approx(1 / (2 * pi)).epsilon(1e-14));
    CHECK(vol_ratio(RootSystem(3)) == doctest::Approx(1 / (16 * pi * pi * pi)).epsilon(1e-14));
    CHECK(vol_ratio(RootSystem(5)) > 0);
    CHECK(rho_product(RootSystem(3)) == 2);
  }
}
