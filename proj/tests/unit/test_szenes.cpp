#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qhpair/cli/expression.hpp"
#include "qhpair/szenes.hpp"

using namespace qhpair;

namespace {

MeroFunction expr(const char* s, int rank) { return parse_mero_expression(s, rank); }

SzenesCase make_case(const RootSystem& rs, bool weight, const char* f, Vec<Rational> t = {}, int box = 200) {
  SzenesCase c;
  c.lattice = weight ? rs.weight_lattice() : rs.integer_lattice();
  c.arrangement = rs.root_arrangement();
  c.f = expr(f, rs.rank());
  c.t = std::move(t);
  c.box = box;
  return c;
}

bool same_values(const MeroFunction& a, const MeroFunction& b) {
  for (double y : {0.37, -1.21, 2.5}) {
    const std::complex<double> p(y, 0.3);
    if (std::abs(a.evaluate(&p) - b.evaluate(&p)) > 1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("szenes") {
  TEST_CASE("F^t_sigma kernels") {
    const RootSystem su2(2);
    const LatticeBasis m_int = dual_lattice(su2.integer_lattice());
    const auto f0 = f_t_sigma(m_int, {form({1})}, make_vec<Rational>({0}));
    CHECK(f0.terms().size() == 2);
    CHECK(same_values(f0, expr("(1 + exp(1/2*Y1))/(2*(1 - exp(Y1)))", 1)));
    const LatticeBasis m_w = dual_lattice(su2.weight_lattice());
    CHECK(same_values(f_t_sigma(m_w, {form({1})}, make_vec<Rational>({0})), expr("1/(1 - exp(Y1))", 1)));
    const auto fh = f_t_sigma(m_int, {form({1})}, make_vec<Rational>({Rational(1, 2)}));
    CHECK(same_values(fh, expr("(exp(1/4*Y1) + exp(3/4*Y1))/(2*(1 - exp(Y1)))", 1)));
  }

  TEST_CASE("exact right sides") {
    const RootSystem su2(2);
    CHECK(szenes_rhs(make_case(su2, false, "1/Y1^2")) == Rational(-1, 48));
    CHECK(szenes_rhs(make_case(su2, true, "1/Y1^2")) == Rational(-1, 12));
    CHECK(szenes_rhs(make_case(su2, true, "1/Y1^4")) == Rational(1, 720));
    CHECK(szenes_rhs(make_case(su2, true, "exp(-1/2*Y1)/Y1^2")) == Rational(1, 24));
    CHECK(szenes_rhs(make_case(su2, true, "1/Y1^2", make_vec<Rational>({1}))) == Rational(1, 24));
    CHECK(szenes_sun_rhs(su2, expr("1/Y1^2", 1)) == Rational(-1, 12));
    CHECK(szenes_sun_rhs(su2, expr("exp(-1/2*Y1)/Y1^2", 1)) == Rational(1, 24));
    CHECK(szenes_sun_rhs(su2, expr("1/Y1^3", 1)) == Rational(0));
    CHECK_THROWS_AS(szenes_sun_rhs(su2, expr("exp(-3/2*Y1)/Y1^2", 1)), PreconditionError);
    CHECK(szenes_sun_rhs(su2, reduce_exponents(expr("exp(-3/2*Y1)/Y1^2", 1))) == Rational(1, 24));
    CHECK_THROWS_AS(szenes_rhs(make_case(su2, true, "1/(Y1^2*(1 - exp(Y1)))")), PreconditionError);
    // Sum over regular points of Z^2 of 1/(m n (m + n))^2 is 6 pi^6 / 2835.
    const RootSystem su3(3);
    CHECK(szenes_rhs(make_case(su3, true, "1/(Y1^2*Y2^2*(Y1+Y2)^2)")) == Rational(-1, 30240));
  }

  TEST_CASE("general form against the SU(n) form") {
    const RootSystem su2(2), su3(3);
    for (const char* f : {"1/Y1^2", "1/Y1^4", "1/Y1^3", "exp(-1/2*Y1)/Y1^2", "exp(-1/3*Y1)/Y1^4",
                          "(Y1 + 3)/Y1^5", "exp(-2/5*Y1)/Y1^3"}) {
      CAPTURE(f);
      const MeroFunction g = expr(f, 1);
      CHECK(szenes_rhs(make_case(su2, true, f)) == szenes_sun_rhs(su2, g));
    }
    for (const char* f : {"1/(Y1^2*Y2^2*(Y1+Y2)^2)", "exp(-1/3*Y1 - 1/2*Y2)/(Y1^2*Y2^2*(Y1+Y2)^2)",
                          "1/(Y1^3*Y2*(Y1+Y2)^2)", "exp(-1/4*Y2)/(Y1*Y2^2*(Y1+Y2)^3)"}) {
      CAPTURE(f);
      const MeroFunction g = expr(f, 2);
      CHECK(szenes_rhs(make_case(su3, true, f)) == szenes_sun_rhs(su3, g));
    }
  }

  TEST_CASE("independence of the total order") {
    const RootSystem su3(3);
    for (const char* f : {"1/(Y1^2*Y2^2*(Y1+Y2)^2)", "exp(1/3*Y1)/(Y1^2*Y2*(Y1+Y2)^3)"}) {
      for (bool weight : {true, false}) {
        SzenesCase a = make_case(su3, weight, f);
        const Rational base = szenes_rhs(a);
        for (std::vector<int> order : {std::vector<int>{2, 0, 1}, std::vector<int>{1, 2, 0}}) {
          a.arrangement = su3.root_arrangement().with_order(order);
          CHECK(szenes_rhs(a) == base);
        }
      }
    }
  }

  TEST_CASE("shifts on box walls: every order matches the lattice sum") {
    const RootSystem su3(3);
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 4), pick(0, 5), lat(0, 1);
    const char* fs[] = {"1/(Y1^2*Y2^2*(Y1+Y2)^2)", "1/(Y1^2*Y2*(Y1+Y2)^3)", "(Y1 - Y2)/(Y1^3*Y2^2*(Y1+Y2)^2)"};
    std::vector<std::vector<int>> orders{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int trial = 0; trial < 8; ++trial) {
      const Vec<Rational> t = make_vec<Rational>({Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
      SzenesCase c = make_case(su3, lat(rng) == 1, fs[trial % 3], t, 120);
      CAPTURE(c.f.terms().size());
      const Rational base = szenes_rhs(c);
      c.arrangement = su3.root_arrangement().with_order(orders[static_cast<std::size_t>(pick(rng))]);
      CHECK(szenes_rhs(c) == base);
      const auto lhs = szenes_lhs_truncated(c);
      CHECK(std::abs(lhs.estimate - base.to_double()) < 1e-8);
    }
  }

  TEST_CASE("shift periodicity") {
    const RootSystem su2(2), su3(3);
    const Vec<Rational> t = make_vec<Rational>({Rational(1, 3), Rational(-2, 7)});
    SzenesCase c = make_case(su3, false, "1/(Y1^2*Y2^2*(Y1+Y2)^2)", t);
    const Rational base = szenes_rhs(c);
    const LatticeBasis m = dual_lattice(c.lattice);
    for (Index j = 0; j < 2; ++j) {
      c.t = t + m.generators().col(j);
      CHECK(szenes_rhs(c) == base);
      c.t = t - Rational(2) * m.generators().col(j);
      CHECK(szenes_rhs(c) == base);
    }
    SzenesCase d = make_case(su2, false, "1/Y1^4", make_vec<Rational>({Rational(1, 5)}));
    const Rational b1 = szenes_rhs(d);
    d.t = make_vec<Rational>({Rational(6, 5)});
    CHECK(szenes_rhs(d) == b1);
  }

  TEST_CASE("truncated lattice sums") {
    const RootSystem su2(2), su3(3);
    const auto w = szenes_lhs_truncated(make_case(su2, true, "1/Y1^2", {}, 10000));
    CHECK(w.raw == doctest::Approx(-1.0 / 12).epsilon(1e-4));
    CHECK(std::abs(w.estimate + 1.0 / 12) < 1e-8);
    CHECK(w.points == 20000);
    CHECK(std::abs(w.imag) < 1e-12);
    // Independent closed form of the partial sum: -(1/2 pi^2) sum_{n<=B} 1/n^2.
    double h = 0;
    for (int n = 10000; n >= 1; --n) h += 1.0 / (static_cast<double>(n) * n);
    CHECK(std::abs(w.raw + h / (2 * std::numbers::pi * std::numbers::pi)) < 1e-14);
    const auto alt = szenes_lhs_truncated(make_case(su2, true, "exp(-1/2*Y1)/Y1^2", {}, 10000));
    CHECK(std::abs(alt.estimate - 1.0 / 24) < 1e-6);
    const auto i = szenes_lhs_truncated(make_case(su2, false, "1/Y1^2", {}, 10000));
    CHECK(std::abs(i.estimate + 1.0 / 48) < 1e-6);
    const auto s3 = szenes_lhs_truncated(make_case(su3, true, "1/(Y1^2*Y2^2*(Y1+Y2)^2)", {}, 100));
    CHECK(std::abs(s3.estimate + 1.0 / 30240) < 1e-9);
    CHECK_THROWS_AS(szenes_lhs_truncated(make_case(su3, true, "1/(Y1^2*(Y1+Y2))")), PreconditionError);
    CHECK_THROWS_AS(szenes_lhs_truncated(make_case(su3, true, "1/(Y1^4)")), PreconditionError);
  }

  TEST_CASE("verification reports") {
    const RootSystem su2(2), su3(3);
    for (const char* f : {"1/Y1^2", "1/Y1^4", "exp(-1/2*Y1)/Y1^2"}) {
      const auto rep = verify_szenes(make_case(su2, true, f, {}, 10000), &su2);
      CHECK(rep.pass);
      REQUIRE(rep.sun_rhs);
      CHECK(*rep.sun_rhs == rep.rhs);
    }
    CHECK(verify_szenes(make_case(su2, false, "1/Y1^2", {}, 10000), &su2).pass);
    const auto rep3 = verify_szenes(
        make_case(su3, false, "exp(1/3*Y1)/(Y1^2*Y2^2*(Y1+Y2)^2)", make_vec<Rational>({Rational(1, 4), 0}), 120),
        &su3);
    CHECK(rep3.pass);
    CHECK_FALSE(rep3.sun_rhs);
  }
}
