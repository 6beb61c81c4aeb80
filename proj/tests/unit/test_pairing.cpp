#include <cmath>

#include "doctest.h"
#include "qhpair/cli/expression.hpp"
#include "qhpair/pairing.hpp"

using namespace qhpair;

namespace {

const char* kDecayingEta = "1/(Y1^2*Y2^2*(Y1+Y2)^2)";

PairingProblem single_block(const PairingProblem& p, std::size_t i) {
  PairingProblem q = p;
  q.subgroups = {p.subgroups[i]};
  q.fixed_points.clear();
  for (const auto& f : p.fixed_points)
    if (f.subgroup == p.subgroups[i].id) q.fixed_points.push_back(f);
  return q;
}

}  // namespace

TEST_SUITE("pairing") {
  TEST_CASE("empty problem") {
    PairingProblem p;
    p.group = GroupData::su(2);
    CHECK(residue_pairing(p) == Rational(0));
    CHECK(amw_residue_form(p) == Rational(0));
    CHECK(amw_lattice_sum(p).value == 0);
  }

  TEST_CASE("SU(2) single block") {
    const PairingProblem p = su2_single_block_problem();
    const Block b = make_block(p, p.subgroups[0]);
    CHECK(block_residue(p, b) == Rational(-1, 48));
    CHECK(residue_pairing(p) == Rational(-1, 48) * residue_prefactor(p));
    CHECK(residue_prefactor(p) == Rational(1, 2));
    // Transform consistency on the weight lattice.
    const Rational amw = block_amw_residue(p, b);
    CHECK(amw == Rational(-1, 12));
    const SSum s = s_sum(p, b);
    CHECK(std::abs(s.value - amw.to_double()) <= std::max(1e-6, 10 * s.tail));
    CHECK(std::abs(amw_lattice_sum(p).value - amw_residue_form(p).to_double()) < 1e-6);
    // The residue block against its own lattice sum (integer lattice).
    SzenesCase c;
    c.lattice = b.residue_lattice;
    c.arrangement = b.arrangement;
    c.f = restricted_integrand(p, b, p.fixed_points[0]);
    c.t = restricted_shift(p, b, p.fixed_points[0]);
    c.box = p.box;
    CHECK(std::abs(szenes_lhs_truncated(c).estimate + 1.0 / 48) < 1e-6);
  }

  TEST_CASE("constants factor out") {
    PairingProblem p = su2_single_block_problem();
    const Rational r0 = residue_pairing(p), a0 = amw_residue_form(p);
    const double l0 = amw_lattice_sum(p).value;
    p.constants.n1 = Rational(3);
    p.constants.n0_prime = Rational(5);
    CHECK(residue_pairing(p) == r0 * Rational(3, 5));
    p.constants.k = Rational(2);
    CHECK(amw_residue_form(p) == a0 * Rational(2));
    CHECK(amw_lattice_sum(p).value == doctest::Approx(2 * l0).epsilon(1e-15));
  }

  TEST_CASE("free torus action") {
    const PairingProblem p = example_torus_free_problem();
    CHECK(residue_pairing(p) == Rational(1));
    CHECK(amw_residue_form(p) == Rational(1));
    CHECK(amw_lattice_sum(p).value == 1.0);
  }

  TEST_CASE("three-circle example structure") {
    const PairingProblem p = example_circle_problem();
    // U(1)_0 generated by rho: restricted Euler class 2 s^3.
    const Block b0 = make_block(p, p.subgroups[0]);
    const MeroFunction e = parse_mero_expression("Y1*Y2*(Y1+Y2)", 2).pullback(b0.basis);
    CHECK(e == parse_mero_expression("2*Y1^3", 1));
    CHECK(b0.gram == mat({{2}}));
    CHECK(dual_lattice(b0.residue_lattice).vector_of(form({1})) ==
          dual_lattice(b0.residue_lattice).generators().col(0));
    // Per-F residues: symbolic, tower and numeric agree.
    const auto terms = pairing_terms(p, false);
    CHECK(terms.size() == 3);
    Rational total(0);
    for (const auto& t : terms) {
      CAPTURE(t.label);
      CHECK(res_tau_symbolic(t.integrand.forms, t.integrand.integrand) == t.value);
      const auto z = res_tau_numeric(t.integrand.forms, t.integrand.integrand);
      CHECK(std::abs(z.real() - t.value.to_double()) < 1e-8);
      CHECK(std::abs(z.imag()) < 1e-8);
      total += t.value;
    }
    CHECK(residue_pairing(p) == residue_prefactor(p) * total);
    // Per-block decomposition.
    Rational blocks(0);
    for (std::size_t i = 0; i < 3; ++i) blocks += residue_pairing(single_block(p, i));
    CHECK(blocks == residue_pairing(p));
  }

  TEST_CASE("three-circle example: transform consistency with a decaying eta") {
    const PairingProblem p = example_circle_problem(kDecayingEta);
    for (const auto& sub : p.subgroups) {
      CAPTURE(sub.id);
      const Block b = make_block(p, sub);
      const Rational rp(p.group.rho_product());
      const double exact = (block_amw_residue(p, b) / (rp * rp)).to_double();
      const SSum s = s_sum(p, b);
      CHECK(std::abs(s.imag) < 1e-12);
      CHECK(std::abs(s.value - exact) <= std::max(1e-6, 10 * s.tail));
    }
    CHECK(std::abs(amw_lattice_sum(p).value - amw_residue_form(p).to_double()) < 1e-6);
  }

  TEST_CASE("m-sum periodicity under shifts of mu by M_sigma") {
    for (const auto& p0 : {example_circle_problem(), example_circle_problem(kDecayingEta)}) {
      const Rational base = residue_pairing(p0);
      PairingProblem p = p0;
      for (std::size_t i = 0; i < p.subgroups.size(); ++i) {
        const Block b = make_block(p0, p0.subgroups[i]);
        const LatticeBasis m = dual_lattice(b.residue_lattice);
        // sigma = (1) generates M_sigma; lift its vector to t via the basis.
        const Vec<Rational> m0 = m.vector_of(form({1}));
        p.fixed_points[i].mu += b.basis * (Rational(2) * m0);
      }
      CHECK(residue_pairing(p) == base);
    }
  }

  TEST_CASE("validation") {
    PairingProblem p = example_circle_problem();
    p.fixed_points[0].subgroup = "nope";
    CHECK_THROWS_AS(residue_pairing(p), PreconditionError);
    PairingProblem q = example_circle_problem();
    q.fixed_points[1].normal_weights.push_back(form({1, 2}));  // vanishes on (-2, 1)
    CHECK_THROWS_AS(residue_pairing(q), PreconditionError);
    CHECK(GroupData::parse("torus2").rank == 2);
    CHECK(GroupData::parse("su4").weyl_order == 24);
    CHECK_THROWS_AS(GroupData::parse("sp4"), ParseError);
  }
}
