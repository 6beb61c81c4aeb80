// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "../common/pinned_functions.hpp"
#include "qhpair/cli/commands.hpp"
#include "qhpair/linalg.hpp"
#include "qhpair/pairing.hpp"
#include "qhpair/rootsystem.hpp"
#include "qhpair/szenes.hpp"

using namespace qhpair;

namespace {

constexpr double kLatticeTol = 1e-6;
constexpr double kOracleTol = 1e-8;
constexpr double kClosedFormTol = 1e-14;
constexpr double kCrit1Seconds = 5.0;
constexpr double kCrit5Seconds = 10.0;
constexpr int kBox = 10000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

SzenesCase su2_case(const std::string& expr, bool weight) {
  const RootSystem rs(2);
  SzenesCase c;
  c.lattice = weight ? rs.weight_lattice() : rs.integer_lattice();
  c.arrangement = rs.root_arrangement();
  c.f = parse_mero_expression(expr, 1);
  c.t = make_vec<Rational>({0});
  c.box = kBox;
  return c;
}

// Exact RHS, LHS within kLatticeTol of it, and the RHS against a closed form.
void check_lattice_case(Outcome& o, const SzenesCase& c, const Rational& expected, double closed_form) {
  const Rational rhs = szenes_rhs(c);
  o.require(rhs == expected, "RHS " + rhs.str() + " != " + expected.str());
  o.require(std::abs(expected.to_double() - closed_form) < kClosedFormTol, "closed form " + fmt(closed_form));
  const LatticeSum l = szenes_lhs_truncated(c);
  const double diff = std::abs(l.estimate - expected.to_double());
  o.require(diff <= kLatticeTol, "LHS off by " + fmt(diff));
  o.require(std::abs(l.imag) <= 1e-12, "imaginary part " + fmt(l.imag));
  o.note("RHS " + rhs.str() + ", |LHS-RHS| " + fmt(diff));
}

Outcome criterion1() {
  Outcome o;
  const auto start = Clock::now();
  const RootSystem rs(2);
  const SzenesCase c = su2_case("1/Y1^2", true);
  // sum_{n != 0} 1/(2 pi i n)^2 = -2 zeta(2) / (4 pi^2)
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  check_lattice_case(o, c, Rational(-1, 12), -2 * zeta2 / (4 * std::numbers::pi * std::numbers::pi));
  const Rational sun = szenes_sun_rhs(rs, c.f);
  o.require(sun == Rational(-1, 12), "SU(n) form gives " + sun.str());
  const double t = seconds_since(start);
  o.require(t < kCrit1Seconds, "runtime " + fmt(t) + " s");
  o.note("SU(n) form " + sun.str() + ", " + fmt(t) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const RootSystem rs(2);
  const SzenesCase c = su2_case("exp(-1/2*Y1)/Y1^2", true);
  // sum_{n != 0} (-1)^n / (2 pi i n)^2 = 2 eta(2) / (4 pi^2), eta(2) = pi^2/12
  const double eta2 = std::numbers::pi * std::numbers::pi / 12;
  check_lattice_case(o, c, Rational(1, 24), 2 * eta2 / (4 * std::numbers::pi * std::numbers::pi));
  const Rational sun = szenes_sun_rhs(rs, c.f);
  o.require(sun == Rational(1, 24), "SU(n) form gives " + sun.str());
  return o;
}

Outcome criterion3() {
  Outcome o;
  const SzenesCase c = su2_case("1/Y1^2", false);
  // N = Z alpha: sum_{n != 0} 1/(2 pi i 2n)^2 = -2 zeta(2) / (16 pi^2)
  const double zeta2 = std::numbers::pi * std::numbers::pi / 6;
  check_lattice_case(o, c, Rational(-1, 48), -2 * zeta2 / (16 * std::numbers::pi * std::numbers::pi));
  const LatticeBasis m = dual_lattice(c.lattice);
  Mat<Rational> sigma(1, 1);
  sigma.col(0) = m.vector_of(form({1}));
  const CosetSystem cs = coset_reps_in_box(m, sigma, c.t);
  o.require(cs.index == 2 && cs.representatives.size() == 2, "|M/M_sigma| = " + cs.index.get_str());
  o.note("|M/M_sigma| = " + cs.index.get_str());
  return o;
}

Outcome criterion4() {
  Outcome o;
  const SzenesCase c = su2_case("1/Y1^4", true);
  // 2 zeta(4) / (2 pi)^4, zeta(4) = pi^4/90
  const double pi4 = std::pow(std::numbers::pi, 4);
  check_lattice_case(o, c, Rational(1, 720), 2 * (pi4 / 90) / (16 * pi4));
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto start = Clock::now();
  for (int n : {2, 3, 4}) {
    const RootSystem rs(n);
    const DiagonalBasis ob = diagonal_basis(rs.root_arrangement());
    const Index k = ob.certificate.rows();
    o.require(ob.certificate == Mat<Rational>::Identity(k, k), rs.name() + " certificate");
    if (n == 3) o.require(ob.members.size() == 2, "SU(3) has " + std::to_string(ob.members.size()) + " members");
    o.note(rs.name() + ": " + std::to_string(ob.members.size()) + " members");
  }
  const double t = seconds_since(start);
  o.require(t < kCrit5Seconds, "runtime " + fmt(t) + " s");
  o.note(fmt(t) + " s");
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (int n : {3, 4}) {
    const Arrangement a = RootSystem(n).root_arrangement();
    const DiagonalBasis ob = diagonal_basis(a);
    const SpanningCheck s = check_spanning(a, ob, 20260000 + static_cast<std::uint64_t>(n), 20);
    o.require(s.failures == 0, std::to_string(s.failures) + " failing evaluations for SU(" + std::to_string(n) + ")");
    o.note("SU(" + std::to_string(n) + "): " + std::to_string(s.bases) + " bases x 20 points");
    if (n != 3) continue;
    // 1/(Y2 (Y1+Y2)) = 1/(Y1 Y2) - 1/(Y1 (Y1+Y2)) by partial fractions.
    const auto bases = enumerate_bases(a);
    for (std::size_t i = 0; i < bases.size(); ++i)
      if (bases[i] == OrderedBasis{1, 2}) {
        const auto& c = s.coefficients[i];
        o.require(c == std::vector<Rational>{Rational(1), Rational(-1)}, "hand case coefficients");
      }
    o.require(ob.members == std::vector<OrderedBasis>{{0, 1}, {0, 2}}, "SU(3) members");
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  double worst = 0;
  int count = 0;
  for (const auto& c : testing::pinned_suite()) {
    const auto tau = testing::parse_basis(c);
    const MeroFunction f = parse_mero_expression(c.expr, c.rank);
    const Rational exact = res_tau(tau, f);
    const Rational symbolic = res_tau_symbolic(tau, f);
    const auto z = res_tau_numeric(tau, f);
    o.require(exact == symbolic, "tower vs symbolic on " + c.expr);
    if (c.expected) o.require(exact == *c.expected, "hand value on " + c.expr);
    const double d = std::max(std::abs(z.real() - symbolic.to_double()), std::abs(z.imag()));
    o.require(d <= kOracleTol, "numeric off by " + fmt(d) + " on " + c.expr);
    worst = std::max(worst, d);
    ++count;
  }
  o.require(count >= 10, "suite too small");
  o.note(std::to_string(count) + " functions, worst " + fmt(worst));
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<int> entry(-5, 5);
  int cases = 0, members = 0;
  while (cases < 25) {
    const int r = 1 + cases % 3;
    const int q = r - 1;
    // M' in the first q coordinates, forms taken from M' itself.
    Mat<Rational> mgens = Mat<Rational>::Zero(q, q);
    for (Index i = 0; i < q; ++i)
      for (Index j = 0; j < q; ++j) mgens(i, j) = entry(rng);
    if (q > 0 && linalg::determinant(mgens).is_zero()) continue;
    std::vector<LinearForm> forms;
    for (int k = 0; k < q + 2 && q > 0; ++k) {
      Vec<Rational> coeff(q);
      for (Index i = 0; i < q; ++i) coeff(i) = entry(rng) % 3;
      const LinearForm f = mgens * coeff;
      bool fresh = !is_zero(f);
      for (const auto& g : forms) fresh = fresh && !proportional(f, g);
      if (fresh) forms.push_back(f);
    }
    const Arrangement quotient(q, forms);
    if (!quotient.spans()) continue;
    LinearForm e1(r);
    for (Index i = 0; i < r; ++i) e1(i) = entry(rng);
    if (e1(r - 1).is_zero()) continue;
    ++cases;

    const DiagonalBasis ob = diagonal_basis(quotient);
    const ExtendedArrangement ext = extend_diagonal_basis(quotient, ob, e1);
    const Index k = ext.basis.certificate.rows();
    o.require(ext.basis.certificate == Mat<Rational>::Identity(k, k), "certificate in case " + std::to_string(cases));
    o.require(ext.basis.members.size() == ob.members.size(), "member count in case " + std::to_string(cases));

    // M = M' + Z e1 with the identity inner product, so vectors are forms.
    Mat<Rational> big = Mat<Rational>::Zero(r, r);
    big.topLeftCorner(q, q) = mgens;
    big.col(r - 1) = e1;
    const LatticeBasis m(big, Mat<Rational>::Identity(r, r));
    for (std::size_t i = 0; i < ob.members.size(); ++i) {
      Mat<Rational> sig(r, r);
      const auto ext_forms = ext.arrangement.forms_of(ext.basis.members[i]);
      for (int j = 0; j < r; ++j) sig.col(j) = ext_forms[static_cast<std::size_t>(j)];
      const Integer big_index = lattice_quotient(m, sig).index;
      Integer small_index = 1;
      if (q > 0) {
        const LatticeBasis ms(mgens, Mat<Rational>::Identity(q, q));
        Mat<Rational> sp(q, q);
        const auto qf = quotient.forms_of(ob.members[i]);
        for (int j = 0; j < q; ++j) sp.col(j) = qf[static_cast<std::size_t>(j)];
        small_index = lattice_quotient(ms, sp).index;
      }
      o.require(big_index == small_index, "index " + big_index.get_str() + " vs " + small_index.get_str());
      ++members;
    }
  }
  o.note(std::to_string(cases) + " cases, " + std::to_string(members) + " members");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const RootSystem su2(2), su3(3);
  for (int k = 0; k <= 10; ++k)
    o.require(weyl_dim(su2, make_vec<Rational>({k})) == k + 1, "SU(2) k = " + std::to_string(k));
  const std::vector<std::pair<std::pair<int, int>, int>> table{
      {{0, 0}, 1}, {{1, 0}, 3}, {{0, 1}, 3}, {{1, 1}, 8}, {{2, 0}, 6}, {{3, 0}, 10}, {{2, 2}, 27}};
  for (const auto& [l, d] : table) {
    // Independent oracle: (a+1)(b+1)(a+b+2)/2.
    const int formula = (l.first + 1) * (l.second + 1) * (l.first + l.second + 2) / 2;
    const Integer got = weyl_dim(su3, make_vec<Rational>({l.first, l.second}));
    o.require(got == d && formula == d,
              "SU(3) (" + std::to_string(l.first) + "," + std::to_string(l.second) + ") = " + got.get_str());
  }
  o.note("SU(2) k <= 10, 7 SU(3) weights");
  return o;
}

Outcome criterion10() {
  Outcome o;
  {
    const PairingProblem p = su2_single_block_problem();
    const Rational v = residue_pairing(p);
    o.require(v == Rational(-1, 48) * residue_prefactor(p), "residue pairing " + v.str());
    const Block b = make_block(p, p.subgroups[0]);
    // Residue block against its own lattice sum over the integer lattice.
    SzenesCase c;
    c.lattice = b.residue_lattice;
    c.arrangement = b.arrangement;
    c.f = restricted_integrand(p, b, p.fixed_points[0]);
    c.t = restricted_shift(p, b, p.fixed_points[0]);
    c.box = p.box;
    const double d1 = std::abs(szenes_lhs_truncated(c).estimate - block_residue(p, b).to_double());
    o.require(d1 <= kLatticeTol, "residue block vs lattice sum " + fmt(d1));
    // s_sum against the transformed (weight lattice) block.
    const Rational rp(p.group.rho_product());
    const SSum s = s_sum(p, b);
    const double d2 = std::abs(s.value - (block_amw_residue(p, b) / (rp * rp)).to_double());
    o.require(d2 <= kLatticeTol, "s_sum vs AMW residue block " + fmt(d2));
    o.note("residue " + v.str() + ", |s_sum - AMW block| " + fmt(d2));
  }
  double worst = 0;
  for (const char* eta : {"1", "1/(Y1^2*Y2^2*(Y1+Y2)^2)", "Y1^2 + Y2"}) {
    const PairingProblem p = example_circle_problem(eta);
    const auto terms = pairing_terms(p, false);
    o.require(terms.size() == 3, "three per-F terms");
    for (const auto& t : terms) {
      const Rational sym = res_tau_symbolic(t.integrand.forms, t.integrand.integrand);
      const auto z = res_tau_numeric(t.integrand.forms, t.integrand.integrand);
      const double d = std::max(std::abs(z.real() - sym.to_double()), std::abs(z.imag()));
      o.require(sym == t.value, "tower vs symbolic for " + t.label);
      o.require(d <= kOracleTol, "numeric off by " + fmt(d) + " for " + t.label);
      worst = std::max(worst, d);
    }
    // mu(F) + 2 m0 with m0 the generator of M_sigma: block values unchanged.
    const Rational base = residue_pairing(p);
    PairingProblem shifted = p;
    for (std::size_t i = 0; i < p.subgroups.size(); ++i) {
      const Block b = make_block(p, p.subgroups[i]);
      const Vec<Rational> m0 = dual_lattice(b.residue_lattice).vector_of(form({1}));
      shifted.fixed_points[i].mu += b.basis * (Rational(2) * m0);
      o.require(block_residue(shifted, make_block(shifted, shifted.subgroups[i])) == block_residue(p, b),
                "periodicity in block " + p.subgroups[i].id);
    }
    o.require(residue_pairing(shifted) == base, "periodicity of the total");
  }
  const Block b0 = make_block(example_circle_problem(), example_circle_problem().subgroups[0]);
  o.require(parse_mero_expression("Y1*Y2*(Y1+Y2)", 2).pullback(b0.basis) == parse_mero_expression("2*Y1^3", 1),
            "restricted Euler class 2 s^3");
  o.note("three-circle per-F worst " + fmt(worst));
  return o;
}

Outcome criterion11() {
  Outcome o;
  const std::string data = QHPAIR_DATA_DIR;
  const std::vector<std::vector<std::string>> commands{
      {"arr", "spanning", "--manifest", data + "/manifests/su3_roots.json", "--seed", "1234"},
      {"szenes", "verify", "--manifest", data + "/manifests/su3_roots.json", "--expr", "witten", "--t", "1/2,1/3"},
      {"pairing", "compare", "--problem", data + "/problems/su3_circles_decaying.json"},
      {"res", "--manifest", data + "/manifests/su3_roots.json", "--expr", "phi_23_13", "--numeric-check"}};
  for (const auto& cmd : commands) {
    std::string reports[2];
    for (int run = 0; run < 2; ++run) {
      std::vector<std::string> args{"--jobs", run ? "3" : "1", "--report", "-"};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::ostringstream out, err;
      const int code = cli::run_cli(args, out, err);
      o.require(code == 0, cmd[0] + " exited with " + std::to_string(code));
      reports[run] = out.str();
    }
    o.require(!reports[0].empty() && reports[0] == reports[1], cmd[0] + " reports differ");
  }
  o.note(std::to_string(commands.size()) + " commands, jobs 1 vs 3");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Szenes SU(2) 1/Y1^2 on the weight lattice", criterion1},
      {"Szenes SU(2) shifted by gamma = 1/2", criterion2},
      {"general Szenes on the integer lattice", criterion3},
      {"Szenes SU(2) 1/Y1^4", criterion4},
      {"diagonality certificates", criterion5},
      {"spanning property", criterion6},
      {"symbolic vs numeric residues", criterion7},
      {"diagonal basis extension and lattice indices", criterion8},
      {"Weyl dimensions", criterion9},
      {"pairing transform consistency", criterion10},
      {"determinism", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
