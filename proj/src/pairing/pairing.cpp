#include "qhpair/pairing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "qhpair/cli/expression.hpp"
#include "qhpair/linalg.hpp"

namespace qhpair {

GroupData GroupData::su(int n) {
  const RootSystem rs(n);
  GroupData g;
  g.name = rs.name();
  g.rank = rs.rank();
  g.gram = rs.gram();
  g.simple_roots = rs.simple_roots();
  g.positive_roots = rs.positive_roots();
  g.integer_lattice = rs.integer_lattice();
  g.weight_lattice = rs.weight_lattice();
  g.rho = rs.rho();
  g.weyl_order = factorial(n).numerator();
  return g;
}

GroupData GroupData::torus(int rank) {
  if (rank < 1) throw PreconditionError("torus rank must be at least 1");
  GroupData g;
  g.name = "torus" + std::to_string(rank);
  g.rank = rank;
  g.gram = Mat<Rational>::Identity(rank, rank);
  g.integer_lattice = LatticeBasis(g.gram, g.gram);
  g.weight_lattice = g.integer_lattice;
  g.rho = Vec<Rational>::Zero(rank);
  return g;
}

GroupData GroupData::parse(std::string_view selector) {
  std::string s;
  for (char c : selector) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s.rfind("torus", 0) == 0) {
    const std::string digits = s.substr(5);
    if (digits.empty() || digits.size() > 2 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("torus selector must look like torus1, torus2, ...");
    return torus(std::stoi(digits));
  }
  return su(RootSystem::parse(s).n());
}

Integer GroupData::rho_product() const {
  Integer p = 1;
  for (const auto& a : positive_roots) {
    const Rational v = a.dot(rho);
    if (!v.is_integer() || v.sign() <= 0) throw ComputationError("<alpha, rho> must be a positive integer");
    p *= v.numerator();
  }
  return p;
}

Polynomial GroupData::dd() const {
  Polynomial p = Polynomial::constant(rank, Rational(1));
  for (const auto& a : positive_roots) p = p * Polynomial::linear(a);
  return p;
}

namespace {

const SubgroupDatum& find_subgroup(const PairingProblem& p, const std::string& id) {
  for (const auto& s : p.subgroups)
    if (s.id == id) return s;
  throw PreconditionError("fixed point references undeclared subgroup '" + id + "'");
}

std::vector<LinearForm> distinct_nonzero(const std::vector<LinearForm>& forms) {
  std::vector<LinearForm> out;
  for (const auto& f : forms)
    if (!is_zero(f) && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  return out;
}

}  // namespace

void validate(const PairingProblem& p) {
  const int r = p.group.rank;
  for (std::size_t i = 0; i < p.subgroups.size(); ++i) {
    const auto& s = p.subgroups[i];
    for (std::size_t j = 0; j < i; ++j)
      if (p.subgroups[j].id == s.id) throw PreconditionError("duplicate subgroup id '" + s.id + "'");
    if (s.basis.rows() != r) throw PreconditionError("subgroup '" + s.id + "' basis has the wrong length");
    if (linalg::rank(s.basis) != s.basis.cols())
      throw PreconditionError("subgroup '" + s.id + "' basis is not linearly independent");
    for (const auto* arr : {&s.arrangement, &s.amw_arrangement})
      if (*arr)
        for (const auto& f : **arr)
          if (f.size() != s.basis.cols())
            throw PreconditionError("subgroup '" + s.id + "' arrangement form has the wrong length");
  }
  for (const auto& f : p.fixed_points) {
    const auto& s = find_subgroup(p, f.subgroup);
    if (f.mu.size() != r) throw PreconditionError("mu of '" + f.label + "' has the wrong length");
    if (f.h.rank() != r) throw PreconditionError("h of '" + f.label + "' has the wrong rank");
    for (const auto& w : f.normal_weights) {
      if (w.size() != r) throw PreconditionError("normal weight of '" + f.label + "' has the wrong length");
      if (is_zero(LinearForm(s.basis.transpose() * w)))
        throw PreconditionError("normal weight " + to_string(w) + " of '" + f.label +
                                "' vanishes on the subgroup");
    }
  }
}

Block make_block(const PairingProblem& p, const SubgroupDatum& s) {
  const GroupData& g = p.group;
  Block b;
  b.subgroup = &s;
  b.basis = s.basis;
  const int d = static_cast<int>(s.basis.cols());
  b.gram = s.basis.transpose() * g.gram * s.basis;
  if (d == 0) {
    b.residue_lattice = LatticeBasis(Mat<Rational>(0, 0), Mat<Rational>(0, 0));
    b.amw_lattice = b.residue_lattice;
  } else {
    b.residue_lattice = intersect_subspace(g.integer_lattice, s.basis);
    b.amw_lattice = intersect_subspace(g.weight_lattice, s.basis);
  }
  for (const auto& f : p.fixed_points)
    if (f.subgroup == s.id) b.fixed_points.push_back(&f);

  auto restrict_all = [&](const std::vector<LinearForm>& forms) {
    std::vector<LinearForm> out;
    for (const auto& c : forms) out.push_back(s.basis.transpose() * c);
    return distinct_nonzero(out);
  };
  std::vector<LinearForm> weights;
  for (const auto* f : b.fixed_points)
    weights.insert(weights.end(), f->normal_weights.begin(), f->normal_weights.end());
  b.arrangement = Arrangement(d, s.arrangement ? *s.arrangement : restrict_all(weights), s.order);
  b.amw_arrangement =
      Arrangement(d, s.amw_arrangement ? *s.amw_arrangement : restrict_all(g.simple_roots), s.amw_order);
  return b;
}

MeroFunction restricted_integrand(const PairingProblem& p, const Block& b, const FixedPointDatum& f) {
  const Polynomial dd = p.group.dd();
  const MeroFunction d2(MeroTerm(dd * dd, LinearForm::Zero(p.group.rank), {}, {}));
  return (d2 * f.h).pullback(b.basis);
}

Vec<Rational> restricted_shift(const PairingProblem& p, const Block& b, const FixedPointDatum& f) {
  if (b.basis.cols() == 0) return Vec<Rational>(0);
  return linalg::solve(b.gram, Vec<Rational>(b.basis.transpose() * p.group.gram * f.mu));
}

Rational residue_prefactor(const PairingProblem& p) {
  return p.constants.n1 / (p.constants.n0_prime * Rational(p.group.weyl_order));
}

Rational amw_prefactor(const PairingProblem& p) {
  const Rational rp(p.group.rho_product());
  return p.constants.k / (Rational(p.group.weyl_order) * rp * rp);
}

double amw_volume_prefactor(const PairingProblem& p) {
  double ratio = 1.0;
  for (const auto& a : p.group.positive_roots)
    ratio /= 2.0 * std::numbers::pi * a.dot(p.group.rho).to_double();
  const double vol_g = p.constants.vol_t * ratio;
  return p.constants.k.to_double() / (Rational(p.group.weyl_order).to_double() * vol_g * vol_g);
}

namespace {

SzenesCase block_case(const PairingProblem& p, const Block& b, const FixedPointDatum& f, bool amw) {
  SzenesCase c;
  c.lattice = amw ? b.amw_lattice : b.residue_lattice;
  c.arrangement = amw ? b.amw_arrangement : b.arrangement;
  c.f = restricted_integrand(p, b, f);
  c.t = restricted_shift(p, b, f);
  c.box = p.box;
  return c;
}

}  // namespace

Rational block_residue(const PairingProblem& p, const Block& b, const ResidueOptions& options) {
  Rational s(0);
  for (const auto* f : b.fixed_points) s += szenes_rhs(block_case(p, b, *f, false), options);
  return s;
}

Rational block_amw_residue(const PairingProblem& p, const Block& b, const ResidueOptions& options) {
  Rational s(0);
  for (const auto* f : b.fixed_points) s += szenes_rhs(block_case(p, b, *f, true), options);
  return s;
}

Rational residue_pairing(const PairingProblem& p, const ResidueOptions& options) {
  validate(p);
  Rational s(0);
  for (const auto& sub : p.subgroups) s += block_residue(p, make_block(p, sub), options);
  return residue_prefactor(p) * s;
}

Rational amw_residue_form(const PairingProblem& p, const ResidueOptions& options) {
  validate(p);
  Rational s(0);
  for (const auto& sub : p.subgroups) s += block_amw_residue(p, make_block(p, sub), options);
  return amw_prefactor(p) * s;
}

SSum s_sum(const PairingProblem& p, const Block& b) {
  const Rational rp(p.group.rho_product());
  const double scale = (Rational(1) / (rp * rp)).to_double();
  SSum out;
  for (const auto* f : b.fixed_points) {
    const LatticeSum l = szenes_lhs_truncated(block_case(p, b, *f, true));
    out.value += scale * l.estimate;
    out.raw += scale * l.raw;
    out.imag += scale * l.imag;
    out.tail += scale * l.tail;
    out.points += l.points;
  }
  return out;
}

SSum amw_lattice_sum(const PairingProblem& p) {
  validate(p);
  const double k = (p.constants.k / Rational(p.group.weyl_order)).to_double();
  SSum out;
  for (const auto& sub : p.subgroups) {
    const SSum s = s_sum(p, make_block(p, sub));
    out.value += k * s.value;
    out.raw += k * s.raw;
    out.imag += k * s.imag;
    out.tail += std::abs(k) * s.tail;
    out.points += s.points;
  }
  return out;
}

std::vector<PairingTerm> pairing_terms(const PairingProblem& p, bool amw, const ResidueOptions& options) {
  validate(p);
  std::vector<PairingTerm> out;
  for (const auto& sub : p.subgroups) {
    const Block b = make_block(p, sub);
    for (const auto* f : b.fixed_points) {
      for (auto& in : szenes_integrands(block_case(p, b, *f, amw), options)) {
        const Rational v = in.forms.empty() ? in.integrand.evaluate_exact(Vec<Rational>(0))
                                            : res_tau(in.forms, in.integrand, options);
        out.push_back({sub.id, f->label, std::move(in), v});
      }
    }
  }
  return out;
}

PairingProblem su2_single_block_problem() {
  PairingProblem p;
  p.name = "su2-single-block";
  p.group = GroupData::su(2);
  p.subgroups.push_back({"T", mat({{1}}), std::nullopt, std::nullopt, {}, {}});
  p.fixed_points.push_back({"F", "T", make_vec<Rational>({0}), {form({1}), form({1}), form({1}), form({1})},
                            parse_mero_expression("1/Y1^4", 1)});
  p.box = 10000;
  return p;
}

PairingProblem example_torus_free_problem() {
  PairingProblem p;
  p.name = "torus-free";
  p.group = GroupData::torus(1);
  p.subgroups.push_back({"e", Mat<Rational>(1, 0), std::nullopt, std::nullopt, {}, {}});
  p.fixed_points.push_back({"M", "e", make_vec<Rational>({0}), {}, MeroFunction::constant(1, Rational(1))});
  p.box = 1;
  return p;
}

PairingProblem example_circle_problem(const std::string& eta) {
  PairingProblem p;
  p.name = "su3-circles";
  p.group = GroupData::su(3);
  const std::vector<Vec<Rational>> gens{make_vec<Rational>({1, 1}), make_vec<Rational>({-2, 1}),
                                        make_vec<Rational>({1, -2})};
  const MeroFunction h = parse_mero_expression("(" + eta + ")/(Y1*Y2*(Y1+Y2))", 2);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const std::string id = "U1_" + std::to_string(j);
    Mat<Rational> basis(2, 1);
    basis.col(0) = gens[j];
    p.subgroups.push_back({id, basis, std::vector<LinearForm>{form({1})}, std::nullopt, {}, {}});
    p.fixed_points.push_back({"F" + std::to_string(j), id, Vec<Rational>(gens[j] * Rational(1, 3)),
                              {form({1, 0}), form({0, 1}), form({1, 1})}, h});
  }
  p.box = 4000;
  return p;
}

}  // namespace qhpair
