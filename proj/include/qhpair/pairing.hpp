// Intersection pairings from fixed-point data: the residue formula, the
// weight-lattice sum, and its residue transform.
//
// Each subgroup S is given by a basis A of its Lie algebra inside t (columns
// in Y-coordinates). Functions on t restrict to S through x -> A x, and
// covectors c restrict to A^T c.
#ifndef QHPAIR_PAIRING_HPP
#define QHPAIR_PAIRING_HPP

#include <optional>
#include <string>
#include <vector>

#include "qhpair/szenes.hpp"

namespace qhpair {

/// Group-level data: SU(n) or a torus (no roots).
struct GroupData {
  std::string name;
  int rank = 0;
  Mat<Rational> gram;
  std::vector<LinearForm> simple_roots;
  std::vector<LinearForm> positive_roots;
  LatticeBasis integer_lattice;
  LatticeBasis weight_lattice;
  Vec<Rational> rho;
  Integer weyl_order = 1;

  static GroupData su(int n);
  static GroupData torus(int rank);
  /// "su2", "su3", ... or "torus1", "torus2", ...
  static GroupData parse(std::string_view selector);

  /// prod over positive roots of <alpha, rho>.
  Integer rho_product() const;
  /// prod over positive roots of alpha (the polynomial D).
  Polynomial dd() const;
};

struct SubgroupDatum {
  std::string id;
  /// rank x dim; columns span the Lie algebra of S.
  Mat<Rational> basis;
  /// Residue-formula arrangement on s; defaults to the distinct restricted
  /// normal weights of the fixed points of this block.
  std::optional<std::vector<LinearForm>> arrangement;
  /// AMW-transform arrangement on s; defaults to the distinct restricted
  /// simple roots.
  std::optional<std::vector<LinearForm>> amw_arrangement;
  std::vector<int> order;
  std::vector<int> amw_order;
};

struct FixedPointDatum {
  std::string label;
  std::string subgroup;
  /// mu(F), a vector in Y-coordinates of t.
  Vec<Rational> mu;
  /// Weights of S on the normal bundle, as covectors on t.
  std::vector<LinearForm> normal_weights;
  /// The localized contribution on t (eta e^{omega_F} / e_F integrated over F).
  MeroFunction h;
};

struct PairingConstants {
  Rational n1 = Rational(1);
  Rational n0_prime = Rational(1);
  Rational k = Rational(1);
  /// Only used for the reported AMW normalization.
  double vol_t = 1.0;
};

struct PairingProblem {
  std::string name;
  GroupData group;
  std::vector<SubgroupDatum> subgroups;
  std::vector<FixedPointDatum> fixed_points;
  PairingConstants constants;
  int box = 2000;
};

/// Checks references, shapes and that restricted normal weights are nonzero.
void validate(const PairingProblem& p);

/// Restriction data of one subgroup.
struct Block {
  const SubgroupDatum* subgroup = nullptr;
  Mat<Rational> basis;
  Mat<Rational> gram;
  LatticeBasis residue_lattice;  // integer lattice meets s
  LatticeBasis amw_lattice;      // weight lattice meets s
  Arrangement arrangement;
  Arrangement amw_arrangement;
  std::vector<const FixedPointDatum*> fixed_points;
};

Block make_block(const PairingProblem& p, const SubgroupDatum& s);

/// D^2 h_F restricted to s.
MeroFunction restricted_integrand(const PairingProblem& p, const Block& b, const FixedPointDatum& f);
/// mu(F) projected to s, in s-coordinates.
Vec<Rational> restricted_shift(const PairingProblem& p, const Block& b, const FixedPointDatum& f);

/// n1 / (n0' |W|).
Rational residue_prefactor(const PairingProblem& p);
/// k / |W| * prod 1 / <alpha, rho>^2.
Rational amw_prefactor(const PairingProblem& p);
/// k / (|W| (vol G)^2) with vol G = vol T * vol G / vol T.
double amw_volume_prefactor(const PairingProblem& p);

/// Per-subgroup sum over F of the Szenes right side, before constants.
Rational block_residue(const PairingProblem& p, const Block& b, const ResidueOptions& options = {});
Rational block_amw_residue(const PairingProblem& p, const Block& b, const ResidueOptions& options = {});

Rational residue_pairing(const PairingProblem& p, const ResidueOptions& options = {});
Rational amw_residue_form(const PairingProblem& p, const ResidueOptions& options = {});

struct SSum {
  double value = 0;  // extrapolated
  double raw = 0;
  double imag = 0;
  double tail = 0;
  long long points = 0;
};

/// sum over regular xi in the weight lattice of s of e^{2 pi i <mu(F), xi>}
/// f_F(2 pi i xi) prod 1 / <alpha, rho>^2, summed over F in the block.
SSum s_sum(const PairingProblem& p, const Block& b);

/// k / |W| * sum over subgroups of s_sum.
SSum amw_lattice_sum(const PairingProblem& p);

/// One Res^sigma integrand of the residue formula, for per-F reporting.
struct PairingTerm {
  std::string subgroup;
  std::string label;
  ResidueIntegrand integrand;
  Rational value;
};

/// Terms of the residue formula (amw = false) or of the AMW transform.
std::vector<PairingTerm> pairing_terms(const PairingProblem& p, bool amw,
                                       const ResidueOptions& options = {});

/// Built-in problems.
PairingProblem su2_single_block_problem();
PairingProblem example_torus_free_problem();
/// eta is an expression on t; h_F = eta / e_F.
PairingProblem example_circle_problem(const std::string& eta = "1");

}  // namespace qhpair

#endif  // QHPAIR_PAIRING_HPP
