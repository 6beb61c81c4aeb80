// Iterated residues Res^tau = Res_{Z_1=0} ... Res_{Z_r=0}, where
// Z_j = tau_j(Y) and Z_r is taken first.
//
// Three independent evaluators are provided: series towers (exact), a
// symbolic one-variable-at-a-time reduction (exact) and nested trapezoidal
// contour integration (floating point).
#ifndef QHPAIR_RESIDUE_HPP
#define QHPAIR_RESIDUE_HPP

#include <complex>
#include <vector>

#include "qhpair/mero.hpp"

namespace qhpair {

struct ResidueOptions {
  /// Truncation order is raised in steps of 4 up to this bound.
  int max_cap = 64;
  /// Extra orders added to the starting truncation.
  int extra_cap = 0;
};

/// Y = change_of_variables(tau) * Z for Z_j = tau_j(Y).
Mat<Rational> change_of_variables(const std::vector<LinearForm>& tau);

/// Exact iterated residue via series towers.
Rational res_tau(const std::vector<LinearForm>& tau, const MeroFunction& f,
                 const ResidueOptions& options = {});

/// Residue of one term already written in Z-coordinates, at a fixed
/// truncation order. Throws InsufficientPrecision if `cap` is too small.
Rational tower_residue_at_cap(const MeroTerm& term_in_z, int cap);

/// Res_{Z_k = 0} with the other variables held generic (k is 0-based). The
/// result no longer depends on Z_k and is returned in the remaining
/// variables, in order.
MeroFunction res_one(const MeroFunction& f, int k);

/// Exact iterated residue by repeated res_one, innermost variable first.
Rational res_tau_symbolic(const std::vector<LinearForm>& tau, const MeroFunction& f);

struct NumericResidueOptions {
  double radius_base = 0.1;
  double radius_ratio = 0.01;
  int initial_nodes = 32;
  int max_nodes = 512;
  double max_evaluations = 1.6e7;
  double tolerance = 1e-10;
};

/// Nested trapezoidal rule on |Z_k| = base * ratio^(k-1).
std::complex<double> res_tau_numeric(const std::vector<LinearForm>& tau, const MeroFunction& f,
                                     const NumericResidueOptions& options = {});

}  // namespace qhpair

#endif  // QHPAIR_RESIDUE_HPP
