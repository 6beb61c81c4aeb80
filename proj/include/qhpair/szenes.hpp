// Both sides of Szenes' lattice-sum identity
//
//   sum_{n in N_reg} e^{<t, 2 pi i n>} f(2 pi i n)
//     = sum_{sigma in OB} Res^sigma( f(z) F^t_sigma(-z) ),
//
// together with the SU(n) form that symmetrizes over W_{n-1}.
#ifndef QHPAIR_SZENES_HPP
#define QHPAIR_SZENES_HPP

#include <optional>

#include "qhpair/arrangement.hpp"
#include "qhpair/lattice.hpp"
#include "qhpair/rootsystem.hpp"

namespace qhpair {

struct SzenesCase {
  /// N, with the ambient Gram matrix; M is its dual.
  LatticeBasis lattice;
  Arrangement arrangement;
  /// Computed from the arrangement order when absent.
  std::optional<DiagonalBasis> basis;
  MeroFunction f;
  /// Shift, a vector in Y-coordinates.
  Vec<Rational> t;
  int box = 100;
};

/// F^t_sigma(-z) = (1/|M/M_sigma|) sum_{u in R(t,sigma)} e^{(t-u)(z)} / prod (1 - e^{alpha(z)}).
/// R(t, sigma) uses the half-open box 0 <= n_alpha < 1. With a direction v,
/// points on the box boundary are decided as for t + eps v, eps -> 0+.
MeroFunction f_t_sigma(const LatticeBasis& m, const std::vector<LinearForm>& sigma,
                       const Vec<Rational>& t, const Vec<Rational>* direction = nullptr);

/// A vector with nonzero coordinates in the basis of every member, used to
/// break ties when t lies on a wall of some box.
Vec<Rational> generic_direction(const LatticeBasis& m, const Arrangement& a,
                                const std::vector<OrderedBasis>& members);

struct ResidueIntegrand {
  OrderedBasis sigma;
  std::vector<LinearForm> forms;
  /// f(z) F^t_sigma(-z), with the exponent groups of f already merged.
  MeroFunction integrand;
};

/// The right side before taking residues, one entry per member of OB.
std::vector<ResidueIntegrand> szenes_integrands(const SzenesCase& c,
                                                const ResidueOptions& options = {});

/// Exact right side. Exponential factors e^{l} of f are folded into the
/// shift (t -> t + G^{-1} l); f may not contain (1 - e^b) denominators.
Rational szenes_rhs(const SzenesCase& c, const ResidueOptions& options = {});

/// Right side through the SU(n) form: Res_{Y_1} ... Res_{Y_{n-1}} of
/// sum_w [[w(f)]] / prod (e^{-Y_j} - 1), for the weight lattice. The shift t
/// is folded into the exponent first. Throws PreconditionError unless the
/// last coordinate of every gamma = -exponent lies in [0, 1).
Rational szenes_sun_rhs(const RootSystem& rs, const MeroFunction& f,
                        const Vec<Rational>& t = {}, const ResidueOptions& options = {});

/// Exponent forms replaced by -[[-exponent]], so that the SU(n) form applies.
MeroFunction reduce_exponents(const MeroFunction& f);

struct LatticeSum {
  double raw = 0;         // real part of the box sum
  double imag = 0;        // imaginary part of the box sum
  double tail = 0;        // magnitude of the outermost shell
  double estimate = 0;    // Aitken extrapolation over boxes B/4, B/2, B
  long long points = 0;   // regular lattice points summed
};

/// Checks that f is a finite sum of rational functions times e^{l} whose
/// lattice sum converges absolutely: for every subspace W spanned by
/// denominator forms (W = 0 included), the degree of the denominator forms
/// outside W minus the numerator degree exceeds rank - dim W. Throws
/// PreconditionError otherwise.
void check_decay(const MeroFunction& f);

/// Truncated left side over the cube |k_j| <= box in lattice coordinates.
LatticeSum szenes_lhs_truncated(const SzenesCase& c);

struct SzenesReport {
  Rational rhs;
  LatticeSum lhs;
  double difference = 0;  // |rhs - estimate|
  double tolerance = 0;   // max(1e-6, 10 * tail)
  bool imag_ok = false;
  bool pass = false;
  std::optional<Rational> sun_rhs;  // SU(n) path, when applicable
};

SzenesReport verify_szenes(const SzenesCase& c, const RootSystem* rs = nullptr,
                           const ResidueOptions& options = {});

}  // namespace qhpair

#endif  // QHPAIR_SZENES_HPP
