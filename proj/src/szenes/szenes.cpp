#include "qhpair/szenes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "qhpair/linalg.hpp"
#include "qhpair/parallel.hpp"

namespace qhpair {

namespace {

struct LexLess {
  bool operator()(const LinearForm& a, const LinearForm& b) const { return lex_less(a, b); }
};

// f = sum_l g_l e^{l}, keyed by l.
std::map<LinearForm, MeroFunction, LexLess> group_by_exponent(const MeroFunction& f) {
  std::map<LinearForm, MeroFunction, LexLess> out;
  for (const auto& t : f.terms()) {
    if (!t.expden().empty())
      throw PreconditionError("lattice-sum functions may not contain (1 - exp) denominators");
    auto it = out.try_emplace(t.exponent(), MeroFunction(f.rank())).first;
    it->second.add(MeroTerm(t.numerator(), LinearForm::Zero(f.rank()), t.linear(), {}));
  }
  return out;
}

void check_poles_on_arrangement(const MeroFunction& f, const Arrangement& a) {
  for (const auto& t : f.terms())
    for (const auto& l : t.linear()) {
      bool found = false;
      for (const auto& g : a.forms()) found = found || proportional(l.form, g);
      if (!found)
        throw PreconditionError("pole along " + to_string(l.form) + " is not in the arrangement");
    }
}

MeroFunction shift_exponents(const MeroFunction& f, const LinearForm& shift) {
  MeroFunction out(f.rank());
  for (const auto& t : f.terms())
    out.add(MeroTerm(t.numerator(), t.exponent() + shift, t.linear(), t.expden()));
  return out;
}

}  // namespace

namespace {

Mat<Rational> sigma_vectors(const LatticeBasis& m, const std::vector<LinearForm>& sigma) {
  const int r = static_cast<int>(m.rank());
  Mat<Rational> vecs(r, r);
  for (int j = 0; j < r; ++j) vecs.col(j) = m.vector_of(sigma[static_cast<std::size_t>(j)]);
  return vecs;
}

}  // namespace

MeroFunction f_t_sigma(const LatticeBasis& m, const std::vector<LinearForm>& sigma,
                       const Vec<Rational>& t, const Vec<Rational>* direction) {
  const int r = static_cast<int>(m.rank());
  if (static_cast<int>(sigma.size()) != r) throw PreconditionError("sigma must be a basis");
  const Mat<Rational> vecs = sigma_vectors(m, sigma);
  CosetSystem cs = coset_reps_in_box(m, vecs, t);
  if (direction) {
    const Mat<Rational> inv = linalg::inverse_or_throw(vecs, "sigma");
    const Vec<Rational> c = inv * *direction;
    for (auto& u : cs.representatives) {
      const Vec<Rational> n = inv * (t - u);
      for (int j = 0; j < r; ++j) {
        if (c(j).is_zero()) throw PreconditionError("tie-break direction is not generic");
        if (n(j).is_zero() && c(j).sign() < 0) u -= vecs.col(j);
      }
    }
    std::sort(cs.representatives.begin(), cs.representatives.end(), lex_less);
  }
  std::vector<Factor> den;
  for (const auto& a : sigma) den.push_back({a, 1});
  const Rational weight = Rational(1) / Rational(cs.index);
  MeroFunction out(r);
  for (const auto& u : cs.representatives)
    out.add(MeroTerm(Polynomial::constant(r, weight), m.covector(t - u), {}, den));
  return out;
}

Vec<Rational> generic_direction(const LatticeBasis& m, const Arrangement& a,
                                const std::vector<OrderedBasis>& members) {
  const int r = static_cast<int>(m.rank());
  std::vector<Mat<Rational>> inverses;
  for (const auto& b : members)
    inverses.push_back(linalg::inverse_or_throw(sigma_vectors(m, a.forms_of(b)), "sigma"));
  // Points of the moment curve (1, q, q^2, ...) avoid every hyperplane for
  // all but finitely many q.
  for (int q = 2;; ++q) {
    Vec<Rational> v(r);
    for (int j = 0; j < r; ++j) v(j) = pow(Rational(q), j);
    bool ok = true;
    for (const auto& inv : inverses) {
      const Vec<Rational> c = inv * v;
      for (int j = 0; j < r; ++j) ok = ok && !c(j).is_zero();
    }
    if (ok) return v;
  }
}

std::vector<ResidueIntegrand> szenes_integrands(const SzenesCase& c, const ResidueOptions& options) {
  const int r = static_cast<int>(c.lattice.rank());
  if (c.f.rank() != r || c.arrangement.rank() != r)
    throw PreconditionError("lattice, arrangement and function ranks differ");
  const Vec<Rational> t = c.t.size() == 0 ? Vec<Rational>(Vec<Rational>::Zero(r)) : c.t;
  if (t.size() != r) throw PreconditionError("shift has the wrong length");
  const auto groups = group_by_exponent(c.f);
  if (r == 0) {
    MeroFunction total(0);
    for (const auto& [l, g] : groups) total += g;
    return {ResidueIntegrand{{}, {}, total}};
  }
  check_poles_on_arrangement(c.f, c.arrangement);
  const DiagonalBasis ob = c.basis ? *c.basis : diagonal_basis(c.arrangement, options);
  const LatticeBasis m = dual_lattice(c.lattice);
  const Vec<Rational> v = generic_direction(m, c.arrangement, ob.members);
  return parallel_map<ResidueIntegrand>(ob.members.size(), [&](std::size_t i) {
    ResidueIntegrand out{ob.members[i], c.arrangement.forms_of(ob.members[i]), MeroFunction(r)};
    for (const auto& [l, g] : groups)
      out.integrand += g * f_t_sigma(m, out.forms, Vec<Rational>(t + m.vector_of(l)), &v);
    return out;
  });
}

Rational szenes_rhs(const SzenesCase& c, const ResidueOptions& options) {
  const auto integrands = szenes_integrands(c, options);
  if (c.lattice.rank() == 0) return integrands.front().integrand.evaluate_exact(Vec<Rational>(0));
  const auto parts = parallel_map<Rational>(integrands.size(), [&](std::size_t i) {
    return res_tau(integrands[i].forms, integrands[i].integrand, options);
  });
  Rational total(0);
  for (const auto& p : parts) total += p;
  return total;
}

MeroFunction reduce_exponents(const MeroFunction& f) {
  MeroFunction out(f.rank());
  for (const auto& t : f.terms())
    out.add(MeroTerm(t.numerator(), -fractional_reduce(-t.exponent()), t.linear(), t.expden()));
  return out;
}

Rational szenes_sun_rhs(const RootSystem& rs, const MeroFunction& f, const Vec<Rational>& t,
                        const ResidueOptions& options) {
  const int r = rs.rank();
  if (f.rank() != r) throw PreconditionError("function rank differs from the group rank");
  MeroFunction g = f;
  if (t.size() != 0) {
    if (t.size() != r) throw PreconditionError("shift has the wrong length");
    g = shift_exponents(f, rs.gram() * t);
  }
  for (const auto& term : g.terms()) {
    if (!term.expden().empty())
      throw PreconditionError("the SU(n) form needs f = g e^{-gamma} with g rational");
    const Rational last = -term.exponent()(r - 1);
    if (last.sign() < 0 || last >= Rational(1))
      throw PreconditionError("gamma_" + std::to_string(r) + " = " + last.str() +
                              " is outside [0, 1); apply fractional_reduce first");
  }
  check_poles_on_arrangement(g, rs.root_arrangement());

  const auto ws = weyl_subgroup(rs);
  const auto parts = parallel_map<MeroFunction>(ws.size(), [&](std::size_t i) {
    return reduce_exponents(g.pullback(weyl_matrix(rs, ws[i])));
  });
  MeroFunction sym(r);
  for (const auto& p : parts) sym += p;

  std::vector<Factor> den;
  for (const auto& e : rs.simple_roots()) den.push_back({LinearForm(-e), 1});
  const Rational sign = r % 2 == 0 ? Rational(1) : Rational(-1);
  const MeroFunction kernel(MeroTerm(Polynomial::constant(r, sign), LinearForm::Zero(r), {}, den));
  return res_tau(rs.simple_roots(), sym * kernel, options);
}

void check_decay(const MeroFunction& f) {
  const int r = f.rank();
  for (const auto& t : f.terms()) {
    if (!t.expden().empty())
      throw PreconditionError("lattice sums exclude (1 - exp) denominators");
    const auto& lin = t.linear();
    const int num = t.numerator().degree();
    const std::size_t k = lin.size();
    if (k > 20) throw PreconditionError("too many distinct denominator forms");
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<LinearForm> span;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) span.push_back(lin[i].form);
      Mat<Rational> rows(static_cast<Index>(span.size()), r);
      for (std::size_t i = 0; i < span.size(); ++i) rows.row(static_cast<Index>(i)) = span[i].transpose();
      const int dim = span.empty() ? 0 : static_cast<int>(linalg::rank(rows));
      // Only closed subsets matter: skip masks missing a form already in their span.
      int outside = 0;
      bool closed = true;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) continue;
        Mat<Rational> ext(rows.rows() + 1, r);
        ext.topRows(rows.rows()) = rows;
        ext.row(rows.rows()) = lin[i].form.transpose();
        if (static_cast<int>(linalg::rank(ext)) == dim) closed = false;
        outside += lin[i].mult;
      }
      if (!closed || dim == r) continue;
      if (outside - num <= r - dim)
        throw PreconditionError("lattice sum does not converge absolutely: denominator degree " +
                                std::to_string(outside - num) + " transverse to a " +
                                std::to_string(dim) + "-dimensional flat, need more than " +
                                std::to_string(r - dim));
    }
  }
}

namespace {

long long to_ll(const Integer& v) {
  if (!v.fits_slong_p()) throw ComputationError("lattice coordinates overflow");
  return v.get_si();
}

// Integer vector a and modulus d with x . k = (a . k) / d for integral k.
std::pair<std::vector<long long>, long long> integral_form(const Vec<Rational>& x) {
  Integer d = 1;
  for (Index i = 0; i < x.size(); ++i) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x(i).denominator().get_mpz_t());
  std::vector<long long> a;
  for (Index i = 0; i < x.size(); ++i) {
    Integer v = (x(i) * Rational(d)).numerator();
    a.push_back(to_ll(v));
  }
  return {a, to_ll(d)};
}

struct Neumaier {
  double sum = 0, comp = 0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct ComplexSum {
  Neumaier re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Visits every k with max |k_j| = s.
template <class Fn>
void for_each_in_shell(int r, int s, Fn&& fn) {
  std::vector<long long> k(static_cast<std::size_t>(r));
  if (s == 0) {
    fn(k);
    return;
  }
  // j = first coordinate with |k_j| = s; earlier ones in (-s, s), later ones in [-s, s].
  for (int j = 0; j < r; ++j) {
    for (long long sj : {-static_cast<long long>(s), static_cast<long long>(s)}) {
      std::vector<long long> lo(static_cast<std::size_t>(r)), hi(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) {
        const long long b = i < j ? s - 1 : s;
        lo[static_cast<std::size_t>(i)] = i == j ? sj : -b;
        hi[static_cast<std::size_t>(i)] = i == j ? sj : b;
      }
      k = lo;
      for (;;) {
        fn(k);
        int i = r - 1;
        while (i >= 0 && k[static_cast<std::size_t>(i)] == hi[static_cast<std::size_t>(i)]) {
          k[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
          --i;
        }
        if (i < 0) break;
        ++k[static_cast<std::size_t>(i)];
      }
    }
  }
}

}  // namespace

LatticeSum szenes_lhs_truncated(const SzenesCase& c) {
  const int r = static_cast<int>(c.lattice.rank());
  if (c.f.rank() != r) throw PreconditionError("function rank differs from the lattice rank");
  if (c.box < 1) throw PreconditionError("box bound must be at least 1");
  check_decay(c.f);
  const Vec<Rational> t = c.t.size() == 0 ? Vec<Rational>(Vec<Rational>::Zero(r)) : c.t;
  const Mat<Rational>& n = c.lattice.generators();
  const Mat<Rational>& g = c.lattice.gram();

  struct CompiledTerm {
    MeroTerm rational;
    std::vector<long long> phase;
    long long modulus;
  };
  std::vector<CompiledTerm> terms;
  for (const auto& term : c.f.terms()) {
    const Vec<Rational> v = n.transpose() * (g * t + term.exponent());
    auto [a, d] = integral_form(v);
    terms.push_back({MeroTerm(term.numerator(), LinearForm::Zero(r), term.linear(), {}), a, d});
  }
  std::vector<std::vector<long long>> walls;
  for (const auto& form : c.arrangement.forms()) walls.push_back(integral_form(n.transpose() * form).first);
  Eigen::MatrixXd nd(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) nd(i, j) = n(i, j).to_double();

  const double two_pi = 2 * std::numbers::pi;
  auto point_value = [&](const std::vector<long long>& k, bool& regular) {
    for (const auto& w : walls) {
      long long s = 0;
      for (int j = 0; j < r; ++j) s += w[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(j)];
      if (s == 0) {
        regular = false;
        return std::complex<double>(0);
      }
    }
    regular = true;
    std::vector<std::complex<double>> y(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      double v = 0;
      for (int j = 0; j < r; ++j) v += nd(i, j) * static_cast<double>(k[static_cast<std::size_t>(j)]);
      y[static_cast<std::size_t>(i)] = std::complex<double>(0, two_pi * v);
    }
    std::complex<double> total = 0;
    for (const auto& ct : terms) {
      long long p = 0;
      for (int j = 0; j < r; ++j) p = (p + ct.phase[static_cast<std::size_t>(j)] % ct.modulus * k[static_cast<std::size_t>(j)]) % ct.modulus;
      if (p < 0) p += ct.modulus;
      const double angle = two_pi * static_cast<double>(p) / static_cast<double>(ct.modulus);
      total += std::polar(1.0, angle) * ct.rational.evaluate(y.data());
    }
    return total;
  };

  constexpr int kShellsPerChunk = 64;
  const int shells = c.box + 1;
  const int chunks = (shells + kShellsPerChunk - 1) / kShellsPerChunk;
  struct ChunkResult {
    std::vector<std::complex<double>> shell;
    long long points = 0;
  };
  const auto results = parallel_map<ChunkResult>(static_cast<std::size_t>(chunks), [&](std::size_t ci) {
    ChunkResult out;
    const int lo = static_cast<int>(ci) * kShellsPerChunk;
    const int hi = std::min(shells, lo + kShellsPerChunk);
    for (int s = lo; s < hi; ++s) {
      ComplexSum acc;
      for_each_in_shell(r, s, [&](const std::vector<long long>& k) {
        bool regular = false;
        const auto v = point_value(k, regular);
        if (regular) {
          acc.add(v);
          ++out.points;
        }
      });
      out.shell.push_back(acc.value());
    }
    return out;
  });

  LatticeSum out;
  ComplexSum running;
  double at_quarter = 0, at_half = 0;
  int s = 0;
  for (const auto& chunk : results) {
    out.points += chunk.points;
    for (const auto& v : chunk.shell) {
      running.add(v);
      if (s == c.box / 4) at_quarter = running.value().real();
      if (s == c.box / 2) at_half = running.value().real();
      if (s == c.box) out.tail = std::abs(v);
      ++s;
    }
  }
  const auto total = running.value();
  out.raw = total.real();
  out.imag = total.imag();
  out.estimate = out.raw;
  const double d1 = at_half - at_quarter, d2 = out.raw - at_half;
  if (c.box >= 8 && d1 != 0 && std::abs(d2 / d1) < 0.9 && d2 != d1)
    out.estimate = out.raw - d2 * d2 / (d2 - d1);
  return out;
}

SzenesReport verify_szenes(const SzenesCase& c, const RootSystem* rs, const ResidueOptions& options) {
  SzenesReport rep;
  rep.rhs = szenes_rhs(c, options);
  rep.lhs = szenes_lhs_truncated(c);
  rep.difference = std::abs(rep.rhs.to_double() - rep.lhs.estimate);
  rep.tolerance = std::max(1e-6, 10 * rep.lhs.tail);
  rep.imag_ok = std::abs(rep.lhs.imag) <= 1e-10 * (1 + std::abs(rep.lhs.raw));
  rep.pass = rep.imag_ok && rep.difference <= rep.tolerance;
  if (rs && c.lattice.same_lattice(rs->weight_lattice())) {
    const int r = rs->rank();
    const Vec<Rational> t = c.t.size() == 0 ? Vec<Rational>(Vec<Rational>::Zero(r)) : c.t;
    rep.sun_rhs = szenes_sun_rhs(*rs, reduce_exponents(shift_exponents(c.f, rs->gram() * t)),
                                 Vec<Rational>(), options);
    rep.pass = rep.pass && *rep.sun_rhs == rep.rhs;
  }
  return rep;
}

}  // namespace qhpair
