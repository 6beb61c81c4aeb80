#include "qhpair/residue.hpp"

#include <climits>
#include <cmath>
#include <numbers>

#include "qhpair/laurent.hpp"
#include "qhpair/linalg.hpp"

namespace qhpair {

Mat<Rational> change_of_variables(const std::vector<LinearForm>& tau) {
  const Index r = static_cast<Index>(tau.size());
  Mat<Rational> a(r, r);
  for (Index i = 0; i < r; ++i) {
    if (tau[static_cast<std::size_t>(i)].size() != r)
      throw PreconditionError("ordered basis form has the wrong length");
    a.row(i) = tau[static_cast<std::size_t>(i)].transpose();
  }
  auto inv = linalg::inverse(a);
  if (!inv) throw PreconditionError("ordered basis is not a basis (singular change of variables)");
  return *inv;
}

namespace {

constexpr long long kBig = LLONG_MAX / 8;

long long sat_add(long long a, long long b) { return std::min(kBig, a + b); }

Rational constant_value(const MeroFunction& f) {
  Rational s(0);
  for (const auto& t : f.terms()) s += t.numerator().constant_term();
  return s;
}

}  // namespace

Rational tower_residue_at_cap(const MeroTerm& t, int cap) {
  const int r = t.rank();
  if (r == 0) return t.numerator().constant_term();
  std::vector<SeriesTower> factors;
  factors.push_back(from_polynomial(t.numerator(), r));
  if (!is_zero(t.exponent())) factors.push_back(expand_exp_linear(t.exponent(), r, cap));
  for (const auto& f : t.linear()) {
    const SeriesTower inv = expand_linform_inverse(f.form, r, cap);
    for (int i = 0; i < f.mult; ++i) factors.push_back(inv);
  }
  for (const auto& f : t.expden()) {
    const SeriesTower inv = expand_one_minus_exp_inverse(f.form, r, cap);
    for (int i = 0; i < f.mult; ++i) factors.push_back(inv);
  }
  for (const auto& f : factors)
    if (f.is_exact_zero()) return Rational(0);

  // suffix[i][k]: lowest possible Z_{k+1} exponent contributed by factors i..
  const std::size_t n = factors.size();
  std::vector<std::vector<long long>> suffix(n + 1, std::vector<long long>(static_cast<std::size_t>(r), 0));
  for (std::size_t i = n; i-- > 0;) {
    const auto m = factors[i].min_exponents();
    for (std::size_t k = 0; k < static_cast<std::size_t>(r); ++k)
      suffix[i][k] = sat_add(suffix[i + 1][k], m[k]);
  }
  auto limits_after = [&](std::size_t i) {
    std::vector<long long> lim(static_cast<std::size_t>(r));
    for (std::size_t k = 0; k < lim.size(); ++k)
      lim[k] = suffix[i][k] >= kBig ? -kBig : -1 - suffix[i][k];
    return lim;
  };
  SeriesTower product = factors[0].truncated(limits_after(1));
  for (std::size_t i = 1; i < n; ++i) {
    const auto lim = limits_after(i + 1);
    product = SeriesTower::multiply(product, factors[i], &lim);
  }
  return product.residue();
}

Rational res_tau(const std::vector<LinearForm>& tau, const MeroFunction& f,
                 const ResidueOptions& options) {
  if (static_cast<int>(tau.size()) != f.rank() && !f.is_zero())
    throw PreconditionError("ordered basis size does not match the function's rank");
  if (tau.empty()) return constant_value(f);
  const MeroFunction g = f.pullback(change_of_variables(tau));
  Rational total(0);
  for (const auto& term : g.terms()) {
    int cap = term.pole_order() + 2 + options.extra_cap;
    for (;;) {
      if (cap > options.max_cap)
        throw ComputationError("residue did not stabilize below truncation order " +
                               std::to_string(options.max_cap));
      try {
        const Rational a = tower_residue_at_cap(term, cap);
        const Rational b = tower_residue_at_cap(term, cap + 4);
        if (a == b) {
          total += a;
          break;
        }
      } catch (const InsufficientPrecision&) {
      }
      cap += 4;
    }
  }
  return total;
}

namespace {

struct CompiledTerm {
  std::vector<std::pair<std::complex<double>, std::vector<int>>> monomials;
  std::vector<double> exponent;
  bool has_exponent = false;
  std::vector<std::pair<std::vector<double>, int>> linear;
  std::vector<std::pair<std::vector<double>, int>> expden;
};

std::vector<double> to_doubles(const LinearForm& l) {
  std::vector<double> v(static_cast<std::size_t>(l.size()));
  for (Index i = 0; i < l.size(); ++i) v[static_cast<std::size_t>(i)] = l(i).to_double();
  return v;
}

std::complex<double> dot(const std::vector<double>& c, const std::complex<double>* z) {
  std::complex<double> s(0.0);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0.0) s += c[i] * z[i];
  return s;
}

std::complex<double> ipow(std::complex<double> v, int k) {
  std::complex<double> r(1.0);
  for (int i = 0; i < k; ++i) r *= v;
  return r;
}

std::vector<CompiledTerm> compile(const MeroFunction& g) {
  std::vector<CompiledTerm> out;
  for (const auto& t : g.terms()) {
    CompiledTerm c;
    for (const auto& [m, q] : t.numerator().terms())
      c.monomials.push_back({std::complex<double>(q.to_double()), m});
    c.has_exponent = !is_zero(t.exponent());
    c.exponent = to_doubles(t.exponent());
    for (const auto& f : t.linear()) c.linear.push_back({to_doubles(f.form), f.mult});
    for (const auto& f : t.expden()) c.expden.push_back({to_doubles(f.form), f.mult});
    out.push_back(std::move(c));
  }
  return out;
}

std::complex<double> evaluate(const std::vector<CompiledTerm>& terms,
                              const std::complex<double>* z) {
  std::complex<double> total(0.0);
  for (const auto& t : terms) {
    std::complex<double> num(0.0);
    for (const auto& [c, m] : t.monomials) {
      std::complex<double> v = c;
      for (std::size_t j = 0; j < m.size(); ++j) v *= ipow(z[j], m[j]);
      num += v;
    }
    if (t.has_exponent) num *= std::exp(dot(t.exponent, z));
    std::complex<double> den(1.0);
    for (const auto& [f, k] : t.linear) den *= ipow(dot(f, z), k);
    for (const auto& [f, k] : t.expden) den *= ipow(1.0 - std::exp(dot(f, z)), k);
    total += num / den;
  }
  return total;
}

std::complex<double> trapezoid(const std::vector<CompiledTerm>& terms, int r, int nodes,
                               const NumericResidueOptions& o) {
  std::vector<std::vector<std::complex<double>>> points(static_cast<std::size_t>(r));
  double radius = o.radius_base;
  for (int k = 0; k < r; ++k) {
    auto& p = points[static_cast<std::size_t>(k)];
    for (int j = 0; j < nodes; ++j) {
      const double angle = 2.0 * std::numbers::pi * (j + 0.5) / nodes;
      p.push_back(std::polar(radius, angle));
    }
    radius *= o.radius_ratio;
  }
  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(r));
  std::complex<double> sum(0.0);
  for (;;) {
    std::complex<double> weight(1.0);
    for (int k = 0; k < r; ++k) {
      z[static_cast<std::size_t>(k)] = points[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
      weight *= z[static_cast<std::size_t>(k)];
    }
    sum += evaluate(terms, z.data()) * weight;
    int k = r - 1;
    for (; k >= 0; --k) {
      if (++idx[static_cast<std::size_t>(k)] < nodes) break;
      idx[static_cast<std::size_t>(k)] = 0;
    }
    if (k < 0) break;
  }
  return sum / std::pow(static_cast<double>(nodes), r);
}

}  // namespace

std::complex<double> res_tau_numeric(const std::vector<LinearForm>& tau, const MeroFunction& f,
                                     const NumericResidueOptions& options) {
  if (static_cast<int>(tau.size()) != f.rank() && !f.is_zero())
    throw PreconditionError("ordered basis size does not match the function's rank");
  if (tau.empty()) return {constant_value(f).to_double(), 0.0};
  const int r = static_cast<int>(tau.size());
  const auto terms = compile(f.pullback(change_of_variables(tau)));
  int nodes = options.initial_nodes;
  std::complex<double> est = trapezoid(terms, r, nodes, options);
  for (;;) {
    const int next = nodes * 2;
    if (next > options.max_nodes || std::pow(static_cast<double>(next), r) > options.max_evaluations)
      throw ComputationError("numeric residue did not converge within the node cap");
    const std::complex<double> refined = trapezoid(terms, r, next, options);
    const double change = std::abs(refined - est);
    est = refined;
    nodes = next;
    if (change < options.tolerance * std::max(1.0, std::abs(est))) return est;
  }
}

}  // namespace qhpair
