// Symbolic one-variable residues. Every factor of a term is classified by
// its dependence on the residue variable z = Z_k: pure (depends on z only),
// regular (z and other variables) or independent. Pure factors give the pole
// z^{-p} times a rational power series; regular factors are Taylor expanded
// in z with coefficients that are again MeroFunctions of the other variables.
#include "qhpair/laurent.hpp"
#include "qhpair/residue.hpp"

namespace qhpair {

namespace {

using Series = std::vector<MeroFunction>;

Series series_mul(const Series& a, const Series& b, int rank) {
  const std::size_t n = a.size();
  Series out(n, MeroFunction(rank));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

std::vector<Rational> rational_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Coefficients (in q) of A_{m,n}: d^n/db^n (1 - e^b)^{-m} = A_{m,n}(q) / (1-q)^{m+n}.
std::vector<Rational> derivative_numerator(int m, int n) {
  std::vector<Rational> a{Rational(1)};
  for (int s = 0; s < n; ++s) {
    const Rational weight(m + s);
    std::vector<Rational> next(a.size() + 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      // q(1-q) A' contributes i*a_i (q^i - q^{i+1}); (m+s) q A contributes to q^{i+1}.
      const Rational di = Rational(static_cast<long>(i)) * a[i];
      next[i] += di;
      next[i + 1] -= di;
      next[i + 1] += weight * a[i];
    }
    while (next.size() > 1 && next.back().is_zero()) next.pop_back();
    a = std::move(next);
  }
  return a;
}

enum class Kind { kPure, kRegular, kIndependent };

Kind classify(const LinearForm& l, Index v) {
  if (l(v).is_zero()) return Kind::kIndependent;
  for (Index j = 0; j < l.size(); ++j)
    if (j != v && !l(j).is_zero()) return Kind::kRegular;
  return Kind::kPure;
}

MeroFunction single(const Polynomial& num, const LinearForm& exponent,
                    std::vector<Factor> lin, std::vector<Factor> exd) {
  return MeroFunction(MeroTerm(num, exponent, std::move(lin), std::move(exd)));
}

MeroFunction term_residue(const MeroTerm& t, Index v) {
  const int r = t.rank();
  const LinearForm zero_form = LinearForm::Zero(r);
  int p = 0;
  for (const auto& f : t.linear())
    if (classify(f.form, v) == Kind::kPure) p += f.mult;
  for (const auto& f : t.expden())
    if (classify(f.form, v) == Kind::kPure) p += f.mult;
  if (p == 0) return MeroFunction(r);
  const auto n = static_cast<std::size_t>(p);

  // Pure part: z^{-p} * sum_i a_i z^i.
  std::vector<Rational> a(n, Rational(0));
  a[0] = Rational(1);
  std::vector<Factor> indep_lin, indep_exd;
  Series reg(n, MeroFunction(r));
  LinearForm exponent_rest = t.exponent();
  exponent_rest(v) = Rational(0);
  std::vector<Series> pending;

  for (const auto& f : t.linear()) {
    switch (classify(f.form, v)) {
      case Kind::kPure:
        for (auto& x : a) x *= pow(f.form(v), -f.mult);
        break;
      case Kind::kIndependent:
        indep_lin.push_back(f);
        break;
      case Kind::kRegular: {
        const Rational c = f.form(v);
        LinearForm rest = f.form;
        rest(v) = Rational(0);
        Series s(n, MeroFunction(r));
        Rational cn(1);
        for (std::size_t k = 0; k < n; ++k) {
          const Rational coef = binomial_general(-f.mult, static_cast<int>(k)) * cn;
          s[k] = single(Polynomial::constant(r, coef), zero_form,
                        {{rest, f.mult + static_cast<int>(k)}}, {});
          cn *= c;
        }
        pending.push_back(std::move(s));
        break;
      }
    }
  }
  for (const auto& f : t.expden()) {
    switch (classify(f.form, v)) {
      case Kind::kPure: {
        const Rational b = f.form(v);
        // (1 - e^{bz})^{-1} = z^{-1} sum_k -B_k b^{k-1} z^k / k!
        std::vector<Rational> s(n, Rational(0));
        for (std::size_t k = 0; k < n; ++k)
          s[k] = -bernoulli(static_cast<int>(k)) * pow(b, static_cast<int>(k) - 1) /
                 factorial(static_cast<int>(k));
        for (int i = 0; i < f.mult; ++i) a = rational_mul(a, s);
        break;
      }
      case Kind::kIndependent:
        indep_exd.push_back(f);
        break;
      case Kind::kRegular: {
        const Rational b = f.form(v);
        LinearForm rest = f.form;
        rest(v) = Rational(0);
        Series s(n, MeroFunction(r));
        Rational bk(1);
        for (std::size_t k = 0; k < n; ++k) {
          const auto poly = derivative_numerator(f.mult, static_cast<int>(k));
          const Rational scale = bk / factorial(static_cast<int>(k));
          for (std::size_t i = 0; i < poly.size(); ++i) {
            if (poly[i].is_zero()) continue;
            s[k] += single(Polynomial::constant(r, scale * poly[i]),
                           rest * Rational(static_cast<long>(i)), {},
                           {{rest, f.mult + static_cast<int>(k)}});
          }
          bk *= b;
        }
        pending.push_back(std::move(s));
        break;
      }
    }
  }

  // Numerator split by powers of z, times the independent factors.
  for (const auto& [m, c] : t.numerator().terms()) {
    const auto d = static_cast<std::size_t>(m[static_cast<std::size_t>(v)]);
    if (d >= n) continue;
    Polynomial::Monomial rest = m;
    rest[static_cast<std::size_t>(v)] = 0;
    Polynomial mono(r);
    mono.add_term(rest, c);
    reg[d] += single(mono, exponent_rest, indep_lin, indep_exd);
  }
  const Rational c_exp = t.exponent()(v);
  if (!c_exp.is_zero()) {
    Series s(n, MeroFunction(r));
    Rational ck(1);
    for (std::size_t k = 0; k < n; ++k) {
      s[k] = MeroFunction::constant(r, ck);
      ck = ck * c_exp / Rational(static_cast<long>(k + 1));
    }
    pending.push_back(std::move(s));
  }
  for (const auto& s : pending) reg = series_mul(reg, s, r);

  MeroFunction out(r);
  for (std::size_t i = 0; i < n; ++i)
    if (!a[i].is_zero()) out += reg[n - 1 - i].scaled(a[i]);
  return out;
}

}  // namespace

MeroFunction res_one(const MeroFunction& f, int k) {
  const int r = f.rank();
  if (k < 0 || k >= r) throw PreconditionError("residue variable index out of range");
  MeroFunction acc(r);
  for (const auto& t : f.terms()) acc += term_residue(t, k);
  Mat<Rational> drop = Mat<Rational>::Zero(r, r - 1);
  for (int j = 0, c = 0; j < r; ++j)
    if (j != k) drop(j, c++) = Rational(1);
  return acc.pullback(drop);
}

Rational res_tau_symbolic(const std::vector<LinearForm>& tau, const MeroFunction& f) {
  if (static_cast<int>(tau.size()) != f.rank() && !f.is_zero())
    throw PreconditionError("ordered basis size does not match the function's rank");
  MeroFunction g = tau.empty() ? f : f.pullback(change_of_variables(tau));
  for (int k = static_cast<int>(tau.size()) - 1; k >= 0; --k) g = res_one(g, k);
  Rational s(0);
  for (const auto& t : g.terms()) s += t.numerator().constant_term();
  return s;
}

}  // namespace qhpair
