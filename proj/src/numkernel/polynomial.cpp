#include "qhpair/polynomial.hpp"

#include <algorithm>

namespace qhpair {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int j) {
  Polynomial p(nvars);
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(j)] = 1;
  p.add_term(m, Rational(1));
  return p;
}

Polynomial Polynomial::linear(const LinearForm& l) {
  const int n = static_cast<int>(l.size());
  Polynomial p(n);
  for (int j = 0; j < n; ++j) {
    Monomial m(static_cast<std::size_t>(n), 0);
    m[static_cast<std::size_t>(j)] = 1;
    p.add_term(m, l(j));
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial(static_cast<std::size_t>(nvars_), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

int Polynomial::degree_in(int var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m[static_cast<std::size_t>(var)]);
  return d;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) != nvars_)
    throw PreconditionError("monomial has the wrong number of variables");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw PreconditionError("polynomial variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw PreconditionError("polynomial variable count mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw PreconditionError("polynomial variable count mismatch");
  Polynomial out(a.nvars_);
  Polynomial::Monomial m(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t j = 0; j < m.size(); ++j) m[j] = ma[j] + mb[j];
      out.add_term(m, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw PreconditionError("negative polynomial power");
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_linear(const LinearForm& l) const {
  if (l.size() != nvars_) throw PreconditionError("linear form has the wrong length");
  int var = -1;
  for (int j = 0; j < nvars_; ++j)
    if (!l(j).is_zero()) {
      var = j;
      break;
    }
  if (var < 0) throw PreconditionError("division by the zero linear form");
  const Polynomial lp = linear(l);
  const Rational lead = l(var);
  Polynomial rem = *this;
  Polynomial quot(nvars_);
  const auto v = static_cast<std::size_t>(var);
  for (;;) {
    const int d = rem.degree_in(var);
    if (d <= 0) break;
    Polynomial step(nvars_);
    for (const auto& [m, c] : rem.terms_) {
      if (m[v] != d) continue;
      Monomial q = m;
      q[v] -= 1;
      step.add_term(q, c / lead);
    }
    quot += step;
    rem -= step * lp;
  }
  if (!rem.is_zero()) return std::nullopt;
  return quot;
}

Polynomial Polynomial::pullback(const Mat<Rational>& a) const {
  if (a.rows() != nvars_) throw PreconditionError("pullback matrix has the wrong shape");
  const int m = static_cast<int>(a.cols());
  std::vector<Polynomial> images;
  images.reserve(static_cast<std::size_t>(nvars_));
  for (int j = 0; j < nvars_; ++j) images.push_back(linear(a.row(j).transpose()));
  Polynomial out(m);
  for (const auto& [mono, c] : terms_) {
    Polynomial t = constant(m, c);
    for (int j = 0; j < nvars_; ++j)
      if (mono[static_cast<std::size_t>(j)] > 0)
        t = t * images[static_cast<std::size_t>(j)].pow(mono[static_cast<std::size_t>(j)]);
    out += t;
  }
  return out;
}

Rational Polynomial::evaluate(const Vec<Rational>& y) const {
  if (y.size() != nvars_) throw PreconditionError("evaluation point has the wrong length");
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (int j = 0; j < nvars_; ++j)
      if (m[static_cast<std::size_t>(j)] > 0) v *= qhpair::pow(y(j), m[static_cast<std::size_t>(j)]);
    total += v;
  }
  return total;
}

}  // namespace qhpair
