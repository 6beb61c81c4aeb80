#include "qhpair/mero.hpp"

#include <algorithm>
#include <limits>

namespace qhpair {

LinearForm primitive_form(const LinearForm& l, Rational* scale) {
  Integer den = 1;
  for (Index j = 0; j < l.size(); ++j) {
    Integer d = l(j).denominator();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  Integer g = 0;
  int lead_sign = 0;
  for (Index j = 0; j < l.size(); ++j) {
    if (l(j).is_zero()) continue;
    if (lead_sign == 0) lead_sign = l(j).sign();
    Integer n = (l(j) * Rational(den)).numerator();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (lead_sign == 0) throw PreconditionError("zero linear form in a denominator");
  const Rational s = Rational(g * lead_sign, den);
  if (scale) *scale = s;
  LinearForm p = l;
  for (Index j = 0; j < p.size(); ++j) p(j) = l(j) / s;
  return p;
}

bool proportional(const LinearForm& l, const LinearForm& m) {
  if (l.size() != m.size() || is_zero(l) || is_zero(m)) return false;
  return primitive_form(l) == primitive_form(m);
}

namespace {

bool factor_less(const Factor& a, const Factor& b) {
  if (a.form != b.form) return lex_less(a.form, b.form);
  return a.mult < b.mult;
}

void merge_factors(std::vector<Factor>& fs) {
  std::sort(fs.begin(), fs.end(), factor_less);
  std::vector<Factor> out;
  for (auto& f : fs) {
    if (f.mult == 0) continue;
    if (!out.empty() && out.back().form == f.form)
      out.back().mult += f.mult;
    else
      out.push_back(std::move(f));
  }
  fs = std::move(out);
}

}  // namespace

MeroTerm::MeroTerm(int rank)
    : rank_(rank), numerator_(rank), exponent_(LinearForm::Zero(rank)) {}

MeroTerm::MeroTerm(Polynomial numerator, LinearForm exponent, std::vector<Factor> linear,
                   std::vector<Factor> expden)
    : rank_(numerator.nvars()),
      numerator_(std::move(numerator)),
      exponent_(std::move(exponent)),
      linear_(std::move(linear)),
      expden_(std::move(expden)) {
  if (exponent_.size() != rank_) throw PreconditionError("exponent form has the wrong length");
  for (const auto& f : linear_)
    if (f.form.size() != rank_ || f.mult < 0)
      throw PreconditionError("malformed linear denominator factor");
  for (const auto& f : expden_)
    if (f.form.size() != rank_ || f.mult < 0)
      throw PreconditionError("malformed exponential denominator factor");
  normalize();
}

MeroTerm MeroTerm::constant(int rank, const Rational& c) {
  return MeroTerm(Polynomial::constant(rank, c), LinearForm::Zero(rank), {}, {});
}

void MeroTerm::normalize() {
  for (auto& f : linear_) {
    Rational s;
    f.form = primitive_form(f.form, &s);
    numerator_ *= pow(s, -f.mult);
  }
  merge_factors(linear_);
  for (auto& f : linear_) {
    while (f.mult > 0) {
      auto q = numerator_.divide_linear(f.form);
      if (!q) break;
      numerator_ = std::move(*q);
      --f.mult;
    }
  }
  std::erase_if(linear_, [](const Factor& f) { return f.mult == 0; });
  for (const auto& f : expden_)
    if (qhpair::is_zero(f.form))
      throw PreconditionError("zero form in an exponential denominator");
  merge_factors(expden_);
  if (numerator_.is_zero()) {
    linear_.clear();
    expden_.clear();
    exponent_ = LinearForm::Zero(rank_);
  }
}

int MeroTerm::linear_degree() const {
  int d = 0;
  for (const auto& f : linear_) d += f.mult;
  return d;
}

int MeroTerm::pole_order() const {
  int d = linear_degree();
  for (const auto& f : expden_) d += f.mult;
  return d;
}

bool MeroTerm::same_shape(const MeroTerm& o) const {
  return rank_ == o.rank_ && exponent_ == o.exponent_ && linear_ == o.linear_ &&
         expden_ == o.expden_;
}

MeroTerm MeroTerm::pullback(const Mat<Rational>& a) const {
  if (a.rows() != rank_) throw PreconditionError("pullback matrix has the wrong shape");
  const Mat<Rational> at = a.transpose();
  std::vector<Factor> lin, exd;
  for (const auto& f : linear_) {
    LinearForm g = at * f.form;
    if (qhpair::is_zero(g))
      throw PreconditionError("pullback makes a denominator vanish identically");
    lin.push_back({std::move(g), f.mult});
  }
  for (const auto& f : expden_) {
    LinearForm g = at * f.form;
    if (qhpair::is_zero(g))
      throw PreconditionError("pullback makes a denominator vanish identically");
    exd.push_back({std::move(g), f.mult});
  }
  return MeroTerm(numerator_.pullback(a), at * exponent_, std::move(lin), std::move(exd));
}

MeroTerm MeroTerm::scaled(const Rational& c) const {
  MeroTerm t = *this;
  t.numerator_ *= c;
  if (t.numerator_.is_zero()) return MeroTerm(rank_);
  return t;
}

MeroTerm operator*(const MeroTerm& a, const MeroTerm& b) {
  if (a.rank_ != b.rank_) throw PreconditionError("rank mismatch in product");
  std::vector<Factor> lin = a.linear_, exd = a.expden_;
  lin.insert(lin.end(), b.linear_.begin(), b.linear_.end());
  exd.insert(exd.end(), b.expden_.begin(), b.expden_.end());
  return MeroTerm(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_, std::move(lin),
                  std::move(exd));
}

Rational MeroTerm::evaluate_exact(const Vec<Rational>& y) const {
  if (!is_rational())
    throw PreconditionError("exact evaluation needs a rational function");
  Rational v = numerator_.evaluate(y);
  for (const auto& f : linear_) {
    const Rational d = f.form.dot(y);
    if (d.is_zero()) throw ComputationError("evaluation point lies on a pole");
    v /= pow(d, f.mult);
  }
  return v;
}

MeroFunction::MeroFunction(int rank, std::vector<MeroTerm> terms) : rank_(rank) {
  for (const auto& t : terms) add(t);
}

MeroFunction::MeroFunction(const MeroTerm& term) : rank_(term.rank()) { add(term); }

MeroFunction MeroFunction::constant(int rank, const Rational& c) {
  return MeroFunction(MeroTerm::constant(rank, c));
}

MeroFunction MeroFunction::simple_fraction(const std::vector<LinearForm>& forms) {
  if (forms.empty()) throw PreconditionError("simple fraction of an empty basis");
  const int r = static_cast<int>(forms.front().size());
  std::vector<Factor> lin;
  for (const auto& f : forms) lin.push_back({f, 1});
  return MeroFunction(MeroTerm(Polynomial::constant(r, Rational(1)), LinearForm::Zero(r),
                               std::move(lin), {}));
}

bool MeroFunction::is_rational() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const MeroTerm& t) { return t.is_rational(); });
}

int MeroFunction::pole_order() const {
  int p = 0;
  for (const auto& t : terms_) p = std::max(p, t.pole_order());
  return p;
}

int MeroFunction::decay_degree() const {
  if (terms_.empty()) return std::numeric_limits<int>::max();
  int d = std::numeric_limits<int>::max();
  for (const auto& t : terms_) d = std::min(d, t.linear_degree() - t.numerator().degree());
  return d;
}

void MeroFunction::add(const MeroTerm& t) {
  if (t.rank() != rank_) throw PreconditionError("rank mismatch in sum");
  if (t.is_zero()) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (!it->same_shape(t)) continue;
    MeroTerm merged(it->numerator() + t.numerator(), t.exponent(), t.linear(), t.expden());
    if (merged.is_zero())
      terms_.erase(it);
    else if (merged.same_shape(*it))
      *it = std::move(merged);
    else {
      // Cancellation changed the denominator; re-insert so it can merge.
      terms_.erase(it);
      add(merged);
    }
    return;
  }
  terms_.push_back(t);
}

MeroFunction& MeroFunction::operator+=(const MeroFunction& o) {
  if (o.rank_ != rank_) throw PreconditionError("rank mismatch in sum");
  for (const auto& t : o.terms_) add(t);
  return *this;
}

MeroFunction& MeroFunction::operator-=(const MeroFunction& o) {
  if (o.rank_ != rank_) throw PreconditionError("rank mismatch in sum");
  for (const auto& t : o.terms_) add(t.scaled(Rational(-1)));
  return *this;
}

MeroFunction operator*(const MeroFunction& a, const MeroFunction& b) {
  if (a.rank_ != b.rank_) throw PreconditionError("rank mismatch in product");
  MeroFunction out(a.rank_);
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) out.add(s * t);
  return out;
}

MeroFunction MeroFunction::scaled(const Rational& c) const {
  MeroFunction out(rank_);
  for (const auto& t : terms_) out.add(t.scaled(c));
  return out;
}

MeroFunction MeroFunction::pullback(const Mat<Rational>& a) const {
  MeroFunction out(static_cast<int>(a.cols()));
  for (const auto& t : terms_) out.add(t.pullback(a));
  return out;
}

Rational MeroFunction::evaluate_exact(const Vec<Rational>& y) const {
  Rational s(0);
  for (const auto& t : terms_) s += t.evaluate_exact(y);
  return s;
}

std::vector<LinearForm> MeroFunction::denominator_forms() const {
  std::vector<LinearForm> out;
  auto push = [&](const LinearForm& l) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  };
  for (const auto& t : terms_) {
    for (const auto& f : t.linear()) push(f.form);
    for (const auto& f : t.expden()) push(f.form);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace qhpair
