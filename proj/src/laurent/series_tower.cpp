#include <algorithm>
#include <climits>
#include <map>
#include <mutex>

#include "qhpair/laurent.hpp"

namespace qhpair {

namespace {

constexpr long long kInf = LLONG_MAX / 4;

long long as_long(int p) { return p == kExact ? kInf : p; }

int as_prec(long long p) { return p >= kInf ? kExact : static_cast<int>(p); }

const SeriesTower& zero_of_level(int level) {
  // Small shared pool of exact zeros, built once per level on demand.
  static std::mutex mu;
  static std::map<int, SeriesTower> pool;
  std::lock_guard<std::mutex> lock(mu);
  auto it = pool.find(level);
  if (it == pool.end()) it = pool.emplace(level, SeriesTower::zero(level)).first;
  return it->second;
}

}  // namespace

SeriesTower SeriesTower::zero(int level) {
  SeriesTower t;
  t.level_ = level;
  return t;
}

SeriesTower SeriesTower::constant(int level, const Rational& c) {
  SeriesTower t;
  t.scalar_ = c;
  for (int k = 1; k <= level; ++k) t = lift(std::move(t), 0);
  return t;
}

SeriesTower SeriesTower::lift(SeriesTower c, int e, int prec) {
  SeriesTower t;
  t.level_ = c.level_ + 1;
  t.prec_ = prec;
  t.val_ = e;
  if (as_long(prec) >= e) t.coeffs_.push_back(std::move(c));
  t.strip();
  return t;
}

SeriesTower SeriesTower::from_coefficients(int level, int val, std::vector<SeriesTower> coeffs,
                                           int prec) {
  if (level <= 0) throw PreconditionError("from_coefficients needs a positive level");
  for (const auto& c : coeffs)
    if (c.level_ != level - 1) throw PreconditionError("coefficient tower has the wrong level");
  SeriesTower t;
  t.level_ = level;
  t.val_ = val;
  t.prec_ = prec;
  t.coeffs_ = std::move(coeffs);
  while (!t.coeffs_.empty() && t.end() - 1 > as_long(prec)) t.coeffs_.pop_back();
  t.strip();
  return t;
}

bool SeriesTower::is_exact_zero() const {
  if (level_ == 0) return scalar_.is_zero();
  return coeffs_.empty() && prec_ == kExact;
}

long long SeriesTower::valuation_bound() const {
  if (!coeffs_.empty()) return val_;
  return prec_ == kExact ? kInf : static_cast<long long>(prec_) + 1;
}

void SeriesTower::strip() {
  if (level_ == 0) return;
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_exact_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = 0;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int>(lead);
  }
  while (coeffs_.back().is_exact_zero()) coeffs_.pop_back();
}

SeriesTower SeriesTower::coefficient(int e) const {
  if (level_ == 0) throw PreconditionError("coefficient of a scalar tower");
  if (as_long(prec_) < e)
    throw InsufficientPrecision("coefficient of Z_" + std::to_string(level_) + "^" +
                                std::to_string(e) + " is beyond the truncation order " +
                                std::to_string(prec_));
  if (e < val_ || e >= end()) return zero(level_ - 1);
  return coeffs_[static_cast<std::size_t>(e - val_)];
}

Rational SeriesTower::residue() const {
  const SeriesTower* t = this;
  SeriesTower holder;
  while (t->level_ > 0) {
    holder = t->coefficient(-1);
    t = &holder;
  }
  return t->scalar_;
}

std::vector<long long> SeriesTower::min_exponents() const {
  std::vector<long long> m(static_cast<std::size_t>(level_), kInf);
  struct Walk {
    std::vector<long long>& m;
    void operator()(const SeriesTower& t) {
      if (t.level_ == 0) return;
      auto& slot = m[static_cast<std::size_t>(t.level_ - 1)];
      if (t.coeffs_.empty()) {
        if (t.prec_ != kExact) slot = std::min(slot, static_cast<long long>(t.prec_) + 1);
        return;
      }
      slot = std::min(slot, static_cast<long long>(t.val_));
      for (const auto& c : t.coeffs_) (*this)(c);
    }
  };
  Walk{m}(*this);
  return m;
}

SeriesTower SeriesTower::truncated(const std::vector<long long>& limits) const {
  if (level_ == 0) return *this;
  SeriesTower t;
  t.level_ = level_;
  t.val_ = val_;
  const long long lim = limits[static_cast<std::size_t>(level_ - 1)];
  t.prec_ = as_prec(std::min(as_long(prec_), lim));
  for (int e = val_; e < end() && e <= as_long(t.prec_); ++e)
    t.coeffs_.push_back(coeffs_[static_cast<std::size_t>(e - val_)].truncated(limits));
  t.strip();
  return t;
}

SeriesTower operator+(const SeriesTower& a, const SeriesTower& b) {
  if (a.level_ != b.level_) throw PreconditionError("adding towers of different levels");
  if (a.level_ == 0) {
    SeriesTower t;
    t.scalar_ = a.scalar_ + b.scalar_;
    return t;
  }
  SeriesTower t;
  t.level_ = a.level_;
  t.prec_ = std::min(a.prec_, b.prec_);
  if (a.coeffs_.empty() && b.coeffs_.empty()) return t;
  const int lo = a.coeffs_.empty() ? b.val_
                                   : (b.coeffs_.empty() ? a.val_ : std::min(a.val_, b.val_));
  const long long hi = std::min<long long>(std::max(a.end(), b.end()) - 1, as_long(t.prec_));
  t.val_ = lo;
  for (long long e = lo; e <= hi; ++e) {
    const int ei = static_cast<int>(e);
    const bool in_a = ei >= a.val_ && ei < a.end();
    const bool in_b = ei >= b.val_ && ei < b.end();
    if (in_a && in_b)
      t.coeffs_.push_back(a.coeffs_[static_cast<std::size_t>(ei - a.val_)] +
                          b.coeffs_[static_cast<std::size_t>(ei - b.val_)]);
    else if (in_a)
      t.coeffs_.push_back(a.coeffs_[static_cast<std::size_t>(ei - a.val_)]);
    else if (in_b)
      t.coeffs_.push_back(b.coeffs_[static_cast<std::size_t>(ei - b.val_)]);
    else
      t.coeffs_.push_back(zero_of_level(a.level_ - 1));
  }
  t.strip();
  return t;
}

SeriesTower operator-(const SeriesTower& a, const SeriesTower& b) {
  return a + b.scaled(Rational(-1));
}

SeriesTower operator*(const SeriesTower& a, const SeriesTower& b) {
  return SeriesTower::multiply(a, b, nullptr);
}

SeriesTower SeriesTower::multiply(const SeriesTower& a, const SeriesTower& b,
                                  const std::vector<long long>* limits) {
  if (a.level_ != b.level_) throw PreconditionError("multiplying towers of different levels");
  if (a.level_ == 0) {
    SeriesTower t;
    t.scalar_ = a.scalar_ * b.scalar_;
    return t;
  }
  if (a.is_exact_zero() || b.is_exact_zero()) return zero(a.level_);
  long long prec = kInf;
  if (a.prec_ != kExact) prec = std::min(prec, a.prec_ + b.valuation_bound());
  if (b.prec_ != kExact) prec = std::min(prec, b.prec_ + a.valuation_bound());
  if (limits) prec = std::min(prec, (*limits)[static_cast<std::size_t>(a.level_ - 1)]);
  SeriesTower t;
  t.level_ = a.level_;
  t.prec_ = as_prec(prec);
  if (a.coeffs_.empty() || b.coeffs_.empty()) return t;
  const long long lo = static_cast<long long>(a.val_) + b.val_;
  const long long hi = std::min<long long>(static_cast<long long>(a.end()) - 1 + b.end() - 1, prec);
  if (hi < lo) return t;
  t.val_ = static_cast<int>(lo);
  t.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), zero_of_level(a.level_ - 1));
  std::vector<bool> touched(t.coeffs_.size(), false);
  for (int i = a.val_; i < a.end(); ++i) {
    const auto& ai = a.coeffs_[static_cast<std::size_t>(i - a.val_)];
    if (ai.is_exact_zero()) continue;
    for (int j = b.val_; j < b.end(); ++j) {
      const long long e = static_cast<long long>(i) + j;
      if (e > hi) break;
      const auto& bj = b.coeffs_[static_cast<std::size_t>(j - b.val_)];
      if (bj.is_exact_zero()) continue;
      const auto slot = static_cast<std::size_t>(e - lo);
      SeriesTower prod = multiply(ai, bj, limits);
      if (!touched[slot]) {
        t.coeffs_[slot] = std::move(prod);
        touched[slot] = true;
      } else {
        t.coeffs_[slot] = t.coeffs_[slot] + prod;
      }
    }
  }
  t.strip();
  return t;
}

SeriesTower SeriesTower::scaled(const Rational& c) const {
  SeriesTower t = *this;
  if (level_ == 0) {
    t.scalar_ *= c;
    return t;
  }
  for (auto& x : t.coeffs_) x = x.scaled(c);
  t.strip();
  return t;
}

SeriesTower SeriesTower::pow(int k) const {
  if (k < 0) throw PreconditionError("negative tower power");
  SeriesTower result = constant(level_, Rational(1));
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

std::complex<double> SeriesTower::evaluate(const std::complex<double>* z) const {
  if (level_ == 0) return {scalar_.to_double(), 0.0};
  std::complex<double> s(0.0);
  const std::complex<double> x = z[level_ - 1];
  for (int e = val_; e < end(); ++e)
    s += coeffs_[static_cast<std::size_t>(e - val_)].evaluate(z) * std::pow(x, e);
  return s;
}

bool SeriesTower::same_coefficients(const SeriesTower& o) const {
  if (level_ != o.level_) return false;
  if (level_ == 0) return scalar_ == o.scalar_;
  if (coeffs_.size() != o.coeffs_.size()) return false;
  if (!coeffs_.empty() && val_ != o.val_) return false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].same_coefficients(o.coeffs_[i])) return false;
  return true;
}

Rational bernoulli(int n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  if (n < 0) throw PreconditionError("negative Bernoulli index");
  std::lock_guard<std::mutex> lock(mu);
  for (int m = static_cast<int>(cache.size()); m <= n; ++m) {
    Rational s(0);
    for (int j = 0; j < m; ++j) s += binomial(m + 1, j) * cache[static_cast<std::size_t>(j)];
    cache.push_back(-s / Rational(m + 1));
  }
  return cache[static_cast<std::size_t>(n)];
}

namespace {

// Highest 1-based variable index a form depends on (0 for the zero form).
int form_level(const LinearForm& l) {
  for (Index j = l.size(); j > 0; --j)
    if (!l(j - 1).is_zero()) return static_cast<int>(j);
  return 0;
}

void check_level(const LinearForm& l, int level, const char* what) {
  if (form_level(l) > level)
    throw PreconditionError(std::string(what) + ": form depends on a variable beyond level " +
                            std::to_string(level));
}

SeriesTower build_polynomial(const Polynomial& p, int level, int cap) {
  if (level == 0) {
    if (p.degree() > 0) throw PreconditionError("polynomial depends on a variable beyond level");
    return SeriesTower::constant(0, p.constant_term());
  }
  const auto v = static_cast<std::size_t>(level - 1);
  std::map<int, Polynomial> groups;
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t j = static_cast<std::size_t>(level); j < m.size(); ++j)
      if (m[j] != 0)
        throw PreconditionError("polynomial depends on a variable beyond level " +
                                std::to_string(level));
    Polynomial::Monomial rest = m;
    const int e = rest[v];
    if (cap != kExact && e > cap) continue;
    rest[v] = 0;
    auto it = groups.try_emplace(e, p.nvars()).first;
    it->second.add_term(rest, c);
  }
  if (groups.empty()) {
    if (cap == kExact || p.is_zero()) return SeriesTower::zero(level);
    return SeriesTower::from_coefficients(level, 0, {}, cap);
  }
  const int lo = groups.begin()->first;
  const int hi = groups.rbegin()->first;
  std::vector<SeriesTower> coeffs;
  for (int e = lo; e <= hi; ++e) {
    auto it = groups.find(e);
    if (it == groups.end())
      coeffs.push_back(SeriesTower::zero(level - 1));
    else
      coeffs.push_back(build_polynomial(it->second, level - 1, cap));
  }
  return SeriesTower::from_coefficients(level, lo, std::move(coeffs), cap);
}

// Drops monomials with any of the first `level` exponents above cap.
Polynomial truncate_poly(const Polynomial& p, int level, int cap) {
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    bool keep = true;
    for (int j = 0; j < level && keep; ++j)
      if (m[static_cast<std::size_t>(j)] > cap) keep = false;
    if (keep) out.add_term(m, c);
  }
  return out;
}

}  // namespace

SeriesTower from_polynomial(const Polynomial& p, int level) {
  return build_polynomial(p, level, kExact);
}

SeriesTower truncated_polynomial(const Polynomial& p, int level, int cap) {
  return build_polynomial(p, level, cap);
}

SeriesTower expand_linform_inverse(const LinearForm& l, int level, int cap) {
  const int j = form_level(l);
  if (j == 0) throw PreconditionError("inverse of the zero linear form");
  check_level(l, level, "expand_linform_inverse");
  if (j < level) return SeriesTower::lift(expand_linform_inverse(l, level - 1, cap), 0);
  const Rational c = l(j - 1);
  LinearForm rest = l;
  rest(j - 1) = Rational(0);
  if (is_zero(rest))
    return SeriesTower::lift(SeriesTower::constant(level - 1, Rational(1) / c), -1);
  const SeriesTower inv = expand_linform_inverse(rest, level - 1, cap);
  std::vector<SeriesTower> coeffs;
  SeriesTower power = inv;
  Rational factor(1);
  for (int i = 0; i <= cap; ++i) {
    coeffs.push_back(power.scaled(factor));
    if (i < cap) {
      power = power * inv;
      factor *= -c;
    }
  }
  return SeriesTower::from_coefficients(level, 0, std::move(coeffs), cap);
}

SeriesTower expand_exp_linear(const LinearForm& l, int level, int cap) {
  check_level(l, level, "expand_exp_linear");
  if (level == 0) return SeriesTower::constant(0, Rational(1));
  const Rational c = l(level - 1);
  LinearForm rest = l;
  rest(level - 1) = Rational(0);
  const SeriesTower inner = expand_exp_linear(rest, level - 1, cap);
  if (c.is_zero()) return SeriesTower::lift(inner, 0);
  std::vector<SeriesTower> coeffs;
  Rational factor(1);
  for (int i = 0; i <= cap; ++i) {
    coeffs.push_back(inner.scaled(factor));
    factor = factor * c / Rational(i + 1);
  }
  return SeriesTower::from_coefficients(level, 0, std::move(coeffs), cap);
}

SeriesTower expand_one_minus_exp_inverse(const LinearForm& b, int level, int cap) {
  const int j = form_level(b);
  if (j == 0) throw PreconditionError("1/(1 - exp(0)) is singular everywhere");
  check_level(b, level, "expand_one_minus_exp_inverse");
  if (j < level) return SeriesTower::lift(expand_one_minus_exp_inverse(b, level - 1, cap), 0);
  const Rational c = b(j - 1);
  LinearForm rest = b;
  rest(j - 1) = Rational(0);
  if (is_zero(rest)) {
    // 1/(1 - e^{cZ}) = -sum_n B_n c^{n-1} Z^{n-1} / n!
    std::vector<SeriesTower> coeffs;
    for (int n = 0; n <= cap + 1; ++n)
      coeffs.push_back(SeriesTower::constant(
          level - 1, -bernoulli(n) * pow(c, n - 1) / factorial(n)));
    return SeriesTower::from_coefficients(level, -1, std::move(coeffs), cap);
  }
  // 1/(1 - e^b) = -(1/b) * sum_n B_n b^n / n!, with b^n truncated per level.
  const Polynomial beta = Polynomial::linear(b);
  const int n_max = level * cap;
  Polynomial series(static_cast<int>(b.size()));
  Polynomial power = Polynomial::constant(static_cast<int>(b.size()), Rational(1));
  for (int n = 0; n <= n_max; ++n) {
    const Rational bn = bernoulli(n);
    if (!bn.is_zero()) series += power * (bn / factorial(n));
    power = truncate_poly(power * beta, level, cap);
  }
  const SeriesTower inv = expand_linform_inverse(b, level, cap);
  return (inv * truncated_polynomial(series, level, cap)).scaled(Rational(-1));
}

}  // namespace qhpair
