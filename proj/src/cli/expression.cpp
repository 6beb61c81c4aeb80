#include "qhpair/cli/expression.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <sstream>

namespace qhpair {

namespace {

struct Node {
  enum Kind { kNum, kVar, kExp, kAdd, kSub, kMul, kDiv, kNeg, kPow } kind;
  std::size_t pos = 0;
  Rational value;
  int index = 0;  // variable index or power
  std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k, std::size_t pos, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->pos = pos;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
  throw ParseError(what + " at position " + std::to_string(pos + 1));
}

class Parser {
 public:
  Parser(std::string_view text, int rank) : s_(text), rank_(rank) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (i_ < s_.size()) fail(i_, std::string("unexpected '") + s_[i_] + "'");
    return n;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      skip();
      fail(i_, std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      skip();
      const std::size_t p = i_;
      if (accept('+'))
        n = make(Node::kAdd, p, std::move(n), term());
      else if (accept('-'))
        n = make(Node::kSub, p, std::move(n), term());
      else
        return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      skip();
      const std::size_t p = i_;
      if (accept('*'))
        n = make(Node::kMul, p, std::move(n), unary());
      else if (accept('/'))
        n = make(Node::kDiv, p, std::move(n), unary());
      else
        return n;
    }
  }

  NodePtr unary() {
    skip();
    const std::size_t p = i_;
    if (accept('-')) return make(Node::kNeg, p, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    skip();
    const std::size_t p = i_;
    if (!accept('^')) return base;
    skip();
    bool negative = accept('-');
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail(i_, "expected an integer exponent");
    if (i_ - start > 6) fail(start, "exponent too large");
    int k = std::stoi(std::string(s_.substr(start, i_ - start)));
    NodePtr n = make(Node::kPow, p, std::move(base));
    n->index = negative ? -k : k;
    return n;
  }

  NodePtr primary() {
    skip();
    const std::size_t p = i_;
    if (i_ >= s_.size()) fail(i_, "unexpected end of expression");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ < s_.size() && (s_[i_] == '.' || s_[i_] == 'e' || s_[i_] == 'E'))
        fail(i_, "non-rational coefficient (write rationals as p/q)");
      NodePtr n = make(Node::kNum, p);
      n->value = Rational(Integer(std::string(s_.substr(p, i_ - p))));
      return n;
    }
    if (c == '(') {
      ++i_;
      NodePtr n = expr();
      expect(')');
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
      const std::string id(s_.substr(p, i_ - p));
      if (id == "exp") {
        expect('(');
        NodePtr inner = expr();
        expect(')');
        return make(Node::kExp, p, std::move(inner));
      }
      if (id.size() >= 2 && id[0] == 'Y' &&
          std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        if (id.size() > 4) fail(p, "variable index too large");
        const int k = std::stoi(id.substr(1));
        if (k < 1 || k > rank_)
          fail(p, "variable " + id + " outside Y1..Y" + std::to_string(rank_));
        NodePtr n = make(Node::kVar, p);
        n->index = k - 1;
        return n;
      }
      fail(p, "unknown identifier '" + id + "'");
    }
    fail(p, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  int rank_;
  std::size_t i_ = 0;
};

class Evaluator {
 public:
  explicit Evaluator(int rank) : rank_(rank) {}

  MeroFunction eval(const Node& n) {
    switch (n.kind) {
      case Node::kNum:
        return MeroFunction::constant(rank_, n.value);
      case Node::kVar:
        return MeroFunction(MeroTerm(Polynomial::variable(rank_, n.index),
                                     LinearForm::Zero(rank_), {}, {}));
      case Node::kExp: {
        const MeroFunction inner = eval(*n.a);
        auto l = as_linear(inner);
        if (!l) fail(n.pos, "exp() argument must be a homogeneous linear form");
        return MeroFunction(MeroTerm(Polynomial::constant(rank_, Rational(1)), *l, {}, {}));
      }
      case Node::kAdd:
        return eval(*n.a) + eval(*n.b);
      case Node::kSub:
        return eval(*n.a) - eval(*n.b);
      case Node::kMul:
        return eval(*n.a) * eval(*n.b);
      case Node::kDiv:
        return eval(*n.a) * invert_product(*n.b);
      case Node::kNeg:
        return eval(*n.a).scaled(Rational(-1));
      case Node::kPow: {
        if (n.index < 0) return power(invert_value(eval(*n.a), n.pos), -n.index);
        return power(eval(*n.a), n.index);
      }
    }
    fail(n.pos, "internal parser error");
  }

 private:
  MeroFunction power(const MeroFunction& f, int k) {
    MeroFunction out = MeroFunction::constant(rank_, Rational(1));
    for (int i = 0; i < k; ++i) out = out * f;
    return out;
  }

  MeroFunction invert_product(const Node& n) {
    switch (n.kind) {
      case Node::kMul:
        return invert_product(*n.a) * invert_product(*n.b);
      case Node::kDiv:
        return eval(*n.b) * invert_product(*n.a);
      case Node::kNeg:
        return invert_product(*n.a).scaled(Rational(-1));
      case Node::kPow:
        if (n.index >= 0) return power(invert_product(*n.a), n.index);
        return power(eval(*n.a), -n.index);
      default:
        return invert_value(eval(n), n.pos);
    }
  }

  std::optional<LinearForm> as_linear(const MeroFunction& f) const {
    if (f.is_zero()) return LinearForm::Zero(rank_);
    if (f.terms().size() != 1) return std::nullopt;
    const MeroTerm& t = f.terms().front();
    if (!t.is_rational() || !t.linear().empty()) return std::nullopt;
    LinearForm l = LinearForm::Zero(rank_);
    for (const auto& [m, c] : t.numerator().terms()) {
      int deg = 0, var = -1;
      for (int j = 0; j < rank_; ++j) {
        deg += m[static_cast<std::size_t>(j)];
        if (m[static_cast<std::size_t>(j)] > 0) var = j;
      }
      if (deg != 1) return std::nullopt;
      l(var) = c;
    }
    return l;
  }

  MeroFunction invert_value(const MeroFunction& d, std::size_t pos) {
    if (d.is_zero()) fail(pos, "division by zero");
    if (d.terms().size() == 1) {
      const MeroTerm& t = d.terms().front();
      MeroFunction out = MeroFunction::constant(rank_, Rational(1));
      const Polynomial& num = t.numerator();
      if (num.is_constant()) {
        out = out.scaled(Rational(1) / num.constant_term());
      } else {
        MeroFunction bare(MeroTerm(num, LinearForm::Zero(rank_), {}, {}));
        auto l = as_linear(bare);
        if (!l) fail(pos, "denominator factor is not a product of linear forms");
        out = MeroFunction(MeroTerm(Polynomial::constant(rank_, Rational(1)),
                                    LinearForm::Zero(rank_), {{*l, 1}}, {}));
      }
      out = out * MeroFunction(MeroTerm(Polynomial::constant(rank_, Rational(1)),
                                        -t.exponent(), {}, {}));
      for (const auto& f : t.linear())
        out = out * MeroFunction(MeroTerm(Polynomial::linear(f.form).pow(f.mult),
                                          LinearForm::Zero(rank_), {}, {}));
      for (const auto& f : t.expden()) {
        MeroFunction one_minus = MeroFunction::constant(rank_, Rational(1)) -
                                 MeroFunction(MeroTerm(Polynomial::constant(rank_, Rational(1)),
                                                       f.form, {}, {}));
        out = out * power(one_minus, f.mult);
      }
      return out;
    }
    if (d.terms().size() == 2) {
      const MeroTerm& s = d.terms()[0];
      const MeroTerm& t = d.terms()[1];
      const bool plain = s.linear().empty() && s.expden().empty() && t.linear().empty() &&
                         t.expden().empty() && s.numerator().is_constant() &&
                         t.numerator().is_constant();
      if (plain) {
        const Rational a = s.numerator().constant_term();
        const Rational b = t.numerator().constant_term();
        if (a + b == Rational(0)) {
          // a e^{l1} (1 - e^{l2 - l1})
          return MeroFunction(MeroTerm(Polynomial::constant(rank_, Rational(1) / a),
                                       -s.exponent(), {},
                                       {{t.exponent() - s.exponent(), 1}}));
        }
      }
    }
    fail(pos, "unsupported denominator (allowed: linear forms, exp(lin), 1 - exp(lin))");
  }

  int rank_;
};

std::string coefficient_str(const Rational& c) { return c.str(); }

}  // namespace

MeroFunction parse_mero_expression(std::string_view text, int rank) {
  if (rank < 0) throw PreconditionError("negative rank");
  Parser p(text, rank);
  NodePtr root = p.parse();
  return Evaluator(rank).eval(*root);
}

LinearForm parse_linear_form(std::string_view text, int rank) {
  const MeroFunction f = parse_mero_expression(text, rank);
  if (f.is_zero()) return LinearForm::Zero(rank);
  if (f.terms().size() == 1) {
    const MeroTerm& t = f.terms().front();
    if (t.is_rational() && t.linear().empty() && t.numerator().degree() == 1 &&
        t.numerator().constant_term().is_zero()) {
      LinearForm l = LinearForm::Zero(rank);
      for (const auto& [m, c] : t.numerator().terms())
        for (int j = 0; j < rank; ++j)
          if (m[static_cast<std::size_t>(j)] == 1) l(j) = c;
      return l;
    }
  }
  throw ParseError("'" + std::string(text) + "' is not a homogeneous linear form");
}

std::string format_linear_form(const LinearForm& l) {
  std::ostringstream os;
  bool first = true;
  for (Index j = 0; j < l.size(); ++j) {
    const Rational& c = l(j);
    if (c.is_zero()) continue;
    const Rational a = abs(c);
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (a != Rational(1)) os << coefficient_str(a) << '*';
    os << 'Y' << (j + 1);
    first = false;
  }
  if (first) return "0";
  return os.str();
}

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then lexicographic by exponents.
  std::vector<std::pair<Polynomial::Monomial, Rational>> terms(p.terms().rbegin(),
                                                                p.terms().rend());
  auto deg = [](const Polynomial::Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
  };
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const auto& x, const auto& y) { return deg(x.first) > deg(y.first); });
  for (const auto& [m, c] : terms) {
    const Rational a = abs(c);
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    std::vector<std::string> parts;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      std::string v = "Y" + std::to_string(j + 1);
      if (m[j] > 1) v += "^" + std::to_string(m[j]);
      parts.push_back(v);
    }
    if (parts.empty() || a != Rational(1)) parts.insert(parts.begin(), coefficient_str(a));
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    first = false;
  }
  return os.str();
}

std::string format_mero(const MeroFunction& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string num = format_polynomial(t.numerator());
    bool negative = false;
    if (t.numerator().terms().size() == 1 && num[0] == '-') {
      negative = true;
      num = num.substr(1);
    } else if (t.numerator().terms().size() > 1) {
      num = "(" + num + ")";
    }
    std::string body = num;
    if (!is_zero(t.exponent())) body += "*exp(" + format_linear_form(t.exponent()) + ")";
    std::vector<std::string> den;
    for (const auto& x : t.linear()) {
      std::string s = "(" + format_linear_form(x.form) + ")";
      if (x.mult > 1) s += "^" + std::to_string(x.mult);
      den.push_back(s);
    }
    for (const auto& x : t.expden()) {
      std::string s = "(1 - exp(" + format_linear_form(x.form) + "))";
      if (x.mult > 1) s += "^" + std::to_string(x.mult);
      den.push_back(s);
    }
    if (!den.empty()) {
      body += "/(";
      for (std::size_t i = 0; i < den.size(); ++i) body += (i ? "*" : "") + den[i];
      body += ")";
    }
    if (first)
      os << (negative ? "-" : "") << body;
    else
      os << (negative ? " - " : " + ") << body;
    first = false;
  }
  return os.str();
}

}  // namespace qhpair
