#include "macpoly/ratfunc.hpp"

#include <algorithm>

#include "macpoly/errors.hpp"

namespace macpoly {

namespace {

// Moves monomial factors so that both parts have nonnegative exponents and no
// common monomial factor.
void balance_monomials(Poly& num, Poly& den) {
  const int nx = num.min_x(), ny = num.min_y(), dx = den.min_x(), dy = den.min_y();
  const int ex = nx - dx, ey = ny - dy;  // net monomial exponent of num/den
  num = num.shifted(-nx + std::max(ex, 0), -ny + std::max(ey, 0));
  den = den.shifted(-dx + std::max(-ex, 0), -dy + std::max(-ey, 0));
}

}  // namespace

RatFunc::RatFunc(const Rational& c) : num_(BigInt(c.get_num())), den_(BigInt(c.get_den())) {}

RatFunc::RatFunc(const Poly& p) : den_(1) {
  if (p.is_zero()) return;
  Poly n = p, d = 1;
  balance_monomials(n, d);
  num_ = std::move(n);
  den_ = std::move(d);
}

RatFunc::RatFunc(const Poly& num, const Poly& den) : den_(1) {
  if (den.is_zero()) fail(ErrorKind::Arithmetic, "rational function with zero denominator");
  if (num.is_zero()) return;
  Poly n = num, d = den;
  balance_monomials(n, d);
  const Poly g = gcd(n, d);
  if (!g.is_one()) {
    n = *n.divide_exact(g);
    d = *d.divide_exact(g);
  }
  if (sgn(d.leading_coeff()) < 0) {
    n = -n;
    d = -d;
  }
  num_ = std::move(n);
  den_ = std::move(d);
}

RatFunc RatFunc::make_coprime(Poly num, Poly den) {
  if (num.is_zero()) return RatFunc();
  balance_monomials(num, den);
  if (sgn(den.leading_coeff()) < 0) {
    num = -num;
    den = -den;
  }
  return RatFunc(std::move(num), std::move(den), Canonical{});
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) fail(ErrorKind::Domain, "rational function is not a constant");
  Rational r(num_.coeff(0, 0), den_.coeff(0, 0));
  r.canonicalize();
  return r;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Canonical{}); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    Poly n = num_ + o.num_;
    if (den_.is_one()) return *this = RatFunc(n);
    return *this = RatFunc(n, den_);
  }
  // Henrici: with g = gcd(d1, d2) the only possible cancellation is with g.
  const Poly g = gcd(den_, o.den_);
  if (g.is_one()) return *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  const Poly d1 = *den_.divide_exact(g), d2 = *o.den_.divide_exact(g);
  Poly n = num_ * d2 + o.num_ * d1;
  if (n.is_zero()) return *this = RatFunc();
  RatFunc tail(n, g);
  return *this = make_coprime(tail.num_, tail.den_ * d1 * d2);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_one() && o.den_.is_one()) return *this = RatFunc(num_ * o.num_);
  const Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  const Poly n1 = g1.is_one() ? num_ : *num_.divide_exact(g1);
  const Poly d2 = g1.is_one() ? o.den_ : *o.den_.divide_exact(g1);
  const Poly n2 = g2.is_one() ? o.num_ : *o.num_.divide_exact(g2);
  const Poly d1 = g2.is_one() ? den_ : *den_.divide_exact(g2);
  return *this = make_coprime(n1 * n2, d1 * d2);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail(ErrorKind::Arithmetic, "division by zero rational function");
  return make_coprime(den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

RatFunc RatFunc::substitute(int a, int b, int c, int d) const {
  return RatFunc(num_.substitute(a, b, c, d), den_.substitute(a, b, c, d));
}

Rational RatFunc::evaluate_x(const Rational& v) const {
  auto eval = [&](const Poly& p) {
    Rational s = 0;
    for (const auto& [e, c] : p.terms()) {
      if (e.second != 0) fail(ErrorKind::Domain, "evaluate_x on a bivariate rational function");
      Rational term = c;
      Rational base = e.first >= 0 ? v : Rational(1) / v;
      for (int i = 0; i < std::abs(e.first); ++i) term *= base;
      s += term;
    }
    return s;
  };
  const Rational dv = eval(den_);
  if (sgn(dv) == 0) fail(ErrorKind::Arithmetic, "pole at evaluation point");
  return eval(num_) / dv;
}

Rational RatFunc::limit_x_to_one() const {
  if (is_zero()) return 0;
  int order = 0;
  for (;; ++order) {
    const BigInt nd = num_.taylor_at_one(order), dd = den_.taylor_at_one(order);
    if (sgn(dd) != 0) {
      Rational r(nd, dd);
      r.canonicalize();
      return r;
    }
    if (sgn(nd) != 0) fail(ErrorKind::LimitFailure, "pole at q = 1");
    if (order > den_.max_x() + 1) fail(ErrorKind::Internal, "limit expansion did not terminate");
  }
}

std::string to_string(const RatFunc& f, const VarNames& names) {
  if (f.den().is_one()) return "(" + to_string(f.num(), names) + ")";
  return "(" + to_string(f.num(), names) + ")/(" + to_string(f.den(), names) + ")";
}

RatFunc parse_ratfunc(std::string_view text, const VarNames& names) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  auto strip = [](std::string_view v) {
    if (v.size() >= 2 && v.front() == '(' && v.back() == ')') return v.substr(1, v.size() - 2);
    return v;
  };
  // Split at a top-level '/' that separates two parenthesized parts.
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '/' && depth == 0) {
      std::string_view sv(s);
      return RatFunc(parse_poly(strip(sv.substr(0, i)), names), parse_poly(strip(sv.substr(i + 1)), names));
    }
  }
  return RatFunc(parse_poly(strip(s), names));
}

RatFunc q_integer(long m, int q_step) {
  // (q^m - q^{-m})/(q - q^{-1}) = q^{1-m} (q^{2m} - 1)/(q^2 - 1)
  if (m == 0) return RatFunc();
  const int s = q_step;
  Poly num = Poly::x(static_cast<int>(2 * m * s)) - Poly(1);
  Poly den = Poly::x(2 * s) - Poly(1);
  return RatFunc(num.shifted(static_cast<int>((1 - m) * s), 0), den);
}

}  // namespace macpoly
