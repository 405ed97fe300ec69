#pragma once

#include <string>
#include <string_view>

#include "macpoly/poly.hpp"
#include "macpoly/rational.hpp"

namespace macpoly {

// Element of Q(x, y) in canonical form: num and den are polynomials with
// nonnegative exponents, gcd(num, den) = 1 and the lex-leading coefficient of
// den is positive. Zero is 0/1. Laurent monomials live in num or den.
//
// The generators are positional. The Macdonald layer uses x = Q = q^{1/(2n)}
// and y = t; the Jack and affine layers put the formal parameter k in x.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const BigInt& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(const Rational& c);  // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& p);  // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc monomial(const BigInt& c, int ex, int ey) { return RatFunc(Poly::monomial(c, ex, ey)); }
  static RatFunc x(int e = 1) { return monomial(1, e, 0); }
  static RatFunc y(int e = 1) { return monomial(1, 0, e); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const;  // requires is_constant()

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFunc inverse() const;
  RatFunc pow(int e) const;

  // Monomial substitution x -> x^a y^b, y -> x^c y^d (exponents may be negative).
  RatFunc substitute(int a, int b, int c, int d) const;
  // y -> x^m, e.g. t -> q^k with t in y and Q in x.
  RatFunc substitute_y_by_x_power(int m) const { return substitute(1, 0, m, 0); }
  // Evaluates x at a rational point (y must be absent).
  Rational evaluate_x(const Rational& v) const;

  // Limit x -> 1 by Taylor expansion of num and den at 1 (y must be absent).
  // Throws LimitFailure on a pole.
  Rational limit_x_to_one() const;

 private:
  struct Canonical {};
  RatFunc(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  static RatFunc make_coprime(Poly num, Poly den);  // num, den coprime up to monomials and sign

  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

// "(num)/(den)" or "(num)" when den == 1.
std::string to_string(const RatFunc& f, const VarNames& names);
RatFunc parse_ratfunc(std::string_view text, const VarNames& names);

// q-integer [m] = (q^m - q^{-m})/(q - q^{-1}) with q = x^{q_step}.
RatFunc q_integer(long m, int q_step);

}  // namespace macpoly
