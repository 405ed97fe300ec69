#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "macpoly/rational.hpp"

namespace macpoly {

// Sparse Laurent polynomial in two positional generators x, y with integer
// coefficients. Terms are kept in a map ordered lexicographically with x major,
// so the last entry is the leading term. Zero coefficients are never stored.
class Poly {
 public:
  using Exp = std::pair<int, int>;
  using Terms = std::map<Exp, BigInt>;

  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const BigInt& c);  // NOLINT(google-explicit-constructor)

  static Poly monomial(const BigInt& c, int ex, int ey);
  static Poly x(int e = 1) { return monomial(1, e, 0); }
  static Poly y(int e = 1) { return monomial(1, 0, e); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;
  BigInt coeff(int ex, int ey) const;

  int min_x() const;
  int max_x() const;
  int min_y() const;
  int max_y() const;
  bool has_negative_exponents() const;

  const BigInt& leading_coeff() const;
  Exp leading_exp() const;

  void add_term(int ex, int ey, const BigInt& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

  Poly shifted(int ex, int ey) const;  // multiply by x^ex y^ey
  Poly scaled(const BigInt& c) const;
  Poly divexact(const BigInt& c) const;  // every coefficient must be divisible
  BigInt content() const;                // nonnegative gcd of coefficients

  // Monomial substitution x -> x^a y^b, y -> x^c y^d.
  Poly substitute(int a, int b, int c, int d) const;
  Poly substitute_y_by_x_power(int m) const { return substitute(1, 0, m, 0); }

  // Exact division; nullopt if the divisor does not divide exactly.
  std::optional<Poly> divide_exact(const Poly& d) const;

  // Taylor coefficient of order m at x = 1 (requires y-degree zero).
  BigInt taylor_at_one(int m) const;
  BigInt value_at_one() const;

 private:
  Terms terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

// gcd of genuine polynomials (no negative exponents); leading coefficient positive.
Poly gcd(const Poly& a, const Poly& b);

// Text form. x exponents are printed as e / x_den reduced; `y_name` may be empty
// when the second generator is unused.
struct VarNames {
  std::string x = "q";
  std::string y = "t";
  int x_den = 1;
};

std::string to_string(const Poly& p, const VarNames& names);
Poly parse_poly(std::string_view text, const VarNames& names);

}  // namespace macpoly
