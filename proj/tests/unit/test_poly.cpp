#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"

#include "macpoly/errors.hpp"
#include "macpoly/ratfunc.hpp"

using namespace macpoly;


namespace {

const VarNames kQT{"q", "t", 1};

Poly P(const char* s) { return parse_poly(s, kQT); }

Poly random_poly(std::mt19937& rng, int terms, int maxdeg, bool bivariate) {
  std::uniform_int_distribution<int> coef(-5, 5), ex(0, maxdeg);
  Poly p;
  for (int i = 0; i < terms; ++i) p.add_term(ex(rng), bivariate ? ex(rng) : 0, coef(rng));
  if (p.is_zero()) p = Poly(1);
  return p;
}

}  // namespace

TEST(Poly, ParsePrintRoundTrip) {
  for (const char* s : {"1 - q^2*t^2", "-q", "3*q^4 + 2*t - 7", "0", "q^-2 + t^-1"}) {
    Poly p = P(s);
    EXPECT_EQ(parse_poly(to_string(p, kQT), kQT), p) << s;
  }
  VarNames fine{"q", "t", 4};
  Poly p = Poly::x(2) + Poly::monomial(-3, 3, 1);
  EXPECT_EQ(to_string(p, fine), "q^(1/2) - 3*q^(3/4)*t");
  EXPECT_EQ(parse_poly(to_string(p, fine), fine), p);
}

TEST(Poly, ExactDivision) {
  Poly a = P("1 - q^2"), b = P("1 - q");
  auto q = a.divide_exact(b);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, P("1 + q"));
  EXPECT_FALSE(P("1 + q^2").divide_exact(b).has_value());
}

TEST(Poly, GcdKnownCases) {
  EXPECT_EQ(gcd(P("1 - q^2"), P("1 - q")), P("q - 1"));
  EXPECT_EQ(gcd(P("q^6 - 1"), P("q^4 - 1")), P("q^2 - 1"));
  EXPECT_EQ(gcd(P("q^2 - t^2"), P("q*t - t^2")), P("q - t"));
  EXPECT_EQ(gcd(P("6*q"), P("4*q^2")), P("2*q"));
}

TEST(Poly, GcdRandomCommonFactor) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const bool bi = trial % 2 == 0;
    Poly f = random_poly(rng, 3, 3, bi), g = random_poly(rng, 3, 3, bi), h = random_poly(rng, 3, 3, bi);
    Poly d = gcd(f * g, f * h);
    EXPECT_TRUE((f * g).divide_exact(d).has_value());
    EXPECT_TRUE((f * h).divide_exact(d).has_value());
    EXPECT_TRUE(d.divide_exact(f).has_value()) << to_string(f, kQT) << " vs " << to_string(d, kQT);
  }
}

TEST(RatFunc, SpecExamples) {
  // (1 - q^2)/(1 - q) + 0 -> 1 + q
  RatFunc a(P("1 - q^2"), P("1 - q"));
  EXPECT_EQ(a + RatFunc(0), RatFunc(P("1 + q")));
  // Q^{2n} * Q^{-2n} -> 1
  EXPECT_EQ(RatFunc::x(4) * RatFunc::x(-4), RatFunc(1));
  // (1 - t^2)/(1 - q^2 t^2) at t = q^2 -> (1 - q^4)/(1 - q^6)
  RatFunc b(P("1 - t^2"), P("1 - q^2*t^2"));
  EXPECT_EQ(b.substitute_y_by_x_power(2), RatFunc(P("1 - q^4"), P("1 - q^6")));
}

TEST(RatFunc, CanonicalFormAndText) {
  RatFunc f(P("2 - 2*q"), P("4 - 4*q^2"));
  EXPECT_EQ(f, RatFunc(Poly(1), P("2 + 2*q")));
  EXPECT_GT(sgn(f.den().leading_coeff()), 0);
  RatFunc g(P("q^-1 + t"), P("q - 1"));
  EXPECT_FALSE(g.num().has_negative_exponents());
  EXPECT_EQ(parse_ratfunc(to_string(g, kQT), kQT), g);
  EXPECT_EQ(to_string(RatFunc(P("1 - q^2*t^2")), kQT), "(1 - q^2*t^2)");
}

TEST(RatFunc, FieldAxiomsRandom) {
  std::mt19937 rng(11);
  auto rf = [&] { return RatFunc(random_poly(rng, 3, 2, true), random_poly(rng, 2, 2, true)); };
  for (int i = 0; i < 25; ++i) {
    RatFunc a = rf(), b = rf(), c = rf();
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, RatFunc(0));
    if (!b.is_zero()) {
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(RatFunc, DivisionByZero) {
  try {
    (void)(RatFunc(1) / RatFunc(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Arithmetic);
  }
}

TEST(RatFunc, LimitAtOne) {
  // (1 + q^2)(1 - q^4)/(1 - q^6) -> 4/3
  RatFunc c = RatFunc(P("1 + q^2")) * RatFunc(P("1 - q^4"), P("1 - q^6"));
  EXPECT_EQ(c.limit_x_to_one(), Rational(4, 3));
  EXPECT_EQ(q_integer(3, 1).limit_x_to_one(), Rational(3));
  EXPECT_THROW(RatFunc(Poly(1), P("1 - q")).limit_x_to_one(), Error);
}

TEST(RatFunc, QInteger) {
  // [2] = q + q^{-1}
  EXPECT_EQ(q_integer(2, 1), RatFunc(P("q + q^-1")));
  EXPECT_EQ(q_integer(-2, 1), RatFunc(P("-q - q^-1")));
}
