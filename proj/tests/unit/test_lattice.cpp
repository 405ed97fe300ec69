#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"

#include "macpoly/lattice_ops.hpp"

using namespace macpoly;


namespace {

LatticePoly e(const Weight& w, const RatFunc& c = RatFunc(1)) { return LatticePoly::monomial(w, c); }

// Brute-force character of Sym^m(C^2): weights m, m-2, ..., -m in units of omega.
LatticePoly sl2_character(int m) {
  auto rd = RootData::build_a_type(2);
  LatticePoly r;
  for (int j = -m; j <= m; j += 2) r.add(Weight::from_scaled({j, -j}), RatFunc(1));
  return r;
}

}  // namespace

TEST(Lattice, OrbitSums) {
  auto rd2 = RootData::build_a_type(2);
  EXPECT_EQ(orbitsum(rd2, Weight::zero(2)), LatticePoly::constant(2, RatFunc(1)));
  auto w = rd2.fundamental_weight(1);
  EXPECT_EQ(orbitsum(rd2, w), e(w) + e(-w));
  auto rd3 = RootData::build_a_type(3);
  EXPECT_EQ(orbitsum(rd3, rd3.fundamental_weight(1)).size(), 3u);
  EXPECT_THROW(orbitsum(rd3, -rd3.fundamental_weight(1)), Error);
}

TEST(Lattice, WeylDenominator) {
  auto rd2 = RootData::build_a_type(2);
  const Weight half = rd2.rho();
  EXPECT_EQ(weyl_denominator(rd2), e(half) - e(-half));
  auto rd3 = RootData::build_a_type(3);
  auto d3 = weyl_denominator(rd3);
  EXPECT_EQ(d3.size(), 6u);
  for (const auto& [w, c] : d3.terms()) EXPECT_TRUE(c == RatFunc(1) || c == RatFunc(-1));
  for (int n = 2; n <= 4; ++n) {
    auto rd = RootData::build_a_type(n);
    auto d = weyl_denominator(rd);
    for (int i = 0; i + 1 < n; ++i) {
      LatticePoly reflected;
      for (const auto& [w, c] : d.terms()) reflected.add(rd.simple_reflection(w, i), c);
      EXPECT_EQ(reflected, -d);
    }
  }
}

TEST(Lattice, WeylCharacter) {
  auto rd2 = RootData::build_a_type(2);
  EXPECT_EQ(weyl_character(rd2, Weight::zero(2)), LatticePoly::constant(2, RatFunc(1)));
  auto w = rd2.fundamental_weight(1);
  for (int m = 0; m <= 6; ++m) EXPECT_EQ(weyl_character(rd2, static_cast<std::int64_t>(m) * w), sl2_character(m));
  auto rd3 = RootData::build_a_type(3);
  EXPECT_EQ(weyl_character(rd3, rd3.fundamental_weight(1)), orbitsum(rd3, rd3.fundamental_weight(1)));
  // Adjoint of sl3: m_theta + 2 m_0.
  auto theta = rd3.highest_root();
  EXPECT_EQ(weyl_character(rd3, theta), orbitsum(rd3, theta) + LatticePoly::constant(3, RatFunc(2)));
}

TEST(Lattice, ConstantTermAndBar) {
  auto rd2 = RootData::build_a_type(2);
  auto a = rd2.positive_roots()[0];
  EXPECT_EQ(constant_term(e(a) + LatticePoly::constant(2, RatFunc(2)) + e(-a), 2), RatFunc(2));
  auto d = weyl_denominator(rd2);
  EXPECT_EQ(constant_term(d * bar(d), 2), RatFunc(2));
  EXPECT_EQ(constant_term(LatticePoly(), 2), RatFunc(0));
  auto w = rd2.fundamental_weight(1);
  EXPECT_EQ(bar(e(w)), e(-w));
  auto rd3 = RootData::build_a_type(3);
  auto w1 = rd3.fundamental_weight(1), w2 = rd3.fundamental_weight(2);
  EXPECT_EQ(bar(orbitsum(rd3, w1)), orbitsum(rd3, w2));
  auto f = orbitsum(rd3, 2 * w1 + w2) + orbitsum(rd3, w2).scaled(RatFunc::x(3));
  EXPECT_EQ(bar(bar(f)), f);
}

TEST(Lattice, CharactersOrthonormal) {
  for (int n = 2; n <= 3; ++n) {
    auto rd = RootData::build_a_type(n);
    auto dd = weyl_denominator(rd);
    dd = dd * bar(dd);
    std::vector<Weight> weights;
    for (int size = 0; size <= 3; ++size)
      for (const auto& p : partitions(size, n, size))
        if (p.back() == 0) weights.push_back(Weight::from_partition(p));
    for (const auto& l : weights)
      for (const auto& m : weights) {
        auto prod = weyl_character(rd, l) * bar(weyl_character(rd, m));
        RatFunc ip = constant_term_of_product(prod, dd) / RatFunc(static_cast<long>(rd.weyl_order()));
        EXPECT_EQ(ip, RatFunc(l == m ? 1 : 0));
      }
  }
}

TEST(Lattice, LaplacianOfDenominator) {
  for (int n = 2; n <= 6; ++n) {
    auto rd = RootData::build_a_type(n);
    auto d = weyl_denominator_t<Rational>(rd);
    EXPECT_EQ(laplacian(d), d.scaled(pairing(rd.rho(), rd.rho())));
  }
}

TEST(Lattice, EvaluateAtQPower) {
  auto rd2 = RootData::build_a_type(2);
  // Q = q^{1/4}: q = x^4.
  EXPECT_EQ(evaluate_at_qpower(LatticePoly::constant(2, RatFunc(1)), rd2.rho()), RatFunc(1));
  auto w = rd2.fundamental_weight(1);
  EXPECT_EQ(evaluate_at_qpower(orbitsum(rd2, w), rd2.rho()), RatFunc::x(4) + RatFunc::x(-4));
  EXPECT_EQ(evaluate_at_qpower(weyl_character(rd2, 2 * w), rd2.rho()), RatFunc::x(8) + RatFunc(1) + RatFunc::x(-8));
}

TEST(Lattice, EvaluateIsRingHomomorphism) {
  std::mt19937 rng(9);
  auto rd = RootData::build_a_type(3);
  std::uniform_int_distribution<int> part(0, 3), coef(-3, 3);
  auto random_f = [&] {
    LatticePoly f;
    for (int i = 0; i < 4; ++i) f.add(Weight::from_partition({part(rng), part(rng), part(rng)}), RatFunc(coef(rng)));
    return f;
  };
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_f(), g = random_f();
    Weight nu = Weight::from_partition({part(rng), part(rng), 0});
    EXPECT_EQ(evaluate_at_qpower(f * g, nu), evaluate_at_qpower(f, nu) * evaluate_at_qpower(g, nu));
  }
}

TEST(Lattice, QDim) {
  auto rd2 = RootData::build_a_type(2);
  EXPECT_EQ(qdim(rd2, Weight::zero(2)), RatFunc(1));
  auto w = rd2.fundamental_weight(1);
  EXPECT_EQ(qdim(rd2, w), RatFunc::x(4) + RatFunc::x(-4));
  EXPECT_EQ(qdim(rd2, 2 * w).limit_x_to_one(), Rational(3));
  auto rd3 = RootData::build_a_type(3);
  EXPECT_EQ(qdim(rd3, rd3.highest_root()).limit_x_to_one(), Rational(8));
}

TEST(Lattice, StringDivision) {
  auto rd = RootData::build_a_type(3);
  auto a = rd.positive_roots()[1];
  auto f = orbitsum(rd, rd.highest_root());
  LatticePoly factor = LatticePoly::constant(3, RatFunc(1)) - e(-a);
  auto g = f * factor;
  auto back = divide_one_minus_exp(g, -a);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, f);
  EXPECT_FALSE(divide_one_minus_exp(f, -a).has_value());
}
