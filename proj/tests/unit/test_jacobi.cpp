#include <gtest/gtest.h>

#include <random>

#include "printers.hpp"

#include "macpoly/jacobi.hpp"
#include "macpoly/lattice_ops.hpp"

using namespace macpoly;

namespace {

const RatFunc kf = RatFunc::x(1);

std::vector<Weight> small_dominant(const RootData& rd, int max_size) {
  std::vector<Weight> out;
  for (const auto& p : partitions_up_to(rd.n(), max_size))
    if (p.back() == 0) out.push_back(Weight::from_partition(p));
  return out;
}

// Brute force: expand 1/(1 - e^alpha) as a geometric series on both sides and
// keep the finite W-invariant answer by pairing mu with s_alpha mu by hand.
LatticePoly sl2_mk_by_hand(int m) {
  // f = m_{m omega}; omega scaled coords (1,-1) over n = 2.
  const RatFunc k = kf;
  LatticePoly r;
  if (m == 0) return r;
  // Delta_h part: (m omega, m omega) = m^2/2.
  r.add(Weight::from_scaled({m, -m}), RatFunc(Rational(m * m, 2)));
  r.add(Weight::from_scaled({-m, m}), RatFunc(Rational(m * m, 2)));
  // 2k d_rho part: (rho, m omega) = m/2 on e^{m omega}, -m/2 on e^{-m omega}.
  r.add(Weight::from_scaled({m, -m}), k * RatFunc(m));
  r.add(Weight::from_scaled({-m, m}), k * RatFunc(-m));
  // -2k (1 - e^alpha)^{-1} d_alpha (e^{m w} + e^{-m w}) = -2k m (e^{mw} - e^{-mw})/(1 - e^{alpha}),
  // and (e^{mw} - e^{-mw})/(1 - e^alpha) = -(e^{-mw} + e^{-mw + alpha} + ... + e^{mw - alpha}).
  for (int j = 0; j < m; ++j) r.add(Weight::from_scaled({-m + 2 * j, m - 2 * j}), RatFunc(2 * m) * k);
  return r;
}

}  // namespace

TEST(Jacobi, OperatorOnConstant) {
  auto rd = RootData::build_a_type(3);
  EXPECT_TRUE(sutherland_mk_apply(rd, LatticePoly::constant(3, RatFunc(1)), JacobiK::symbolic()).is_zero());
}

TEST(Jacobi, RankOneByHand) {
  auto rd = RootData::build_a_type(2);
  auto w = rd.fundamental_weight(1);
  for (int m = 0; m <= 5; ++m)
    EXPECT_EQ(sutherland_mk_apply(rd, orbitsum(rd, static_cast<std::int64_t>(m) * w), JacobiK::symbolic()), sl2_mk_by_hand(m));
  auto img = sutherland_mk_apply(rd, orbitsum(rd, 2 * w), JacobiK::symbolic());
  EXPECT_EQ(img, orbitsum(rd, 2 * w).scaled(RatFunc(2) + RatFunc(2) * kf) + LatticePoly::constant(2, RatFunc(4) * kf));
}

TEST(Jacobi, RejectsNonInvariant) {
  auto rd = RootData::build_a_type(2);
  try {
    sutherland_mk_apply(rd, LatticePoly::monomial(rd.fundamental_weight(1)), JacobiK::symbolic());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(Jacobi, TwoFormsAgree) {
  for (int n = 2; n <= 4; ++n) {
    auto rd = RootData::build_a_type(n);
    for (const auto& lam : small_dominant(rd, 4)) {
      auto f = orbitsum(rd, lam);
      EXPECT_EQ(sutherland_mk_apply(rd, f, JacobiK::symbolic()), sutherland_mk_apply_symmetric_form(rd, f, JacobiK::symbolic()));
    }
  }
}

TEST(Jacobi, ConjugationConsistency) {
  for (int n = 2; n <= 3; ++n) {
    auto rd = RootData::build_a_type(n);
    for (int k = 0; k <= 3; ++k)
      for (const auto& lam : small_dominant(rd, 3)) {
        auto f = orbitsum(rd, lam);
        EXPECT_EQ(conjugated_sutherland_apply(rd, f, k), sutherland_mk_apply(rd, f, JacobiK::fixed(k)));
      }
  }
}

TEST(Jacobi, LeadingCoefficient) {
  std::mt19937 rng(3);
  for (int n = 2; n <= 4; ++n) {
    auto rd = RootData::build_a_type(n);
    auto ws = small_dominant(rd, 5);
    for (int trial = 0; trial < 6; ++trial) {
      const auto& lam = ws[rng() % ws.size()];
      auto img = sutherland_mk_apply(rd, orbitsum(rd, lam), JacobiK::symbolic());
      EXPECT_EQ(img.coeff(lam), jacobi_eigenvalue(rd, lam, JacobiK::symbolic()));
      for (const auto& [mu, c] : img.terms())
        if (rd.is_dominant(mu)) EXPECT_TRUE(rd.leq(mu, lam));
    }
  }
}

TEST(Jacobi, NondegeneracyGuard) {
  for (int n = 2; n <= 4; ++n) {
    auto rd = RootData::build_a_type(n);
    for (const auto& lam : small_dominant(rd, 5))
      for (const auto& mu : rd.dominant_below(lam))
        if (mu != lam) EXPECT_LT(pairing(mu + rd.rho(), mu + rd.rho()), pairing(lam + rd.rho(), lam + rd.rho()));
  }
}

TEST(Jacobi, RankOneClosedForm) {
  auto rd = RootData::build_a_type(2);
  auto J = jacobi_poly(rd, 2 * rd.fundamental_weight(1), JacobiK::symbolic());
  ASSERT_EQ(J.coeffs.size(), 2u);
  EXPECT_EQ(J.coeffs.at(Weight::zero(2)), RatFunc(2) * kf / (kf + RatFunc(1)));
}

TEST(Jacobi, SpecialK) {
  for (int n = 2; n <= 3; ++n) {
    auto rd = RootData::build_a_type(n);
    for (const auto& lam : small_dominant(rd, 4)) {
      EXPECT_EQ(to_lattice(rd, jacobi_poly(rd, lam, JacobiK::fixed(0))), orbitsum(rd, lam));
      EXPECT_EQ(to_lattice(rd, jacobi_poly(rd, lam, JacobiK::fixed(1))), weyl_character(rd, lam));
    }
  }
}

TEST(Jacobi, FormalSpecializes) {
  auto rd = RootData::build_a_type(3);
  Weight lam = Weight::from_partition({3, 1, 0});
  auto formal = jacobi_poly(rd, lam, JacobiK::symbolic());
  for (Rational k : {Rational(1, 2), Rational(2), Rational(7, 3)}) {
    auto fixed = jacobi_poly(rd, lam, JacobiK::fixed(k));
    ASSERT_EQ(fixed.coeffs.size(), formal.coeffs.size());
    for (const auto& [mu, c] : formal.coeffs) EXPECT_EQ(RatFunc(c.evaluate_x(k)), fixed.coeffs.at(mu));
  }
}

TEST(Jacobi, CollisionIsReported) {
  // sl2, lambda = 2 omega: gap to 0 is 2 + 2k, which vanishes at k = -1.
  auto rd = RootData::build_a_type(2);
  try {
    jacobi_poly(rd, 2 * rd.fundamental_weight(1), JacobiK::fixed(-1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSpectrum);
  }
}

TEST(Jacobi, MacdonaldLimit) {
  auto rd2 = RootData::build_a_type(2);
  auto lim = macdonald_to_jack_limit(rd2, {2, 0}, 2);
  EXPECT_EQ(lim.coeffs.at(Weight::zero(2)), RatFunc(Rational(4, 3)));
  for (int n = 2; n <= 3; ++n) {
    auto rd = RootData::build_a_type(n);
    for (int k = 0; k <= 2; ++k)
      for (const auto& lam : partitions_up_to(n, 3)) EXPECT_TRUE(verify_jack_limit(rd, lam, k).equal);
  }
}

TEST(Jacobi, ClassicalInnerProduct) {
  auto rd = RootData::build_a_type(2);
  auto one = LatticePoly::constant(2, RatFunc(1));
  // The normalization divides by |W| even at k = 0.
  EXPECT_EQ(classical_inner_product(rd, one, one, 0), RatFunc(Rational(1, 2)));
  EXPECT_EQ(classical_inner_product(rd, one, one, 1), RatFunc(1));
  for (int n = 2; n <= 3; ++n) {
    auto rd_n = RootData::build_a_type(n);
    auto ws = small_dominant(rd_n, 3);
    for (int k = 1; k <= 2; ++k)
      for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = i + 1; j < ws.size(); ++j) {
          auto a = to_lattice(rd_n, jacobi_poly(rd_n, ws[i], JacobiK::fixed(k)));
          auto b = to_lattice(rd_n, jacobi_poly(rd_n, ws[j], JacobiK::fixed(k)));
          EXPECT_TRUE(classical_inner_product(rd_n, a, b, k).is_zero());
        }
  }
}

TEST(Jacobi, SelfAdjoint) {
  std::mt19937 rng(11);
  auto rd = RootData::build_a_type(3);
  auto ws = small_dominant(rd, 3);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int k = 1; k <= 2; ++k)
    for (int trial = 0; trial < 4; ++trial) {
      LatticePoly f, g;
      for (const auto& w : ws) {
        f += orbitsum(rd, w).scaled(RatFunc(coef(rng)));
        g += orbitsum(rd, w).scaled(RatFunc(coef(rng)));
      }
      auto K = JacobiK::fixed(k);
      EXPECT_EQ(classical_inner_product(rd, sutherland_mk_apply(rd, f, K), g, k),
                classical_inner_product(rd, f, sutherland_mk_apply(rd, g, K), k));
    }
}
