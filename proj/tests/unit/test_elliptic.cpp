#include <gtest/gtest.h>

#include "macpoly/elliptic.hpp"
#include "macpoly/errors.hpp"
#include "macpoly/kz.hpp"

using namespace macpoly;

namespace {

const cplx I1{0, 1};

// Row-summed lattice sum for wp; each row is a closed-form sum over the real shifts.
cplx wp_oracle(cplx x, cplx tau) {
  const double pi2 = kPi * kPi;
  cplx s = -pi2 / 3.0;
  for (int n = -40; n <= 40; ++n) {
    const cplx a = std::sin(kPi * (x - double(n) * tau));
    s += pi2 / (a * a);
    if (n != 0) {
      const cplx b = std::sin(kPi * double(n) * tau);
      s -= pi2 / (b * b);
    }
  }
  return s;
}

cplx divisor_series(cplx p, int k) {  // sum sigma_k(m) p^m
  cplx s = 0;
  for (int m = 1; m < 400; ++m) {
    double sig = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) sig += std::pow(double(d), k);
    s += sig * std::pow(p, m);
  }
  return s;
}

cplx eta_pentagonal(cplx tau) {
  const cplx p = std::exp(kTwoPiI * tau);
  cplx s = 0;
  for (int k = -60; k <= 60; ++k) s += (k % 2 ? -1.0 : 1.0) * std::pow(p, k * (3 * k - 1) / 2);
  return std::exp(kTwoPiI * tau / 24.0) * s;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Elliptic, ContextValidation) {
  EXPECT_THROW(EllipticContext(cplx(0.3, 0.0)), Error);
  try {
    EllipticContext(cplx(0.1, -1.0));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  const EllipticContext ctx(cplx(0.1, 1.0));
  EXPECT_NEAR(std::abs(ctx.p()), std::exp(-2 * kPi), 1e-15);
}

TEST(Elliptic, ThetaProductMatchesFourier) {
  for (cplx tau : {cplx(0, 0.8), cplx(0.3, 0.15), cplx(-0.2, 1.4)}) {
    const EllipticContext ctx(tau);
    for (cplx x : {cplx(0.3, 0.1), cplx(-0.41, 0.2), cplx(0.05, -0.1)})
      EXPECT_LT(rel(theta1(x, ctx), theta1_derivative(x, 0, ctx)), 1e-12);
  }
}

TEST(Elliptic, ThetaSymmetries) {
  const EllipticContext ctx(cplx(0.1, 0.9));
  EXPECT_LT(std::abs(theta1(0.0, ctx)), 1e-12);
  const cplx x(0.27, 0.13);
  EXPECT_LT(rel(theta1(-x, ctx), -theta1(x, ctx)), 1e-12);
  const cplx lhs = theta1(x + ctx.tau(), ctx);
  const cplx rhs = -std::exp(-I1 * kPi * ctx.tau()) * std::exp(-kTwoPiI * x) * theta1(x, ctx);
  EXPECT_LT(rel(lhs, rhs), 1e-10);
}

TEST(Elliptic, EtaMatchesPentagonalSeries) {
  for (cplx tau : {cplx(0, 1), cplx(0.25, 0.3)}) EXPECT_LT(rel(eta(EllipticContext(tau)), eta_pentagonal(tau)), 1e-13);
}

TEST(Elliptic, WeierstrassAgainstLatticeSum) {
  for (cplx tau : {cplx(0, 0.8), cplx(0.2, 1.1)}) {
    const EllipticContext ctx(tau);
    for (cplx x : {cplx(0.3, 0.1), cplx(-0.12, 0.33)}) EXPECT_LT(rel(wp(x, ctx), wp_oracle(x, tau)), 1e-11);
  }
}

TEST(Elliptic, WeierstrassDifferentialEquation) {
  const cplx tau(0.15, 0.9);
  const EllipticContext ctx(tau);
  const cplx p = ctx.p();
  const double pi4 = std::pow(kPi, 4), pi6 = std::pow(kPi, 6);
  const cplx e4 = 1.0 + 240.0 * divisor_series(p, 3);
  const cplx e6 = 1.0 - 504.0 * divisor_series(p, 5);
  const cplx g2 = 4.0 * pi4 / 3.0 * e4, g3 = 8.0 * pi6 / 27.0 * e6;
  const cplx x(0.21, 0.17);
  const double h = 1e-4;
  const cplx d = (wp(x + h, ctx) - wp(x - h, ctx)) / (2 * h);
  const cplx w = wp(x, ctx);
  const cplx lhs = d * d, rhs = 4.0 * w * w * w - g2 * w - g3;
  EXPECT_LT(std::abs(lhs - rhs) / std::abs(rhs), 1e-6);
}

TEST(Elliptic, GSeriesAgreesWithThetaRatio) {
  const EllipticContext ctx(cplx(0, 0.8));
  const cplx x(0.3, 0.1);
  EXPECT_LT(std::abs(g_series(x, 0.2, ctx) - g(x, 0.2, ctx)), 1e-10);
  EXPECT_TRUE(g_consistent(x, 0.2, ctx));
  // outside the strip the series is refused
  EXPECT_THROW(g_series(x, cplx(0.2, 0.9), ctx), Error);
}

TEST(Elliptic, PoleProximity) {
  const EllipticContext ctx(cplx(0.1, 1.0));
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Internal;
  };
  EXPECT_EQ(kind([&] { sigma(1e-11, ctx); }), ErrorKind::PoleProximity);
  EXPECT_EQ(kind([&] { wp(ctx.tau() + 1.0 + 1e-12, ctx); }), ErrorKind::PoleProximity);
  EXPECT_EQ(kind([&] { g(0.3, 2.0, ctx); }), ErrorKind::PoleProximity);
  EXPECT_NO_THROW(sigma(1e-6, ctx));
}

TEST(Elliptic, IdentitySuite) {
  for (const auto& r : check_elliptic_identities(default_elliptic_grid())) {
    EXPECT_TRUE(r.pass) << r.check << " residual " << r.max_residual;
  }
}

TEST(Elliptic, GridStaysInRange) {
  for (const auto& s : default_elliptic_grid()) {
    EXPECT_LE(std::abs(EllipticContext(s.tau).p()), 0.5);
    EXPECT_GT(s.zeta.imag(), 0);
    EXPECT_LT(s.zeta.imag(), s.tau.imag());
  }
}

TEST(Elliptic, PhiIsMinusXDerivativeOfG) {
  const EllipticContext ctx(cplx(0.05, 0.7));
  const cplx x(0.31, 0.04), z(0.12, 0.2);
  const double h = 1e-5;
  const cplx fd = -(g(x + h, z, ctx) - g(x - h, z, ctx)) / (2 * h) / kTwoPiI;
  EXPECT_LT(rel(phi(x, z, ctx), fd), 1e-8);
}

TEST(Evaluation, LevelOnlyTerm) {
  const RootData rd = RootData::build_a_type(2);
  AffineSeries s(2, 3, 4);
  s.add(0, Weight::zero(2), RatFunc(1));
  const cplx u(0.1, 0.05);
  const cplx v = evaluate_affine_series(s, {0.2, -0.2}, u, cplx(0, 1));
  EXPECT_LT(std::abs(v - std::exp(kTwoPiI * 3.0 * u)), 1e-14);
}

TEST(Evaluation, DenominatorProductForm) {
  for (int n : {2, 3}) {
    const RootData rd = RootData::build_a_type(n);
    std::vector<std::vector<cplx>> hs;
    std::vector<cplx> us, taus;
    for (int s = 0; s < 10; ++s) {
      std::vector<cplx> h(n);
      cplx mean = 0;
      for (int a = 0; a < n; ++a) {
        h[a] = cplx(0.11 * (s + 1) * (a + 1) - 0.3 * a, 0.05 * ((s + a) % 3) - 0.04);
        mean += h[a];
      }
      for (auto& x : h) x -= mean / double(n);
      hs.push_back(h);
      us.push_back(cplx(0.03 * s, -0.02));
      taus.push_back(cplx(0.1 * (s % 4) - 0.15, 1.0 + 0.05 * s));
    }
    const auto rep = check_denominator_product(rd, 12, hs, us, taus);
    EXPECT_TRUE(rep.pass) << "n=" << n << " residual " << rep.max_residual;
  }
}

TEST(Evaluation, CharacterThetaLaw) {
  const RootData rd = RootData::build_a_type(2);
  const std::vector<std::vector<cplx>> hs = {{{0.13, 0.02}, {-0.13, -0.02}}, {{0.31, -0.1}, {-0.31, 0.1}}};
  for (int K : {1, 2})
    for (int l = 0; l <= K; ++l) {
      const auto lam = Weight::from_partition({l, 0});
      const auto rep = check_theta_law(rd, lam, K, 8, hs, cplx(0.05, 1.0));
      EXPECT_TRUE(rep.pass) << "K=" << K << " l=" << l << " residual " << rep.max_residual;
    }
}

TEST(KZ, Representations) {
  const auto v = symmetric_power(2, 2);
  EXPECT_EQ(v.dim(), 3);
  const CMatrix e = v.E(0, 1), f = v.E(1, 0), h = v.E(0, 0) - v.E(1, 1);
  EXPECT_LT((e * f - f * e - h).norm(), 1e-14);
  EXPECT_EQ(symmetric_power(3, 2).dim(), 6);
  const auto xs = cartan_basis(3);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      double d = 0, tr = 0;
      for (int a = 0; a < 3; ++a) d += xs[i][a] * xs[j][a], tr += xs[i][a];
      EXPECT_NEAR(d, i == j ? 1.0 : 0.0, 1e-14);
      EXPECT_NEAR(tr, 0.0, 1e-14);
    }
}

TEST(KZ, ZeroWeightSpaces) {
  EXPECT_EQ(TensorSpace(2, {defining_rep(2), defining_rep(2)}).zero_weight().size(), 2u);
  EXPECT_EQ(TensorSpace(2, {defining_rep(2), defining_rep(2), symmetric_power(2, 2)}).zero_weight().size(), 4u);
  EXPECT_EQ(TensorSpace(3, {defining_rep(3), defining_rep(3), defining_rep(3)}).zero_weight().size(), 6u);
  EXPECT_TRUE(TensorSpace(2, {defining_rep(2)}).zero_weight().empty());
}

TEST(KZ, CasimirIsPermutationMinusTrace) {
  const TensorSpace V(2, {defining_rep(2), defining_rep(2)});
  CMatrix expect(4, 4);
  expect << 0.5, 0, 0, 0, 0, -0.5, 1, 0, 0, 1, -0.5, 0, 0, 0, 0, 0.5;
  EXPECT_LT((casimir_full(V, 0, 1) - expect).norm(), 1e-14);
}

TEST(KZ, RMatrixStructure) {
  for (int n : {2, 3}) {
    const auto s = default_r_samples(n);
    const auto u = check_r_unitarity(n, s);
    const auto r = check_r_residue(n, s);
    const auto q = check_r_quasi_periodicity(n, s);
    EXPECT_TRUE(u.pass) << u.max_residual;
    EXPECT_TRUE(r.pass) << r.max_residual;
    EXPECT_TRUE(q.pass) << q.max_residual;
  }
}

TEST(KZ, ConnectionShape) {
  const EllipticContext ctx(cplx(0, 1.1));
  const TensorSpace V(2, {defining_rep(2), defining_rep(2)});
  const std::vector<cplx> h = {{0.13, 0.05}, {-0.13, -0.05}};
  const auto c = kz_connection(V, {0.1, cplx(0.4, 0.2)}, h, ctx, 1.7);
  ASSERT_EQ(c.matrix_part.size(), 2u);
  EXPECT_EQ(c.matrix_part[0].rows(), 2);
  EXPECT_LT(c.leakage, 1e-12);
  // single r_12 assembles both points
  const auto r12 = r_matrix(V, 0, 1, cplx(-0.3, -0.2), h, ctx).matrix;
  EXPECT_LT((c.matrix_part[0] - r12).norm(), 1e-12);
  const TensorSpace one(2, {defining_rep(2)});
  EXPECT_EQ(kz_connection(one, {0.2}, h, ctx, 1.0).matrix_part[0].size(), 0);
  EXPECT_THROW(kz_connection(V, {0.1, 1.1}, h, ctx, 1.0), Error);
}

TEST(KZ, FlatnessTwoPoints) {
  const EllipticContext ctx(cplx(0, 1.1));
  const TensorSpace V(2, {defining_rep(2), defining_rep(2)});
  const std::vector<cplx> h = {{0.13, 0.05}, {-0.13, -0.05}};
  const std::vector<cplx> z = {cplx(0.1, 0.02), cplx(0.43, 0.21)};
  EXPECT_LT(flatness_check(V, z, h, ctx, 1.7).relative, 1e-5);
  // with two points everything depends on zeta_1 - zeta_2 and unitarity cancels the residual outright
  EXPECT_LT(flatness_check(V, z, h, ctx, 1.7, 2e-3, HDerivative::CentralDifference).relative, 1e-12);
}

TEST(KZ, FlatnessThreePoints) {
  const EllipticContext ctx(cplx(0.1, 0.9));
  const TensorSpace V(2, {defining_rep(2), defining_rep(2), symmetric_power(2, 2)});
  const std::vector<cplx> h = {{0.21, -0.04}, {-0.21, 0.04}};
  const std::vector<cplx> z = {cplx(0.1, 0.05), cplx(0.37, -0.1), cplx(0.7, 0.2)};
  EXPECT_LT(flatness_check(V, z, h, ctx, 1.0).relative, 1e-5);
  const double a = flatness_check(V, z, h, ctx, 1.0, 2e-3, HDerivative::CentralDifference).relative;
  const double b = flatness_check(V, z, h, ctx, 1.0, 1e-3, HDerivative::CentralDifference).relative;
  EXPECT_NEAR(a / b, 4.0, 0.2);
  EXPECT_EQ(flatness_check(TensorSpace(2, {defining_rep(2)}), {0.3}, h, ctx, 1.0).relative, 0.0);
}

TEST(KZ, PsiGauge) {
  const EllipticContext ctx(cplx(0.05, 1.0));
  const std::vector<cplx> h = {{0.17, 0.03}, {-0.17, -0.03}};
  const TensorSpace V2(2, {defining_rep(2), defining_rep(2)});
  EXPECT_TRUE(check_psi_law(V2, {0.1, cplx(0.45, 0.1)}, h, ctx).pass);
  const TensorSpace V3(2, {defining_rep(2), defining_rep(2), symmetric_power(2, 2)});
  const auto r = check_psi_law(V3, {0.1, cplx(0.45, 0.1), cplx(-0.3, 0.25)}, h, ctx);
  EXPECT_TRUE(r.pass) << r.max_residual;
  const TensorSpace V1(2, {symmetric_power(2, 2)});
  const auto psi = psi_gauge(V1, {0.3}, h, ctx).matrix;
  EXPECT_LT((psi - CMatrix::Identity(psi.rows(), psi.cols())).norm(), 1e-15);
}
