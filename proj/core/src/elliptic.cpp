#include "macpoly/elliptic.hpp"

#include <cmath>
#include <string>

#include "macpoly/errors.hpp"

namespace macpoly {

namespace {

const cplx kI{0.0, 1.0};

cplx expi(cplx x) { return std::exp(kTwoPiI * x); }  // e^{2 pi i x}

// Adds terms produced by next(m), m = start, start + 1, ... until two consecutive terms are negligible
// against the running magnitude.
template <class F>
cplx sum_until_small(const EllipticContext& ctx, int start, F next) {
  cplx s = 0;
  double mag = 0;
  int small = 0;
  for (int m = start; m < start + ctx.max_terms(); ++m) {
    const cplx t = next(m);
    s += t;
    mag += std::abs(t);
    if (std::abs(t) <= ctx.series_tolerance() * mag) {
      if (++small >= 2) return s;
    } else {
      small = 0;
    }
  }
  fail(ErrorKind::Domain, "elliptic series did not converge within max_terms");
}

void require_strip(cplx zeta, const EllipticContext& ctx, bool strictly_positive, const char* what) {
  const double lo = strictly_positive ? 0.0 : -ctx.tau().imag();
  if (!(zeta.imag() > lo && zeta.imag() < ctx.tau().imag()))
    fail(ErrorKind::Domain, std::string(what) + ": Im zeta is outside the convergence strip");
}

// sum_{n >= 1} (1 - p^n)
cplx euler_product(const EllipticContext& ctx) {
  const cplx p = ctx.p();
  cplx prod = 1;
  cplx pn = p;
  for (int n = 1; n <= ctx.max_terms(); ++n) {
    prod *= 1.0 - pn;
    if (std::abs(pn) < ctx.series_tolerance()) return prod;
    pn *= p;
  }
  fail(ErrorKind::Domain, "eta product did not converge");
}

// theta_1'(0) = 2 pi eta^3
cplx theta1_prime_zero(const EllipticContext& ctx) {
  const cplx e = eta(ctx);
  return 2.0 * kPi * e * e * e;
}

}  // namespace

EllipticContext::EllipticContext(cplx tau, double series_tolerance, int max_terms, double pole_guard)
    : tau_(tau), tol_(series_tolerance), max_terms_(max_terms), guard_(pole_guard) {
  if (!(tau.imag() > 0)) fail(ErrorKind::Domain, "Im tau must be positive");
  if (!(series_tolerance > 0) || max_terms <= 0) fail(ErrorKind::InvalidInput, "bad series controls");
  p_ = expi(tau);
}

double EllipticContext::lattice_distance(cplx x) const {
  const double n = std::round(x.imag() / tau_.imag());
  double best = INFINITY;
  for (double dn = -1; dn <= 1; ++dn) {
    const cplx y = x - (n + dn) * tau_;
    const double m = std::round(y.real());
    best = std::min(best, std::abs(y - m));
  }
  return best;
}

void EllipticContext::require_off_lattice(cplx x, const char* what) const {
  if (lattice_distance(x) < guard_)
    fail(ErrorKind::PoleProximity, std::string(what) + ": argument is within the pole guard of Z + tau Z");
}

cplx theta1(cplx x, const EllipticContext& ctx) {
  const cplx p = ctx.p();
  const cplx w = expi(x);
  const cplx wi = 1.0 / w;
  cplx prod = 2.0 * std::exp(kTwoPiI * ctx.tau() / 8.0) * std::sin(kPi * x);
  cplx pn = p;
  const double scale = std::max(std::abs(w), std::abs(wi));
  for (int n = 1; n <= ctx.max_terms(); ++n) {
    prod *= (1.0 - w * pn) * (1.0 - wi * pn) * (1.0 - pn);
    if (std::abs(pn) * scale < ctx.series_tolerance()) return prod;
    pn *= p;
  }
  fail(ErrorKind::Domain, "theta_1 product did not converge");
}

cplx theta1_derivative(cplx x, int order, const EllipticContext& ctx) {
  if (order < 0 || order > 3) fail(ErrorKind::InvalidInput, "theta_1 derivative order must be 0..3");
  const cplx tau = ctx.tau();
  cplx s = 0;
  double mag = 0;
  const int peak = static_cast<int>(std::abs(x.imag()) / tau.imag()) + 2;
  for (int n = 0; n < ctx.max_terms(); ++n) {
    const double a = (2 * n + 1) * kPi;
    const cplx c = 2.0 * (n % 2 ? -1.0 : 1.0) * std::exp(kI * kPi * tau * ((n + 0.5) * (n + 0.5)));
    cplx t;
    switch (order) {
      case 0: t = std::sin(a * x); break;
      case 1: t = a * std::cos(a * x); break;
      case 2: t = -a * a * std::sin(a * x); break;
      default: t = -a * a * a * std::cos(a * x); break;
    }
    t *= c;
    s += t;
    mag += std::abs(t);
    if (n > peak && std::abs(t) <= ctx.series_tolerance() * mag) return s;
  }
  fail(ErrorKind::Domain, "theta_1 Fourier series did not converge");
}

cplx eta(const EllipticContext& ctx) { return std::exp(kTwoPiI * ctx.tau() / 24.0) * euler_product(ctx); }

cplx sigma(cplx x, const EllipticContext& ctx) {
  ctx.require_off_lattice(x, "sigma");
  const cplx p = ctx.p();
  const cplx w = expi(x);
  const cplx wi = 1.0 / w;
  cplx pn = 1;
  const cplx tail = sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    return w * pn / (1.0 - w * pn) - wi * pn / (1.0 - wi * pn);
  });
  return 0.5 * kI * std::cos(kPi * x) / std::sin(kPi * x) + tail;
}

cplx double_pole_sum(cplx x, const EllipticContext& ctx) {
  ctx.require_off_lattice(x, "double pole sum");
  const cplx p = ctx.p();
  const cplx w = expi(x);
  const cplx wi = 1.0 / w;
  cplx pn = 1;
  const cplx tail = sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    const cplx a = 1.0 - w * pn;
    const cplx b = 1.0 - wi * pn;
    return w * pn / (a * a) + wi * pn / (b * b);
  });
  const cplx s = std::sin(kPi * x);
  return -0.25 / (s * s) + tail;
}

cplx wp(cplx x, const EllipticContext& ctx) {
  const cplx p = ctx.p();
  cplx pn = 1;
  // sum sigma_1(m) p^m = sum p^n / (1 - p^n)^2
  const cplx e2 = sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    return pn / ((1.0 - pn) * (1.0 - pn));
  });
  return -4.0 * kPi * kPi * double_pole_sum(x, ctx) - kPi * kPi / 3.0 + 8.0 * kPi * kPi * e2;
}

cplx g(cplx x, cplx zeta, const EllipticContext& ctx) {
  ctx.require_off_lattice(x, "g");
  ctx.require_off_lattice(zeta, "g");
  return -theta1(x - zeta, ctx) * theta1_prime_zero(ctx) / (kTwoPiI * theta1(x, ctx) * theta1(zeta, ctx));
}

cplx g_series(cplx x, cplx zeta, const EllipticContext& ctx) {
  ctx.require_off_lattice(x, "g");
  ctx.require_off_lattice(zeta, "g");
  require_strip(zeta, ctx, false, "g series");
  const cplx p = ctx.p();
  const cplx w = expi(x);
  const cplx wi = 1.0 / w;
  const cplx z = expi(zeta);
  const cplx zi = 1.0 / z;
  cplx pn = 1, zm = 1, zim = 1;
  const cplx tail = sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    zm *= z;
    zim *= zi;
    return zm * pn * wi / (1.0 - pn * wi) - zim * pn * w / (1.0 - pn * w);
  });
  // m = 0 term, plus sum_{m >= 1} z^m continued analytically
  return 1.0 / (1.0 - wi) + z / (1.0 - z) + tail;
}

bool g_consistent(cplx x, cplx zeta, const EllipticContext& ctx, double tol) {
  const cplx a = g(x, zeta, ctx);
  return std::abs(g_series(x, zeta, ctx) - a) <= tol * std::max(1.0, std::abs(a));
}

cplx phi(cplx x, cplx zeta, const EllipticContext& ctx) {
  // theta_1'/theta_1 = -2 pi i sigma
  return g(x, zeta, ctx) * (sigma(x - zeta, ctx) - sigma(x, ctx));
}

cplx phi_series(cplx x, cplx zeta, const EllipticContext& ctx) {
  ctx.require_off_lattice(x, "phi");
  require_strip(zeta, ctx, false, "phi series");
  const cplx p = ctx.p();
  const cplx w = expi(x);
  const cplx wi = 1.0 / w;
  const cplx z = expi(zeta);
  const cplx zi = 1.0 / z;
  cplx pn = 1, zm = 1, zim = 1;
  const cplx tail = sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    zm *= z;
    zim *= zi;
    const cplx a = 1.0 - pn * wi;
    const cplx b = 1.0 - pn * w;
    return wi * pn * zm / (a * a) + w * pn * zim / (b * b);
  });
  const cplx a0 = 1.0 - wi;
  return wi / (a0 * a0) + tail;
}

cplx phi0(cplx zeta, const EllipticContext& ctx) {
  ctx.require_off_lattice(zeta, "phi0");
  const double pi2 = kPi * kPi;
  return theta1_derivative(zeta, 2, ctx) / (8.0 * pi2 * theta1(zeta, ctx)) -
         theta1_derivative(0.0, 3, ctx) / (24.0 * pi2 * theta1_derivative(0.0, 1, ctx)) + 1.0 / 12.0;
}

cplx phi0_series(cplx zeta, const EllipticContext& ctx) {
  require_strip(zeta, ctx, false, "phi0 series");
  const cplx p = ctx.p();
  const cplx z = expi(zeta);
  const cplx zi = 1.0 / z;
  cplx pn = 1, zm = 1, zim = 1;
  return sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    zm *= z;
    zim *= zi;
    const cplx d = 1.0 - pn;
    return pn * (zm + zim) / (d * d);
  });
}

cplx sigma_fourier(cplx zeta, const EllipticContext& ctx) {
  require_strip(zeta, ctx, true, "sigma Fourier series");
  const cplx p = ctx.p();
  const cplx z = expi(zeta);
  const cplx zi = 1.0 / z;
  cplx pn = 1, zm = 1, zim = 1;
  return sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    zm *= z;
    zim *= zi;
    return (zm - zim * pn) / (1.0 - pn);
  });
}

cplx sigma_principal_value(cplx zeta, const EllipticContext& ctx) {
  ctx.require_off_lattice(zeta, "sigma");
  const cplx p = ctx.p();
  const cplx z = expi(zeta);
  cplx pn = 1;
  // window [-m, m] grows one step at a time
  const cplx tail = sum_until_small(ctx, 1, [&](int) {
    pn *= p;
    return (1.0 + pn * z) / (1.0 - pn * z) + (pn + z) / (pn - z);
  });
  return 0.5 * ((1.0 + z) / (1.0 - z) + tail);
}

std::vector<EllipticSample> default_elliptic_grid() {
  // |p| <= 0.29; Im zeta stays inside (0, Im tau) for every tau so that all series forms apply.
  const cplx xs[] = {{0.3, 0.1}, {-0.21, 0.05}, {0.37, -0.13}};
  const cplx zs[] = {{0.2, 0.07}, {-0.31, 0.11}, {0.13, 0.15}};
  const cplx ts[] = {{0.1, 0.2}, {-0.3, 0.5}, {0.25, 1.1}};
  std::vector<EllipticSample> grid;
  for (auto x : xs)
    for (auto z : zs)
      for (auto t : ts) grid.push_back({x, z, t});
  return grid;
}

std::vector<NumericReport> check_elliptic_identities(const std::vector<EllipticSample>& grid, double tol) {
  struct Acc {
    std::string name;
    double worst = 0;
  };
  std::vector<Acc> acc = {{"double-pole-sum"},   {"g-series"},         {"sigma-fourier"},        {"sigma-principal-value"},
                          {"phi-series"},        {"phi0-series"},      {"theta1-symmetry"},      {"wp-periodicity"},
                          {"sigma-quasi-period"}, {"g-quasi-period"}};
  auto diff = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  auto bump = [&](int i, double v) { acc[i].worst = std::max(acc[i].worst, std::isnan(v) ? INFINITY : v); };

  for (const auto& s : grid) {
    const EllipticContext ctx(s.tau);
    const cplx x = s.x, z = s.zeta, tau = s.tau;
    const double pi2 = kPi * kPi;

    const cplx t0 = theta1_derivative(x, 0, ctx), t1 = theta1_derivative(x, 1, ctx),
               t2 = theta1_derivative(x, 2, ctx);
    bump(0, diff(double_pole_sum(x, ctx), (t2 * t0 - t1 * t1) / (t0 * t0) / (4.0 * pi2)));

    bump(1, diff(g_series(x, z, ctx), g(x, z, ctx)));
    bump(2, diff(sigma_fourier(z, ctx), sigma(z, ctx) - 0.5));
    bump(3, diff(sigma_principal_value(z, ctx), sigma(z, ctx)));
    bump(4, diff(phi_series(x, z, ctx), phi(x, z, ctx)));
    bump(5, diff(phi0_series(z, ctx), phi0(z, ctx)));

    const cplx th = theta1(x, ctx);
    bump(6, diff(theta1(-x, ctx), -th));
    bump(6, diff(theta1(x + 1.0, ctx), -th));
    bump(6, diff(theta1(x + tau, ctx), -std::exp(-kI * kPi * tau) * expi(-x) * th));
    bump(6, std::abs(theta1(0.0, ctx)));

    const cplx w = wp(x, ctx);
    bump(7, diff(wp(-x, ctx), w));
    bump(7, diff(wp(x + 1.0, ctx), w));
    bump(7, diff(wp(x + tau, ctx), w));

    const cplx sg = sigma(z, ctx);
    bump(8, diff(sigma(-z, ctx), -sg));
    bump(8, diff(sigma(z + 1.0, ctx), sg));
    bump(8, diff(sigma(z + tau, ctx), sg + 1.0));

    const cplx gv = g(x, z, ctx);
    bump(9, diff(g(z, x, ctx), -gv));
    bump(9, diff(g(-x, -z, ctx), -gv));
    bump(9, diff(g(x + 1.0, z, ctx), gv));
    bump(9, diff(g(x, z + 1.0, ctx), gv));
    bump(9, diff(g(x + tau, z, ctx), expi(z) * gv));
    bump(9, diff(g(x, z + tau, ctx), expi(x) * gv));
  }
  std::vector<NumericReport> out;
  for (const auto& a : acc) {
    NumericReport r;
    r.check = a.name;
    r.parameters = {{"samples", grid.size()}};
    r.max_residual = a.worst;
    r.tolerance = tol;
    r.pass = a.worst <= tol;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

cplx pair_with(const Weight& w, const std::vector<cplx>& h) {
  if (static_cast<int>(h.size()) != w.n()) fail(ErrorKind::InvalidInput, "Cartan vector has the wrong length");
  cplx s = 0;
  for (int i = 0; i < w.n(); ++i) s += w.coord(i).get_d() * h[i];
  return s;
}

}  // namespace

cplx evaluate_affine_series(const AffineSeries& s, const std::vector<cplx>& h, cplx u, cplx tau) {
  cplx total = 0;
  for (const auto& [d, layer] : s.layers) {
    const cplx a = s.offset.get_d() - d;
    for (const auto& [mu, c] : layer.terms()) {
      if (!c.is_constant()) fail(ErrorKind::Domain, "numeric evaluation needs constant coefficients");
      total += c.constant_value().get_d() * std::exp(kTwoPiI * (pair_with(mu, h) + double(s.level) * u - a * tau));
    }
  }
  return total;
}

NumericReport check_denominator_product(const RootData& rd, int N, const std::vector<std::vector<cplx>>& hs,
                                        const std::vector<cplx>& us, const std::vector<cplx>& taus, double tol) {
  if (hs.size() != us.size() || hs.size() != taus.size()) fail(ErrorKind::InvalidInput, "sample lists differ in length");
  const AffineSeries dp = normalized_denominator(rd, N);
  const int npos = static_cast<int>(rd.positive_roots().size());
  double worst = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const EllipticContext ctx(taus[i]);
    cplx rhs = std::exp(kTwoPiI * double(rd.dual_coxeter()) * us[i]) * std::pow(kI, npos) *
               std::pow(eta(ctx), rd.rank() - npos);
    for (const auto& alpha : rd.positive_roots()) rhs *= theta1(pair_with(alpha, hs[i]), ctx);
    const cplx lhs = evaluate_affine_series(dp, hs[i], us[i], taus[i]);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  NumericReport r;
  r.check = "denominator-product";
  r.parameters = {{"n", rd.n()}, {"N", N}, {"samples", hs.size()}};
  r.max_residual = worst;
  r.tolerance = tol;
  r.pass = worst <= tol;
  return r;
}

NumericReport check_theta_law(const RootData& rd, const Weight& lam, int K, int N,
                              const std::vector<std::vector<cplx>>& hs, cplx tau, double tol) {
  const AffineSeries ch = weyl_kac_character(rd, lam, K, N);
  double worst = 0;
  for (const auto& h : hs) {
    const cplx f = evaluate_affine_series(ch, h, 0.0, tau);
    for (const auto& alpha : rd.simple_roots()) {
      std::vector<cplx> shifted = h;
      for (int i = 0; i < rd.n(); ++i) shifted[i] += alpha.coord(i).get_d() * tau;
      const cplx lhs = evaluate_affine_series(ch, shifted, 0.0, tau);
      const double half_norm = pairing(alpha, alpha).get_d() / 2.0;
      const cplx rhs = std::exp(-kTwoPiI * double(K) * (half_norm * tau + pair_with(alpha, h))) * f;
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  NumericReport r;
  r.check = "theta-law";
  r.parameters = {{"n", rd.n()}, {"K", K}, {"N", N}, {"samples", hs.size()}};
  r.max_residual = worst;
  r.tolerance = tol;
  r.pass = worst <= tol;
  return r;
}

}  // namespace macpoly
