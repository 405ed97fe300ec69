#include "macpoly/kz.hpp"

#include <cmath>

#include "macpoly/errors.hpp"

namespace macpoly {

namespace {

void exponents(int n, int m, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const int i = static_cast<int>(cur.size());
  if (i == n - 1) {
    cur.push_back(m);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = m; e >= 0; --e) {
    cur.push_back(e);
    exponents(n, m - e, cur, out);
    cur.pop_back();
  }
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
  CMatrix R(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) R.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return R;
}

std::vector<cplx> as_complex(const std::vector<double>& v) { return {v.begin(), v.end()}; }

void check_cartan(int n, const std::vector<cplx>& h) {
  if (static_cast<int>(h.size()) != n) fail(ErrorKind::InvalidInput, "Cartan vector has the wrong length");
}

double frob(const CMatrix& m) { return m.norm(); }

}  // namespace

SlRep symmetric_power(int n, int m) {
  if (n < 2 || m < 1) fail(ErrorKind::InvalidInput, "symmetric power needs n >= 2 and m >= 1");
  SlRep r;
  r.n = n;
  r.m = m;
  std::vector<int> cur;
  exponents(n, m, cur, r.basis);
  return r;
}

CMatrix SlRep::E(int a, int b) const {
  CMatrix M = CMatrix::Zero(dim(), dim());
  for (int c = 0; c < dim(); ++c) {
    const auto& v = basis[c];
    if (v[b] == 0) continue;
    auto w = v;
    --w[b];
    ++w[a];
    for (int r = 0; r < dim(); ++r)
      if (basis[r] == w) M(r, c) += double(v[b]);
  }
  return M;
}

CMatrix SlRep::diag(const std::vector<cplx>& v) const {
  CMatrix M = CMatrix::Zero(dim(), dim());
  for (int c = 0; c < dim(); ++c)
    for (int a = 0; a < n; ++a) M(c, c) += double(basis[c][a]) * v[a];
  return M;
}

std::vector<std::vector<double>> cartan_basis(int n) {
  std::vector<std::vector<double>> xs;
  for (int l = 0; l + 1 < n; ++l) {
    std::vector<double> v(n, 0.0);
    for (int a = 0; a <= l; ++a) v[a] = 1.0;
    v[l + 1] = -(l + 1.0);
    const double norm = std::sqrt((l + 1.0) * (l + 2.0));
    for (auto& x : v) x /= norm;
    xs.push_back(std::move(v));
  }
  return xs;
}

TensorSpace::TensorSpace(int n, std::vector<SlRep> reps) : n_(n), reps_(std::move(reps)) {
  if (reps_.empty()) fail(ErrorKind::InvalidInput, "need at least one point");
  for (const auto& r : reps_) {
    if (r.n != n) fail(ErrorKind::InvalidInput, "representation rank does not match n");
    full_dim_ *= r.dim();
  }
  for (int I = 0; I < full_dim_; ++I) {
    const auto d = digits(I);
    std::vector<int> w(n, 0);
    for (int i = 0; i < points(); ++i)
      for (int a = 0; a < n; ++a) w[a] += reps_[i].basis[d[i]][a];
    bool flat = true;
    for (int a = 1; a < n; ++a) flat = flat && w[a] == w[0];
    if (flat) zero_.push_back(I);
  }
}

std::vector<int> TensorSpace::rep_dims() const {
  std::vector<int> d;
  for (const auto& r : reps_) d.push_back(r.dim());
  return d;
}

std::vector<int> TensorSpace::digits(int I) const {
  std::vector<int> d(points());
  for (int i = points() - 1; i >= 0; --i) {
    d[i] = I % reps_[i].dim();
    I /= reps_[i].dim();
  }
  return d;
}

CMatrix TensorSpace::embed(int i, const CMatrix& A, int j, const CMatrix& B) const {
  CMatrix M = CMatrix::Identity(1, 1);
  for (int s = 0; s < points(); ++s) {
    const int d = reps_[s].dim();
    if (s == i)
      M = kron(M, A);
    else if (s == j)
      M = kron(M, B);
    else
      M = kron(M, CMatrix::Identity(d, d));
  }
  return M;
}

CMatrix TensorSpace::embed(int i, const CMatrix& A) const { return embed(i, A, -1, CMatrix()); }

CMatrix TensorSpace::restrict(const CMatrix& full) const {
  const int k = static_cast<int>(zero_.size());
  CMatrix R(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) R(r, c) = full(zero_[r], zero_[c]);
  return R;
}

double TensorSpace::leakage(const CMatrix& full) const {
  std::vector<bool> in(full_dim_, false);
  for (int I : zero_) in[I] = true;
  double worst = 0;
  for (int c : zero_)
    for (int r = 0; r < full_dim_; ++r)
      if (!in[r]) worst = std::max(worst, std::abs(full(r, c)));
  return worst;
}

CMatrix r_matrix_full(const TensorSpace& V, int i, int j, cplx zeta, const std::vector<cplx>& h,
                      const EllipticContext& ctx) {
  const int n = V.n();
  check_cartan(n, h);
  if (i == j || i < 0 || j < 0 || i >= V.points() || j >= V.points()) fail(ErrorKind::InvalidInput, "bad slots");
  const SlRep& A = V.rep(i);
  const SlRep& B = V.rep(j);
  CMatrix r = CMatrix::Zero(V.full_dim(), V.full_dim());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const cplx ah = h[a] - h[b];
      r += V.embed(i, A.E(a, b), j, B.E(b, a)) * g(zeta, ah, ctx);
      r += V.embed(i, A.E(b, a), j, B.E(a, b)) * g(zeta, -ah, ctx);
    }
  const cplx s = sigma(zeta, ctx);
  for (const auto& x : cartan_basis(n)) {
    const auto xc = as_complex(x);
    r -= V.embed(i, A.diag(xc), j, B.diag(xc)) * s;
  }
  return kTwoPiI * r;
}

ConnectionMatrix r_matrix(const TensorSpace& V, int i, int j, cplx zeta, const std::vector<cplx>& h,
                          const EllipticContext& ctx) {
  ConnectionMatrix cm;
  cm.n_points = V.points();
  cm.rep_dims = V.rep_dims();
  for (int I : V.zero_weight()) cm.zero_weight_basis.push_back(V.digits(I));
  cm.matrix = V.restrict(r_matrix_full(V, i, j, zeta, h, ctx));
  return cm;
}

CMatrix casimir_full(const TensorSpace& V, int i, int j) {
  const int n = V.n();
  const SlRep& A = V.rep(i);
  const SlRep& B = V.rep(j);
  CMatrix om = CMatrix::Zero(V.full_dim(), V.full_dim());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      om += V.embed(i, A.E(a, b), j, B.E(b, a)) + V.embed(i, A.E(b, a), j, B.E(a, b));
  for (const auto& x : cartan_basis(n)) {
    const auto xc = as_complex(x);
    om += V.embed(i, A.diag(xc), j, B.diag(xc));
  }
  return om;
}

namespace {

void require_distinct(const std::vector<cplx>& zetas, const EllipticContext& ctx) {
  for (std::size_t i = 0; i < zetas.size(); ++i)
    for (std::size_t j = i + 1; j < zetas.size(); ++j)
      if (ctx.lattice_distance(zetas[i] - zetas[j]) < ctx.pole_guard())
        fail(ErrorKind::Domain, "points coincide modulo the lattice");
}

CMatrix big_r(const TensorSpace& V, int i, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
              const EllipticContext& ctx) {
  CMatrix R = CMatrix::Zero(V.full_dim(), V.full_dim());
  for (int j = 0; j < V.points(); ++j)
    if (j != i) R += r_matrix_full(V, i, j, zetas[i] - zetas[j], h, ctx);
  return R;
}

// d r_ij / dc_l through d/da g(zeta, a) = 2 pi i phi(a, zeta)
CMatrix r_matrix_dc(const TensorSpace& V, int i, int j, cplx zeta, const std::vector<cplx>& h,
                    const std::vector<double>& xl, const EllipticContext& ctx) {
  const int n = V.n();
  const SlRep& A = V.rep(i);
  const SlRep& B = V.rep(j);
  CMatrix r = CMatrix::Zero(V.full_dim(), V.full_dim());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const cplx ah = h[a] - h[b];
      const double ax = xl[a] - xl[b];
      r += V.embed(i, A.E(a, b), j, B.E(b, a)) * (ax * kTwoPiI * phi(ah, zeta, ctx));
      r -= V.embed(i, A.E(b, a), j, B.E(a, b)) * (ax * kTwoPiI * phi(-ah, zeta, ctx));
    }
  return kTwoPiI * r;
}

}  // namespace

KZConnection kz_connection(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                           const EllipticContext& ctx, double K) {
  if (static_cast<int>(zetas.size()) != V.points()) fail(ErrorKind::InvalidInput, "one point per tensor factor");
  check_cartan(V.n(), h);
  require_distinct(zetas, ctx);
  KZConnection c;
  c.kappa = K + V.n();
  if (c.kappa == 0) fail(ErrorKind::Domain, "K + h^v must be nonzero");
  const auto xs = cartan_basis(V.n());
  for (int i = 0; i < V.points(); ++i) {
    const CMatrix R = big_r(V, i, zetas, h, ctx);
    c.leakage = std::max(c.leakage, V.leakage(R));
    c.matrix_part.push_back(V.restrict(R));
    std::vector<CMatrix> hp;
    for (const auto& x : xs) hp.push_back(-kTwoPiI * V.restrict(V.embed(i, V.rep(i).diag(as_complex(x)))));
    c.h_part.push_back(std::move(hp));
  }
  return c;
}

FlatnessResult flatness_check(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                              const EllipticContext& ctx, double K, double fd_step, HDerivative mode,
                              std::vector<cplx> nu) {
  const int n = V.n();
  const int N = V.points();
  if (static_cast<int>(zetas.size()) != N) fail(ErrorKind::InvalidInput, "one point per tensor factor");
  if (!(fd_step > 0)) fail(ErrorKind::InvalidInput, "fd_step must be positive");
  check_cartan(n, h);
  require_distinct(zetas, ctx);
  if (nu.empty())
    for (int a = 0; a < n; ++a) nu.push_back((n - 1) / 2.0 - a);  // rho
  check_cartan(n, nu);
  const double kappa = K + n;
  const auto xs = cartan_basis(n);

  FlatnessResult res;
  res.step = fd_step;
  if (N < 2) return res;

  auto R = [&](int i, const std::vector<cplx>& z, const std::vector<cplx>& hh) {
    return V.restrict(big_r(V, i, z, hh, ctx));
  };
  auto dzeta = [&](int i, int j) {  // d R_j / d zeta_i
    auto zp = zetas, zm = zetas;
    zp[i] += fd_step;
    zm[i] -= fd_step;
    return CMatrix((R(j, zp, h) - R(j, zm, h)) / (2 * fd_step));
  };
  auto dc = [&](int j, int l) {  // d R_j / d c_l
    if (mode == HDerivative::CentralDifference) {
      auto hp = h, hm = h;
      for (int a = 0; a < n; ++a) {
        hp[a] += fd_step * xs[l][a];
        hm[a] -= fd_step * xs[l][a];
      }
      return CMatrix((R(j, zetas, hp) - R(j, zetas, hm)) / (2 * fd_step));
    }
    CMatrix full = CMatrix::Zero(V.full_dim(), V.full_dim());
    for (int k = 0; k < N; ++k)
      if (k != j) full += r_matrix_dc(V, j, k, zetas[j] - zetas[k], h, xs[l], ctx);
    return V.restrict(full);
  };
  std::vector<CMatrix> Rs, hnu;
  std::vector<std::vector<CMatrix>> px(N), dR(N);
  for (int i = 0; i < N; ++i) {
    Rs.push_back(R(i, zetas, h));
    hnu.push_back(V.restrict(V.embed(i, V.rep(i).diag(nu))));
    for (int l = 0; l + 1 < n; ++l) {
      px[i].push_back(V.restrict(V.embed(i, V.rep(i).diag(as_complex(xs[l])))));
      dR[i].push_back(dc(i, l));
    }
  }
  // D_j f = -B_j f, D_i D_j f = (-kappa d_i B_j + C_ij) f
  auto C = [&](int i, int j) {
    const CMatrix B = Rs[j] - kTwoPiI * hnu[j];
    CMatrix c = Rs[i] * B - kTwoPiI * hnu[i] * B;
    for (int l = 0; l + 1 < n; ++l) c -= px[i][l] * dR[j][l];
    return c;
  };
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const CMatrix dij = dzeta(i, j), dji = dzeta(j, i);
      const CMatrix cij = C(i, j), cji = C(j, i);
      const CMatrix comm = -kappa * (dij - dji) + cij - cji;
      const double scale = std::abs(kappa) * (frob(dij) + frob(dji)) + frob(cij) + frob(cji);
      res.absolute = std::max(res.absolute, frob(comm));
      res.relative = std::max(res.relative, frob(comm) / scale);
    }
  return res;
}

ConnectionMatrix psi_gauge(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                           const EllipticContext& ctx) {
  const int N = V.points();
  if (static_cast<int>(zetas.size()) != N) fail(ErrorKind::InvalidInput, "one point per tensor factor");
  check_cartan(V.n(), h);
  ConnectionMatrix cm;
  cm.n_points = N;
  cm.rep_dims = V.rep_dims();
  const int k = static_cast<int>(V.zero_weight().size());
  cm.matrix = CMatrix::Identity(k, k);
  std::vector<cplx> den;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      ctx.require_off_lattice(zetas[i] - zetas[j], "psi");
      den.push_back(theta1(zetas[i] - zetas[j], ctx));
    }
  for (int r = 0; r < k; ++r) {
    const auto d = V.digits(V.zero_weight()[r]);
    cm.zero_weight_basis.push_back(d);
    std::vector<cplx> a(N, 0.0);
    for (int i = 0; i < N; ++i)
      for (int c = 0; c < V.n(); ++c) a[i] += double(V.rep(i).basis[d[i]][c]) * h[c];
    cplx v = 1;
    int pair = 0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        v *= theta1(zetas[i] - zetas[j] + (a[i] - a[j]) / double(N), ctx) / den[pair++];
    cm.matrix(r, r) = v;
  }
  return cm;
}

std::vector<RMatrixSample> default_r_samples(int n) {
  std::vector<std::vector<cplx>> hs;
  if (n == 2) {
    hs = {{{0.13, 0.07}, {-0.13, -0.07}}, {{0.31, -0.05}, {-0.31, 0.05}}};
  } else if (n == 3) {
    hs = {{{0.21, 0.05}, {-0.08, 0.11}, {-0.13, -0.16}}, {{0.17, -0.1}, {0.05, 0.2}, {-0.22, -0.1}}};
  } else {
    std::vector<cplx> h(n);
    for (int a = 0; a < n; ++a) h[a] = cplx(0.07 * (a + 1), 0.03 * (n - a)) ;
    cplx mean = 0;
    for (auto x : h) mean += x;
    for (auto& x : h) x -= mean / double(n);
    hs = {h};
  }
  const cplx zs[] = {{0.23, 0.11}, {-0.17, 0.3}};
  const cplx ts[] = {{0.1, 1.0}, {-0.2, 0.8}, {0.3, 1.3}};
  std::vector<RMatrixSample> out;
  for (const auto& h : hs)
    for (auto z : zs)
      for (auto t : ts) out.push_back({z, h, t});
  return out;
}

namespace {

NumericReport make_report(const char* name, int n, std::size_t samples, double worst, double tol) {
  NumericReport r;
  r.check = name;
  r.parameters = {{"n", n}, {"samples", samples}};
  r.max_residual = worst;
  r.tolerance = tol;
  r.pass = worst <= tol;
  return r;
}

}  // namespace

NumericReport check_r_unitarity(int n, const std::vector<RMatrixSample>& s, double tol) {
  const TensorSpace V(n, {defining_rep(n), defining_rep(n)});
  double worst = 0;
  for (const auto& x : s) {
    const EllipticContext ctx(x.tau);
    const CMatrix a = r_matrix_full(V, 0, 1, x.zeta, x.h, ctx);
    const CMatrix b = r_matrix_full(V, 1, 0, -x.zeta, x.h, ctx);
    worst = std::max(worst, (a + b).cwiseAbs().maxCoeff() / std::max(1.0, a.cwiseAbs().maxCoeff()));
  }
  return make_report("r-unitarity", n, s.size(), worst, tol);
}

NumericReport check_r_residue(int n, const std::vector<RMatrixSample>& s, double radius, int nodes, double tol) {
  const TensorSpace V(n, {defining_rep(n), defining_rep(n)});
  const CMatrix omega = casimir_full(V, 0, 1);
  // P - 1/n on C^n (x) C^n
  CMatrix perm = CMatrix::Zero(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) perm(b * n + a, a * n + b) = 1.0;
  double worst = (omega - (perm - CMatrix::Identity(n * n, n * n) / double(n))).cwiseAbs().maxCoeff();
  for (const auto& x : s) {
    const EllipticContext ctx(x.tau);
    CMatrix res = CMatrix::Zero(n * n, n * n);
    for (int k = 0; k < nodes; ++k) {
      const cplx z = radius * std::exp(cplx(0, 2 * kPi * k / nodes));
      res += r_matrix_full(V, 0, 1, z, x.h, ctx) * z;
    }
    res /= double(nodes);
    worst = std::max(worst, (res - omega).cwiseAbs().maxCoeff());
  }
  return make_report("r-residue", n, s.size(), worst, tol);
}

NumericReport check_r_quasi_periodicity(int n, const std::vector<RMatrixSample>& s, double tol) {
  const TensorSpace V(n, {defining_rep(n), defining_rep(n)});
  CMatrix xx = CMatrix::Zero(n * n, n * n);
  for (const auto& x : cartan_basis(n)) {
    const auto xc = as_complex(x);
    xx += V.embed(0, V.rep(0).diag(xc), 1, V.rep(1).diag(xc));
  }
  double worst = 0;
  for (const auto& x : s) {
    const EllipticContext ctx(x.tau);
    const CMatrix r0 = r_matrix_full(V, 0, 1, x.zeta, x.h, ctx);
    const double scale = std::max(1.0, r0.cwiseAbs().maxCoeff());
    const CMatrix r1 = r_matrix_full(V, 0, 1, x.zeta + 1.0, x.h, ctx);
    worst = std::max(worst, (r1 - r0).cwiseAbs().maxCoeff() / scale);
    std::vector<cplx> eh(n), emh(n);
    for (int a = 0; a < n; ++a) {
      eh[a] = std::exp(kTwoPiI * x.h[a]);
      emh[a] = 1.0 / eh[a];
    }
    CMatrix Dp = CMatrix::Zero(n, n), Dm = CMatrix::Zero(n, n);
    for (int a = 0; a < n; ++a) {
      Dp(a, a) = eh[a];
      Dm(a, a) = emh[a];
    }
    const CMatrix conj = V.embed(0, Dp) * r0 * V.embed(0, Dm) - kTwoPiI * xx;
    const CMatrix rt = r_matrix_full(V, 0, 1, x.zeta + x.tau, x.h, ctx);
    worst = std::max(worst, (rt - conj).cwiseAbs().maxCoeff() / scale);
  }
  return make_report("r-quasi-periodicity", n, s.size(), worst, tol);
}

NumericReport check_psi_law(const TensorSpace& V, const std::vector<cplx>& zetas, const std::vector<cplx>& h,
                            const EllipticContext& ctx, double tol) {
  const CMatrix psi = psi_gauge(V, zetas, h, ctx).matrix;
  const double scale = std::max(1.0, psi.cwiseAbs().maxCoeff());
  double worst = 0;
  for (int i = 0; i < V.points(); ++i) {
    auto z1 = zetas;
    z1[i] += 1.0;
    worst = std::max(worst, (psi_gauge(V, z1, h, ctx).matrix - psi).cwiseAbs().maxCoeff() / scale);
    auto zt = zetas;
    zt[i] += ctx.tau();
    const CMatrix shifted = psi_gauge(V, zt, h, ctx).matrix;
    const CMatrix Ph = V.restrict(V.embed(i, V.rep(i).diag(h)));
    CMatrix expect = psi;
    for (Eigen::Index r = 0; r < psi.rows(); ++r) expect(r, r) *= std::exp(-kTwoPiI * Ph(r, r));
    worst = std::max(worst, (shifted - expect).cwiseAbs().maxCoeff() / scale);
  }
  NumericReport r;
  r.check = "psi-law";
  r.parameters = {{"n", V.n()}, {"points", V.points()}};
  r.max_residual = worst;
  r.tolerance = tol;
  r.pass = worst <= tol;
  return r;
}

}  // namespace macpoly
