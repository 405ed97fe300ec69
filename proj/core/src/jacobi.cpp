#include "macpoly/jacobi.hpp"

#include "macpoly/lattice_ops.hpp"

namespace macpoly {

namespace {

std::int64_t int_pairing(const Weight& a, const Weight& b) {
  const std::int64_t nn = static_cast<std::int64_t>(a.n()) * a.n();
  const std::int64_t s = pairing_scaled(a, b);
  if (s % nn != 0) fail(ErrorKind::Internal, "pairing with a root is not integral");
  return s / nn;
}

void require_invariant(const RootData& rd, const LatticePoly& f) {
  for (const auto& [w, c] : f.terms()) rd.check_weight(w);
  if (!is_w_invariant(rd, f)) fail(ErrorKind::Domain, "the operator needs a W-invariant input");
}

// d_beta e^mu = (beta, mu) e^mu
LatticePoly derivative(const LatticePoly& f, const Weight& beta) {
  LatticePoly r;
  for (const auto& [w, c] : f.terms()) r.add(w, c * RatFunc(pairing(beta, w)));
  return r;
}

LatticePoly divide_exact(const LatticePoly& f, const Weight& beta) {
  auto h = divide_one_minus_exp(f, beta);
  if (!h) fail(ErrorKind::Internal, "inexact division by 1 - e^beta");
  return std::move(*h);
}

}  // namespace

LatticePoly sutherland_mk_apply(const RootData& rd, const LatticePoly& f, const JacobiK& k) {
  require_invariant(rd, f);
  const RatFunc kk = k.as_ratfunc();
  LatticePoly out = laplacian(f);
  // Each s_alpha pair {mu, mu - c alpha} with c = (mu, alpha) > 0 contributes
  // -c a_mu sum_{j=1}^{c} e^{mu - j alpha} to (1 - e^alpha)^{-1} d_alpha f.
  LatticePoly string_part;
  for (const auto& alpha : rd.positive_roots())
    for (const auto& [mu, a] : f.terms()) {
      const std::int64_t c = int_pairing(mu, alpha);
      for (std::int64_t j = 1; j <= c; ++j) string_part.add(mu - j * alpha, -a * RatFunc(static_cast<long>(c)));
    }
  out -= string_part.scaled(RatFunc(2) * kk);
  out += derivative(f, rd.rho()).scaled(RatFunc(2) * kk);
  return out;
}

LatticePoly sutherland_mk_apply_symmetric_form(const RootData& rd, const LatticePoly& f, const JacobiK& k) {
  require_invariant(rd, f);
  const int n = rd.n();
  LatticePoly out = laplacian(f);
  for (const auto& alpha : rd.positive_roots()) {
    LatticePoly one_plus = LatticePoly::constant(n, RatFunc(1));
    one_plus.add(alpha, RatFunc(1));
    out -= divide_exact(one_plus * derivative(f, alpha), alpha).scaled(k.as_ratfunc());
  }
  return out;
}

LatticePoly conjugated_sutherland_apply(const RootData& rd, const LatticePoly& f, int k) {
  if (k < 0) fail(ErrorKind::InvalidInput, "k must be a nonnegative integer");
  const int n = rd.n();
  const LatticePoly dk = power(weyl_denominator(rd), k, n);
  const LatticePoly g = dk * f;
  LatticePoly lg = laplacian(g) - g.scaled(RatFunc(pairing(rd.rho(), rd.rho()) * k * k));
  if (k >= 2) {
    // (alpha, alpha) / (e^{alpha/2} - e^{-alpha/2})^2 = 2 e^alpha / (1 - e^alpha)^2
    for (const auto& alpha : rd.positive_roots()) {
      LatticePoly v = divide_exact(divide_exact(g.shifted(alpha), alpha), alpha);
      lg -= v.scaled(RatFunc(pairing(alpha, alpha) * k * (k - 1)));
    }
  }
  // delta^k = e^{k rho} prod (1 - e^{-alpha})^k
  LatticePoly r = lg.shifted(-(static_cast<std::int64_t>(k) * rd.rho()));
  for (const auto& alpha : rd.positive_roots())
    for (int i = 0; i < k; ++i) r = divide_exact(r, -alpha);
  return r;
}

RatFunc jacobi_eigenvalue(const RootData& rd, const Weight& lam, const JacobiK& k) {
  rd.check_weight(lam);
  return RatFunc(pairing(lam, lam)) + RatFunc(2) * k.as_ratfunc() * RatFunc(pairing(lam, rd.rho()));
}

JacobiElement jacobi_poly(const RootData& rd, const Weight& lam, const JacobiK& k) {
  rd.check_weight(lam);
  if (!rd.is_dominant(lam)) fail(ErrorKind::Domain, "Jacobi polynomials need a dominant weight");
  const auto basis = rd.dominant_below(lam);
  const RatFunc E = jacobi_eigenvalue(rd, lam, k);
  std::vector<LatticePoly> images;
  images.reserve(basis.size());
  for (const auto& mu : basis) images.push_back(sutherland_mk_apply(rd, orbitsum(rd, mu), k));
  if (!(images[0].coeff(lam) == E)) fail(ErrorKind::Internal, "leading coefficient of M_k m_lambda is off");

  std::vector<RatFunc> c(basis.size());
  c[0] = RatFunc(1);
  for (std::size_t j = 1; j < basis.size(); ++j) {
    RatFunc s;
    for (std::size_t i = 0; i < j; ++i)
      if (!c[i].is_zero()) s += c[i] * images[i].coeff(basis[j]);
    const RatFunc gap = E - images[j].coeff(basis[j]);
    if (gap.is_zero()) {
      std::string mu;
      for (int i = 0; i < rd.n(); ++i) mu += (i ? "," : "") + to_string(basis[j].coord(i));
      fail(ErrorKind::DegenerateSpectrum, "eigenvalue collision at k = " + k.text() + " with mu = (" + mu + ")");
    }
    c[j] = s / gap;
  }
  JacobiElement el{lam, k, {}};
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (!c[j].is_zero()) el.coeffs.emplace(basis[j], c[j]);
  return el;
}

LatticePoly to_lattice(const RootData& rd, const JacobiElement& j) {
  LatticePoly r;
  for (const auto& [mu, c] : j.coeffs) r += orbitsum(rd, mu).scaled(c);
  return r;
}

JacobiElement macdonald_to_jack_limit(const RootData& rd, const Partition& lam, int k) {
  if (k < 0) fail(ErrorKind::InvalidInput, "k must be a nonnegative integer");
  const auto P = macdonald_poly(rd, lam, MacMode::t_eq_qk(k));
  JacobiElement el{Weight::from_partition(lam), JacobiK::fixed(k), {}};
  for (const auto& [mu, c] : P.coeffs) {
    Rational v = c.limit_x_to_one();
    if (v != 0) el.coeffs.emplace(Weight::from_partition(mu), RatFunc(v));
  }
  return el;
}

VerificationReport verify_jack_limit(const RootData& rd, const Partition& lam, int k) {
  const auto lim = macdonald_to_jack_limit(rd, lam, k);
  const auto jac = jacobi_poly(rd, lim.lambda, JacobiK::fixed(k));
  auto text = [&](const JacobiElement& e) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& [mu, c] : e.coeffs) {
      std::vector<std::string> coords;
      for (int i = 0; i < rd.n(); ++i) coords.push_back(to_string(mu.coord(i)));
      j.push_back({{"mu", coords}, {"c", to_string(c, jacobi_names())}});
    }
    return j.dump();
  };
  VerificationReport rep;
  rep.identity = "jack-limit";
  rep.inputs = {{"n", rd.n()}, {"lambda", lam}, {"k", k}};
  rep.lhs = text(lim);
  rep.rhs = text(jac);
  rep.equal = lim.coeffs == jac.coeffs;
  return rep;
}

RatFunc classical_inner_product(const RootData& rd, const LatticePoly& f, const LatticePoly& g, int k) {
  if (k < 0) fail(ErrorKind::InvalidInput, "k must be a nonnegative integer");
  const int n = rd.n();
  LatticePoly kernel = LatticePoly::constant(n, RatFunc(1));
  for (const auto& alpha : rd.roots()) {
    LatticePoly factor = LatticePoly::constant(n, RatFunc(1));
    factor.add(alpha, RatFunc(-1));
    kernel *= power(factor, k, n);
  }
  return constant_term_of_product(f * bar(g), kernel) / RatFunc(static_cast<long>(rd.weyl_order()));
}

}  // namespace macpoly
