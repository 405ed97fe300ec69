#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "macpoly/group_algebra.hpp"

namespace macpoly {

// Floor division for int64 with positive divisor.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

template <class C>
GroupAlgebra<C> bar(const GroupAlgebra<C>& f) {
  GroupAlgebra<C> r;
  for (const auto& [w, c] : f.terms()) r.add(-w, c);
  return r;
}

template <class C>
C constant_term(const GroupAlgebra<C>& f, int n) {
  return f.coeff(Weight::zero(n));
}

// [f g]_0 without forming the product.
template <class C>
C constant_term_of_product(const GroupAlgebra<C>& f, const GroupAlgebra<C>& g) {
  C s(0);
  for (const auto& [w, c] : f.terms()) {
    auto it = g.terms().find(-w);
    if (it != g.terms().end()) s += C(c * it->second);
  }
  return s;
}

template <class C>
GroupAlgebra<C> orbit_sum(const RootData& rd, const Weight& lam) {
  rd.check_weight(lam);
  if (!rd.is_dominant(lam)) fail(ErrorKind::Domain, "orbitsum requires a dominant weight");
  GroupAlgebra<C> r;
  for (const auto& w : rd.weyl_orbit(lam)) r.add(w, C(1));
  return r;
}

// Delta_h e^lambda = (lambda, lambda) e^lambda.
template <class C>
GroupAlgebra<C> laplacian(const GroupAlgebra<C>& f) {
  GroupAlgebra<C> r;
  for (const auto& [w, c] : f.terms()) r.add(w, C(c * C(pairing(w, w))));
  return r;
}

// Solves h (1 - e^beta) = f along beta-strings. Returns nullopt if f is not
// divisible, i.e. some string sum is nonzero.
template <class C>
std::optional<GroupAlgebra<C>> divide_one_minus_exp(const GroupAlgebra<C>& f, const Weight& beta) {
  const std::int64_t step = pairing_scaled(beta, beta);
  std::map<Weight, std::map<std::int64_t, C>> strings;
  for (const auto& [w, c] : f.terms()) {
    const std::int64_t m = floor_div(pairing_scaled(w, beta), step);
    strings[w - m * beta].emplace(m, c);
  }
  GroupAlgebra<C> h;
  for (const auto& [key, line] : strings) {
    C running(0);
    std::int64_t pos = line.begin()->first;
    const std::int64_t top = line.rbegin()->first;
    auto it = line.begin();
    for (; pos <= top; ++pos) {
      if (it != line.end() && it->first == pos) {
        running += it->second;
        ++it;
      }
      if (pos == top) break;
      h.add(key + pos * beta, running);
    }
    if (!is_zero(running)) return std::nullopt;
  }
  return h;
}

template <class C>
GroupAlgebra<C> weyl_denominator_t(const RootData& rd) {
  auto d = GroupAlgebra<C>::monomial(rd.rho(), C(1));
  for (const auto& a : rd.positive_roots()) {
    GroupAlgebra<C> factor = GroupAlgebra<C>::constant(rd.n(), C(1));
    factor.add(-a, C(-1));
    d *= factor;
  }
  return d;
}

// sum_w sign(w) e^{w mu} for strictly dominant mu.
template <class C>
GroupAlgebra<C> alternating_sum(const RootData& rd, const Weight& mu) {
  const int n = rd.n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  GroupAlgebra<C> r;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::vector<std::int64_t> s(n);
    for (int i = 0; i < n; ++i) s[i] = mu.scaled(perm[i]);
    r.add(Weight::from_scaled(std::move(s)), C(inversions % 2 == 0 ? 1 : -1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

template <class C>
GroupAlgebra<C> weyl_character_t(const RootData& rd, const Weight& lam) {
  rd.check_weight(lam);
  if (!rd.is_dominant(lam)) fail(ErrorKind::Domain, "weyl_character requires a dominant weight");
  GroupAlgebra<C> h = alternating_sum<C>(rd, lam + rd.rho()).shifted(-rd.rho());
  for (const auto& a : rd.positive_roots()) {
    auto q = divide_one_minus_exp(h, -a);
    if (!q) fail(ErrorKind::Internal, "Weyl character: inexact division by the denominator");
    h = std::move(*q);
  }
  return h;
}

template <class C>
GroupAlgebra<C> power(const GroupAlgebra<C>& f, int e, int n) {
  GroupAlgebra<C> r = GroupAlgebra<C>::constant(n, C(1));
  for (int i = 0; i < e; ++i) r *= f;
  return r;
}

inline LatticePoly orbitsum(const RootData& rd, const Weight& lam) { return orbit_sum<RatFunc>(rd, lam); }
inline LatticePoly weyl_denominator(const RootData& rd) { return weyl_denominator_t<RatFunc>(rd); }
inline LatticePoly weyl_character(const RootData& rd, const Weight& lam) { return weyl_character_t<RatFunc>(rd, lam); }

template <class C>
LatticePoly to_lattice_poly(const GroupAlgebra<C>& f) {
  return f.map_coeffs([](const C& c) { return RatFunc(c); });
}

// e^mu -> q^{2(mu, nu)}, written in Q = q^{1/(2n)}.
RatFunc evaluate_at_qpower(const LatticePoly& f, const Weight& nu);
// Exponent of Q in q^{2(mu, nu)}.
std::int64_t qpower_exponent(const Weight& mu, const Weight& nu);

RatFunc qdim(const RootData& rd, const Weight& lam);

// Is f invariant under every simple reflection?
template <class C>
bool is_w_invariant(const RootData& rd, const GroupAlgebra<C>& f) {
  for (const auto& [w, c] : f.terms())
    for (int i = 0; i + 1 < rd.n(); ++i)
      if (!(f.coeff(rd.simple_reflection(w, i)) == c)) return false;
  return true;
}

// Coefficients of f on the orbit-sum basis, read at dominant weights.
template <class C>
std::map<Weight, C> orbit_coordinates(const RootData& rd, const GroupAlgebra<C>& f) {
  std::map<Weight, C> out;
  for (const auto& [w, c] : f.terms())
    if (rd.is_dominant(w)) out.emplace(w, c);
  return out;
}

}  // namespace macpoly
